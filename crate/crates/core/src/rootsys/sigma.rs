use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{Root, RootSystem};
use crate::error::{Error, Result};

/// Exhaustive Σ-subset search is admitted only up to this many positive restricted roots.
pub const ORACLE_LIMIT: usize = 16;

/// A restricted root system together with root-space multiplicities (indexed by positive roots).
#[derive(Clone, Debug)]
pub struct RestrictedRoots {
    pub system: RootSystem,
    pub multiplicity: BTreeMap<Root, usize>,
}

impl RestrictedRoots {
    /// All multiplicities one, as for a split real form.
    pub fn split(system: RootSystem) -> RestrictedRoots {
        let multiplicity = system.positives().iter().map(|r| (r.clone(), 1)).collect();
        RestrictedRoots { system, multiplicity }
    }

    pub fn new(system: RootSystem, multiplicity: BTreeMap<Root, usize>) -> Result<RestrictedRoots> {
        for r in system.positives() {
            if multiplicity.get(r).copied().unwrap_or(0) == 0 {
                return Err(Error::Inconsistency(format!("missing multiplicity for {r}")));
            }
        }
        if multiplicity.len() != system.positives().len() {
            return Err(Error::Inconsistency("multiplicity map has extra keys".into()));
        }
        Ok(RestrictedRoots { system, multiplicity })
    }

    pub fn multiplicity(&self, r: &Root) -> usize {
        let key = if r.is_positive() { r.clone() } else { r.neg() };
        self.multiplicity.get(&key).copied().unwrap_or(0)
    }

    pub fn positives(&self) -> &[Root] {
        self.system.positives()
    }

    /// Dimension of the sum of root spaces over `set`.
    pub fn dimension(&self, set: &[Root]) -> usize {
        set.iter().map(|r| self.multiplicity(r)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaMethod {
    Greedy,
    Oracle,
}

impl std::str::FromStr for SigmaMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<SigmaMethod> {
        match s {
            "greedy" => Ok(SigmaMethod::Greedy),
            "oracle" => Ok(SigmaMethod::Oracle),
            _ => Err(Error::Unsupported(format!("method '{s}'"))),
        }
    }
}

/// `stages[0]` is Σ⁺ and `stages[n]` is Σ_n for the first `n` restrictions.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaChain {
    pub betas: Vec<Root>,
    pub stages: Vec<Vec<Root>>,
    pub method: SigmaMethod,
}

impl SigmaChain {
    pub fn last(&self) -> &[Root] {
        self.stages.last().expect("chain always holds Σ⁺")
    }
}

struct Ctx<'a> {
    sys: &'a RootSystem,
    betas: &'a [Root],
}

impl Ctx<'_> {
    /// Whether `v` is a root or zero.
    fn rooted(&self, v: &Root) -> bool {
        v.is_zero() || self.sys.contains(v)
    }

    fn violates_closure(&self, mu: &Root, set: &HashSet<&Root>) -> bool {
        self.betas.iter().any(|b| {
            [mu.add(b), mu.sub(b)]
                .iter()
                .any(|v| self.rooted(v) && !set.contains(v))
        })
    }

    /// First pair `(μ, ν)`, `μ ≤ ν`, whose sum is some `±β_m` or a root outside the set.
    fn pair_violation<'r>(&self, members: &[&'r Root], set: &HashSet<&Root>) -> Option<(&'r Root, &'r Root)> {
        for (i, mu) in members.iter().enumerate() {
            for nu in &members[i..] {
                let s = mu.add(nu);
                if !self.sys.contains(&s) {
                    continue;
                }
                let hits_beta = self.betas.iter().any(|b| s == *b || s == b.neg());
                if hits_beta || !set.contains(&s) {
                    return Some((mu, nu));
                }
            }
        }
        None
    }

    fn holds(&self, members: &[&Root]) -> bool {
        let set: HashSet<&Root> = members.iter().copied().collect();
        members.iter().all(|mu| !self.violates_closure(mu, &set)) && self.pair_violation(members, &set).is_none()
    }
}

/// Checks the three closure conditions on `set` for restrictions `betas`.
pub fn sigma_conditions_hold(rs: &RestrictedRoots, betas: &[Root], set: &[Root]) -> bool {
    let ctx = Ctx { sys: &rs.system, betas };
    let members: Vec<&Root> = set.iter().collect();
    ctx.holds(&members)
}

fn greedy_stage(ctx: &Ctx, prev: &[Root]) -> Vec<Root> {
    let mut current: Vec<Root> = prev.to_vec();
    loop {
        let set: HashSet<&Root> = current.iter().collect();
        let closure_bad: Vec<Root> = current
            .iter()
            .filter(|mu| ctx.violates_closure(mu, &set))
            .cloned()
            .collect();
        if !closure_bad.is_empty() {
            current.retain(|r| !closure_bad.contains(r));
            continue;
        }
        let members: Vec<&Root> = current.iter().collect();
        match ctx.pair_violation(&members, &set) {
            Some((mu, nu)) => {
                let drop = std::cmp::max(mu, nu).clone();
                current.retain(|r| *r != drop);
            }
            None => return current,
        }
    }
}

fn oracle_stage(ctx: &Ctx, prev: &[Root]) -> Vec<Root> {
    let k = prev.len();
    let mut best: Option<Vec<Root>> = None;
    for mask in 0u32..(1u32 << k) {
        let card = mask.count_ones() as usize;
        if let Some(b) = &best {
            if card < b.len() {
                continue;
            }
        }
        let members: Vec<&Root> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| &prev[i]).collect();
        if !ctx.holds(&members) {
            continue;
        }
        let mut cand: Vec<Root> = members.into_iter().cloned().collect();
        cand.sort();
        let better = match &best {
            None => true,
            Some(b) => cand.len() > b.len() || (cand.len() == b.len() && cand < *b),
        };
        if better {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// Computes Σ_1 ⊇ … ⊇ Σ_j for the restrictions `betas`.
pub fn sigma_chain(rs: &RestrictedRoots, betas: &[Root], method: SigmaMethod) -> Result<SigmaChain> {
    for b in betas {
        if !rs.system.contains(b) || !b.is_positive() {
            return Err(Error::Membership(format!("{b} is not a positive restricted root")));
        }
    }
    if method == SigmaMethod::Oracle && rs.positives().len() > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge { size: rs.positives().len(), limit: ORACLE_LIMIT });
    }
    let mut stages = vec![rs.positives().to_vec()];
    for n in 1..=betas.len() {
        let ctx = Ctx { sys: &rs.system, betas: &betas[..n] };
        let prev = stages.last().unwrap();
        let mut next = match method {
            SigmaMethod::Greedy => greedy_stage(&ctx, prev),
            SigmaMethod::Oracle => oracle_stage(&ctx, prev),
        };
        next.sort();
        stages.push(next);
    }
    Ok(SigmaChain { betas: betas.to_vec(), stages, method })
}

/// Σ⁺ with `β` (and `2β` when present) removed, for a simple restricted root `β`.
pub fn sigma1_simple(rs: &RestrictedRoots, beta: &Root) -> Result<Vec<Root>> {
    rs.system.ensure_member(beta)?;
    if beta.simple_index().is_none() {
        return Err(Error::NotSimple(beta.to_string()));
    }
    let double = beta.scale(2);
    let out: Vec<Root> = rs
        .positives()
        .iter()
        .filter(|r| *r != beta && **r != double)
        .cloned()
        .collect();
    if !sigma_conditions_hold(rs, std::slice::from_ref(beta), &out) {
        return Err(Error::Inconsistency(format!("Σ⁺ minus {beta} fails the closure conditions")));
    }
    Ok(out)
}

/// A simple root occurring in some positive real root, preferring ones that are themselves
/// real; ties go to the least simple root.
pub fn find_simple_real_root(positives: &[Root], reals: &[Root]) -> Result<Root> {
    if reals.is_empty() {
        return Err(Error::NoRealRoots);
    }
    let pos: HashSet<&Root> = positives.iter().collect();
    let mut oriented = Vec::new();
    for r in reals {
        if pos.contains(r) {
            oriented.push(r.clone());
        } else if pos.contains(&r.neg()) {
            oriented.push(r.neg());
        } else {
            return Err(Error::Membership(format!("{r} is not a root")));
        }
    }
    let rank = oriented[0].rank();
    let candidates: Vec<Root> = (0..rank)
        .filter(|&i| oriented.iter().any(|r| r.0[i] != 0))
        .map(|i| Root::simple(rank, i))
        .collect();
    let real_simple = candidates.iter().find(|c| oriented.contains(c));
    Ok(real_simple.unwrap_or(&candidates[0]).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Series};

    fn split(series: Series, rank: usize) -> RestrictedRoots {
        RestrictedRoots::split(build_root_system(series, rank).unwrap())
    }

    fn labels(set: &[Root]) -> Vec<String> {
        set.iter().map(Root::to_string).collect()
    }

    #[test]
    fn a2_single_restriction() {
        let rs = split(Series::A, 2);
        let beta = Root(vec![1, 0]);
        for method in [SigmaMethod::Greedy, SigmaMethod::Oracle] {
            let chain = sigma_chain(&rs, &[beta.clone()], method).unwrap();
            assert_eq!(labels(chain.last()), ["a2", "a1+a2"]);
            assert_eq!(chain.method, method);
        }
        assert_eq!(labels(&sigma1_simple(&rs, &beta).unwrap()), ["a2", "a1+a2"]);
    }

    #[test]
    fn empty_restrictions_keep_all_positives() {
        let rs = split(Series::B, 2);
        let chain = sigma_chain(&rs, &[], SigmaMethod::Greedy).unwrap();
        assert_eq!(chain.stages.len(), 1);
        assert_eq!(chain.last(), rs.positives());
    }

    #[test]
    fn rank_one_cases_are_trivial() {
        let a1 = split(Series::A, 1);
        let chain = sigma_chain(&a1, &[Root(vec![1])], SigmaMethod::Oracle).unwrap();
        assert!(chain.last().is_empty());
        let bc1 = split(Series::BC, 1);
        assert!(sigma1_simple(&bc1, &Root(vec![1])).unwrap().is_empty());
    }

    #[test]
    fn c2_short_simple_restriction() {
        let rs = split(Series::C, 2);
        let beta = Root(vec![1, 0]);
        assert!(!rs.system.contains(&beta.scale(2)));
        let s1 = sigma1_simple(&rs, &beta).unwrap();
        let oracle = sigma_chain(&rs, &[beta], SigmaMethod::Oracle).unwrap();
        assert_eq!(s1.len(), 3);
        assert_eq!(oracle.last().len(), 3);
    }

    #[test]
    fn errors() {
        let rs = split(Series::A, 2);
        assert!(matches!(sigma1_simple(&rs, &Root(vec![1, 1])), Err(Error::NotSimple(_))));
        assert!(matches!(
            sigma_chain(&rs, &[Root(vec![-1, 0])], SigmaMethod::Greedy),
            Err(Error::Membership(_))
        ));
        let big = split(Series::A, 6);
        assert!(matches!(
            sigma_chain(&big, &[Root(vec![1, 0, 0, 0, 0, 0])], SigmaMethod::Oracle),
            Err(Error::OracleTooLarge { .. })
        ));
        assert!(matches!(find_simple_real_root(&[], &[]), Err(Error::NoRealRoots)));
    }

    #[test]
    fn simple_real_root_choice() {
        let sys = build_root_system(Series::A, 2).unwrap();
        let pick = find_simple_real_root(sys.positives(), &[Root(vec![1, 1])]).unwrap();
        assert_eq!(pick, Root(vec![1, 0]));
        let all = find_simple_real_root(sys.positives(), sys.roots()).unwrap();
        assert_eq!(all, Root(vec![1, 0]));
    }
}
