use num_traits::Zero;
use serde::Serialize;

use super::{Root, RootSystem};
use crate::error::{Error, Result};

/// A set of positive roots with no pairwise sum or difference in the root system.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AdmissibleSystem {
    pub members: Vec<Root>,
}

impl AdmissibleSystem {
    pub fn new(sys: &RootSystem, mut members: Vec<Root>) -> Result<AdmissibleSystem> {
        members.sort();
        members.dedup();
        if !is_admissible(sys, &members)? {
            let names: Vec<String> = members.iter().map(Root::to_string).collect();
            return Err(Error::Admissibility(format!("{{{}}}", names.join(", "))));
        }
        Ok(AdmissibleSystem { members })
    }

    pub fn empty() -> AdmissibleSystem {
        AdmissibleSystem::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// True iff `a ⟂ b` and neither `a + b` nor `a - b` is a root.
///
/// Whenever sum and difference both fail to be roots the pair must be orthogonal; a
/// disagreement there is reported as an inconsistency. The converse direction does not hold
/// in multiply-laced systems (short orthogonal roots of B2 add up to a root), so it is not
/// asserted.
pub fn strongly_orthogonal(sys: &RootSystem, a: &Root, b: &Root) -> Result<bool> {
    sys.ensure_member(a)?;
    sys.ensure_member(b)?;
    if a == b || *a == b.neg() {
        return Err(Error::DegeneratePair(a.to_string(), b.to_string()));
    }
    let orthogonal = sys.form(&a.0, &b.0).is_zero();
    let no_sum = !sys.contains(&a.add(b));
    let no_diff = !sys.contains(&a.sub(b));
    if no_sum && no_diff && !orthogonal {
        return Err(Error::Inconsistency(format!(
            "{a} and {b} have no root sum or difference but are not orthogonal"
        )));
    }
    Ok(orthogonal && no_sum && no_diff)
}

/// Pairwise (reflexive included) `α_i ± α_j ∉ Δ`.
pub fn is_admissible(sys: &RootSystem, set: &[Root]) -> Result<bool> {
    for r in set {
        sys.ensure_member(r)?;
        if !r.is_positive() {
            return Err(Error::NotPositive(r.to_string()));
        }
    }
    for (i, a) in set.iter().enumerate() {
        for b in &set[i..] {
            if sys.contains(&a.add(b)) || sys.contains(&a.sub(b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Maximum-cardinality pairwise strongly orthogonal subset of `candidates`.
///
/// Branch and bound over the given candidate order; the bound uses the remaining candidate
/// count and the rank (strongly orthogonal roots are linearly independent).
pub fn max_strongly_orthogonal(sys: &RootSystem, candidates: &[Root]) -> Result<Vec<Root>> {
    for c in candidates {
        sys.ensure_member(c)?;
    }
    let n = candidates.len();
    let compat = compat_matrix(sys, candidates)?;
    let mut search = Search { compat: &compat, cap: sys.rank().min(n), best: Vec::new(), current: Vec::new() };
    search.branch(0);
    Ok(search.best.into_iter().map(|i| candidates[i].clone()).collect())
}

fn compat_matrix(sys: &RootSystem, candidates: &[Root]) -> Result<Vec<Vec<bool>>> {
    let n = candidates.len();
    let mut compat = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if candidates[i] == candidates[j] || candidates[i] == candidates[j].neg() {
                continue;
            }
            let ok = strongly_orthogonal(sys, &candidates[i], &candidates[j])?;
            compat[i][j] = ok;
            compat[j][i] = ok;
        }
    }
    Ok(compat)
}

/// Inclusion-maximal pairwise strongly orthogonal subsets of `candidates` (Bron–Kerbosch with
/// pivoting), largest first. Stops after `limit` sets; the flag reports truncation.
pub fn maximal_strongly_orthogonal_sets(
    sys: &RootSystem,
    candidates: &[Root],
    limit: usize,
) -> Result<(Vec<Vec<Root>>, bool)> {
    for c in candidates {
        sys.ensure_member(c)?;
    }
    let compat = compat_matrix(sys, candidates)?;
    let mut found = Vec::new();
    let all: Vec<usize> = (0..candidates.len()).collect();
    let truncated = !cliques(&compat, &mut Vec::new(), all, Vec::new(), &mut found, limit);
    let mut sets: Vec<Vec<Root>> =
        found.into_iter().map(|s| s.into_iter().map(|i| candidates[i].clone()).collect()).collect();
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok((sets, truncated))
}

/// Returns false once `limit` cliques have been collected.
fn cliques(
    adj: &[Vec<bool>],
    current: &mut Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> bool {
    if p.is_empty() && x.is_empty() {
        if out.len() == limit {
            return false;
        }
        out.push(current.clone());
        return true;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| (p.iter().filter(|&&v| adj[u][v]).count(), std::cmp::Reverse(u)))
        .unwrap();
    let branch: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in branch {
        current.push(v);
        let np = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let nx = x.iter().copied().filter(|&u| adj[v][u]).collect();
        let more = cliques(adj, current, np, nx, out, limit);
        current.pop();
        if !more {
            return false;
        }
        p.retain(|&u| u != v);
        x.push(v);
    }
    true
}

struct Search<'a> {
    compat: &'a [Vec<bool>],
    cap: usize,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    fn branch(&mut self, next: usize) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        let n = self.compat.len();
        if self.best.len() == self.cap || next == n {
            return;
        }
        if self.current.len() + (n - next) <= self.best.len() {
            return;
        }
        for i in next..n {
            if self.current.len() + (n - i) <= self.best.len() || self.best.len() == self.cap {
                return;
            }
            if self.current.iter().all(|&j| self.compat[i][j]) {
                self.current.push(i);
                self.branch(i + 1);
                self.current.pop();
            }
        }
    }
}
