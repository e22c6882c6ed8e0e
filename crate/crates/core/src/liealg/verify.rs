use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::csa::{cayley_csa, centralizer_dim, regular_element, CsaDescriptor, PositiveSystem};
use super::orbit::{darboux_basis, kirillov_form, nilpotent_ad_orbit};
use super::structure::{Element, FormMode, StructureConstants};
use crate::error::{Error, Result};
use crate::exact::{frac, rank, Q};
use crate::foliation::{CheckKind, CheckStatus, Engine, FoliationReport, Witness};
use crate::rootsys::{sigma_chain, RestrictedRoots, Root, SigmaChain, SigmaMethod};

pub const RULING_RANDOM_SAMPLES: usize = 10;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Positive system behind `n`; defaults to the standard one.
    pub positive: Option<PositiveSystem>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, positive: None }
    }
}

/// Support-based membership in a span of basis vectors.
struct CoordinateSpan {
    support: BTreeSet<usize>,
}

impl CoordinateSpan {
    fn contains(&self, x: &Element) -> bool {
        x.coeffs.iter().enumerate().all(|(i, c)| c.is_zero() || self.support.contains(&i))
    }
}

/// Deterministic sample of elements of `span(basis)`: the basis, pairwise sums, and seeded
/// rational combinations.
pub fn ruling_samples(basis: &[Element], seed: u64) -> Vec<Element> {
    let mut out: Vec<Element> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            out.push(basis[i].add(&basis[j]));
        }
    }
    if let Some(first) = basis.first() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RULING_RANDOM_SAMPLES {
            let mut y = Element::zero(first.dim());
            for b in basis {
                let c = frac(rng.gen_range(-5..=5), rng.gen_range(1..=4));
                y.add_scaled(b, c);
            }
            out.push(y);
        }
    }
    out
}

fn rows(elems: &[Element]) -> Vec<Vec<Q>> {
    elems.iter().map(|e| e.coeffs.clone()).collect()
}

/// Exact checks of the foliation spanned by the root spaces of `sigma_j` at `x`.
pub fn verify_foliation(
    sc: &StructureConstants,
    csa: &CsaDescriptor,
    x: &Element,
    sigma_j: &[Root],
    opts: &VerifyOptions,
) -> Result<FoliationReport> {
    let sys = sc.system();
    if centralizer_dim(sc, x) != sc.rank() {
        return Err(Error::NotRegular(format!("centralizer dimension ≠ {}", sc.rank())));
    }
    if csa.dim() != sc.rank() || csa.basis.iter().any(|h| !sc.bracket(h, x).is_zero()) {
        return Err(Error::Stabilizer("Cartan subalgebra does not centralize X".into()));
    }
    for mu in sigma_j {
        sys.ensure_member(mu)?;
    }
    let positive = opts.positive.clone().unwrap_or_else(|| PositiveSystem::standard(sys));
    let n_j: Vec<Element> = sigma_j.iter().flat_map(|m| sc.root_space(m)).collect();
    let span = CoordinateSpan {
        support: n_j.iter().map(|e| e.coeffs.iter().position(|c| !c.is_zero()).unwrap()).collect(),
    };
    let mut checks = BTreeMap::new();

    let subalgebra = n_j
        .iter()
        .enumerate()
        .all(|(i, u)| n_j[i..].iter().all(|v| span.contains(&sc.bracket(u, v))));
    checks.insert(CheckKind::Subalgebra, CheckStatus::from_bool(subalgebra));

    let stable = csa.basis.iter().all(|h| n_j.iter().all(|u| span.contains(&sc.bracket(h, u))));
    checks.insert(CheckKind::HStable, CheckStatus::from_bool(stable));

    let isotropic = n_j
        .iter()
        .enumerate()
        .all(|(i, u)| n_j[i + 1..].iter().all(|v| kirillov_form(sc, x, u, v).is_zero()));
    checks.insert(CheckKind::Isotropic, CheckStatus::from_bool(isotropic));

    let dim_omega = sc.dim() - sc.rank();
    let lagrangian = if 2 * n_j.len() == dim_omega {
        let mut stacked = rows(&n_j);
        stacked.extend(rows(&csa.basis));
        CheckStatus::from_bool(isotropic && rank(&stacked) == n_j.len() + csa.dim())
    } else {
        CheckStatus::Skipped
    };
    checks.insert(CheckKind::Lagrangian, lagrangian);

    let type_zero_split = sc.mode() == FormMode::Split && csa.admissible_f.is_empty();
    let full_n = {
        let mut s: Vec<Root> = sigma_j.to_vec();
        s.sort();
        s == positive.roots()
    };
    let transversal = if type_zero_split && full_n {
        let k: Vec<Element> = positive
            .roots()
            .iter()
            .map(|a| {
                let v = sc.root_vector(a);
                v.add(&sc.theta(&v))
            })
            .collect();
        let k_isotropic = k
            .iter()
            .enumerate()
            .all(|(i, u)| k[i + 1..].iter().all(|v| kirillov_form(sc, x, u, v).is_zero()));
        let mut stacked = rows(&k);
        stacked.extend(rows(&n_j));
        stacked.extend(rows(&csa.basis));
        CheckStatus::from_bool(k_isotropic && rank(&stacked) == sc.dim())
    } else {
        CheckStatus::Skipped
    };
    checks.insert(CheckKind::Transversal, transversal);

    let mut ruling = true;
    for y in ruling_samples(&n_j, opts.seed) {
        let moved = nilpotent_ad_orbit(sc, &y, x)?;
        ruling &= span.contains(&moved.sub(x));
    }
    let directions: Vec<Element> = n_j.iter().map(|y| sc.bracket(y, x)).collect();
    ruling &= rank(&rows(&directions)) == n_j.len();
    checks.insert(CheckKind::Ruling, CheckStatus::from_bool(ruling));

    let darboux = if type_zero_split {
        match darboux_basis(sc, x, &positive) {
            Ok(d) => CheckStatus::from_bool(d.pairing_identity_exact && d.max_deviation() <= 1e-12),
            Err(Error::Chamber(_)) => CheckStatus::Fail,
            Err(e) => return Err(e),
        }
    } else {
        CheckStatus::Skipped
    };
    checks.insert(CheckKind::Darboux, darboux);

    let name = match sc.mode() {
        FormMode::Split => format!("split {}", sys.name()),
        FormMode::Complexified => format!("complex {}", sys.name()),
    };
    Ok(FoliationReport {
        algebra: name,
        engine: Engine::Exact,
        orbit_type: csa.admissible_f.members.iter().map(Root::to_string).collect(),
        sigma_j: sigma_j.iter().map(Root::to_string).collect(),
        dim_n_j: n_j.len(),
        dim_g: sc.dim(),
        rank: sc.rank(),
        toroidal_dim: csa.toroidal_dim,
        checks,
        residuals: BTreeMap::new(),
        witness_x: Witness::Exact(sc.format_element(x)),
    })
}

/// A type-F foliation built and checked by the exact engine.
#[derive(Clone, Debug)]
pub struct ExactFoliation {
    pub csa: CsaDescriptor,
    pub x: Element,
    pub sigma: SigmaChain,
    pub report: FoliationReport,
}

/// The restricted roots of the algebra: `Δ` itself for a split form, `Δ` with multiplicity two
/// for a complex algebra viewed as a real one.
pub fn restricted_roots(sc: &StructureConstants) -> RestrictedRoots {
    let sys = sc.system().clone();
    match sc.mode() {
        FormMode::Split => RestrictedRoots::split(sys),
        FormMode::Complexified => {
            let mult = sys.positives().iter().map(|r| (r.clone(), 2)).collect();
            RestrictedRoots { system: sys, multiplicity: mult }
        }
    }
}

/// Builds `h_F`, a regular element, and `Σ_j` for the standard positive system, then runs every check.
pub fn foliate_exact(sc: &StructureConstants, f: &[Root], method: SigmaMethod, seed: u64) -> Result<ExactFoliation> {
    let csa = cayley_csa(sc, f)?;
    let x = regular_element(sc, &csa)?;
    let sigma = sigma_chain(&restricted_roots(sc), f, method)?;
    let opts = VerifyOptions { seed, positive: None };
    let report = verify_foliation(sc, &csa, &x, sigma.last(), &opts)?;
    Ok(ExactFoliation { csa, x, sigma, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::chevalley_basis;
    use crate::rootsys::{build_root_system, sigma1_simple, RestrictedRoots, Series};

    fn report(series: Series, r: usize, f: &[Root]) -> FoliationReport {
        let sys = build_root_system(series, r).unwrap();
        let sc = chevalley_basis(&sys, FormMode::Split);
        let csa = cayley_csa(&sc, f).unwrap();
        let x = regular_element(&sc, &csa).unwrap();
        let sigma = match f {
            [] => sys.positives().to_vec(),
            [b] => sigma1_simple(&RestrictedRoots::split(sys.clone()), b).unwrap(),
            _ => unreachable!(),
        };
        verify_foliation(&sc, &csa, &x, &sigma, &VerifyOptions::default()).unwrap()
    }

    #[test]
    fn a2_type_zero_is_lagrangian() {
        let r = report(Series::A, 2, &[]);
        assert_eq!(r.dim_n_j, 3);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.status(CheckKind::Lagrangian), CheckStatus::Pass);
        assert_eq!(r.status(CheckKind::Transversal), CheckStatus::Pass);
        assert_eq!(r.status(CheckKind::Darboux), CheckStatus::Pass);
    }

    #[test]
    fn a1_type_alpha_is_trivial() {
        let r = report(Series::A, 1, &[Root(vec![1])]);
        assert_eq!(r.dim_n_j, 0);
        assert!(r.passed());
    }

    #[test]
    fn a2_type_alpha_is_isotropic_not_lagrangian() {
        let r = report(Series::A, 2, &[Root(vec![1, 0])]);
        assert_eq!(r.dim_n_j, 2);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.status(CheckKind::Lagrangian), CheckStatus::Skipped);
    }
}
