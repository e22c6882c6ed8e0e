use std::collections::HashSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::structure::{Element, FormMode, StructureConstants};
use crate::error::{Error, Result};
use crate::exact::{frac, nullspace, q, rank, solve, Q};
use crate::rootsys::{is_admissible, AdmissibleSystem, Root, RootSystem};

/// A choice of positive roots, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSystem {
    roots: Vec<Root>,
}

impl PositiveSystem {
    pub fn standard(sys: &RootSystem) -> PositiveSystem {
        PositiveSystem { roots: sys.positives().to_vec() }
    }

    /// Image of the standard positive system under the simple reflection `s_i`.
    pub fn reflected(sys: &RootSystem, i: usize) -> PositiveSystem {
        let mut roots: Vec<Root> = sys.positives().iter().map(|r| sys.reflect(i, r)).collect();
        roots.sort();
        PositiveSystem { roots }
    }

    pub fn new(sys: &RootSystem, mut roots: Vec<Root>) -> Result<PositiveSystem> {
        roots.sort();
        roots.dedup();
        let set: HashSet<&Root> = roots.iter().collect();
        if roots.len() != sys.positives().len() {
            return Err(Error::Positivity(format!("expected {} roots, got {}", sys.positives().len(), roots.len())));
        }
        for r in &roots {
            sys.ensure_member(r)?;
            if set.contains(&r.neg()) {
                return Err(Error::Positivity(format!("{r} and its negative both chosen")));
            }
        }
        for a in &roots {
            for b in &roots {
                let s = a.add(b);
                if sys.contains(&s) && !set.contains(&s) {
                    return Err(Error::Positivity(format!("{a} + {b} is a root outside the choice")));
                }
            }
        }
        Ok(PositiveSystem { roots })
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.binary_search(r).is_ok()
    }
}

/// Basis of `n` (sum of positive root spaces) or of `n₋`.
pub fn iwasawa_n(sc: &StructureConstants, positive: &[Root], minus: bool) -> Result<Vec<Element>> {
    let ps = PositiveSystem::new(sc.system(), positive.to_vec())?;
    Ok(ps
        .roots()
        .iter()
        .flat_map(|r| sc.root_space(&if minus { r.neg() } else { r.clone() }))
        .collect())
}

/// A Cartan subalgebra together with its Cayley data.
#[derive(Clone, Debug, Serialize)]
pub struct CsaDescriptor {
    #[serde(skip)]
    pub basis: Vec<Element>,
    pub admissible_f: AdmissibleSystem,
    pub toroidal_dim: usize,
    pub vector_dim: usize,
    /// Number of leading basis vectors that lie in `∩ ker α_m` of the split Cartan.
    pub kernel_dim: usize,
    /// Exact `s²` with `E_α = s·x_α` normalized to `B(E_α, θE_α) = -2/|α|²`, one per member of F.
    pub radicands: Vec<String>,
}

impl CsaDescriptor {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `α` as a row of values on the split Cartan basis `h_1..h_r`.
fn root_row(sc: &StructureConstants, a: &Root) -> Vec<Q> {
    (0..sc.system().rank()).map(|i| q(sc.system().pairing_with_coroot(a, i))).collect()
}

/// `h_F = ∩ ker α_m ⊕ span(x_α - x_{-α})` on the split Cartan; `F = ∅` gives the full Cartan.
pub fn cayley_csa(sc: &StructureConstants, f: &[Root]) -> Result<CsaDescriptor> {
    let sys = sc.system();
    if !is_admissible(sys, f)? {
        let names: Vec<String> = f.iter().map(Root::to_string).collect();
        return Err(Error::Admissibility(names.join(", ")));
    }
    if sc.mode() == FormMode::Complexified && !f.is_empty() {
        return Err(Error::Admissibility("a complex algebra has no real roots".into()));
    }
    let admissible_f = AdmissibleSystem::new(sys, f.to_vec())?;
    let r = sys.rank();
    let dim = sc.dim();
    let rows: Vec<Vec<Q>> = admissible_f.members.iter().map(|a| root_row(sc, a)).collect();
    let kernel = if rows.is_empty() {
        (0..r).map(|i| { let mut v = vec![Q::zero(); r]; v[i] = Q::one(); v }).collect()
    } else {
        nullspace(&rows, r)
    };
    let mut basis: Vec<Element> = kernel
        .iter()
        .map(|v| {
            let mut e = Element::zero(dim);
            e.coeffs[..r].copy_from_slice(v);
            e
        })
        .collect();
    let kernel_dim = basis.len();
    if let Some(imag) = (0..r).map(|i| sc.imaginary(i)).collect::<Option<Vec<_>>>() {
        for j in imag {
            basis.push(sc.basis(j));
        }
    }
    let mut radicands = Vec::new();
    for a in &admissible_f.members {
        let x = sc.root_vector(a);
        basis.push(x.add(&sc.theta(&x)));
        let b = sc.killing_form(&x, &sc.root_vector(&a.neg()));
        radicands.push(q(2) / (killing_norm2(sc, a) * b));
    }
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i + 1..] {
            if !sc.bracket(u, v).is_zero() {
                return Err(Error::Inconsistency("Cayley Cartan subalgebra is not abelian".into()));
            }
        }
    }
    if basis.len() != sc.rank() {
        return Err(Error::Inconsistency(format!("Cartan subalgebra of dimension {} ≠ rank", basis.len())));
    }
    let toroidal_dim = match sc.mode() {
        FormMode::Split => admissible_f.len(),
        FormMode::Complexified => r,
    };
    Ok(CsaDescriptor {
        vector_dim: basis.len() - toroidal_dim,
        basis,
        admissible_f,
        toroidal_dim,
        kernel_dim,
        radicands: radicands.iter().map(Q::to_string).collect(),
    })
}

/// `|α|²` for the form dual to the Killing form on the split Cartan.
pub fn killing_norm2(sc: &StructureConstants, a: &Root) -> Q {
    let h = killing_dual(sc, a);
    sc.killing_form(&h, &h)
}

/// `H_α` in the split Cartan with `B(H_α, h) = α(h)`.
pub fn killing_dual(sc: &StructureConstants, a: &Root) -> Element {
    let r = sc.system().rank();
    let gram: Vec<Vec<Q>> = (0..r)
        .map(|i| (0..r).map(|j| sc.killing_form(&sc.basis(i), &sc.basis(j))).collect())
        .collect();
    let c = solve(&gram, &root_row(sc, a)).expect("Killing form is nondegenerate on the Cartan");
    let mut e = Element::zero(sc.dim());
    e.coeffs[..r].copy_from_slice(&c);
    e
}

/// `ρ^∨`-type element with every simple root equal to one.
pub fn rho_check(sc: &StructureConstants) -> Element {
    let r = sc.system().rank();
    let a = sc.system().cartan_matrix();
    let at: Vec<Vec<Q>> = (0..r).map(|i| (0..r).map(|j| q(a[j][i])).collect()).collect();
    let c = solve(&at, &vec![Q::one(); r]).expect("Cartan matrix is invertible");
    let mut e = Element::zero(sc.dim());
    e.coeffs[..r].copy_from_slice(&c);
    e
}

/// An element with `α(X) > 0` on every root of the positive system (sum of its coroots).
pub fn chamber_element(sc: &StructureConstants, positive: &PositiveSystem) -> Element {
    let mut x = Element::zero(sc.dim());
    for r in positive.roots() {
        x = x.add(&sc.coroot(r));
    }
    x
}

/// Dimension of the centralizer of `x`.
pub fn centralizer_dim(sc: &StructureConstants, x: &Element) -> usize {
    sc.dim() - rank(&sc.ad(x))
}

/// A regular element of the given Cartan subalgebra.
///
/// For `F = ∅` this is `ρ^∨` (positive chamber). Otherwise the kernel part is `ρ^∨` projected
/// onto `∩ ker α_m` along the coroots, plus distinct multiples of `x_α - x_{-α}`, perturbed on a
/// fixed rational schedule until the centralizer has dimension `rank`.
pub fn regular_element(sc: &StructureConstants, csa: &CsaDescriptor) -> Result<Element> {
    regular_element_from(sc, csa, &rho_check(sc))
}

pub fn regular_element_from(sc: &StructureConstants, csa: &CsaDescriptor, seed: &Element) -> Result<Element> {
    let f = &csa.admissible_f.members;
    let r = sc.system().rank();
    for step in 0..24i64 {
        let mut base = seed.clone();
        if step > 0 {
            for i in 0..r {
                base.coeffs[i] += frac(((step * (i as i64 + 3)) % 7) + 1, 11 * step + 2);
            }
        }
        for a in f {
            let v = sc.root_value(a, &base);
            base.add_scaled(&sc.coroot(a), -v / q(2));
        }
        for (m, a) in f.iter().enumerate() {
            let x = sc.root_vector(a);
            base.add_scaled(&x.add(&sc.theta(&x)), frac(2 * m as i64 + 3 + step, 2));
        }
        if centralizer_dim(sc, &base) == sc.rank() {
            if !csa.basis.iter().all(|h| sc.bracket(h, &base).is_zero()) {
                return Err(Error::Stabilizer("regular element does not commute with the Cartan".into()));
            }
            return Ok(base);
        }
    }
    Err(Error::RegularitySearch(format!("no regular element after 24 perturbations for {}", sc.system().name())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::chevalley_basis;
    use crate::rootsys::{build_root_system, Series};

    fn split(series: Series, rank: usize) -> StructureConstants {
        chevalley_basis(&build_root_system(series, rank).unwrap(), FormMode::Split)
    }

    #[test]
    fn empty_f_gives_split_cartan() {
        let sc = split(Series::A, 2);
        let csa = cayley_csa(&sc, &[]).unwrap();
        assert_eq!((csa.dim(), csa.toroidal_dim, csa.vector_dim), (2, 0, 2));
    }

    #[test]
    fn sl2_cayley_is_rotation() {
        let sc = split(Series::A, 1);
        let csa = cayley_csa(&sc, &[Root(vec![1])]).unwrap();
        let e = sc.root_vector(&Root(vec![1]));
        let f = sc.root_vector(&Root(vec![-1]));
        assert_eq!(csa.basis, vec![e.sub(&f)]);
        assert_eq!(csa.toroidal_dim, 1);
    }

    #[test]
    fn a2_single_transform() {
        let sc = split(Series::A, 2);
        let csa = cayley_csa(&sc, &[Root(vec![1, 0])]).unwrap();
        assert_eq!((csa.dim(), csa.toroidal_dim, csa.vector_dim), (2, 1, 1));
        let x = regular_element(&sc, &csa).unwrap();
        assert_eq!(centralizer_dim(&sc, &x), 2);
    }

    #[test]
    fn non_admissible_rejected() {
        let sc = split(Series::A, 2);
        assert!(matches!(
            cayley_csa(&sc, &[Root(vec![1, 0]), Root(vec![0, 1])]),
            Err(Error::Admissibility(_))
        ));
    }

    #[test]
    fn rho_check_takes_heights() {
        let sc = split(Series::A, 2);
        let x = rho_check(&sc);
        for r in sc.system().roots() {
            assert_eq!(sc.root_value(r, &x), q(r.height()));
        }
    }

    #[test]
    fn positive_system_validation() {
        let sys = build_root_system(Series::A, 2).unwrap();
        assert!(PositiveSystem::new(&sys, sys.positives().to_vec()).is_ok());
        let refl = PositiveSystem::reflected(&sys, 0);
        assert!(PositiveSystem::new(&sys, refl.roots().to_vec()).is_ok());
        let bad = vec![Root(vec![1, 0]), Root(vec![0, 1]), Root(vec![-1, -1])];
        assert!(matches!(PositiveSystem::new(&sys, bad), Err(Error::Positivity(_))));
    }

    #[test]
    fn iwasawa_dimensions() {
        let sc = split(Series::G, 2);
        let pos = sc.system().positives().to_vec();
        assert_eq!(iwasawa_n(&sc, &pos, false).unwrap().len(), 6);
        let sc = split(Series::A, 3);
        let pos = sc.system().positives().to_vec();
        assert_eq!(iwasawa_n(&sc, &pos, false).unwrap().len(), 6);
    }
}
