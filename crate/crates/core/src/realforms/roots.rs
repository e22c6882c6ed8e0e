use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::algebra::MatrixAlgebra;
use super::decomposition::{cartan_from, identify, integer_coords, RestrictedDatum};
use super::linalg::{cluster, columns, generic_weights, null_space};
use crate::error::{Error, Result};
use crate::rootsys::{max_strongly_orthogonal, Root, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Real,
    Imaginary,
    Complex,
}

/// A root of `g^C` with respect to `h₀^C`.
#[derive(Clone, Debug)]
pub struct FullRoot {
    pub root: Root,
    /// Values on the `a` basis.
    pub a_values: Vec<f64>,
    /// `ν` with `α(T_j) = i·ν_j` on the orthonormal `t` basis.
    pub t_values: Vec<f64>,
    pub kind: RootKind,
    /// `H_α = dual_real + i·dual_imag` with `B(H_α, H) = α(H)` on `h₀`.
    pub dual_real: DVector<f64>,
    pub dual_imag: DVector<f64>,
    /// Real root vector `E_α` (real roots only).
    pub root_vector: Option<DVector<f64>>,
    /// Restricted root, or `None` when the restriction vanishes.
    pub restriction: Option<Root>,
}

#[derive(Clone, Debug)]
pub struct FullRootData {
    pub system: RootSystem,
    pub type_name: String,
    pub roots: Vec<FullRoot>,
}

impl FullRootData {
    pub fn get(&self, r: &Root) -> Option<&FullRoot> {
        self.roots.iter().find(|f| &f.root == r)
    }

    pub fn real_positive(&self) -> Vec<Root> {
        self.roots
            .iter()
            .filter(|f| f.kind == RootKind::Real && f.root.is_positive())
            .map(|f| f.root.clone())
            .collect()
    }

    /// A maximum set of pairwise strongly orthogonal positive real roots.
    pub fn max_strongly_orthogonal_real(&self) -> Result<Vec<Root>> {
        max_strongly_orthogonal(&self.system, &self.real_positive())
    }

    /// `B(H_α, H_β)`, real for any pair of roots.
    pub fn inner(&self, alg: &MatrixAlgebra, a: &FullRoot, b: &FullRoot) -> f64 {
        alg.killing_form(&a.dual_real, &b.dual_real) - alg.killing_form(&a.dual_imag, &b.dual_imag)
    }
}

/// Joint eigendecomposition of `ad(h₀)` on `g^C`, classification of every root, and the
/// restriction map onto the restricted roots.
pub fn full_roots(alg: &MatrixAlgebra, datum: &RestrictedDatum) -> Result<FullRootData> {
    let tol = alg.tol;
    let n = alg.dim();
    let t = &datum.t_basis;
    let a = &datum.a_basis;
    let r_t = t.len();
    let rank = datum.rank();
    let ad_t: Vec<DMatrix<f64>> = t.iter().map(|x| alg.ad(x)).collect();
    let wt = generic_weights(r_t);
    let scale = a.iter().chain(t).map(|h| alg.ad(h).norm()).fold(1.0, f64::max);

    // Each block is a restricted space (or g₀ = m ⊕ a) with its a-functional.
    let mut blocks: Vec<(Vec<f64>, Vec<DVector<f64>>)> =
        datum.spaces.iter().map(|s| (s.functional.clone(), s.basis.clone())).collect();
    blocks.push((vec![0.0; a.len()], datum.m_basis.iter().chain(a).cloned().collect()));

    let mut raw: Vec<(Vec<f64>, Vec<f64>, Option<DVector<f64>>)> = Vec::new();
    let mut zero_count = 0;
    for (lam, vecs) in &blocks {
        let v = columns(vecs, n);
        let d = vecs.len();
        let restricted: Vec<DMatrix<f64>> = ad_t.iter().map(|x| v.transpose() * x * &v).collect();
        let herm = restricted
            .iter()
            .zip(&wt)
            .fold(DMatrix::<Complex64>::zeros(d, d), |acc, (s, &w)| acc + s.map(|x| Complex64::new(0.0, x * w)));
        let eig = herm.symmetric_eigen();
        let values: Vec<(f64, usize)> = eig.eigenvalues.iter().copied().zip(0..d).collect();
        let lam_zero = lam.iter().all(|x| x.abs() <= tol.cluster * scale);
        for group in cluster(&values, tol.cluster, scale) {
            let mu = eig.eigenvalues[group[0]];
            if lam_zero && mu.abs() <= tol.cluster * scale {
                zero_count += group.len();
                continue;
            }
            if group.len() > 1 {
                return Err(Error::SpectralTolerance(format!(
                    "{}: {} eigenvectors share the value {mu:.6e} on the generic torus element",
                    alg.family,
                    group.len()
                )));
            }
            let u = eig.eigenvectors.column(group[0]);
            let nu: Vec<f64> = restricted
                .iter()
                .map(|s| {
                    let su = s.map(|x| Complex64::new(x, 0.0)) * u;
                    u.iter().zip(su.iter()).map(|(x, y)| x.conj() * y).sum::<Complex64>().im
                })
                .collect();
            let is_real = nu.iter().all(|x| x.abs() <= tol.cluster * scale);
            let vector = if is_real {
                let mut stacked = DMatrix::zeros(d * r_t.max(1), d);
                for (i, s) in restricted.iter().enumerate() {
                    stacked.view_mut((i * d, 0), (d, d)).copy_from(s);
                }
                let kern = null_space(&stacked, tol.cluster);
                if kern.ncols() != 1 {
                    return Err(Error::RealRootExtraction(format!(
                        "{}: real root space has real dimension {}",
                        alg.family,
                        kern.ncols()
                    )));
                }
                Some(&v * kern.column(0))
            } else {
                None
            };
            raw.push((lam.clone(), nu, vector));
        }
    }
    if zero_count != rank || raw.len() != n - rank {
        return Err(Error::SpectralTolerance(format!(
            "{}: found {} roots and a {}-dimensional zero weight space",
            alg.family,
            raw.len(),
            zero_count
        )));
    }

    let wa = generic_weights(a.len());
    let dot = |x: &[f64], w: &[f64]| x.iter().zip(w).map(|(p, q)| p * q).sum::<f64>();
    let positive = |lam: &[f64], nu: &[f64]| {
        let va = dot(lam, &wa);
        if va.abs() > tol.cluster * scale {
            va > 0.0
        } else {
            dot(nu, &wt) > 0.0
        }
    };
    let a_gram = datum.a_gram(alg);
    let ginv = a_gram.try_inverse().ok_or_else(|| Error::Inconsistency("degenerate Killing form on a".into()))?;
    // t is orthonormal for B_θ, so B = −I there and the dual inner product on ν is the plain dot.
    let inner = |x: &[f64], y: &[f64]| -> f64 {
        let (la, na) = x.split_at(a.len());
        let (lb, nb) = y.split_at(a.len());
        let la = DVector::from_row_slice(la);
        let lb = DVector::from_row_slice(lb);
        (la.transpose() * &ginv * lb)[(0, 0)] + dot(na, nb)
    };
    let joined: Vec<Vec<f64>> = raw.iter().map(|(l, nu, _)| l.iter().chain(nu).copied().collect()).collect();
    let pos_idx: Vec<usize> = (0..raw.len()).filter(|&i| positive(&raw[i].0, &raw[i].1)).collect();
    let close = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(p, q)| (p - q).abs() <= tol.verify * scale);
    let mut simple: Vec<Vec<f64>> = pos_idx
        .iter()
        .map(|&i| joined[i].clone())
        .filter(|f| {
            !pos_idx.iter().any(|&g| {
                pos_idx.iter().any(|&h| {
                    let s: Vec<f64> = joined[g].iter().zip(&joined[h]).map(|(p, q)| p + q).collect();
                    close(&s, f)
                })
            })
        })
        .collect();
    let order = |x: &Vec<f64>| (dot(&x[..a.len()], &wa), dot(&x[a.len()..], &wt));
    simple.sort_by(|x, y| {
        let (ox, oy) = (order(x), order(y));
        ox.0.total_cmp(&oy.0).then(ox.1.total_cmp(&oy.1))
    });
    if simple.len() != rank {
        return Err(Error::SpectralTolerance(format!(
            "{}: found {} simple roots for rank {rank}",
            alg.family,
            simple.len()
        )));
    }
    let simple_mat = DMatrix::from_fn(rank, rank, |i, j| simple[j][i]);
    let simple_inv = simple_mat
        .try_inverse()
        .ok_or_else(|| Error::SpectralTolerance("simple roots are dependent".into()))?;
    let cartan = cartan_from(&simple, &inner);

    let mut roots = Vec::new();
    for (i, (lam, nu, vector)) in raw.into_iter().enumerate() {
        let root = integer_coords(&simple_inv, &joined[i])?;
        if root.is_positive() != positive(&lam, &nu) {
            return Err(Error::Inconsistency(format!("{}: positivity of {root} is inconsistent", alg.family)));
        }
        let restriction = if lam.iter().all(|x| x.abs() <= tol.cluster * scale) {
            None
        } else {
            let s = datum
                .spaces
                .iter()
                .find(|s| close(&s.functional, &lam))
                .ok_or_else(|| Error::Inconsistency(format!("{}: restriction of {root} is not a restricted root", alg.family)))?;
            if root.is_positive() != s.root.is_positive() {
                return Err(Error::Inconsistency(format!("{}: {root} restricts to {} of the other sign", alg.family, s.root)));
            }
            Some(s.root.clone())
        };
        let coeffs = &ginv * DVector::from_row_slice(&lam);
        let dual_real = a.iter().zip(coeffs.iter()).fold(DVector::zeros(n), |acc, (h, &c)| acc + h * c);
        let dual_imag = t.iter().zip(&nu).fold(DVector::zeros(n), |acc, (h, &c)| acc - h * c);
        let kind = if vector.is_some() {
            RootKind::Real
        } else if lam.iter().all(|x| x.abs() <= tol.cluster * scale) {
            RootKind::Imaginary
        } else {
            RootKind::Complex
        };
        roots.push(FullRoot { root, a_values: lam, t_values: nu, kind, dual_real, dual_imag, root_vector: vector, restriction });
    }
    roots.sort_by(|x, y| x.root.cmp(&y.root));
    for s in &datum.spaces {
        if !roots.iter().any(|f| f.restriction.as_ref() == Some(&s.root)) {
            return Err(Error::Inconsistency(format!("{}: restricted root {} is not a restriction", alg.family, s.root)));
        }
    }
    let positives: Vec<Root> = roots.iter().filter(|f| f.root.is_positive()).map(|f| f.root.clone()).collect();
    let (series, type_name) = identify(&cartan, &positives)?;
    let system = RootSystem::from_parts(series, cartan, positives)?;
    if system.roots().len() != roots.len() {
        return Err(Error::Inconsistency(format!("{}: roots are not closed under negation", alg.family)));
    }
    Ok(FullRootData { system, type_name, roots })
}
