use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use super::algebra::MatrixAlgebra;
use super::linalg::{cluster, columns, generic_weights, null_space};
use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, Root, RootSystem, Series, RestrictedRoots, MAX_RANK};

/// One restricted root space `g_λ`.
#[derive(Clone, Debug)]
pub struct RestrictedSpace {
    pub root: Root,
    /// `λ(H_i)` on the `a` basis.
    pub functional: Vec<f64>,
    pub multiplicity: usize,
    /// Orthonormal coordinate vectors spanning `g_λ`.
    pub basis: Vec<DVector<f64>>,
}

#[derive(Clone, Debug)]
pub struct RestrictedDatum {
    pub a_basis: Vec<DVector<f64>>,
    /// Every nonzero restricted root, ordered like the root system.
    pub spaces: Vec<RestrictedSpace>,
    pub m_basis: Vec<DVector<f64>>,
    pub t_basis: Vec<DVector<f64>>,
    pub restricted: RestrictedRoots,
    /// Name of the restricted root system, with `B2` for `B2 ≅ C2` and `A3` for `D3`.
    pub sigma_type: String,
    /// Generic element of `a` fixing the positive system.
    pub generic: DVector<f64>,
}

impl RestrictedDatum {
    pub fn real_rank(&self) -> usize {
        self.a_basis.len()
    }

    pub fn rank(&self) -> usize {
        self.a_basis.len() + self.t_basis.len()
    }

    pub fn is_split(&self) -> bool {
        self.t_basis.is_empty()
    }

    /// `t` first, then `a`.
    pub fn h0_basis(&self) -> Vec<DVector<f64>> {
        self.t_basis.iter().chain(&self.a_basis).cloned().collect()
    }

    pub fn space(&self, r: &Root) -> Option<&RestrictedSpace> {
        self.spaces.iter().find(|s| &s.root == r)
    }

    /// Basis of `⊕_{λ∈set} g_λ`.
    pub fn root_space_sum(&self, set: &[Root]) -> Vec<DVector<f64>> {
        set.iter().filter_map(|r| self.space(r)).flat_map(|s| s.basis.iter().cloned()).collect()
    }

    /// Basis of the Iwasawa `n`.
    pub fn iwasawa_n(&self) -> Vec<DVector<f64>> {
        self.root_space_sum(self.restricted.positives())
    }

    pub fn dim_n(&self) -> usize {
        self.restricted.dimension(self.restricted.positives())
    }

    /// Gram matrix of the Killing form on the `a` basis.
    pub fn a_gram(&self, alg: &MatrixAlgebra) -> DMatrix<f64> {
        let a = &self.a_basis;
        DMatrix::from_fn(a.len(), a.len(), |i, j| alg.killing_form(&a[i], &a[j]))
    }
}

/// Restricted roots, `m`, `t`, and `h₀ = t ⊕ a` for the canonical `a` of the family.
pub fn restricted_decomposition(alg: &MatrixAlgebra) -> Result<RestrictedDatum> {
    let tol = alg.tol;
    let n = alg.dim();
    let dk = alg.dim_k();
    let a_basis: Vec<DVector<f64>> =
        alg.family.canonical_a().iter().map(|p| alg.coords_of_parameters(p)).collect();
    let r = a_basis.len();
    for h in &a_basis {
        if alg.k_part(h).norm() > tol.structure * h.norm() {
            return Err(Error::Maximality(format!("{}: canonical a leaves p", alg.family)));
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            if alg.bracket(&a_basis[i], &a_basis[j]).norm() > tol.structure * a_basis[i].norm() * a_basis[j].norm() {
                return Err(Error::Maximality(format!("{}: canonical a is not abelian", alg.family)));
            }
        }
    }
    let ads: Vec<DMatrix<f64>> = a_basis.iter().map(|h| alg.ad(h)).collect();
    let stacked_on = |cols: std::ops::Range<usize>| -> DMatrix<f64> {
        let width = cols.len();
        let mut s = DMatrix::zeros(n * r, width);
        for (i, a) in ads.iter().enumerate() {
            s.view_mut((i * n, 0), (n, width)).copy_from(&a.columns(cols.start, width));
        }
        s
    };
    let centralizer_p = null_space(&stacked_on(dk..n), tol.cluster);
    if centralizer_p.ncols() != r {
        return Err(Error::Maximality(format!(
            "{}: centralizer of a in p has dimension {} > {r}",
            alg.family,
            centralizer_p.ncols()
        )));
    }

    let w = generic_weights(r);
    let generic = a_basis.iter().zip(&w).fold(DVector::zeros(n), |acc, (h, &c)| acc + h * c);
    let ad_gen = alg.ad(&generic);
    let sym = (&ad_gen + ad_gen.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let scale = eig.eigenvalues.amax().max(1.0);
    let values: Vec<(f64, usize)> = eig.eigenvalues.iter().copied().zip(0..n).collect();
    let mut spaces_raw: Vec<(Vec<f64>, Vec<DVector<f64>>)> = Vec::new();
    let mut zero_dim = 0;
    for group in cluster(&values, tol.cluster, scale) {
        let mean = group.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / group.len() as f64;
        let vecs: Vec<DVector<f64>> = group.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
        if mean.abs() <= tol.cluster * scale {
            zero_dim += group.len();
            continue;
        }
        let v = columns(&vecs, n);
        let functional: Vec<f64> = ads
            .iter()
            .map(|a| (v.transpose() * a * &v).trace() / group.len() as f64)
            .collect();
        for (a, &lam) in ads.iter().zip(&functional) {
            let resid = (a * &v - &v * lam).norm();
            if resid > tol.verify * scale * (group.len() as f64).sqrt() {
                return Err(Error::SpectralTolerance(format!(
                    "{}: restricted root space is not a joint eigenspace (residual {resid:.3e})",
                    alg.family
                )));
            }
        }
        spaces_raw.push((functional, vecs));
    }

    let gen_value = |f: &[f64]| f.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
    let positives: Vec<&(Vec<f64>, Vec<DVector<f64>>)> =
        spaces_raw.iter().filter(|(f, _)| gen_value(f) > 0.0).collect();
    let close = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol.verify * scale);
    let sum = |x: &[f64], y: &[f64]| -> Vec<f64> { x.iter().zip(y).map(|(a, b)| a + b).collect() };
    let mut simple: Vec<Vec<f64>> = positives
        .iter()
        .map(|(f, _)| f.clone())
        .filter(|f| {
            !positives
                .iter()
                .any(|(g, _)| positives.iter().any(|(h, _)| close(&sum(g, h), f)))
        })
        .collect();
    simple.sort_by(|x, y| gen_value(x).total_cmp(&gen_value(y)));
    if simple.len() != r {
        return Err(Error::SpectralTolerance(format!(
            "{}: found {} simple restricted roots for real rank {r}",
            alg.family,
            simple.len()
        )));
    }

    let a_gram = DMatrix::from_fn(r, r, |i, j| alg.killing_form(&a_basis[i], &a_basis[j]));
    let ginv = a_gram
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Inconsistency("degenerate Killing form on a".into()))?;
    let inner = |x: &[f64], y: &[f64]| -> f64 {
        let xv = DVector::from_row_slice(x);
        let yv = DVector::from_row_slice(y);
        (xv.transpose() * &ginv * yv)[(0, 0)]
    };
    let simple_mat = DMatrix::from_fn(r, r, |i, j| simple[j][i]);
    let simple_inv = simple_mat
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::SpectralTolerance("simple restricted roots are dependent".into()))?;
    let to_root = |f: &[f64]| -> Result<Root> { integer_coords(&simple_inv, f) };

    let mut spaces = Vec::new();
    let mut multiplicity = BTreeMap::new();
    for (f, vecs) in &spaces_raw {
        let root = to_root(f)?;
        if root.is_positive() {
            multiplicity.insert(root.clone(), vecs.len());
        }
        spaces.push(RestrictedSpace { root, functional: f.clone(), multiplicity: vecs.len(), basis: vecs.clone() });
    }
    spaces.sort_by(|x, y| x.root.cmp(&y.root));
    let cartan = cartan_from(&simple, &inner);
    let positive_roots: Vec<Root> = multiplicity.keys().cloned().collect();
    let (series, sigma_type) = identify(&cartan, &positive_roots)?;
    let system = RootSystem::from_parts(series, cartan, positive_roots)?;
    if system.roots().len() != spaces.len() {
        return Err(Error::Inconsistency("restricted roots are not closed under negation".into()));
    }
    let restricted = RestrictedRoots::new(system, multiplicity)?;

    // m = Z_k(a); t = centralizer in m of a generic element of m.
    let m_cols = null_space(&stacked_on(0..dk), tol.cluster);
    let m_basis: Vec<DVector<f64>> = (0..m_cols.ncols())
        .map(|c| {
            let mut v = DVector::zeros(n);
            v.rows_mut(0, dk).copy_from(&m_cols.column(c));
            v
        })
        .collect();
    if zero_dim != m_basis.len() + r {
        return Err(Error::SpectralTolerance(format!(
            "{}: zero eigenspace has dimension {zero_dim}, expected dim m + dim a = {}",
            alg.family,
            m_basis.len() + r
        )));
    }
    let t_basis = if m_basis.is_empty() {
        Vec::new()
    } else {
        let wm = generic_weights(m_basis.len());
        let tgen = m_basis.iter().zip(&wm).fold(DVector::zeros(n), |acc, (v, &c)| acc + v * c);
        let ad_t = alg.ad(&tgen) * columns(&m_basis, n);
        let kern = null_space(&ad_t, tol.cluster);
        let mm = columns(&m_basis, n);
        (0..kern.ncols()).map(|c| &mm * kern.column(c)).collect()
    };
    let datum = RestrictedDatum { a_basis, spaces, m_basis, t_basis, restricted, sigma_type, generic };
    let h0 = datum.h0_basis();
    for i in 0..h0.len() {
        for j in i + 1..h0.len() {
            if alg.bracket(&h0[i], &h0[j]).norm() > tol.verify * h0[i].norm() * h0[j].norm() {
                return Err(Error::Inconsistency(format!("{}: h0 is not abelian", alg.family)));
            }
        }
    }
    let total: usize = datum.spaces.iter().map(|s| s.multiplicity).sum::<usize>() + datum.m_basis.len() + r;
    if total != n {
        return Err(Error::Inconsistency(format!("{}: restricted decomposition misses dimensions", alg.family)));
    }
    Ok(datum)
}

pub(crate) fn integer_coords(simple_inv: &DMatrix<f64>, f: &[f64]) -> Result<Root> {
    let x = simple_inv * DVector::from_row_slice(f);
    let rounded: Vec<i64> = x.iter().map(|v| v.round() as i64).collect();
    let err = x.iter().zip(&rounded).map(|(v, &k)| (v - k as f64).abs()).fold(0.0, f64::max);
    if err > 1e-6 {
        return Err(Error::SpectralTolerance(format!("root is not an integral combination (error {err:.3e})")));
    }
    let root = Root(rounded);
    if !(root.0.iter().all(|&c| c >= 0) || root.0.iter().all(|&c| c <= 0)) {
        return Err(Error::SpectralTolerance(format!("mixed-sign root {root}")));
    }
    Ok(root)
}

pub(crate) fn cartan_from(simple: &[Vec<f64>], inner: &dyn Fn(&[f64], &[f64]) -> f64) -> Vec<Vec<i64>> {
    let r = simple.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (2.0 * inner(&simple[i], &simple[j]) / inner(&simple[i], &simple[i])).round() as i64)
                .collect()
        })
        .collect()
}

/// Identifies a root system given by a Cartan matrix and positive roots by comparing root counts,
/// root lengths, and reducedness with the generated simple types. Decomposable systems are named
/// by their components and carry the series of the first component.
pub(crate) fn identify(cartan: &[Vec<i64>], positives: &[Root]) -> Result<(Series, String)> {
    let r = cartan.len();
    let components = components(cartan);
    if components.len() > 1 {
        let mut names = Vec::new();
        let mut first = None;
        for comp in &components {
            let sub: Vec<Vec<i64>> = comp.iter().map(|&i| comp.iter().map(|&j| cartan[i][j]).collect()).collect();
            let sub_pos: Vec<Root> = positives
                .iter()
                .filter(|p| p.0.iter().enumerate().all(|(i, &c)| c == 0 || comp.contains(&i)))
                .map(|p| Root(comp.iter().map(|&i| p.0[i]).collect()))
                .collect();
            let (s, name) = identify(&sub, &sub_pos)?;
            first.get_or_insert(s);
            names.push(name);
        }
        return Ok((first.unwrap(), names.join("+")));
    }
    let probe = RootSystem::from_parts(Series::A, cartan.to_vec(), positives.to_vec())?;
    let signature = |s: &RootSystem| (s.positives().len(), s.is_reduced(), s.long_short_counts());
    let target = signature(&probe);
    for series in [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G, Series::BC] {
        if r > MAX_RANK {
            break;
        }
        if let Ok(candidate) = build_root_system(series, r) {
            if signature(&candidate) == target {
                return Ok((series, format!("{series}{r}")));
            }
        }
    }
    Err(Error::Inconsistency(format!("unrecognized root system of rank {r} with {} positive roots", target.0)))
}

fn components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let r = cartan.len();
    let mut seen = vec![false; r];
    let mut out = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for u in 0..r {
                if !seen[u] && cartan[v][u] != 0 {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            i += 1;
        }
        comp.sort();
        out.push(comp);
    }
    out
}
