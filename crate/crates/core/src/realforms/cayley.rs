use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::algebra::MatrixAlgebra;
use super::decomposition::RestrictedDatum;
use super::linalg::{columns, generic_weights, null_space, orthonormal_span, rank_scaled, residual_outside};
use super::roots::{FullRootData, RootKind};
use crate::error::{Error, Result};
use crate::rootsys::{is_admissible, Root};

/// Diagnostics of one Cayley transform along a chain.
#[derive(Clone, Debug, Serialize)]
pub struct CayleyStep {
    pub root: String,
    pub p_dim_before: usize,
    pub p_dim_after: usize,
    pub k_dim_after: usize,
    /// Largest relative distance of a later `H_β` from the transformed Cartan subalgebra.
    pub h_dual_residual: f64,
    /// Largest relative norm of `[E_β, E_β']` and `[E_β, θE_β']` over later pairs.
    pub strong_orthogonality_residual: f64,
    /// Largest relative norm of `[E_α + θE_α, E_β]` over later `β`.
    pub e_fixed_residual: f64,
}

#[derive(Clone, Debug)]
pub struct CayleyChain {
    pub f: Vec<Root>,
    pub h_basis: Vec<DVector<f64>>,
    pub steps: Vec<CayleyStep>,
    pub x_regular: DVector<f64>,
    pub toroidal_dim: usize,
    pub vector_dim: usize,
}

impl CayleyChain {
    /// Every Lemma assertion held within `tol` and each step lowered the `p`-dimension by one.
    pub fn lemma_holds(&self, tol: f64) -> bool {
        self.steps.iter().all(|s| {
            s.p_dim_after + 1 == s.p_dim_before
                && s.h_dual_residual <= tol
                && s.strong_orthogonality_residual <= tol
                && s.e_fixed_residual <= tol
        })
    }
}

fn split_dims(alg: &MatrixAlgebra, h: &[DVector<f64>]) -> (usize, usize) {
    let n = alg.dim();
    let tol = alg.tol.cluster;
    let kp = columns(&h.iter().map(|v| alg.k_part(v)).collect::<Vec<_>>(), n);
    let pp = columns(&h.iter().map(|v| alg.p_part(v)).collect::<Vec<_>>(), n);
    let scale = h.iter().map(|v| v.norm()).fold(0.0, f64::max);
    (rank_scaled(&kp, tol, scale), rank_scaled(&pp, tol, scale))
}

fn rel(v: &DVector<f64>, scale: f64) -> f64 {
    v.norm() / scale.max(f64::MIN_POSITIVE)
}

/// Applies the Cayley transforms of the real roots in `f` to `h₀` one after another.
pub fn cayley_chain(alg: &MatrixAlgebra, datum: &RestrictedDatum, full: &FullRootData, f: &[Root]) -> Result<CayleyChain> {
    let n = alg.dim();
    let tol = alg.tol;
    let mut entries = Vec::new();
    for r in f {
        let fr = full.get(r).ok_or_else(|| Error::Membership(format!("{r} is not a root")))?;
        if !r.is_positive() || fr.kind != RootKind::Real {
            return Err(Error::Admissibility(format!("{r} is not a positive real root")));
        }
        let e = fr
            .root_vector
            .clone()
            .ok_or_else(|| Error::RealRootExtraction(format!("{r}: no real root vector")))?;
        let norm2 = full.inner(alg, fr, fr);
        // B(E, θE) = −|E|² in these coordinates; scale to −2/|α|².
        let e = &e * ((2.0 / norm2).sqrt() / e.norm());
        entries.push((r.clone(), e, fr.dual_real.clone()));
    }
    if !is_admissible(&full.system, f)? {
        return Err(Error::Admissibility(format!(
            "{{{}}} is not strongly orthogonal",
            f.iter().map(Root::to_string).collect::<Vec<_>>().join(", ")
        )));
    }
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let b = alg.killing_form(&entries[i].2, &entries[j].2);
            if b.abs() > tol.verify * entries[i].2.norm() * entries[j].2.norm() {
                return Err(Error::Admissibility(format!("{} and {} are not orthogonal", entries[i].0, entries[j].0)));
            }
        }
    }

    let mut h = datum.h0_basis();
    let mut steps = Vec::new();
    for (m, (root, e, h_alpha)) in entries.iter().enumerate() {
        let (_, p_before) = split_dims(alg, &h);
        let row = DMatrix::from_fn(1, h.len(), |_, j| alg.killing_form(&h[j], h_alpha));
        let kern = null_space(&row, tol.cluster);
        let hm = columns(&h, n);
        let mut next: Vec<DVector<f64>> = (0..kern.ncols()).map(|c| &hm * kern.column(c)).collect();
        let cayley = e + alg.theta(e);
        next.push(cayley.clone());
        if next.len() != datum.rank() {
            return Err(Error::Inconsistency(format!("Cayley transform of {root} changed the rank")));
        }
        for i in 0..next.len() {
            for j in i + 1..next.len() {
                if alg.bracket(&next[i], &next[j]).norm() > tol.verify * next[i].norm() * next[j].norm() {
                    return Err(Error::Inconsistency(format!("Cayley transform of {root} is not abelian")));
                }
            }
        }
        let span = orthonormal_span(&columns(&next, n), tol.cluster);
        let later = &entries[m + 1..];
        let mut h_dual_residual: f64 = 0.0;
        let mut so_residual: f64 = 0.0;
        let mut fixed_residual: f64 = 0.0;
        for (i, (_, eb, hb)) in later.iter().enumerate() {
            h_dual_residual = h_dual_residual.max(residual_outside(&span, hb) / hb.norm());
            fixed_residual = fixed_residual.max(rel(&alg.bracket(&cayley, eb), cayley.norm() * eb.norm()));
            for (_, ec, _) in &later[i + 1..] {
                let s = eb.norm() * ec.norm();
                so_residual = so_residual.max(rel(&alg.bracket(eb, ec), s));
                so_residual = so_residual.max(rel(&alg.bracket(eb, &alg.theta(ec)), s));
            }
        }
        h = next;
        let (k_after, p_after) = split_dims(alg, &h);
        steps.push(CayleyStep {
            root: root.to_string(),
            p_dim_before: p_before,
            p_dim_after: p_after,
            k_dim_after: k_after,
            h_dual_residual,
            strong_orthogonality_residual: so_residual,
            e_fixed_residual: fixed_residual,
        });
    }
    let x_regular = regular_in(alg, &h, datum.rank())?;
    let (toroidal_dim, vector_dim) = split_dims(alg, &h);
    Ok(CayleyChain { f: f.to_vec(), h_basis: h, steps, x_regular, toroidal_dim, vector_dim })
}

/// Dimension of the centralizer of `x`.
pub fn centralizer_dim(alg: &MatrixAlgebra, x: &DVector<f64>) -> usize {
    null_space(&alg.ad(x), alg.tol.cluster).ncols()
}

/// A regular element in the span of `h`, from a deterministic schedule of generic weights.
fn regular_in(alg: &MatrixAlgebra, h: &[DVector<f64>], rank: usize) -> Result<DVector<f64>> {
    let base = generic_weights(h.len() + 24);
    for step in 0..24 {
        let x = h
            .iter()
            .enumerate()
            .fold(DVector::zeros(alg.dim()), |acc, (i, v)| acc + v * (base[(i + step) % base.len()] / v.norm()));
        if centralizer_dim(alg, &x) == rank {
            return Ok(x);
        }
    }
    Err(Error::RegularitySearch(format!("{}: no regular element found", alg.family)))
}
