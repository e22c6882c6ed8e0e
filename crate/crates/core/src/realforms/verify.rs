use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::MatrixAlgebra;
use super::cayley::{centralizer_dim, CayleyChain};
use super::decomposition::RestrictedDatum;
use super::linalg::{columns, orthonormal_span, rank, residual_outside};
use crate::error::{Error, Result};
use crate::foliation::{CheckKind, CheckStatus, Engine, FoliationReport, Witness};
use crate::liealg::RULING_RANDOM_SAMPLES;
use crate::rootsys::Root;

/// `e^Y` for a nilpotent matrix: `Y^s = 0` for an `s × s` matrix, so the series stops at `s − 1`.
pub fn nilpotent_exp(y: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let s = y.nrows();
    let scale = y.norm().max(1.0);
    let mut out = DMatrix::identity(s, s);
    let mut power = DMatrix::identity(s, s);
    let mut factorial = 1.0;
    for k in 1..s {
        power = &power * y;
        factorial *= k as f64;
        out += &power / factorial;
    }
    power = &power * y;
    if power.norm() <= 1e-12 * scale.powi(s as i32) {
        Ok(out)
    } else {
        Err(Error::NotNilpotent)
    }
}

/// `Ad(e^Y) X = e^Y X e^{−Y}` for nilpotent `Y`.
pub fn adjoint_exp(y: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let g = nilpotent_exp(y)?;
    let ginv = nilpotent_exp(&(-y))?;
    Ok(g * x * ginv)
}

/// Numeric checks of the foliation spanned by the restricted root spaces of `sigma_j` at the
/// regular element of `chain`.
pub fn verify_foliation_numeric(
    alg: &MatrixAlgebra,
    datum: &RestrictedDatum,
    chain: &CayleyChain,
    sigma_j: &[Root],
    seed: u64,
) -> Result<FoliationReport> {
    let tol = alg.tol;
    let n = alg.dim();
    let rk = datum.rank();
    let x = &chain.x_regular;
    if centralizer_dim(alg, x) != rk {
        return Err(Error::NotRegular(format!("centralizer dimension ≠ {rk}")));
    }
    let xn = x.norm();
    for h in &chain.h_basis {
        if alg.bracket(h, x).norm() > tol.verify * h.norm() * xn * alg_scale(alg) {
            return Err(Error::Stabilizer("Cartan subalgebra does not centralize X".into()));
        }
    }
    for mu in sigma_j {
        if datum.space(mu).is_none() || !mu.is_positive() {
            return Err(Error::Membership(format!("{mu} is not a positive restricted root")));
        }
    }
    let n_j = datum.root_space_sum(sigma_j);
    let span = orthonormal_span(&columns(&n_j, n), tol.cluster);
    let outside = |v: &DVector<f64>| residual_outside(&span, v);
    let mut checks = BTreeMap::new();
    let mut residuals = BTreeMap::new();
    let mut record = |kind: CheckKind, status: CheckStatus, residual: Option<f64>| {
        checks.insert(kind, status);
        if let Some(r) = residual {
            residuals.insert(kind, r);
        }
    };

    let mut sub = 0.0f64;
    for (i, u) in n_j.iter().enumerate() {
        for v in &n_j[i..] {
            sub = sub.max(outside(&alg.bracket(u, v)) / (u.norm() * v.norm()));
        }
    }
    record(CheckKind::Subalgebra, CheckStatus::from_bool(sub <= tol.closure), Some(sub));

    let mut stab = 0.0f64;
    for h in &chain.h_basis {
        for u in &n_j {
            stab = stab.max(outside(&alg.bracket(h, u)) / (h.norm() * u.norm()));
        }
    }
    record(CheckKind::HStable, CheckStatus::from_bool(stab <= tol.closure), Some(stab));

    let omega = |u: &DVector<f64>, v: &DVector<f64>| alg.killing_form(x, &alg.bracket(u, v)).abs() / (xn * u.norm() * v.norm());
    let mut iso = 0.0f64;
    for (i, u) in n_j.iter().enumerate() {
        for v in &n_j[i + 1..] {
            iso = iso.max(omega(u, v));
        }
    }
    let isotropic = iso <= tol.verify;
    record(CheckKind::Isotropic, CheckStatus::from_bool(isotropic), Some(iso));

    let dim_omega = n - rk;
    if 2 * n_j.len() == dim_omega {
        let mut all = n_j.clone();
        all.extend(chain.h_basis.iter().cloned());
        let independent = rank(&columns(&all, n), tol.cluster) == n_j.len() + rk;
        record(CheckKind::Lagrangian, CheckStatus::from_bool(isotropic && independent), None);
    } else {
        record(CheckKind::Lagrangian, CheckStatus::Skipped, None);
    }

    let full_n = {
        let mut s = sigma_j.to_vec();
        s.sort();
        s == datum.restricted.positives()
    };
    if datum.is_split() && chain.f.is_empty() && full_n {
        // Tangent directions [u, X] along Ad_K X and along the leaf through X.
        let k: Vec<DVector<f64>> = (0..alg.dim_k()).map(|i| alg.unit(i)).collect();
        let tk: Vec<DVector<f64>> = k.iter().map(|u| alg.bracket(u, x)).collect();
        let tn: Vec<DVector<f64>> = n_j.iter().map(|u| alg.bracket(u, x)).collect();
        let mut k_iso = 0.0f64;
        for (i, u) in k.iter().enumerate() {
            for v in &k[i + 1..] {
                k_iso = k_iso.max(omega(u, v));
            }
        }
        let rk_k = rank(&columns(&tk, n), tol.cluster);
        let rk_n = rank(&columns(&tn, n), tol.cluster);
        let mut both = tk.clone();
        both.extend(tn);
        let rk_both = rank(&columns(&both, n), tol.cluster);
        let intersection = rk_k + rk_n - rk_both;
        let ok = k_iso <= tol.verify && intersection == 0 && rk_both == dim_omega;
        record(CheckKind::Transversal, CheckStatus::from_bool(ok), Some(k_iso));
    } else {
        record(CheckKind::Transversal, CheckStatus::Skipped, None);
    }

    let xm = alg.matrix(x);
    let mut ruling = 0.0f64;
    for y in ruling_samples_numeric(&n_j, seed) {
        let moved = adjoint_exp(&alg.matrix(&y), &xm)?;
        let diff_m = &moved - &xm;
        let diff = alg.coords(&diff_m);
        let scale = xn.max(diff.norm());
        // distance of the moved point from the algebra, then from X + n_j
        let off_algebra = (alg.matrix(&diff) - &diff_m).norm() / xm.norm().max(diff_m.norm());
        ruling = ruling.max(off_algebra).max(outside(&diff) / scale);
    }
    let directions: Vec<DVector<f64>> = n_j.iter().map(|y| alg.bracket(y, x)).collect();
    let full_rank = rank(&columns(&directions, n), tol.cluster) == n_j.len();
    record(CheckKind::Ruling, CheckStatus::from_bool(ruling <= tol.verify && full_rank), Some(ruling));
    record(CheckKind::Darboux, CheckStatus::Skipped, None);

    Ok(FoliationReport {
        algebra: alg.family.to_string(),
        engine: Engine::Numeric,
        orbit_type: chain.f.iter().map(Root::to_string).collect(),
        sigma_j: sigma_j.iter().map(Root::to_string).collect(),
        dim_n_j: n_j.len(),
        dim_g: n,
        rank: rk,
        toroidal_dim: chain.toroidal_dim,
        checks,
        residuals,
        witness_x: Witness::Numeric(round_vector(x)),
    })
}

fn alg_scale(alg: &MatrixAlgebra) -> f64 {
    (0..alg.dim()).map(|i| alg.ad_basis(i).norm()).fold(1.0, f64::max)
}

/// Rounds to twelve significant digits of the largest entry so that reports do not expose
/// last-bit noise.
fn round_vector(x: &DVector<f64>) -> Vec<f64> {
    let top = x.amax();
    if top == 0.0 || !top.is_finite() {
        return x.iter().copied().collect();
    }
    let p = 10f64.powi(11 - top.log10().floor() as i32);
    x.iter().map(|v| (v * p).round() / p + 0.0).collect()
}

/// Basis vectors, pairwise sums, and seeded rational combinations of `basis`.
pub fn ruling_samples_numeric(basis: &[DVector<f64>], seed: u64) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            out.push(&basis[i] + &basis[j]);
        }
    }
    if let Some(first) = basis.first() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RULING_RANDOM_SAMPLES {
            let mut y = DVector::zeros(first.len());
            for b in basis {
                let c = rng.gen_range(-5i64..=5) as f64 / rng.gen_range(1i64..=4) as f64;
                y += b * c;
            }
            out.push(y);
        }
    }
    out
}
