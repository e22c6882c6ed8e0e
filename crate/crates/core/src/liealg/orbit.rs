use num_traits::Zero;
use serde::Serialize;

use super::csa::PositiveSystem;
use super::structure::{Element, FormMode, StructureConstants};
use crate::error::{Error, Result};
use crate::exact::{to_f64, Q};

/// `ω_X(u, v) = B(X, [u, v])`.
pub fn kirillov_form(sc: &StructureConstants, x: &Element, u: &Element, v: &Element) -> Q {
    sc.killing_form(x, &sc.bracket(u, v))
}

/// `e^{ad_Y} X`, a finite sum once `Y` is ad-nilpotent.
pub fn nilpotent_ad_orbit(sc: &StructureConstants, y: &Element, x: &Element) -> Result<Element> {
    if !is_ad_nilpotent(sc, y) {
        return Err(Error::NotNilpotent);
    }
    let mut out = x.clone();
    let mut term = x.clone();
    let mut n = 1i64;
    loop {
        term = sc.bracket(y, &term).scale(Q::new(1, n as i128));
        if term.is_zero() {
            return Ok(out);
        }
        out = out.add(&term);
        n += 1;
    }
}

/// Checks `ad_Y^k = 0` for some `k ≤ dim g` by repeated application.
pub fn is_ad_nilpotent(sc: &StructureConstants, y: &Element) -> bool {
    let n = sc.dim();
    let mut images: Vec<Element> = (0..n).map(|i| sc.basis(i)).collect();
    for _ in 0..=n {
        images.retain(|e| !e.is_zero());
        if images.is_empty() {
            return true;
        }
        images = images.iter().map(|e| sc.bracket(y, e)).collect();
    }
    false
}

/// One positive root's contribution to the Darboux bases.
#[derive(Clone, Debug, Serialize)]
pub struct DarbouxPair {
    pub root: String,
    /// Exact `α(X)·B(X_α, X_{-α})`.
    pub radicand: String,
    pub scale: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DarbouxBasis {
    pub pairs: Vec<DarbouxPair>,
    /// Gram matrix of `ω_X` on `{x_α} ∪ {x_α + y_α}`.
    pub gram_nk: Vec<Vec<f64>>,
    /// Gram matrix of `ω_X` on `{x_α} ∪ {y_α}`.
    pub gram_nn: Vec<Vec<f64>>,
    /// `ω_X(X_α, X_{-α}) = α(X)·B(X_α, X_{-α})` held exactly for every positive root.
    pub pairing_identity_exact: bool,
}

impl DarbouxBasis {
    /// Largest entrywise deviation of both Gram matrices from the standard symplectic matrix.
    pub fn max_deviation(&self) -> f64 {
        let n = self.pairs.len();
        [&self.gram_nk, &self.gram_nn]
            .iter()
            .flat_map(|g| {
                (0..2 * n).flat_map(move |i| {
                    (0..2 * n).map(move |j| {
                        let target = if j == i + n {
                            1.0
                        } else if i == j + n {
                            -1.0
                        } else {
                            0.0
                        };
                        (g[i][j] - target).abs()
                    })
                })
            })
            .fold(0.0, f64::max)
    }
}

/// The two Darboux bases attached to a positive chamber element of a split form.
pub fn darboux_basis(sc: &StructureConstants, x: &Element, positive: &PositiveSystem) -> Result<DarbouxBasis> {
    if sc.mode() != FormMode::Split {
        return Err(Error::Unsupported("Darboux bases are built for split forms".into()));
    }
    let r = sc.system().rank();
    if x.coeffs[r..].iter().any(|c| !c.is_zero()) {
        return Err(Error::Chamber("element is not in the split Cartan".into()));
    }
    let mut pairs = Vec::new();
    let mut exact = true;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for a in positive.roots() {
        let xa = sc.root_vector(a);
        let xma = sc.root_vector(&a.neg());
        let radicand = sc.root_value(a, x) * sc.killing_form(&xa, &xma);
        if radicand <= Q::zero() {
            return Err(Error::Chamber(format!("{a}: α(X)·B(X_α, X_-α) = {radicand}")));
        }
        exact &= kirillov_form(sc, x, &xa, &xma) == radicand;
        let scale = 1.0 / to_f64(&radicand).sqrt();
        pairs.push(DarbouxPair { root: a.to_string(), radicand: radicand.to_string(), scale });
        xs.push((xa, scale));
        ys.push((xma, scale));
    }
    // Gram entries are exact rationals scaled by products of the floating normalizations.
    let omega = |u: &(Element, f64), v: &(Element, f64)| to_f64(&kirillov_form(sc, x, &u.0, &v.0)) * u.1 * v.1;
    let n = xs.len();
    let mut gram_nk = vec![vec![0.0; 2 * n]; 2 * n];
    let mut gram_nn = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let xx = omega(&xs[i], &xs[j]);
            let xy = omega(&xs[i], &ys[j]);
            let yx = omega(&ys[i], &xs[j]);
            let yy = omega(&ys[i], &ys[j]);
            gram_nn[i][j] = xx;
            gram_nn[i][n + j] = xy;
            gram_nn[n + i][j] = yx;
            gram_nn[n + i][n + j] = yy;
            gram_nk[i][j] = xx;
            gram_nk[i][n + j] = xx + xy;
            gram_nk[n + i][j] = xx + yx;
            gram_nk[n + i][n + j] = xx + xy + yx + yy;
        }
    }
    Ok(DarbouxBasis { pairs, gram_nk, gram_nn, pairing_identity_exact: exact })
}
