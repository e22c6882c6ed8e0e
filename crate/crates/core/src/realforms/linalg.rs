//! Small dense numeric helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

/// Columns spanning the numerical null space of `a` (relative threshold `tol`).
pub fn null_space(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let cols = a.ncols();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    let rows = a.nrows().max(cols);
    let mut padded = DMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.max().max(1.0);
    let keep: Vec<usize> = (0..cols).filter(|&i| svd.singular_values[i] <= tol * smax).collect();
    let mut out = DMatrix::zeros(cols, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        out.set_column(c, &vt.row(i).transpose());
    }
    out
}

/// Numerical rank with a threshold relative to the largest singular value.
pub fn rank(a: &DMatrix<f64>, tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let sv = a.singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * smax).count()
}

/// Numerical rank with a threshold relative to an external scale.
pub fn rank_scaled(a: &DMatrix<f64>, tol: f64, scale: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    a.singular_values().iter().filter(|&&s| s > tol * scale).count()
}

/// Orthonormal basis (columns) of the column span of `a`.
pub fn orthonormal_span(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    if a.ncols() == 0 {
        return DMatrix::zeros(a.nrows(), 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let smax = svd.singular_values.max();
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax > 0.0 && svd.singular_values[i] > tol * smax)
        .collect();
    let mut out = DMatrix::zeros(a.nrows(), keep.len());
    for (c, &i) in keep.iter().enumerate() {
        out.set_column(c, &u.column(i));
    }
    out
}

/// Norm of the component of `v` orthogonal to the orthonormal columns of `q`.
pub fn residual_outside(q: &DMatrix<f64>, v: &DVector<f64>) -> f64 {
    if q.ncols() == 0 {
        return v.norm();
    }
    let proj = q * (q.transpose() * v);
    (v - proj).norm()
}

pub fn columns(vs: &[DVector<f64>], dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, vs.len());
    for (i, v) in vs.iter().enumerate() {
        m.set_column(i, v);
    }
    m
}

/// Groups sorted values whose consecutive gaps are below `tol * scale`.
pub fn cluster(values: &[(f64, usize)], tol: f64, scale: f64) -> Vec<Vec<usize>> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (v, i) in sorted {
        if groups.is_empty() || v - last > tol * scale {
            groups.push(vec![i]);
        } else {
            groups.last_mut().unwrap().push(i);
        }
        last = v;
    }
    groups
}

/// Fixed, rationally independent weights for generic elements.
pub fn generic_weights(k: usize) -> Vec<f64> {
    const PRIMES: [f64; 12] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 31.0, 37.0];
    (0..k).map(|i| PRIMES[i % PRIMES.len()].sqrt() * 0.25f64.powi(i as i32)).collect()
}
