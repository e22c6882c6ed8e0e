use nalgebra::{DMatrix, DVector};
use num_traits::Zero;

use super::family::Family;
use super::linalg::null_space;
use crate::error::{Error, Result};
use crate::exact::{nullspace, q, rref, to_f64, Q};

/// Numeric tolerances, all relative to the natural scale of the quantity checked.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Eigenvalue clustering and numerical rank decisions.
    pub cluster: f64,
    /// Isotropy, ruling, and Cayley-chain assertions.
    pub verify: f64,
    /// Bracket-closure residuals during foliation checks.
    pub closure: f64,
    /// Closure and automorphism checks on the realization itself.
    pub structure: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { cluster: 1e-8, verify: 1e-7, closure: 1e-8, structure: 1e-10 }
    }
}

pub const TOLERANCE_RANGE: (f64, f64) = (1e-12, 1e-4);

/// Realifies a parameter vector over a field of degree `f` into an `(f·m) × (f·m)` real matrix.
pub(crate) fn realify<T>(p: &[T], f: usize, m: usize) -> Vec<Vec<T>>
where
    T: Copy + Zero + std::ops::Neg<Output = T>,
{
    let s = f * m;
    let mut r = vec![vec![T::zero(); s]; s];
    for i in 0..m {
        for j in 0..m {
            let c = &p[(i * m + j) * f..(i * m + j + 1) * f];
            let block: Vec<Vec<T>> = match f {
                1 => vec![vec![c[0]]],
                2 => vec![vec![c[0], -c[1]], vec![c[1], c[0]]],
                _ => {
                    let (a, b, cc, d) = (c[0], c[1], c[2], c[3]);
                    vec![
                        vec![a, -b, -cc, -d],
                        vec![b, a, -d, cc],
                        vec![cc, d, a, -b],
                        vec![d, -cc, b, a],
                    ]
                }
            };
            for (bi, row) in block.iter().enumerate() {
                for (bj, &v) in row.iter().enumerate() {
                    r[i * f + bi][j * f + bj] = v;
                }
            }
        }
    }
    r
}

/// Inverse of [`realify`] on matrices of the right block shape.
fn parameters(mat: &DMatrix<f64>, f: usize, m: usize) -> Vec<f64> {
    let mut p = vec![0.0; f * m * m];
    for i in 0..m {
        for j in 0..m {
            for c in 0..f {
                p[(i * m + j) * f + c] = mat[(i * f + c, j * f)];
            }
        }
    }
    p
}

/// A classical real form as an algebra of real matrices.
///
/// Coordinates are taken in a basis that is orthonormal for `B_θ(x, y) = −B(x, θy)`, with the
/// `k` directions first, so `θ` is `diag(1, …, 1, −1, …, −1)` and `B = diag(−1, …, −1, 1, …, 1)`.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    pub family: Family,
    field: usize,
    size: usize,
    free: Vec<usize>,
    raw_to_coords: DMatrix<f64>,
    basis: Vec<DMatrix<f64>>,
    ad: Vec<DMatrix<f64>>,
    killing: DMatrix<f64>,
    dim_k: usize,
    pub tol: Tolerances,
}

impl MatrixAlgebra {
    pub fn realize(family: Family) -> Result<MatrixAlgebra> {
        Self::realize_with(family, Tolerances::default())
    }

    pub fn realize_with(family: Family, tol: Tolerances) -> Result<MatrixAlgebra> {
        let family = family.validated()?;
        let (f, m) = family.shape();
        let np = f * m * m;

        // Exact constraint matrix: column k is the constraint map applied to the k-th unit vector.
        let mut columns = Vec::with_capacity(np);
        for k in 0..np {
            let mut e = vec![0i64; np];
            e[k] = 1;
            let r = realify(&e, f, m);
            columns.push(family.constraints(&e, &r));
        }
        let rows = columns[0].len();
        let mut cmat: Vec<Vec<Q>> = (0..rows).map(|i| (0..np).map(|k| q(columns[k][i])).collect()).collect();
        let raw: Vec<Vec<f64>> = nullspace(&cmat, np).iter().map(|v| v.iter().map(to_f64).collect()).collect();
        let pivots = rref(&mut cmat);
        let free: Vec<usize> = (0..np).filter(|c| !pivots.contains(c)).collect();
        let n = raw.len();
        let raw_mats: Vec<DMatrix<f64>> = raw.iter().map(|p| to_matrix(&realify(p, f, m))).collect();
        let raw_coords = |mat: &DMatrix<f64>| -> DVector<f64> {
            let p = parameters(mat, f, m);
            DVector::from_iterator(n, free.iter().map(|&i| p[i]))
        };

        let theta_raw = DMatrix::from_columns(
            &raw_mats.iter().map(|b| raw_coords(&(-b.transpose()))).collect::<Vec<_>>(),
        );
        let ad_raw: Vec<DMatrix<f64>> = raw_mats
            .iter()
            .map(|x| DMatrix::from_columns(&raw_mats.iter().map(|y| raw_coords(&commutator(x, y))).collect::<Vec<_>>()))
            .collect();
        let killing_raw = DMatrix::from_fn(n, n, |i, j| (&ad_raw[i] * &ad_raw[j]).trace());

        let ident = DMatrix::<f64>::identity(n, n);
        let k_space = null_space(&(&theta_raw - &ident), tol.cluster);
        let p_space = null_space(&(&theta_raw + &ident), tol.cluster);
        if k_space.ncols() + p_space.ncols() != n {
            return Err(Error::Involution(format!("{family}: θ eigenspaces do not span")));
        }
        let k_ortho = orthonormalize(&k_space, &(-&killing_raw), "k", family)?;
        let p_ortho = orthonormalize(&p_space, &killing_raw, "p", family)?;
        let dim_k = k_ortho.ncols();
        let mut change = DMatrix::zeros(n, n);
        change.view_mut((0, 0), (n, dim_k)).copy_from(&k_ortho);
        change.view_mut((0, dim_k), (n, n - dim_k)).copy_from(&p_ortho);
        let raw_to_coords = change
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Involution(format!("{family}: singular change of basis")))?;

        let basis: Vec<DMatrix<f64>> = (0..n)
            .map(|i| {
                let mut b = DMatrix::zeros(f * m, f * m);
                for j in 0..n {
                    b += &raw_mats[j] * change[(j, i)];
                }
                b
            })
            .collect();
        let ad: Vec<DMatrix<f64>> = (0..n)
            .map(|i| {
                let mut a = DMatrix::zeros(n, n);
                for j in 0..n {
                    a += &ad_raw[j] * change[(j, i)];
                }
                &raw_to_coords * a * &change
            })
            .collect();
        let killing = DMatrix::from_fn(n, n, |i, j| (&ad[i] * &ad[j]).trace());
        let alg = MatrixAlgebra { family, field: f, size: m, free, raw_to_coords, basis, ad, killing, dim_k, tol };
        alg.check_structure()?;
        Ok(alg)
    }

    fn check_structure(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let br = commutator(&self.basis[i], &self.basis[j]);
                let back = self.matrix(&self.coords(&br));
                let scale = self.basis[i].norm() * self.basis[j].norm();
                if (back - &br).norm() > self.tol.structure * scale.max(1.0) {
                    return Err(Error::Involution(format!("{}: basis not closed under bracket", self.family)));
                }
            }
        }
        let theta = self.theta_matrix();
        for i in 0..n {
            let sign = if i < self.dim_k { 1.0 } else { -1.0 };
            let lhs = &theta * &self.ad[i] * &theta;
            if (lhs - &self.ad[i] * sign).norm() > self.tol.structure * self.ad[i].norm().max(1.0) {
                return Err(Error::Involution(format!("{}: θ is not an automorphism", self.family)));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn dim_p(&self) -> usize {
        self.dim() - self.dim_k
    }

    /// Size of the realified matrices.
    pub fn ambient_dim(&self) -> usize {
        self.field * self.size
    }

    pub fn basis(&self) -> &[DMatrix<f64>] {
        &self.basis
    }

    pub fn killing(&self) -> &DMatrix<f64> {
        &self.killing
    }

    /// Coordinates of a realified matrix assumed to lie in the algebra.
    pub fn coords(&self, mat: &DMatrix<f64>) -> DVector<f64> {
        let p = parameters(mat, self.field, self.size);
        let raw = DVector::from_iterator(self.free.len(), self.free.iter().map(|&i| p[i]));
        &self.raw_to_coords * raw
    }

    pub fn matrix(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let s = self.ambient_dim();
        let mut out = DMatrix::zeros(s, s);
        for (i, b) in self.basis.iter().enumerate() {
            if x[i] != 0.0 {
                out += b * x[i];
            }
        }
        out
    }

    pub fn ad(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for (i, a) in self.ad.iter().enumerate() {
            if x[i] != 0.0 {
                out += a * x[i];
            }
        }
        out
    }

    pub fn ad_basis(&self, i: usize) -> &DMatrix<f64> {
        &self.ad[i]
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.ad(x) * y
    }

    pub fn killing_form(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.killing * y)[(0, 0)]
    }

    pub fn theta_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            if i != j {
                0.0
            } else if i < self.dim_k {
                1.0
            } else {
                -1.0
            }
        })
    }

    pub fn theta(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.dim(), |i, _| if i < self.dim_k { x[i] } else { -x[i] })
    }

    pub fn k_part(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.dim(), |i, _| if i < self.dim_k { x[i] } else { 0.0 })
    }

    pub fn p_part(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.dim(), |i, _| if i < self.dim_k { 0.0 } else { x[i] })
    }

    pub fn unit(&self, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        v[i] = 1.0;
        v
    }

    /// Coordinates of the realified matrix built from a raw parameter vector.
    pub(crate) fn coords_of_parameters(&self, p: &[i64]) -> DVector<f64> {
        let p: Vec<f64> = p.iter().map(|&v| v as f64).collect();
        self.coords(&to_matrix(&realify(&p, self.field, self.size)))
    }
}

/// The `θ`-eigenspaces as coordinate bases: `k` (θ = +1) and `p` (θ = −1).
pub fn cartan_decompose(alg: &MatrixAlgebra) -> Result<(Vec<DVector<f64>>, Vec<DVector<f64>>)> {
    let k: Vec<DVector<f64>> = (0..alg.dim_k()).map(|i| alg.unit(i)).collect();
    let p: Vec<DVector<f64>> = (alg.dim_k()..alg.dim()).map(|i| alg.unit(i)).collect();
    let tol = alg.tol.structure * alg.killing().norm().max(1.0);
    let definite = |vs: &[DVector<f64>], sign: f64| -> bool {
        if vs.is_empty() {
            return true;
        }
        let g = DMatrix::from_fn(vs.len(), vs.len(), |i, j| sign * alg.killing_form(&vs[i], &vs[j]));
        g.symmetric_eigenvalues().iter().all(|&e| e > tol)
    };
    if !definite(&k, -1.0) {
        return Err(Error::Involution(format!("{}: B is not negative definite on k", alg.family)));
    }
    if !definite(&p, 1.0) {
        return Err(Error::Involution(format!("{}: B is not positive definite on p", alg.family)));
    }
    Ok((k, p))
}

pub(crate) fn commutator(x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
    x * y - y * x
}

pub(crate) fn to_matrix(r: &[Vec<f64>]) -> DMatrix<f64> {
    let s = r.len();
    DMatrix::from_fn(s, s, |i, j| r[i][j])
}

/// Columns of `space` made orthonormal for the positive form `gram`.
fn orthonormalize(space: &DMatrix<f64>, gram: &DMatrix<f64>, which: &str, family: Family) -> Result<DMatrix<f64>> {
    if space.ncols() == 0 {
        return Ok(space.clone());
    }
    let g = space.transpose() * gram * space;
    let g = (&g + g.transpose()) * 0.5;
    let chol = g
        .cholesky()
        .ok_or_else(|| Error::Involution(format!("{family}: Killing form has the wrong sign on {which}")))?;
    let linv = chol
        .l()
        .try_inverse()
        .ok_or_else(|| Error::Involution(format!("{family}: degenerate Killing form on {which}")))?;
    Ok(space * linv.transpose())
}
