use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use super::chevalley::ChevalleySigns;
use crate::exact::{q, Q};
use crate::rootsys::{Root, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormMode {
    /// The split real form spanned by the Chevalley basis.
    Split,
    /// The complex algebra viewed as a real one: every basis vector also appears times `i`.
    Complexified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    Coroot(usize),
    RootVector(Root),
    Imaginary(Box<BasisLabel>),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Coroot(i) => write!(f, "h{}", i + 1),
            BasisLabel::RootVector(r) => write!(f, "x[{r}]"),
            BasisLabel::Imaginary(inner) => write!(f, "i{inner}"),
        }
    }
}

/// An element written in the basis of a [`StructureConstants`] algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub coeffs: Vec<Q>,
}

impl Element {
    pub fn zero(dim: usize) -> Element {
        Element { coeffs: vec![Q::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Element {
        let mut e = Element::zero(dim);
        e.coeffs[i] = q(1);
        e
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> Element {
        Element { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: Q) -> Element {
        Element { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn add_scaled(&mut self, other: &Element, k: Q) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * k;
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(crate::exact::to_f64).collect()
    }
}

type Sparse = Vec<(usize, i64)>;

/// Exact integer structure constants on a Chevalley basis `h_1..h_r, x_α (α ∈ Δ)`.
pub struct StructureConstants {
    system: RootSystem,
    mode: FormMode,
    labels: Vec<BasisLabel>,
    table: Vec<Vec<Sparse>>,
    killing: OnceLock<Vec<Vec<i64>>>,
}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StructureConstants")
            .field("system", &self.system.name())
            .field("mode", &self.mode)
            .field("dim", &self.dim())
            .finish()
    }
}

/// Builds the split form or its complexification from a root system.
pub fn chevalley_basis(sys: &RootSystem, mode: FormMode) -> StructureConstants {
    assert!(sys.is_reduced(), "Chevalley bases need a reduced root system");
    let r = sys.rank();
    let roots = sys.roots();
    let n = r + roots.len();
    let mut labels: Vec<BasisLabel> = (0..r).map(BasisLabel::Coroot).collect();
    labels.extend(roots.iter().cloned().map(BasisLabel::RootVector));
    let vec_index = |root: &Root| r + sys.index_of(root).unwrap();

    // h_α in the simple coroot basis: coefficients a_i d_i / d_α.
    let coroot = |root: &Root| -> Sparse {
        let na = sys.norm2(root);
        (0..r)
            .filter(|&i| root.0[i] != 0)
            .map(|i| {
                let ni = sys.norm2(&Root::simple(r, i));
                let c = q(root.0[i]) * ni / na;
                assert!(c.is_integer());
                (i, *c.numer() as i64)
            })
            .collect()
    };

    let mut table: Vec<Vec<Sparse>> = vec![vec![Vec::new(); n]; n];
    for i in 0..r {
        for b in roots {
            let k = sys.pairing_with_coroot(b, i);
            if k != 0 {
                let j = vec_index(b);
                table[i][j] = vec![(j, k)];
                table[j][i] = vec![(j, -k)];
            }
        }
    }
    let mut signs = ChevalleySigns::new(sys);
    for a in roots {
        let ia = vec_index(a);
        for b in roots {
            let ib = vec_index(b);
            if *b == a.neg() {
                table[ia][ib] = coroot(a);
                continue;
            }
            let nab = signs.n(a, b);
            if nab != 0 {
                table[ia][ib] = vec![(vec_index(&a.add(b)), nab)];
            }
        }
    }

    if mode == FormMode::Complexified {
        let mut big: Vec<Vec<Sparse>> = vec![vec![Vec::new(); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let t = &table[i][j];
                if t.is_empty() {
                    continue;
                }
                big[i][j] = t.clone();
                big[i][n + j] = t.iter().map(|&(k, c)| (n + k, c)).collect();
                big[n + i][j] = t.iter().map(|&(k, c)| (n + k, c)).collect();
                big[n + i][n + j] = t.iter().map(|&(k, c)| (k, -c)).collect();
            }
        }
        let imag: Vec<BasisLabel> = labels.iter().cloned().map(|l| BasisLabel::Imaginary(Box::new(l))).collect();
        labels.extend(imag);
        table = big;
    }

    StructureConstants { system: sys.clone(), mode, labels, table, killing: OnceLock::new() }
}

impl StructureConstants {
    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn mode(&self) -> FormMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Real dimension of a Cartan subalgebra.
    pub fn rank(&self) -> usize {
        match self.mode {
            FormMode::Split => self.system.rank(),
            FormMode::Complexified => 2 * self.system.rank(),
        }
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Dimension of the split (or complex) algebra before realification.
    fn split_dim(&self) -> usize {
        self.system.rank() + self.system.roots().len()
    }

    pub fn coroot_index(&self, i: usize) -> usize {
        i
    }

    pub fn root_index(&self, root: &Root) -> Option<usize> {
        self.system.index_of(root).map(|i| self.system.rank() + i)
    }

    /// Index of the `i`-multiple of a basis vector in complexified mode.
    pub fn imaginary(&self, idx: usize) -> Option<usize> {
        (self.mode == FormMode::Complexified).then(|| idx + self.split_dim())
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim(), i)
    }

    pub fn root_vector(&self, root: &Root) -> Element {
        self.basis(self.root_index(root).expect("root of the system"))
    }

    /// Real basis of the root space `g_α` (one vector, or two in complexified mode).
    pub fn root_space(&self, root: &Root) -> Vec<Element> {
        let i = self.root_index(root).expect("root of the system");
        let mut out = vec![self.basis(i)];
        if let Some(j) = self.imaginary(i) {
            out.push(self.basis(j));
        }
        out
    }

    /// Real basis of the split Cartan `span{h_i}` (the `a` part).
    pub fn cartan_real(&self) -> Vec<Element> {
        (0..self.system.rank()).map(|i| self.basis(i)).collect()
    }

    /// `h_α` as an element.
    pub fn coroot(&self, root: &Root) -> Element {
        let ia = self.root_index(root).unwrap();
        let ib = self.root_index(&root.neg()).unwrap();
        let mut e = Element::zero(self.dim());
        for &(k, c) in &self.table[ia][ib] {
            e.coeffs[k] += q(c);
        }
        e
    }

    pub fn structure(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero(self.dim());
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for &(k, c) in &self.table[i][j] {
                    out.coeffs[k] += f * q(c);
                }
            }
        }
        out
    }

    /// Matrix of `ad_x` (column `j` is `[x, e_j]`).
    pub fn ad(&self, x: &Element) -> Vec<Vec<Q>> {
        let n = self.dim();
        let mut m = vec![vec![Q::zero(); n]; n];
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for &(k, c) in &self.table[i][j] {
                    m[k][j] += xi * q(c);
                }
            }
        }
        m
    }

    /// Killing Gram matrix on the basis, `G[a][b] = tr(ad_a ad_b)`.
    pub fn killing_gram(&self) -> &[Vec<i64>] {
        self.killing.get_or_init(|| {
            let n = self.dim();
            // dense view of ad_b rows: coefficient of e_k in [b, e_i]
            let mut g = vec![vec![0i64; n]; n];
            for a in 0..n {
                for b in a..n {
                    let mut s = 0i64;
                    for k in 0..n {
                        for &(i, c1) in &self.table[a][k] {
                            for &(k2, c2) in &self.table[b][i] {
                                if k2 == k {
                                    s += c1 * c2;
                                }
                            }
                        }
                    }
                    g[a][b] = s;
                    g[b][a] = s;
                }
            }
            g
        })
    }

    pub fn killing_form(&self, x: &Element, y: &Element) -> Q {
        let g = self.killing_gram();
        let mut s = Q::zero();
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs.iter().enumerate() {
                if !yj.is_zero() && g[i][j] != 0 {
                    s += xi * yj * q(g[i][j]);
                }
            }
        }
        s
    }

    /// `tr(ad_x ad_y)` from explicit adjoint matrices.
    pub fn killing_form_by_traces(&self, x: &Element, y: &Element) -> Q {
        let ax = self.ad(x);
        let ay = self.ad(y);
        let n = self.dim();
        let mut s = Q::zero();
        for i in 0..n {
            for k in 0..n {
                if !ax[i][k].is_zero() && !ay[k][i].is_zero() {
                    s += ax[i][k] * ay[k][i];
                }
            }
        }
        s
    }

    /// The Cartan involution `θ(x_α) = -x_{-α}`, `θ(h) = -h`.
    pub fn theta(&self, x: &Element) -> Element {
        let mut out = Element::zero(self.dim());
        let r = self.system.rank();
        let sd = self.split_dim();
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (base, shift) = if i >= sd { (i - sd, sd) } else { (i, 0) };
            let target = if base < r {
                base
            } else {
                let root = &self.system.roots()[base - r];
                self.root_index(&root.neg()).unwrap()
            };
            // conjugate-linear on the imaginary half, so that i·h is compact
            if shift == 0 {
                out.coeffs[target] -= c;
            } else {
                out.coeffs[target + shift] += c;
            }
        }
        out
    }

    /// Value of the root `α` on an element of the split Cartan `span{h_i}` (real part only).
    pub fn root_value(&self, root: &Root, h: &Element) -> Q {
        (0..self.system.rank())
            .filter(|&i| !h.coeffs[i].is_zero())
            .map(|i| h.coeffs[i] * q(self.system.pairing_with_coroot(root, i)))
            .sum()
    }

    pub fn format_element(&self, x: &Element) -> Vec<String> {
        x.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*{}", c, self.labels[i]))
            .collect()
    }
}
