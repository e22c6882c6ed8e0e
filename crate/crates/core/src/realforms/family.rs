use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::Series;

/// Classical real forms realized as real matrix algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    SlR { n: usize },
    Su { p: usize, q: usize },
    So { p: usize, q: usize },
    SpR { n: usize },
    SuStar { n: usize },
    SoStar { n: usize },
    Sp { p: usize, q: usize },
}

impl Family {
    /// Validates parameters and orders `p ≤ q` for indefinite families.
    pub fn validated(self) -> Result<Family> {
        let bad = |why: &str| Err(Error::InvalidFamily(format!("{self}: {why}")));
        let f = match self {
            Family::Su { p, q } | Family::So { p, q } | Family::Sp { p, q } => {
                let (p, q) = (p.min(q), p.max(q));
                match self {
                    Family::Su { .. } => Family::Su { p, q },
                    Family::So { .. } => Family::So { p, q },
                    _ => Family::Sp { p, q },
                }
            }
            other => other,
        };
        match f {
            Family::SlR { n } if n < 2 => bad("n must be at least 2"),
            Family::SpR { n } if n < 1 => bad("n must be at least 1"),
            Family::SuStar { n } if n < 2 => bad("n must be at least 2"),
            Family::SoStar { n } if n < 2 => bad("n must be at least 2"),
            Family::Su { p, .. } | Family::Sp { p, .. } if p == 0 => bad("compact form"),
            Family::So { p, .. } if p == 0 => bad("compact form"),
            Family::So { p, q } if (p, q) == (1, 1) || (p, q) == (2, 2) || (p, q) == (1, 3) => {
                bad("excluded (abelian, not simple, or duplicate)")
            }
            Family::SlR { n } | Family::SpR { n } | Family::SuStar { n } | Family::SoStar { n } if n > 8 => {
                bad("size above the supported range")
            }
            Family::Su { p, q } | Family::So { p, q } | Family::Sp { p, q } if p + q > 9 => {
                bad("size above the supported range")
            }
            ok => Ok(ok),
        }
    }

    /// `(field degree over R, matrix size over the field)`.
    pub fn shape(&self) -> (usize, usize) {
        match *self {
            Family::SlR { n } => (1, n),
            Family::Su { p, q } => (2, p + q),
            Family::So { p, q } => (1, p + q),
            Family::SpR { n } => (1, 2 * n),
            Family::SuStar { n } => (4, n),
            Family::SoStar { n } => (2, 2 * n),
            Family::Sp { p, q } => (4, p + q),
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            Family::SlR { .. } => "sl_R",
            Family::Su { .. } => "su",
            Family::So { .. } => "so",
            Family::SpR { .. } => "sp_R",
            Family::SuStar { .. } => "su_star",
            Family::SoStar { .. } => "so_star",
            Family::Sp { .. } => "sp",
        }
    }

    /// The split simple type of a split family, for cross-checks against the exact engine.
    pub fn split_type(&self) -> Option<(Series, usize)> {
        match *self {
            Family::SlR { n } => Some((Series::A, n - 1)),
            Family::SpR { n } if n == 1 => Some((Series::A, 1)),
            Family::SpR { n } => Some((Series::C, n)),
            Family::Su { p: 1, q: 1 } | Family::So { p: 1, q: 2 } => Some((Series::A, 1)),
            Family::So { p: 3, q: 3 } => Some((Series::A, 3)),
            Family::So { p, q } if p == q => Some((Series::D, p)),
            Family::So { p, q } if q == p + 1 => Some((Series::B, p)),
            _ => None,
        }
    }

    /// Linear constraints on the parameter vector, evaluated on the realified matrix `r` and on
    /// the raw parameters `p` (layout `((i*m + j)*f + c)`).
    pub(crate) fn constraints(&self, p: &[i64], r: &[Vec<i64>]) -> Vec<i64> {
        let (f, m) = self.shape();
        let diag_sign = |k: usize, split: usize| if k < split { 1 } else { -1 };
        let mut out = Vec::new();
        let re_trace = |out: &mut Vec<i64>| out.push((0..m).map(|i| p[(i * m + i) * f]).sum());
        match *self {
            Family::SlR { .. } => re_trace(&mut out),
            Family::Su { p: pp, .. } => {
                indefinite(r, &|k| diag_sign(k / 2, pp), &mut out);
                re_trace(&mut out);
                out.push((0..m).map(|i| p[(i * m + i) * f + 1]).sum());
            }
            Family::So { p: pp, .. } => indefinite(r, &|k| diag_sign(k, pp), &mut out),
            Family::Sp { p: pp, .. } => indefinite(r, &|k| diag_sign(k / 4, pp), &mut out),
            Family::SpR { n } => {
                // R^T J + J R with J = [[0, I], [-I, 0]]
                let jm = |i: usize, j: usize| -> i64 {
                    if j == i + n {
                        1
                    } else if i == j + n {
                        -1
                    } else {
                        0
                    }
                };
                let s = 2 * n;
                for i in 0..s {
                    for j in 0..s {
                        let mut v = 0;
                        for k in 0..s {
                            v += r[k][i] * jm(k, j) + jm(i, k) * r[k][j];
                        }
                        out.push(v);
                    }
                }
            }
            Family::SuStar { .. } => re_trace(&mut out),
            Family::SoStar { n } => {
                // complex X^T S + S X = 0 with S = [[0, I], [I, 0]]
                let x = |i: usize, j: usize| (p[(i * m + j) * 2], p[(i * m + j) * 2 + 1]);
                let partner = |i: usize| if i < n { i + n } else { i - n };
                for i in 0..m {
                    for j in 0..m {
                        // (X^T S)_ij = X_{partner(j), i}; (S X)_ij = X_{partner(i), j}
                        let a = x(partner(j), i);
                        let b = x(partner(i), j);
                        out.push(a.0 + b.0);
                        out.push(a.1 + b.1);
                    }
                }
                indefinite(r, &|k| diag_sign(k / 2, n), &mut out);
            }
        }
        out
    }

    /// Parameter vectors of the canonical maximal abelian subspace of `p`.
    pub(crate) fn canonical_a(&self) -> Vec<Vec<i64>> {
        let (f, m) = self.shape();
        let unit = |entries: &[(usize, usize, i64)]| {
            let mut v = vec![0i64; f * m * m];
            for &(i, j, c) in entries {
                v[(i * m + j) * f] += c;
            }
            v
        };
        match *self {
            Family::SlR { n } | Family::SuStar { n } => {
                (0..n - 1).map(|i| unit(&[(i, i, 1), (i + 1, i + 1, -1)])).collect()
            }
            Family::Su { p, .. } | Family::So { p, .. } | Family::Sp { p, .. } => {
                (0..p).map(|i| unit(&[(i, p + i, 1), (p + i, i, 1)])).collect()
            }
            Family::SpR { n } => (0..n).map(|i| unit(&[(i, i, 1), (n + i, n + i, -1)])).collect(),
            Family::SoStar { n } => (0..n / 2)
                .map(|k| {
                    let (a, b) = (2 * k, 2 * k + 1);
                    unit(&[(a, n + b, 1), (b, n + a, -1), (n + a, b, -1), (n + b, a, 1)])
                })
                .collect(),
        }
    }
}

/// `R^T D + D R = 0` for a diagonal `±1` matrix `D` given by `sign(k)`.
fn indefinite(r: &[Vec<i64>], sign: &dyn Fn(usize) -> i64, out: &mut Vec<i64>) {
    let s = r.len();
    for i in 0..s {
        for j in 0..s {
            out.push(r[j][i] * sign(j) + sign(i) * r[i][j]);
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::SlR { n } => write!(f, "sl({n},R)"),
            Family::Su { p, q } => write!(f, "su({p},{q})"),
            Family::So { p, q } => write!(f, "so({p},{q})"),
            Family::SpR { n } => write!(f, "sp({n},R)"),
            Family::SuStar { n } => write!(f, "su*({})", 2 * n),
            Family::SoStar { n } => write!(f, "so*({})", 2 * n),
            Family::Sp { p, q } => write!(f, "sp({p},{q})"),
        }
    }
}

/// Builds a family from a CLI-style key and parameters.
pub fn parse_family(key: &str, n: Option<usize>, p: Option<usize>, q: Option<usize>) -> Result<Family> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Error::InvalidFamily(format!("{key} needs --{name}")))
    };
    let f = match key {
        "sl_R" => Family::SlR { n: need(n, "n")? },
        "sp_R" => Family::SpR { n: need(n, "n")? },
        "su_star" => Family::SuStar { n: need(n, "n")? },
        "so_star" => Family::SoStar { n: need(n, "n")? },
        "su" => Family::Su { p: need(p, "p")?, q: need(q, "q")? },
        "so" => Family::So { p: need(p, "p")?, q: need(q, "q")? },
        "sp" => Family::Sp { p: need(p, "p")?, q: need(q, "q")? },
        _ => return Err(Error::InvalidFamily(format!("unknown family '{key}'"))),
    };
    f.validated()
}

/// The realized test range, in the row order of the real-forms table.
pub fn standard_families() -> Vec<Family> {
    let mut out = Vec::new();
    out.extend((2..=5).map(|n| Family::SlR { n }));
    out.extend((2..=3).map(|n| Family::SuStar { n }));
    out.extend([(1, 1), (1, 2), (1, 3), (2, 2)].map(|(p, q)| Family::Su { p, q }));
    // so(even, odd), then sp(p,q), sp(n,R), so(odd, odd), so(even, even)
    out.extend([(2, 3), (2, 5), (1, 2), (1, 4), (1, 6), (3, 4)].map(|(p, q)| Family::So { p, q }));
    out.extend([(1, 1), (1, 2)].map(|(p, q)| Family::Sp { p, q }));
    out.extend((1..=3).map(|n| Family::SpR { n }));
    out.extend([(1, 5), (3, 3), (2, 4)].map(|(p, q)| Family::So { p, q }));
    out.extend((2..=4).map(|n| Family::SoStar { n }));
    out
}
