//! Values transcribed from the published tables, kept verbatim, including their inconsistencies.

use crate::realforms::Family;
use crate::rootsys::Series;

/// A real-forms table row as printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PrintedRow {
    pub delta: String,
    pub sigma: String,
    pub dim: i64,
    pub rank: i64,
    pub dim_omega: i64,
    pub real_rank: i64,
    pub f_max: i64,
    pub split: bool,
    pub dim_n: i64,
}

fn t(series: &str, r: i64) -> String {
    format!("{series}{r}")
}

/// The printed row formula evaluated at `family`.
pub(crate) fn printed_row(family: &Family) -> PrintedRow {
    let row = |delta: String, sigma: String, nums: [i64; 5], split: bool, dim_n: i64| PrintedRow {
        delta,
        sigma,
        dim: nums[0],
        rank: nums[1],
        dim_omega: nums[2],
        real_rank: nums[3],
        f_max: nums[4],
        split,
        dim_n,
    };
    match *family {
        Family::SlR { n } => {
            let n = n as i64;
            row(t("A", n - 1), t("A", n - 1), [(n - 1) * (n + 1), n - 1, n * (n - 1), n - 1, n / 2], true, n * (n - 1) / 2)
        }
        Family::SuStar { n } => {
            let n = n as i64;
            row(t("A", 2 * n - 1), t("A", n - 1), [(2 * n - 1) * (2 * n + 1), 2 * n - 1, 2 * n * (2 * n - 1), n - 1, 0], false, 2 * n * (n - 1))
        }
        Family::Su { p, q } => {
            let (p, q) = (p as i64, q as i64);
            let sigma = if p < q { t("BC", p) } else { t("C", p) };
            row(t("A", p + q - 1), sigma, [(p + q - 1) * (p + q), p + q + 1, (p + q - 2) * (p + q), p, p], false, p * (2 * q - 1) - 2)
        }
        Family::Sp { p, q } => {
            let (p, q) = (p as i64, q as i64);
            let s = p + q;
            let sigma = if p < q { t("BC", p) } else { t("C", p) };
            row(t("C", s), sigma, [(2 * s + 1) * s, s, 2 * s * s, p, p], false, 4 * p * q - p)
        }
        Family::SpR { n } => {
            let n = n as i64;
            row(t("C", n), t("C", n), [n * (2 * n + 1), n, 2 * n * n, n, n], true, n * n)
        }
        Family::SoStar { n } => {
            let n = n as i64;
            let sigma = if n % 2 == 1 { t("BC", n * (n - 1) / 2) } else { t("C", n / 2) };
            row(t("D", n), sigma, [n * (2 * n - 1), n, 2 * n * (n - 1), n / 2, n / 2], false, n * n - n - n / 2)
        }
        Family::So { p, q } => so_row(p as i64, q as i64),
    }
}

fn so_row(a: i64, b: i64) -> PrintedRow {
    let mk = |delta, sigma, dim, rank, dim_omega, real_rank, f_max, split, dim_n| PrintedRow {
        delta,
        sigma,
        dim,
        rank,
        dim_omega,
        real_rank,
        f_max,
        split,
        dim_n,
    };
    match (a % 2, b % 2) {
        (0, 0) => {
            let (p, q) = (a / 2, b / 2);
            let s = p + q;
            let sigma = if p < q { t("B", p) } else { t("D", p) };
            mk(t("D", s), sigma, (2 * s - 1) * s, s, (2 * s - 2) * s, 2 * p, 2 * p, p == q, 4 * p * q - 2 * p)
        }
        (1, 1) => {
            let (p, q) = (a / 2, b / 2);
            let s = p + q + 1;
            let sigma = if p < q { t("B", p) } else { t("D", p) };
            mk(t("D", s), sigma, (2 * s - 1) * s, s, (2 * s - 2) * s, 2 * p + 1, 2 * p, p == q, 4 * p * q + 2 * q)
        }
        _ => {
            // so(2p, 2q+1) with the even size first
            let (even, odd) = if a % 2 == 0 { (a, b) } else { (b, a) };
            let (p, q) = (even / 2, (odd - 1) / 2);
            let s = p + q;
            let (dim, rank, dim_omega) = ((2 * s + 1) * s, s, 2 * s * s);
            if p <= q {
                mk(t("B", s), t("B", 2 * p), dim, rank, dim_omega, 2 * p, 2 * p, p == q, 4 * p * q)
            } else {
                mk(t("B", s), t("B", 2 * q + 1), dim, rank, dim_omega, 2 * q + 1, 2 * q + 1, false, 4 * p * q + 2 * (p - q) - 1)
            }
        }
    }
}

/// A complex-table row formula: `(dim_R, rank_R, dim Ω)` as printed.
pub(crate) fn printed_complex(series: Series, r: i64) -> (i64, i64, i64) {
    match series {
        Series::A => (2 * r * (r + 2), 2 * r, 2 * r * (r + 1)),
        Series::B | Series::C => (2 * r * (2 * r + 1), 2 * r, 4 * r * r),
        Series::D => (2 * r * (2 * r - 1), 2 * r, 4 * r * (r - 1)),
        Series::E if r == 6 => (156, 12, 144),
        Series::E if r == 7 => (266, 14, 252),
        Series::E => (496, 16, 480),
        Series::F => (104, 8, 96),
        Series::G => (28, 4, 24),
        Series::BC => unreachable!("not a complex simple type"),
    }
}

/// An exceptional real form; the numeric columns are as printed, `dim_k` is from the literature
/// and is present only for non-split forms.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ExceptionalRow {
    pub name: &'static str,
    pub series: Series,
    pub rank: usize,
    pub sigma: (&'static str, usize),
    pub dim: i64,
    pub dim_omega: i64,
    pub real_rank: i64,
    pub f_max: i64,
    pub split: bool,
    pub dim_n: i64,
    pub dim_k: Option<i64>,
}

const fn ex(
    name: &'static str,
    series: Series,
    rank: usize,
    sigma: (&'static str, usize),
    nums: [i64; 5],
    split: bool,
    dim_k: Option<i64>,
) -> ExceptionalRow {
    ExceptionalRow {
        name,
        series,
        rank,
        sigma,
        dim: nums[0],
        dim_omega: nums[1],
        real_rank: nums[2],
        f_max: nums[3],
        split,
        dim_n: nums[4],
        dim_k,
    }
}

pub(crate) const EXCEPTIONAL: [ExceptionalRow; 12] = [
    ex("EI", Series::E, 6, ("E", 6), [78, 72, 6, 4, 36], true, None),
    ex("EII", Series::E, 6, ("F", 4), [78, 72, 4, 4, 34], false, Some(38)),
    ex("EIII", Series::E, 6, ("BC", 2), [78, 72, 3, 2, 30], false, Some(46)),
    ex("EIV", Series::E, 6, ("A", 2), [78, 72, 3, 0, 24], false, Some(52)),
    ex("EV", Series::E, 7, ("E", 7), [133, 126, 7, 7, 63], true, None),
    ex("EVI", Series::E, 7, ("F", 4), [133, 126, 4, 4, 60], false, Some(69)),
    ex("EVII", Series::E, 7, ("C", 3), [133, 126, 3, 3, 51], false, Some(79)),
    ex("EVIII", Series::E, 8, ("E", 8), [248, 240, 8, 8, 120], true, None),
    ex("EIX", Series::E, 8, ("F", 4), [248, 240, 4, 4, 110], false, Some(136)),
    ex("FI", Series::F, 4, ("F", 4), [52, 48, 4, 4, 24], true, None),
    ex("FII", Series::F, 4, ("BC", 1), [52, 48, 1, 1, 15], false, Some(36)),
    ex("G", Series::G, 2, ("G", 2), [14, 12, 2, 2, 6], true, None),
];
