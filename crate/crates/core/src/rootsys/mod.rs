//! Abstract and restricted root systems with exact integer coordinates.

mod orthogonal;
mod sigma;

pub use orthogonal::{
    is_admissible, max_strongly_orthogonal, maximal_strongly_orthogonal_sets, strongly_orthogonal, AdmissibleSystem,
};
pub use sigma::{
    find_simple_real_root, sigma1_simple, sigma_chain, sigma_conditions_hold, RestrictedRoots,
    SigmaChain, SigmaMethod, ORACLE_LIMIT,
};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{q, Q};

/// A root written in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }

    /// Index of the simple root this equals, if any.
    pub fn simple_index(&self) -> Option<usize> {
        let mut idx = None;
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 if idx.is_none() => idx = Some(i),
                _ => return None,
            }
        }
        idx
    }
}

// Height first, then larger leading coefficients first, so that a1 < a2 < ... within a height.
impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses labels like `a1`, `a1+2a2`, `-a3` against a given rank.
pub fn parse_root(label: &str, rank: usize) -> Result<Root> {
    let bad = || Error::Membership(format!("cannot parse root label '{label}'"));
    let s: String = label.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut coeffs = vec![0i64; rank];
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body[1..].find(['+', '-']).map_or(body.len(), |e| e + 1);
        let term = &body[..end];
        rest = &body[end..];
        let pos = term.find('a').ok_or_else(bad)?;
        let k: i64 = if pos == 0 { 1 } else { term[..pos].parse().map_err(|_| bad())? };
        let i: usize = term[pos + 1..].parse().map_err(|_| bad())?;
        if i == 0 || i > rank {
            return Err(bad());
        }
        coeffs[i - 1] += sign * k;
    }
    Ok(Root(coeffs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E => "E",
            Series::F => "F",
            Series::G => "G",
            Series::BC => "BC",
        };
        f.write_str(s)
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Series> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            "BC" => Series::BC,
            _ => {
                return Err(Error::InvalidType { series: s.to_string(), rank: 0 });
            }
        })
    }
}

pub const MAX_RANK: usize = 8;

/// Cartan matrix with `a[i][j] = 2(α_i, α_j) / (α_i, α_i)`, Bourbaki numbering.
pub fn cartan_matrix(series: Series, rank: usize) -> Result<Vec<Vec<i64>>> {
    let invalid = || Error::InvalidType { series: series.to_string(), rank };
    let valid = match series {
        Series::A => (1..=MAX_RANK).contains(&rank),
        Series::B | Series::C => (2..=MAX_RANK).contains(&rank),
        Series::BC => (1..=MAX_RANK).contains(&rank),
        Series::D => (4..=MAX_RANK).contains(&rank),
        Series::E => (6..=8).contains(&rank),
        Series::F => rank == 4,
        Series::G => rank == 2,
    };
    if !valid {
        return Err(invalid());
    }
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match series {
        Series::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        Series::B | Series::BC => {
            (0..n.saturating_sub(2)).for_each(|i| link(i, i + 1, -1, -1));
            if n >= 2 {
                link(n - 2, n - 1, -1, -2);
            }
        }
        Series::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        Series::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        Series::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Series::G => link(0, 1, -3, -1),
    }
    Ok(a)
}

/// `d_i = (α_i, α_i) / 2`, normalized so that the longest simple root has `d = 1`.
fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<Q>> {
    let n = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    let mut stack = Vec::new();
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        stack.push(start);
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && d[j].is_none() {
                    if cartan[j][i] == 0 {
                        return Err(Error::Inconsistency("Cartan matrix is not symmetrizable".into()));
                    }
                    d[j] = Some(d[i].unwrap() * q(cartan[i][j]) / q(cartan[j][i]));
                    stack.push(j);
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(Option::unwrap).collect();
    for i in 0..n {
        for j in 0..n {
            if d[i] * q(cartan[i][j]) != d[j] * q(cartan[j][i]) {
                return Err(Error::Inconsistency("Cartan matrix is not symmetrizable".into()));
            }
        }
    }
    let max = d.iter().copied().fold(Q::zero(), |a, b| if b > a { b } else { a });
    Ok(d.into_iter().map(|x| x / max).collect())
}

/// A finite root system: roots in the simple-root basis, ordered by height and then coefficients.
#[derive(Clone, Debug)]
pub struct RootSystem {
    series: Series,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<Q>,
    gram: Vec<Vec<Q>>,
    roots: Vec<Root>,
    positives: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[Q] {
        &self.symmetrizer
    }

    /// All roots, negatives first (mirror image of the positives), ascending in the root order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positives(&self) -> &[Root] {
        &self.positives
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank).map(|i| Root::simple(self.rank, i)).collect()
    }

    /// No root has its double in the system.
    pub fn is_reduced(&self) -> bool {
        !self.positives.iter().any(|r| self.contains(&r.scale(2)))
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(&r.0).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        v.len() == self.rank && self.index.contains_key(v)
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.is_root(&r.0)
    }

    pub fn ensure_member(&self, r: &Root) -> Result<()> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(Error::Membership(format!("{r} is not a root of {}", self.name())))
        }
    }

    /// Symmetric bilinear form on root coordinates; the longest simple root has squared length 2.
    pub fn form(&self, a: &[i64], b: &[i64]) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    s += q(a[i] * b[j]) * self.gram[i][j];
                }
            }
        }
        s
    }

    pub fn inner_product(&self, a: &Root, b: &Root) -> Result<Q> {
        self.ensure_member(a)?;
        self.ensure_member(b)?;
        Ok(self.form(&a.0, &b.0))
    }

    pub fn norm2(&self, a: &Root) -> Q {
        self.form(&a.0, &a.0)
    }

    /// `<β, α_i^∨> = Σ_j β_j a_ij`.
    pub fn pairing_with_coroot(&self, beta: &Root, i: usize) -> i64 {
        (0..self.rank).map(|j| beta.0[j] * self.cartan[i][j]).sum()
    }

    pub fn reflect(&self, i: usize, v: &Root) -> Root {
        let k = self.pairing_with_coroot(v, i);
        let mut out = v.clone();
        out.0[i] -= k;
        out
    }

    pub fn highest_root(&self) -> &Root {
        self.positives.last().expect("nonempty root system")
    }

    pub fn long_short_counts(&self) -> (usize, usize) {
        let max = self.roots.iter().map(|r| self.norm2(r)).max().unwrap();
        let long = self.roots.iter().filter(|r| self.norm2(r) == max).count();
        (long, self.roots.len() - long)
    }

    /// Builds a system from explicit data, validating that the roots are closed under negation.
    pub fn from_parts(series: Series, cartan: Vec<Vec<i64>>, mut positives: Vec<Root>) -> Result<RootSystem> {
        let rank = cartan.len();
        let symmetrizer = symmetrizer(&cartan)?;
        let gram = (0..rank)
            .map(|i| (0..rank).map(|j| symmetrizer[i] * q(cartan[i][j])).collect())
            .collect();
        positives.sort();
        positives.dedup();
        if let Some(bad) = positives.iter().find(|r| r.rank() != rank || !r.is_positive()) {
            return Err(Error::NotPositive(bad.to_string()));
        }
        let mut roots: Vec<Root> = positives.iter().map(Root::neg).collect();
        roots.extend(positives.iter().cloned());
        roots.sort();
        let index = roots.iter().enumerate().map(|(i, r)| (r.0.clone(), i)).collect();
        Ok(RootSystem { series, rank, cartan, symmetrizer, gram, roots, positives, index })
    }
}

/// Generates the positive roots from the Cartan matrix by root strings.
fn generate_positives(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut by_height: Vec<Vec<Root>> = vec![(0..n).map(|i| Root::simple(n, i)).collect()];
    let mut all: std::collections::HashSet<Vec<i64>> = by_height[0].iter().map(|r| r.0.clone()).collect();
    loop {
        let mut next = Vec::new();
        for beta in by_height.last().unwrap() {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down.0[i] -= 1;
                    if all.contains(&down.0) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| beta.0[j] * cartan[i][j]).sum();
                let qv = p - pair;
                if qv > 0 {
                    let mut up = beta.clone();
                    up.0[i] += 1;
                    if all.insert(up.0.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        by_height.push(next);
    }
    by_height.into_iter().flatten().collect()
}

/// Builds the root system of a simple type. `BC` yields the non-reduced system with `2β` present
/// for every short `β`. `C2` is accepted and realized with its own (transposed) Cartan matrix.
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    let series_for_check = if series == Series::C && rank == 2 { Series::B } else { series };
    cartan_matrix(series_for_check, rank)?;
    let cartan = if series == Series::C && rank == 2 {
        vec![vec![2, -2], vec![-1, 2]]
    } else {
        cartan_matrix(series, rank)?
    };
    let mut positives = generate_positives(&cartan);
    if series == Series::BC {
        let sym = symmetrizer(&cartan)?;
        let gram: Vec<Vec<Q>> = (0..rank)
            .map(|i| (0..rank).map(|j| sym[i] * q(cartan[i][j])).collect())
            .collect();
        let norm = |r: &Root| -> Q {
            let mut s = Q::zero();
            for i in 0..rank {
                for j in 0..rank {
                    s += q(r.0[i] * r.0[j]) * gram[i][j];
                }
            }
            s
        };
        let min = positives.iter().map(&norm).min().unwrap();
        let long = positives.iter().map(&norm).max().unwrap();
        // In rank one every root is short; otherwise double only the strictly short ones.
        let doubles: Vec<Root> = positives
            .iter()
            .filter(|r| norm(r) == min && (rank == 1 || min < long))
            .map(|r| r.scale(2))
            .collect();
        positives.extend(doubles);
    }
    RootSystem::from_parts(series, cartan, positives)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_root_counts() {
        let cases = [
            (Series::A, 1, 2),
            (Series::A, 2, 6),
            (Series::A, 4, 20),
            (Series::B, 2, 8),
            (Series::B, 3, 18),
            (Series::C, 2, 8),
            (Series::C, 3, 18),
            (Series::D, 4, 24),
            (Series::D, 5, 40),
            (Series::E, 6, 72),
            (Series::E, 7, 126),
            (Series::E, 8, 240),
            (Series::F, 4, 48),
            (Series::G, 2, 12),
            (Series::BC, 1, 4),
            (Series::BC, 2, 12),
        ];
        for (s, n, count) in cases {
            let sys = build_root_system(s, n).unwrap();
            assert_eq!(sys.roots().len(), count, "{s}{n}");
            assert_eq!(sys.positives().len() * 2, count);
        }
    }

    #[test]
    fn rejects_invalid_types() {
        assert!(build_root_system(Series::D, 3).is_err());
        assert!(build_root_system(Series::E, 5).is_err());
        assert!(build_root_system(Series::G, 3).is_err());
        assert!(build_root_system(Series::C, 1).is_err());
        assert!(build_root_system(Series::A, 9).is_err());
        assert!(build_root_system(Series::C, 2).is_ok());
    }

    #[test]
    fn a2_inner_products() {
        let sys = build_root_system(Series::A, 2).unwrap();
        let a1 = Root(vec![1, 0]);
        let a2 = Root(vec![0, 1]);
        assert_eq!(sys.inner_product(&a1, &a2).unwrap(), q(-1));
        assert_eq!(sys.inner_product(&a1, &a1).unwrap(), q(2));
        assert!(sys.inner_product(&Root(vec![2, 0]), &a1).is_err());
    }

    #[test]
    fn g2_length_ratio_from_cartan_matrix() {
        let sys = build_root_system(Series::G, 2).unwrap();
        let short = sys.norm2(&Root(vec![1, 0]));
        let long = sys.norm2(&Root(vec![0, 1]));
        assert_eq!(long / short, q(3));
        assert_eq!(sys.long_short_counts(), (6, 6));
    }

    #[test]
    fn highest_roots() {
        let e8 = build_root_system(Series::E, 8).unwrap();
        assert_eq!(e8.highest_root().0, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        let f4 = build_root_system(Series::F, 4).unwrap();
        assert_eq!(f4.highest_root().0, vec![2, 3, 4, 2]);
        let g2 = build_root_system(Series::G, 2).unwrap();
        assert_eq!(g2.highest_root().0, vec![3, 2]);
    }

    #[test]
    fn order_is_height_then_descending_coefficients() {
        let sys = build_root_system(Series::A, 3).unwrap();
        let labels: Vec<String> = sys.positives().iter().map(|r| r.to_string()).collect();
        assert_eq!(labels, ["a1", "a2", "a3", "a1+a2", "a2+a3", "a1+a2+a3"]);
    }

    #[test]
    fn labels_round_trip() {
        for label in ["a1", "a1+2a2", "-a1-a3", "3a1+2a2"] {
            let r = parse_root(label, 3).unwrap();
            assert_eq!(r.to_string(), label);
        }
        assert!(parse_root("a4", 3).is_err());
        assert!(parse_root("b1", 3).is_err());
    }

    #[test]
    fn membership() {
        let a2 = build_root_system(Series::A, 2).unwrap();
        assert!(a2.is_root(&[1, 1]));
        assert!(!a2.is_root(&[2, 0]));
        let c2 = build_root_system(Series::C, 2).unwrap();
        assert!(c2.is_root(&[2, 1]));
        assert!(!c2.is_root(&[1, 2]));
        let b2 = build_root_system(Series::B, 2).unwrap();
        assert!(b2.is_root(&[1, 2]));
    }
}
