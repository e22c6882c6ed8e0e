//! Structure constants `N_{α,β}` of a Chevalley basis, fixed by extraspecial pairs.

use std::collections::HashMap;

use num_traits::Zero;

use crate::exact::{q, Q};
use crate::rootsys::{Root, RootSystem};

pub(crate) struct ChevalleySigns<'a> {
    sys: &'a RootSystem,
    memo: HashMap<(usize, usize), i64>,
}

impl<'a> ChevalleySigns<'a> {
    pub(crate) fn new(sys: &'a RootSystem) -> Self {
        ChevalleySigns { sys, memo: HashMap::new() }
    }

    /// Largest `p` with `b - p a` a root.
    fn string_below(&self, a: &Root, b: &Root) -> i64 {
        let mut p = 0;
        let mut v = b.sub(a);
        while self.sys.contains(&v) {
            p += 1;
            v = v.sub(a);
        }
        p
    }

    fn norm(&self, r: &Root) -> Q {
        self.sys.norm2(r)
    }

    /// `[x_a, x_b] = N(a, b) x_{a+b}`, zero when `a + b` is not a root.
    pub(crate) fn n(&mut self, a: &Root, b: &Root) -> i64 {
        let s = a.add(b);
        if !self.sys.contains(&s) {
            return 0;
        }
        let key = (self.sys.index_of(a).unwrap(), self.sys.index_of(b).unwrap());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = self.compute(a, b, &s);
        self.memo.insert(key, v);
        v
    }

    fn compute(&mut self, a: &Root, b: &Root, s: &Root) -> i64 {
        let (pa, pb) = (a.is_positive(), b.is_positive());
        if pa && pb {
            if b < a {
                return -self.n(b, a);
            }
            return self.positive_pair(a, b, s);
        }
        if !pa && !pb {
            return -self.n(&a.neg(), &b.neg());
        }
        // a + b + c = 0 with N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b)
        let c = s.neg();
        let (num, den) = match (pa, c.is_positive()) {
            (true, true) => (self.n(&c, a), self.norm(b)),
            (true, false) => (self.n(b, &c), self.norm(a)),
            (false, true) => (self.n(b, &c), self.norm(a)),
            (false, false) => (self.n(&c, a), self.norm(b)),
        };
        rational_to_int(q(num) * self.norm(&c) / den)
    }

    /// Both positive with `a < b`.
    fn positive_pair(&mut self, a: &Root, b: &Root, xi: &Root) -> i64 {
        let a0 = self
            .sys
            .positives()
            .iter()
            .find(|r| {
                let d = xi.sub(r);
                d.is_positive() && self.sys.contains(&d)
            })
            .expect("a nonsimple positive root has a special pair")
            .clone();
        let b0 = xi.sub(&a0);
        let p0 = self.string_below(&a0, &b0);
        if *a == a0 {
            return p0 + 1;
        }
        // Four-term relation with (a, b, -a0, -b0).
        let (g, d) = (a0.neg(), b0.neg());
        let n_gd = -(p0 + 1);
        let mut rhs = Q::zero();
        let bg = b.add(&g);
        if self.sys.contains(&bg) {
            rhs += q(self.n(b, &g) * self.n(a, &d)) / self.norm(&bg);
        }
        let ga = g.add(a);
        if self.sys.contains(&ga) {
            rhs += q(self.n(&g, a) * self.n(b, &d)) / self.norm(&ga);
        }
        rational_to_int(-rhs * self.norm(xi) / q(n_gd))
    }
}

fn rational_to_int(x: Q) -> i64 {
    assert!(x.is_integer(), "structure constant {x} is not integral");
    *x.numer() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Series};

    #[test]
    fn magnitudes_are_string_lengths() {
        for (s, r) in [(Series::A, 3), (Series::B, 3), (Series::C, 3), (Series::G, 2), (Series::F, 4)] {
            let sys = build_root_system(s, r).unwrap();
            let mut signs = ChevalleySigns::new(&sys);
            for a in sys.roots() {
                for b in sys.roots() {
                    let n = signs.n(a, b);
                    if sys.contains(&a.add(b)) {
                        let p = signs.string_below(a, b);
                        assert_eq!(n.abs(), p + 1, "{s}{r}: N({a},{b})");
                    } else {
                        assert_eq!(n, 0);
                    }
                }
            }
        }
    }
}
