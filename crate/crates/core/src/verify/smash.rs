//! The `q = 1` degeneration `C S_n # P_Q`, built from its presentation:
//! `P_Q = ⊗_i C[L_i] / prod_j (L_i - Q_j)` with `S_n` permuting the factors.

use crate::rings::linalg::{kernel_basis, solve, SpanBuilder};
use crate::rings::{Rational, Scalar, ScalarDomain};

pub struct SmashProduct {
    n: usize,
    r: usize,
    /// `L^r = sum_k reduction[k] L^k` in each tensor factor.
    reduction: Vec<Scalar>,
}

impl SmashProduct {
    pub fn new(n: usize, big_q: &[Rational]) -> Self {
        let r = big_q.len();
        let mut poly = vec![Scalar::from_i64(1)];
        for qi in big_q {
            let qi = Scalar::Rat(qi.clone());
            let mut next = vec![Scalar::from_i64(0); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * &qi);
            }
            poly = next;
        }
        SmashProduct { n, r, reduction: poly[..r].iter().map(|c| -c).collect() }
    }

    /// `dim P_Q = r^n`.
    pub fn dim(&self) -> usize {
        self.r.pow(self.n as u32)
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut a = vec![0; self.n];
        for slot in a.iter_mut() {
            *slot = idx % self.r;
            idx /= self.r;
        }
        a
    }

    fn encode(&self, a: &[usize]) -> usize {
        a.iter().rev().fold(0, |acc, &e| acc * self.r + e)
    }

    fn zero(&self) -> Vec<Scalar> {
        vec![Scalar::from_i64(0); self.dim()]
    }

    pub fn one(&self) -> Vec<Scalar> {
        let mut v = self.zero();
        v[0] = Scalar::from_i64(1);
        v
    }

    /// `L_i * v`.
    pub fn mul_l(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut a = self.decode(idx);
            if a[i] + 1 < self.r {
                a[i] += 1;
                let j = self.encode(&a);
                out[j] = &out[j] + c;
            } else {
                for (k, red) in self.reduction.iter().enumerate() {
                    a[i] = k;
                    let j = self.encode(&a);
                    out[j] = &out[j] + &(c * red);
                }
            }
        }
        out
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (idx, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut w = v.to_vec();
            for (i, &e) in self.decode(idx).iter().enumerate() {
                for _ in 0..e {
                    w = self.mul_l(i, &w);
                }
            }
            for (o, x) in out.iter_mut().zip(&w) {
                *o = &*o + &(c * x);
            }
        }
        out
    }

    /// `s_i` acting on `v` by swapping tensor slots `i-1` and `i`.
    pub fn swap(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (idx, c) in v.iter().enumerate() {
            let mut a = self.decode(idx);
            a.swap(i - 1, i);
            out[self.encode(&a)] = c.clone();
        }
        out
    }

    /// Basis of the `S_n`-invariants, as the common kernel of `s_i - 1`.
    pub fn invariants(&self) -> Vec<Vec<Scalar>> {
        let d = self.dim();
        let mut rows = Vec::new();
        for i in 1..self.n {
            let cols: Vec<Vec<Scalar>> = (0..d)
                .map(|b| {
                    let mut e = self.zero();
                    e[b] = Scalar::from_i64(1);
                    let mut s = self.swap(i, &e);
                    s[b] = &s[b] - &Scalar::from_i64(1);
                    s
                })
                .collect();
            rows.extend((0..d).map(|k| cols.iter().map(|c| c[k].clone()).collect::<Vec<_>>()));
        }
        if rows.is_empty() {
            return (0..d)
                .map(|b| {
                    let mut e = self.zero();
                    e[b] = Scalar::from_i64(1);
                    e
                })
                .collect();
        }
        kernel_basis(rows, d, ScalarDomain::Rational).expect("rational kernel")
    }

    /// `e_k(L_1, ..., L_n)` in `P_Q`.
    pub fn elementary(&self, k: usize) -> Vec<Scalar> {
        let mut e = vec![self.one()];
        for i in 0..self.n {
            e.push(self.zero());
            for j in (1..e.len()).rev() {
                let t = self.mul_l(i, &e[j - 1]);
                e[j] = e[j].iter().zip(&t).map(|(a, b)| a + b).collect();
            }
        }
        e.swap_remove(k)
    }

    /// Rank of the subalgebra generated by `e_1, ..., e_n, e_n^{-1}`.
    pub fn symmetric_span_rank(&self) -> usize {
        let mut gens: Vec<Vec<Scalar>> = (1..=self.n).map(|k| self.elementary(k)).collect();
        let en = gens[self.n - 1].clone();
        let d = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|b| {
                let mut e = self.zero();
                e[b] = Scalar::from_i64(1);
                self.mul(&en, &e)
            })
            .collect();
        let rows: Vec<Vec<Scalar>> = (0..d).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        gens.push(solve(&rows, &self.one(), ScalarDomain::Rational).expect("e_n is invertible for nonzero Q"));

        let mut span = SpanBuilder::new(d, ScalarDomain::Rational);
        span.insert(&self.one());
        let mut frontier = vec![self.one()];
        while let Some(v) = frontier.pop() {
            for g in &gens {
                let w = self.mul(g, &v);
                if span.insert(&w) {
                    frontier.push(w);
                }
            }
        }
        span.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| Rational::from_integer(v.into())).collect()
    }

    #[test]
    fn invariant_dimensions() {
        assert_eq!(SmashProduct::new(2, &q(&[2, 3])).invariants().len(), 3);
        assert_eq!(SmashProduct::new(2, &q(&[2, 3, 5])).invariants().len(), 6);
        assert_eq!(SmashProduct::new(1, &q(&[2, 3, 5])).invariants().len(), 3);
    }

    #[test]
    fn symmetric_polynomials_fill_the_invariants() {
        let p = SmashProduct::new(2, &q(&[2, 3]));
        assert_eq!(p.symmetric_span_rank(), 3);
        let p = SmashProduct::new(3, &q(&[2, 3]));
        assert_eq!(p.symmetric_span_rank(), p.invariants().len());
    }
}
