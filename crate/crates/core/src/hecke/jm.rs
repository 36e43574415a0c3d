//! Jucys-Murphy elements, symmetric expressions in them, the trace form and
//! the character map `sigma`.

use std::collections::BTreeMap;
use std::fmt;

use super::{AlgebraContext, AlgebraElement, HeckeError};
use crate::combinatorics::{alpha_multiset, Multipartition};
use crate::rings::linalg::{echelon, solve};
use crate::rings::{elementary_symmetric, LaurentPoly, Scalar};

impl AlgebraContext {
    /// `L_i` in normal form, via `L_i = q^{-1} T_{i-1} L_{i-1} T_{i-1}`.
    pub fn jm_element(&self, i: usize) -> AlgebraElement {
        assert!(i >= 1 && i <= self.n(), "JM index out of range");
        if i == 1 {
            return self.l1();
        }
        let q_inv = self.params().q().inv().expect("q is invertible");
        let t = self.t(i - 1);
        let prev = self.jm_element(i - 1);
        let inner = self.multiply(&prev, &t).expect("same context");
        self.multiply(&t, &inner).expect("same context").scale(&q_inv)
    }

    /// All of `L_1, ..., L_n`.
    pub fn jm_elements(&self) -> Vec<AlgebraElement> {
        (1..=self.n()).map(|i| self.jm_element(i)).collect()
    }

    /// `e_k(L_1, ..., L_n)`.
    pub fn symmetric_jm(&self, k: usize) -> AlgebraElement {
        assert!(k >= 1 && k <= self.n(), "degree out of range");
        let ls = self.jm_elements();
        // e_j over the first m variables, built up one variable at a time.
        let mut e: Vec<AlgebraElement> = vec![self.one()];
        for l in &ls {
            e.push(self.zero());
            for j in (1..e.len()).rev() {
                let t = self.multiply(&e[j - 1], l).expect("same context");
                e[j] = e[j].add(&t).expect("same context");
            }
        }
        e.swap_remove(k)
    }

    /// Matrix of left multiplication by `x`, as columns `x * b`.
    pub fn left_matrix(&self, x: &AlgebraElement) -> Result<Vec<Vec<Scalar>>, HeckeError> {
        let d = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|b| self.multiply(x, &self.basis_element(b)).map(|v| self.to_dense(&v)))
            .collect::<Result<_, _>>()?;
        Ok((0..d).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
    }

    /// `x^{-1}` by solving `x z = 1` in the regular representation.
    pub fn invert(&self, x: &AlgebraElement) -> Result<AlgebraElement, HeckeError> {
        let m = self.left_matrix(x)?;
        let rank = echelon(m.clone(), self.dim(), self.domain()).rank();
        if rank < self.dim() {
            return Err(HeckeError::NotInvertible);
        }
        let one = self.to_dense(&self.one());
        let z = solve(&m, &one, self.domain()).ok_or(HeckeError::NotInvertible)?;
        Ok(self.from_dense(&z))
    }

    /// The symmetrizing trace: coefficient of the identity word.
    pub fn tau(&self, x: &AlgebraElement) -> Scalar {
        x.coefficient(0).cloned().unwrap_or_else(|| self.domain().zero())
    }

    /// `tau(a b)`.
    pub fn pairing(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<Scalar, HeckeError> {
        Ok(self.tau(&self.multiply(a, b)?))
    }

    /// `f(L_1, ..., L_n)` for a Laurent expression `f`.
    pub fn realize(&self, f: &SymmetricExpr) -> Result<AlgebraElement, HeckeError> {
        if f.num_vars() != self.n() {
            return Err(HeckeError::InvalidParameters("expression has the wrong number of variables".into()));
        }
        let ls = self.jm_elements();
        let mut inverses: Vec<Option<AlgebraElement>> = vec![None; self.n()];
        let mut out = self.zero();
        for (exps, coeff) in f.terms() {
            let mut term = self.scalar(self.params().eval(coeff));
            for (j, &e) in exps.iter().enumerate() {
                let base = if e < 0 {
                    if inverses[j].is_none() {
                        inverses[j] = Some(self.invert(&ls[j])?);
                    }
                    inverses[j].as_ref().unwrap()
                } else {
                    &ls[j]
                };
                for _ in 0..e.unsigned_abs() {
                    term = self.multiply(&term, base)?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// Laurent polynomial in `n` commuting variables (standing for the JM
/// elements) with coefficients in `R = Q[q^±, Q_i^±]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricExpr {
    num_vars: usize,
    num_q_vars: usize,
    terms: BTreeMap<Vec<i32>, LaurentPoly>,
}

impl SymmetricExpr {
    pub fn zero(num_vars: usize, num_q_vars: usize) -> Self {
        SymmetricExpr { num_vars, num_q_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: LaurentPoly) -> Self {
        let mut s = Self::zero(num_vars, c.num_q_vars());
        s.add_term(vec![0; num_vars], c);
        s
    }

    pub fn one(num_vars: usize, num_q_vars: usize) -> Self {
        Self::constant(num_vars, LaurentPoly::one(num_q_vars))
    }

    /// Single monomial `x^exps` with coefficient one.
    pub fn monomial(exps: Vec<i32>, num_q_vars: usize) -> Self {
        let mut s = Self::zero(exps.len(), num_q_vars);
        s.add_term(exps, LaurentPoly::one(num_q_vars));
        s
    }

    /// `e_k(x_1, ..., x_n)`.
    pub fn elementary(num_vars: usize, k: usize, num_q_vars: usize) -> Self {
        let mut s = Self::zero(num_vars, num_q_vars);
        fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                subsets(n, k, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        subsets(num_vars, k, 0, &mut Vec::new(), &mut all);
        for sub in all {
            let mut e = vec![0; num_vars];
            for i in sub {
                e[i] = 1;
            }
            s.add_term(e, LaurentPoly::one(num_q_vars));
        }
        s
    }

    /// `(x_1 ... x_n)^{-1}`.
    pub fn inverse_det(num_vars: usize, num_q_vars: usize) -> Self {
        Self::monomial(vec![-1; num_vars], num_q_vars)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: LaurentPoly) {
        assert_eq!(exps.len(), self.num_vars);
        let entry = self.terms.entry(exps.clone()).or_insert_with(|| LaurentPoly::zero(self.num_q_vars));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.num_vars, self.num_q_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.num_vars, self.num_q_vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Invariance under every permutation of the variables, tested on
    /// adjacent transpositions.
    pub fn is_symmetric(&self) -> bool {
        (0..self.num_vars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut s = e.clone();
                s.swap(i, i + 1);
                self.terms.get(&s) == Some(c)
            })
        })
    }

    /// `f(values)`.
    pub fn evaluate(&self, values: &[LaurentPoly]) -> LaurentPoly {
        assert_eq!(values.len(), self.num_vars);
        let mut acc = LaurentPoly::zero(self.num_q_vars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                t = &t * &v.pow(k).expect("negative powers are taken of monomials only");
            }
            acc = &acc + &t;
        }
        acc
    }
}

/// `sigma(f)`: the value of a symmetric `f` on the content multiset of each
/// multipartition.
pub fn sigma(f: &SymmetricExpr, multipartitions: &[Multipartition]) -> Result<Vec<LaurentPoly>, HeckeError> {
    if !f.is_symmetric() {
        return Err(HeckeError::NonSymmetric);
    }
    Ok(multipartitions.iter().map(|mp| f.evaluate(&alpha_multiset(mp))).collect())
}

/// Monomial `e_1^{k_1} ... e_n^{k_n} e_n^{-m}` in the generators of the JM
/// center.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct JmMonomial {
    pub e_exps: Vec<u32>,
    pub inv_det: u32,
}

impl JmMonomial {
    pub fn one(n: usize) -> Self {
        JmMonomial { e_exps: vec![0; n], inv_det: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.e_exps.iter().sum::<u32>() + self.inv_det
    }

    /// Value on a multiset of `n` eigenvalues.
    pub fn evaluate(&self, values: &[LaurentPoly], num_q_vars: usize) -> LaurentPoly {
        let e = elementary_symmetric(values, num_q_vars);
        let mut acc = LaurentPoly::one(num_q_vars);
        for (k, &m) in self.e_exps.iter().enumerate() {
            if m > 0 {
                acc = &acc * &e[k + 1].pow(m as i32).unwrap();
            }
        }
        if self.inv_det > 0 {
            let det_inv = e[values.len()].inverse_monomial().expect("product of monomials");
            acc = &acc * &det_inv.pow(self.inv_det as i32).unwrap();
        }
        acc
    }

    /// Same evaluation on specialized scalars.
    pub fn evaluate_scalars(&self, values: &[Scalar], one: &Scalar) -> Option<Scalar> {
        let zero = one - one;
        let mut e = vec![one.clone()];
        for v in values {
            e.push(zero.clone());
            for k in (1..e.len()).rev() {
                e[k] = &e[k] + &(&e[k - 1] * v);
            }
        }
        let mut acc = one.clone();
        for (k, &m) in self.e_exps.iter().enumerate() {
            acc = &acc * &e[k + 1].pow(m as i64)?;
        }
        if self.inv_det > 0 {
            acc = &acc * &e[values.len()].pow(-(self.inv_det as i64))?;
        }
        Some(acc)
    }

    pub fn to_expr(&self, num_q_vars: usize) -> SymmetricExpr {
        let n = self.e_exps.len();
        let mut acc = SymmetricExpr::one(n, num_q_vars);
        for (k, &m) in self.e_exps.iter().enumerate() {
            let ek = SymmetricExpr::elementary(n, k + 1, num_q_vars);
            for _ in 0..m {
                acc = acc.mul(&ek);
            }
        }
        let inv = SymmetricExpr::inverse_det(n, num_q_vars);
        for _ in 0..self.inv_det {
            acc = acc.mul(&inv);
        }
        acc
    }
}

impl fmt::Display for JmMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, &m) in self.e_exps.iter().enumerate() {
            match m {
                0 => {}
                1 => parts.push(format!("e{}", k + 1)),
                _ => parts.push(format!("e{}^{m}", k + 1)),
            }
        }
        if self.inv_det > 0 {
            parts.push(format!("e{}^-{}", self.e_exps.len(), self.inv_det));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// `sigma` of a JM monomial on every multipartition, as polynomials in `R`.
pub fn sigma_monomial(m: &JmMonomial, multipartitions: &[Multipartition], num_q_vars: usize) -> Vec<LaurentPoly> {
    multipartitions.iter().map(|mp| m.evaluate(&alpha_multiset(mp), num_q_vars)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_multipartitions;
    use crate::hecke::Parameters;

    #[test]
    fn sigma_examples() {
        let mps = enumerate_multipartitions(2, 1);
        let e1 = SymmetricExpr::elementary(2, 1, 1);
        let s: Vec<String> = sigma(&e1, &mps).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["Q1 + q*Q1", "q^-1*Q1 + Q1"]);
        let one = SymmetricExpr::one(2, 1);
        assert!(sigma(&one, &mps).unwrap().iter().all(LaurentPoly::is_one));

        let mps = [Multipartition::from_parts(&[&[1], &[1]])];
        let e2 = SymmetricExpr::elementary(2, 2, 2);
        assert_eq!(sigma(&e2, &mps).unwrap()[0].to_string(), "Q1*Q2");
    }

    #[test]
    fn non_symmetric_rejected() {
        let f = SymmetricExpr::monomial(vec![1, 0], 1);
        assert_eq!(sigma(&f, &enumerate_multipartitions(2, 1)), Err(HeckeError::NonSymmetric));
    }

    #[test]
    fn monomial_evaluation_agrees_with_expression() {
        let m = JmMonomial { e_exps: vec![1, 2], inv_det: 1 };
        let mps = enumerate_multipartitions(2, 2);
        let via_expr = sigma(&m.to_expr(2), &mps).unwrap();
        assert_eq!(via_expr, sigma_monomial(&m, &mps, 2));
    }

    #[test]
    fn scalar_evaluation() {
        let ctx_params = Parameters::rational(3, &[5]).unwrap();
        let m = JmMonomial { e_exps: vec![1, 0], inv_det: 1 };
        let mp = Multipartition::from_parts(&[&[2]]);
        let symbolic = m.evaluate(&alpha_multiset(&mp), 1);
        let vals: Vec<Scalar> = alpha_multiset(&mp).iter().map(|a| ctx_params.eval(a)).collect();
        let direct = m.evaluate_scalars(&vals, &Scalar::from_i64(1)).unwrap();
        assert_eq!(ctx_params.eval(&symbolic), direct);
    }
}
