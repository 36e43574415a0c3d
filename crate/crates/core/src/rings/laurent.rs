//! Sparse multivariate Laurent polynomials in `q, Q_1, ..., Q_r` with
//! rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Exponent vector `(e_q, e_Q1, ..., e_Qr)`.
///
/// Ordered by total degree, then by the exponent of `q`, then with higher
/// powers of earlier `Q_k` first; this is also the printing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0[..1].cmp(&other.0[..1]))
            .then_with(|| other.0[1..].cmp(&self.0[1..]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Q[q^±1, Q_1^±1, ..., Q_r^±1]` in canonical sparse form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    num_q_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero(num_q_vars: usize) -> Self {
        LaurentPoly { num_q_vars, terms: BTreeMap::new() }
    }

    pub fn one(num_q_vars: usize) -> Self {
        Self::constant(num_q_vars, Rational::one())
    }

    pub fn constant(num_q_vars: usize, c: Rational) -> Self {
        Self::monomial(num_q_vars, Monomial::one(num_q_vars + 1), c)
    }

    pub fn from_int(num_q_vars: usize, c: i64) -> Self {
        Self::constant(num_q_vars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(num_q_vars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), num_q_vars + 1, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { num_q_vars, terms }
    }

    /// `q^e_q * Q_1^e_1 * ... * Q_r^e_r` with coefficient one.
    pub fn from_exponents(exps: &[i32]) -> Self {
        assert!(!exps.is_empty());
        Self::monomial(exps.len() - 1, Monomial(exps.to_vec()), Rational::one())
    }

    /// The variable `q`.
    pub fn q(num_q_vars: usize) -> Self {
        Self::q_pow(num_q_vars, 1)
    }

    pub fn q_pow(num_q_vars: usize, e: i32) -> Self {
        let mut m = Monomial::one(num_q_vars + 1);
        m.0[0] = e;
        Self::monomial(num_q_vars, m, Rational::one())
    }

    /// The cyclotomic parameter `Q_k`, 1-based.
    pub fn big_q(num_q_vars: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= num_q_vars, "Q index out of range");
        let mut m = Monomial::one(num_q_vars + 1);
        m.0[k] = 1;
        Self::monomial(num_q_vars, m, Rational::one())
    }

    pub fn num_q_vars(&self) -> usize {
        self.num_q_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Returns `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Returns the single term when the polynomial is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(
            self.num_q_vars, other.num_q_vars,
            "Laurent polynomials over different parameter sets"
        );
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_q_vars);
        }
        LaurentPoly {
            num_q_vars: self.num_q_vars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly {
            num_q_vars: self.num_q_vars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    /// Multiplicative inverse, defined only for nonzero monomials.
    pub fn inverse_monomial(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        Some(Self::monomial(self.num_q_vars, m.inv(), c.recip()))
    }

    /// Integer power; negative exponents require a monomial.
    pub fn pow(&self, e: i32) -> Option<Self> {
        if e < 0 {
            return self.inverse_monomial()?.pow(-e);
        }
        let mut result = Self::one(self.num_q_vars);
        let mut base = self.clone();
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Some(result)
    }

    /// Componentwise minimum of the exponents over all terms.
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.0.clone();
        let mins = it.fold(first, |mut acc, m| {
            for (a, b) in acc.iter_mut().zip(&m.0) {
                *a = (*a).min(*b);
            }
            acc
        });
        Some(Monomial(mins))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients and a positive leading coefficient up to sign.
    pub fn rational_content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        Rational::new(num_gcd, den_lcm)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.check_compatible(divisor);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.num_q_vars));
        }
        if let Some((m, c)) = divisor.as_monomial() {
            return Some(self.mul_monomial(&m.inv()).scale(&c.recip()));
        }
        // Strip monomial content so both sides are ordinary polynomials that
        // are not divisible by any variable; the quotient is then a
        // polynomial as well.
        let sa = self.min_exponents().unwrap();
        let sb = divisor.min_exponents().unwrap();
        let mut rem = self.mul_monomial(&sa.inv());
        let b = divisor.mul_monomial(&sb.inv());
        let nv = self.num_q_vars + 1;
        let lex = |x: &Monomial, y: &Monomial| x.0.cmp(&y.0);
        let lead = |p: &LaurentPoly| {
            p.terms
                .iter()
                .max_by(|x, y| lex(x.0, y.0))
                .map(|(m, c)| (m.clone(), c.clone()))
        };
        let (lb, lbc) = lead(&b).unwrap();
        let mut quot = Self::zero(self.num_q_vars);
        let max_steps = 1 + rem.terms.len() * 64 + 100_000;
        for _ in 0..max_steps {
            let Some((lr, lrc)) = lead(&rem) else {
                let shift = sa.mul(&sb.inv());
                return Some(quot.mul_monomial(&shift));
            };
            let e: Vec<i32> = (0..nv).map(|i| lr.0[i] - lb.0[i]).collect();
            if e.iter().any(|&x| x < 0) {
                return None;
            }
            let t = Self::monomial(self.num_q_vars, Monomial(e), lrc / &lbc);
            rem = &rem - &(&t * &b);
            quot = &quot + &t;
        }
        None
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_compatible(rhs);
        let mut out = LaurentPoly::zero(self.num_q_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            num_q_vars: self.num_q_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if i == 0 {
            f.write_str("q")?;
        } else {
            write!(f, "Q{i}")?;
        }
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical rendering: monomials in increasing [`Monomial`] order,
/// explicit ` + ` / ` - ` separators, e.g. `q^-1*Q1 + Q1 + q*Q1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

/// Elementary symmetric polynomials `e_0, ..., e_k` of a list of values.
pub fn elementary_symmetric(values: &[LaurentPoly], num_q_vars: usize) -> Vec<LaurentPoly> {
    let mut e = vec![LaurentPoly::one(num_q_vars)];
    for v in values {
        e.push(LaurentPoly::zero(num_q_vars));
        for k in (1..e.len()).rev() {
            let add = &e[k - 1] * v;
            e[k] = &e[k] + &add;
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q(1)
    }

    #[test]
    fn display_is_canonical() {
        let q1 = LaurentPoly::big_q(1, 1);
        let p = &(&q1 + &(&q() * &q1)) + &(&q().pow(-1).unwrap() * &q1);
        assert_eq!(p.to_string(), "q^-1*Q1 + Q1 + q*Q1");
        let d = &q() - &LaurentPoly::one(1);
        assert_eq!(d.to_string(), "-1 + q");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
        let h = LaurentPoly::q(0).scale(&Rational::new(3.into(), 2.into()));
        assert_eq!(h.to_string(), "3/2*q");
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &q() - &q();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn exact_division() {
        let one = LaurentPoly::one(1);
        let a = &q() - &one;
        let b = &q() + &one;
        let prod = &(&a * &b) * &q().pow(-3).unwrap();
        assert_eq!(prod.exact_div(&a).unwrap(), &b * &q().pow(-3).unwrap());
        assert!(b.exact_div(&a).is_none());
        let q1 = LaurentPoly::big_q(1, 1);
        let c = &q1 - &q();
        let p = &(&c * &c) * &a;
        assert_eq!(p.exact_div(&c).unwrap(), &c * &a);
    }

    #[test]
    fn elementary_of_two_values() {
        let q1 = LaurentPoly::big_q(1, 1);
        let vals = vec![q1.clone(), &q() * &q1];
        let e = elementary_symmetric(&vals, 1);
        assert_eq!(e[1].to_string(), "Q1 + q*Q1");
        assert_eq!(e[2].to_string(), "q*Q1^2");
    }
}
