//! Pluggable exact coefficient domains.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::CyclotomicNumber;
use super::laurent::{LaurentPoly, Monomial};
use super::{Rational, RingError};

/// Quotient of Laurent polynomials with a nonzero denominator.
///
/// Only monomial and integer content is cancelled, plus an exact-division
/// attempt when the denominator is not a monomial; equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::NotInvertible("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.num_q_vars();
        RatFunc { num: p, den: LaurentPoly::one(n) }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// Returns the polynomial when the denominator is one.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        let nv = num.num_q_vars();
        if num.is_zero() {
            return RatFunc { num, den: LaurentPoly::one(nv) };
        }
        // Monomial denominators fold into the numerator.
        if let Some(inv) = den.inverse_monomial() {
            return RatFunc { num: &num * &inv, den: LaurentPoly::one(nv) };
        }
        if let Some(q) = num.exact_div(&den) {
            return RatFunc { num: q, den: LaurentPoly::one(nv) };
        }
        let shift = den.min_exponents().unwrap();
        let inv_shift = Monomial(shift.0.iter().map(|e| -e).collect());
        let mut c = den.rational_content();
        if den.leading_coefficient().unwrap().is_negative() {
            c = -c;
        }
        let cinv = c.recip();
        RatFunc {
            num: num.mul_monomial(&inv_shift).scale(&cinv),
            den: den.mul_monomial(&inv_shift).scale(&cinv),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.num.is_zero()).then(|| Self::normalized(self.den.clone(), self.num.clone()))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Exact scalar: a rational, a cyclotomic number, or a Laurent fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(Rational),
    Cyc(CyclotomicNumber),
    Frac(RatFunc),
}

/// Which coefficient domain a context works over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalarDomain {
    Rational,
    Cyclotomic { order: u32 },
    Fraction { num_q_vars: usize },
}

impl ScalarDomain {
    pub fn zero(&self) -> Scalar {
        self.from_rational(Rational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, c: i64) -> Scalar {
        self.from_rational(Rational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(&self, c: Rational) -> Scalar {
        match *self {
            ScalarDomain::Rational => Scalar::Rat(c),
            ScalarDomain::Cyclotomic { order } => Scalar::Cyc(CyclotomicNumber::from_rational(order, c)),
            ScalarDomain::Fraction { num_q_vars } => {
                Scalar::Frac(RatFunc::from_poly(LaurentPoly::constant(num_q_vars, c)))
            }
        }
    }

    /// Rationals and cyclotomic fields; kernels are only computed here.
    pub fn is_field(&self) -> bool {
        !matches!(self, ScalarDomain::Fraction { .. })
    }

    /// Brings `x` into this domain, promoting rationals as needed.
    pub fn coerce(&self, x: &Scalar) -> Result<Scalar, RingError> {
        match (self, x) {
            (_, Scalar::Rat(r)) => Ok(self.from_rational(r.clone())),
            (ScalarDomain::Cyclotomic { order }, Scalar::Cyc(c)) if c.order() == *order => Ok(x.clone()),
            (ScalarDomain::Fraction { num_q_vars }, Scalar::Frac(f))
                if f.numerator().num_q_vars() == *num_q_vars =>
            {
                Ok(x.clone())
            }
            (ScalarDomain::Rational, Scalar::Cyc(c)) => {
                c.as_rational().map(Scalar::Rat).ok_or_else(|| RingError::DomainMismatch(format!("{c} is not rational")))
            }
            _ => Err(RingError::DomainMismatch(format!("cannot coerce {x} into {self:?}"))),
        }
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Rational => f.write_str("QQ"),
            ScalarDomain::Cyclotomic { order } => write!(f, "QQ(zeta_{order})"),
            ScalarDomain::Fraction { num_q_vars } => write!(f, "Frac(R_{num_q_vars})"),
        }
    }
}

impl Scalar {
    pub fn domain(&self) -> ScalarDomain {
        match self {
            Scalar::Rat(_) => ScalarDomain::Rational,
            Scalar::Cyc(c) => ScalarDomain::Cyclotomic { order: c.order() },
            Scalar::Frac(f) => ScalarDomain::Fraction { num_q_vars: f.numerator().num_q_vars() },
        }
    }

    pub fn from_i64(c: i64) -> Scalar {
        Scalar::Rat(Rational::from_integer(BigInt::from(c)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc(c) => c.is_zero(),
            Scalar::Frac(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Cyc(c) => c.is_one(),
            Scalar::Frac(f) => f.as_poly().is_some_and(|p| p.is_one()),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Cyc(c) => c.as_rational(),
            Scalar::Frac(f) => f.as_poly().and_then(|p| p.as_constant()),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => (!r.is_zero()).then(|| Scalar::Rat(r.recip())),
            Scalar::Cyc(c) => c.inv().map(Scalar::Cyc),
            Scalar::Frac(f) => f.inv().map(Scalar::Frac),
        }
    }

    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = self.domain().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Some(result)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, RingError> {
        let inv = other
            .inv()
            .ok_or_else(|| RingError::NotInvertible(format!("division by {other}")))?;
        Ok(self * &inv)
    }

    /// Brings two operands into a common domain.
    fn unify(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Rat(_), Scalar::Rat(_)) => (a.clone(), b.clone()),
            (Scalar::Rat(r), other) | (other, Scalar::Rat(r)) => {
                let lifted = other.domain().from_rational(r.clone());
                if matches!(a, Scalar::Rat(_)) {
                    (lifted, other.clone())
                } else {
                    (other.clone(), lifted)
                }
            }
            _ => (a.clone(), b.clone()),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar domain mismatch: {} vs {}", a.domain(), b.domain())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(a.add(b)),
            (Scalar::Frac(a), Scalar::Frac(b)) => {
                if a.den == b.den {
                    Scalar::Frac(RatFunc::normalized(&a.num + &b.num, a.den.clone()))
                } else {
                    Scalar::Frac(RatFunc::normalized(
                        &(&a.num * &b.den) + &(&b.num * &a.den),
                        &a.den * &b.den,
                    ))
                }
            }
            (Scalar::Rat(_), _) | (_, Scalar::Rat(_)) => {
                let (x, y) = Scalar::unify(self, rhs);
                &x + &y
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Cyc(a) => Scalar::Cyc(a.neg()),
            Scalar::Frac(a) => Scalar::Frac(RatFunc { num: -&a.num, den: a.den.clone() }),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(a.sub(b)),
            _ => self + &(-rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(a.mul(b)),
            (Scalar::Cyc(a), Scalar::Rat(b)) | (Scalar::Rat(b), Scalar::Cyc(a)) => Scalar::Cyc(a.scale(b)),
            (Scalar::Frac(a), Scalar::Frac(b)) => {
                Scalar::Frac(RatFunc::normalized(&a.num * &b.num, &a.den * &b.den))
            }
            (Scalar::Frac(a), Scalar::Rat(b)) | (Scalar::Rat(b), Scalar::Frac(a)) => {
                Scalar::Frac(RatFunc { num: a.num.scale(b), den: a.den.clone() })
            }
            _ => mismatch(self, rhs),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyc(c) => write!(f, "{c}"),
            Scalar::Frac(x) => write!(f, "{x}"),
        }
    }
}

/// Parses an exact scalar literal: `p`, `p/q`, or `zeta_L^k` (also `zeta_L`,
/// `-zeta_L^k`).
pub fn parse_scalar(s: &str) -> Result<Scalar, RingError> {
    let s = s.trim();
    let bad = || RingError::Parse(format!("malformed scalar literal `{s}`"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) if rest.starts_with("zeta") => (true, rest),
        _ => (false, s),
    };
    if let Some(rest) = body.strip_prefix("zeta_") {
        let (l, k) = match rest.split_once('^') {
            Some((l, k)) => (l, k),
            None => (rest, "1"),
        };
        let l: u32 = l.parse().map_err(|_| bad())?;
        let k: i64 = k.parse().map_err(|_| bad())?;
        if l == 0 {
            return Err(bad());
        }
        let z = Scalar::Cyc(CyclotomicNumber::zeta_pow(l, k));
        return Ok(if neg { -z } else { z });
    }
    let r: Rational = match body.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(body.parse::<BigInt>().map_err(|_| bad())?),
    };
    Ok(Scalar::Rat(r))
}

/// Image of `p` under `q -> q_val`, `Q_i -> q_vals[i]`.
pub fn specialize(p: &LaurentPoly, q_val: &Scalar, big_q_vals: &[Scalar]) -> Result<Scalar, RingError> {
    if big_q_vals.len() != p.num_q_vars() {
        return Err(RingError::DomainMismatch(format!(
            "expected {} Q values, got {}",
            p.num_q_vars(),
            big_q_vals.len()
        )));
    }
    let vals: Vec<&Scalar> = std::iter::once(q_val).chain(big_q_vals).collect();
    let mut domain = ScalarDomain::Rational;
    for v in &vals {
        if !matches!(v, Scalar::Rat(_)) {
            domain = v.domain();
        }
    }
    let mut acc = domain.zero();
    for (m, c) in p.terms() {
        let mut term = domain.from_rational(c.clone());
        for (v, &e) in vals.iter().zip(&m.0) {
            if e == 0 {
                continue;
            }
            let pw = v.pow(e as i64).ok_or_else(|| {
                RingError::NotInvertible(format!("negative power of non-invertible value {v}"))
            })?;
            term = &term * &pw;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    #[test]
    fn specialize_examples() {
        let q = LaurentPoly::q(0);
        let one = LaurentPoly::one(0);
        assert!(specialize(&(&q - &one), &rat(1), &[]).unwrap().is_zero());
        let p = &(&q - &one) * &(&q + &one);
        assert_eq!(specialize(&p, &rat(3), &[]).unwrap(), rat(8));
        let qq = &LaurentPoly::q(1) * &LaurentPoly::big_q(1, 1);
        let z2 = parse_scalar("zeta_2").unwrap();
        let v = specialize(&qq, &z2, &[rat(1)]).unwrap();
        assert_eq!(v.as_rational(), Some(Rational::from_integer((-1).into())));
    }

    #[test]
    fn negative_power_of_zero_is_an_error() {
        let p = LaurentPoly::q_pow(0, -1);
        assert!(matches!(specialize(&p, &rat(0), &[]), Err(RingError::NotInvertible(_))));
    }

    #[test]
    fn literals() {
        assert_eq!(parse_scalar("3/2").unwrap(), Scalar::Rat(Rational::new(3.into(), 2.into())));
        assert_eq!(parse_scalar("-1").unwrap(), rat(-1));
        let z = parse_scalar("zeta_6^2").unwrap();
        assert_eq!(z, Scalar::Cyc(CyclotomicNumber::zeta_pow(6, 2)));
        assert!(parse_scalar("zeta_0").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
    }

    #[test]
    fn fraction_equality_by_cross_multiplication() {
        let d = ScalarDomain::Fraction { num_q_vars: 1 };
        let q = Scalar::Frac(RatFunc::from_poly(LaurentPoly::q(1)));
        let one = d.one();
        let a = (&q - &one).inv().unwrap();
        let b = &(&q + &one) * &(&(&q * &q) - &one).inv().unwrap();
        assert_eq!(a, b);
        assert!((&(&a * &(&q - &one)) - &one).is_zero());
    }
}
