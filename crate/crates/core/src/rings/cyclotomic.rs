//! Arithmetic in the cyclotomic fields `Q(zeta_l)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Integer polynomial, coefficients from the constant term upwards.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |d| n % d == 0)
}

/// Exact division of integer polynomials by a monic divisor.
fn div_monic(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    trim(&mut quot);
    quot
}

/// `Phi_l`, obtained from `x^l - 1` by dividing out `Phi_d` for every proper
/// divisor `d` of `l`.
pub fn cyclotomic_polynomial(l: u32) -> IntPoly {
    assert!(l >= 1, "cyclotomic order must be positive");
    let mut p: IntPoly = vec![BigInt::zero(); l as usize + 1];
    p[0] = -BigInt::one();
    p[l as usize] = BigInt::one();
    for d in divisors(l).filter(|&d| d < l) {
        p = div_monic(&p, &cyclotomic_polynomial(d));
    }
    p
}

pub fn euler_phi(l: u32) -> usize {
    (1..=l).filter(|&k| num_integer::gcd(k, l) == 1).count()
}

fn modulus(l: u32) -> Arc<IntPoly> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&l) {
        return p.clone();
    }
    let p = Arc::new(cyclotomic_polynomial(l));
    cache.write().unwrap().insert(l, p.clone());
    p
}

/// Element of `Q(zeta_l)`, stored as the unique residue of degree `< phi(l)`
/// modulo `Phi_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(order: u32) -> Self {
        CyclotomicNumber { order, coeffs: vec![Rational::zero(); euler_phi(order)] }
    }

    pub fn from_rational(order: u32, c: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = c;
        z
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    /// `zeta_l^k` for any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::reduce(order, raw)
    }

    /// Reduces an arbitrary coefficient vector modulo `Phi_l`.
    pub fn reduce(order: u32, mut raw: Vec<Rational>) -> Self {
        let m = modulus(order);
        let deg = m.len() - 1;
        while raw.len() > deg {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = raw.len() - deg;
            for (j, c) in m.iter().take(deg).enumerate() {
                raw[base + j] -= &top * Rational::from_integer(c.clone());
            }
        }
        raw.resize(deg, Rational::zero());
        CyclotomicNumber { order, coeffs: raw }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| self.coeffs[0].clone())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "cyclotomic numbers of different orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicNumber { order: self.order, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicNumber { order: self.order, coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.coeffs.len();
        if n == 1 {
            return Self::from_rational(self.order, &self.coeffs[0] * &other.coeffs[0]);
        }
        let mut raw = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.order, raw)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_l`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(self.order, r.recip()));
        }
        let m: Vec<Rational> =
            modulus(self.order).iter().map(|c| Rational::from_integer(c.clone())).collect();
        // Invariant: s_i * self == r_i  (mod Phi).
        let (mut r0, mut r1) = (m, qp_trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (quot, rem) = qp_divmod(&r0, &r1);
            let s2 = qp_sub(&s0, &qp_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Phi is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let out: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
        Some(Self::reduce(self.order, out))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = Self::one(self.order);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Some(result)
    }
}

fn qp_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::zero());
    }
    p
}

fn qp_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    qp_trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn qp_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qp_trim(out)
}

fn qp_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![Rational::zero()], qp_trim(rem));
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    rem.truncate(db.max(1));
    (qp_trim(quot), qp_trim(rem))
}

/// Renders as a polynomial in `z` (the chosen primitive root), e.g.
/// `-1 - z` for `zeta_3^2`.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        write!(f, "z{}", self.order)?;
                    } else {
                        write!(f, "z{}^{i}", self.order)?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        for l in 1..=30 {
            let p = cyclotomic_polynomial(l);
            assert_eq!(p.len() - 1, euler_phi(l), "degree of Phi_{l}");
            assert!(p.last().unwrap().is_one());
        }
    }

    #[test]
    fn primitive_root_is_a_root() {
        for l in 1..=12u32 {
            let phi = cyclotomic_polynomial(l);
            let z = CyclotomicNumber::zeta_pow(l, 1);
            let mut acc = CyclotomicNumber::zero(l);
            for (k, c) in phi.iter().enumerate() {
                let term = z.pow(k as i64).unwrap().scale(&Rational::from_integer(c.clone()));
                acc = acc.add(&term);
            }
            assert!(acc.is_zero(), "Phi_{l}(zeta_{l}) != 0");
            assert!(z.pow(l as i64).unwrap().is_one());
        }
    }

    #[test]
    fn zeta_two_is_minus_one() {
        let z = CyclotomicNumber::zeta_pow(2, 1);
        assert_eq!(z.as_rational(), Some(Rational::from_integer((-1).into())));
    }

    #[test]
    fn inverses() {
        for l in [3u32, 4, 5, 7, 8, 9, 12] {
            let x = CyclotomicNumber::zeta_pow(l, 1)
                .add(&CyclotomicNumber::from_rational(l, Rational::from_integer(3.into())));
            let y = x.inv().unwrap();
            assert!(x.mul(&y).is_one(), "order {l}");
        }
        assert!(CyclotomicNumber::zero(5).inv().is_none());
    }
}
