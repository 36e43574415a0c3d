//! Moving `T_i` past powers of the adjacent Jucys-Murphy elements.
//!
//! Writing `X = L_i`, `Y = L_{i+1}` and `T = T_i`, the closed form used by the
//! engine is
//!
//! ```text
//! T X^a Y^b = X^b Y^a T + (q-1) sgn(b-a) sum_{k=min(a,b)}^{max(a,b)-1} X^k Y^(a+b-k)
//! ```
//!
//! It is checked against a rewriter that only knows the two degree-one rules
//! `T X = Y T - (q-1) Y` and `T Y = X T + (q-1) Y`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::rings::LaurentPoly;

/// Key `(exp of X, exp of Y, trailing T present)`.
pub type StraightenTerm = (u32, u32, bool);
pub type Straightened = BTreeMap<StraightenTerm, LaurentPoly>;

fn q_minus_one() -> LaurentPoly {
    &LaurentPoly::q(0) - &LaurentPoly::one(0)
}

fn accumulate(out: &mut Straightened, key: StraightenTerm, c: LaurentPoly) {
    let entry = out.entry(key).or_insert_with(|| LaurentPoly::zero(0));
    *entry = &*entry + &c;
    if entry.is_zero() {
        out.remove(&key);
    }
}

/// Sign applied to the correction sum; flipping it gives a broken engine for
/// negative-control tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StraighteningRule {
    Standard,
    CorruptedSign,
}

/// Terms of the correction sum, without the `(q-1)` factor: `(k, a+b-k, sign)`.
pub fn correction_terms(a: u32, b: u32, rule: StraighteningRule) -> impl Iterator<Item = (u32, u32, i32)> {
    let sign = match (b.cmp(&a), rule) {
        (std::cmp::Ordering::Equal, _) => 0,
        (std::cmp::Ordering::Greater, StraighteningRule::Standard) => 1,
        (std::cmp::Ordering::Less, StraighteningRule::Standard) => -1,
        (std::cmp::Ordering::Greater, StraighteningRule::CorruptedSign) => -1,
        (std::cmp::Ordering::Less, StraighteningRule::CorruptedSign) => 1,
    };
    let (lo, hi) = (a.min(b), a.max(b));
    (lo..hi).map(move |k| (k, a + b - k, sign))
}

/// `T X^a Y^b` by the closed form.
pub fn closed_form(a: u32, b: u32, rule: StraighteningRule) -> Straightened {
    let mut out = Straightened::new();
    accumulate(&mut out, (b, a, true), LaurentPoly::one(0));
    let qm1 = q_minus_one();
    for (k, l, sign) in correction_terms(a, b, rule) {
        accumulate(&mut out, (k, l, false), qm1.scale(&crate::rings::Rational::from_integer(sign.into())));
    }
    out
}

/// `T X^a Y^b` using only the degree-one rules.
pub fn one_step_rewrite(a: u32, b: u32) -> Straightened {
    let qm1 = q_minus_one();
    let mut out = Straightened::new();
    // (coefficient, prefix X-exp, prefix Y-exp, suffix X-exp, suffix Y-exp):
    // the word X^p1 Y^p2 T X^s1 Y^s2.
    let mut work = vec![(LaurentPoly::one(0), 0u32, 0u32, a, b)];
    while let Some((c, p1, p2, s1, s2)) = work.pop() {
        if s1 == 0 && s2 == 0 {
            accumulate(&mut out, (p1, p2, true), c);
        } else if s1 > 0 {
            // T X = Y T - (q-1) Y
            accumulate(&mut out, (p1 + s1 - 1, p2 + 1 + s2, false), -&(&qm1 * &c));
            work.push((c, p1, p2 + 1, s1 - 1, s2));
        } else {
            // T Y = X T + (q-1) Y
            accumulate(&mut out, (p1, p2 + s2, false), &qm1 * &c);
            work.push((c, p1 + 1, p2, 0, s2 - 1));
        }
    }
    out
}

/// Compares the closed form with the rewriter for all exponents `<= max_exp`.
/// Returns the first disagreeing `(a, b)`.
pub fn compare_with_rewriter(max_exp: u32, rule: StraighteningRule) -> Result<(), (u32, u32)> {
    for a in 0..=max_exp {
        for b in 0..=max_exp {
            if closed_form(a, b, rule) != one_step_rewrite(a, b) {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

/// The standard rule validated once per process for exponents up to 4.
pub fn validated() -> Result<(), (u32, u32)> {
    static CHECK: OnceLock<Result<(), (u32, u32)>> = OnceLock::new();
    *CHECK.get_or_init(|| compare_with_rewriter(4, StraighteningRule::Standard))
}
