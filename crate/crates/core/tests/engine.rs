use cyclohecke::hecke::{AlgebraContext, BasisWord, HeckeError, Parameters, Permutation};
use cyclohecke::rings::{LaurentPoly, RatFunc, Scalar};

fn generic(n: usize, r: usize) -> AlgebraContext {
    AlgebraContext::new(n, r, Parameters::generic(r)).unwrap()
}

fn frac(p: LaurentPoly) -> Scalar {
    Scalar::Frac(RatFunc::from_poly(p))
}

fn word(ctx: &AlgebraContext, exps: &[u32], perm: &[u8]) -> usize {
    let w = BasisWord { exponents: exps.to_vec(), perm: Permutation::from_one_line(perm.to_vec()).unwrap() };
    ctx.index_of(&w).unwrap()
}

#[test]
fn t_squared() {
    let ctx = generic(2, 1);
    let t = ctx.t(1);
    let q = LaurentPoly::q(1);
    let expected = ctx.element([
        (word(&ctx, &[0, 0], &[2, 1]), frac(&q - &LaurentPoly::one(1))),
        (0, frac(q)),
    ]);
    assert_eq!(ctx.multiply(&t, &t).unwrap(), expected);
}

#[test]
fn t_past_l() {
    let ctx = generic(2, 2);
    let prod = ctx.multiply(&ctx.t(1), &ctx.jm_element(1)).unwrap();
    let qm1 = &LaurentPoly::q(2) - &LaurentPoly::one(2);
    let expected = ctx.element([
        (word(&ctx, &[0, 1], &[2, 1]), frac(LaurentPoly::one(2))),
        (word(&ctx, &[0, 1], &[1, 2]), frac(-qm1)),
    ]);
    assert_eq!(prod, expected);
}

#[test]
fn l1_squared_reduces() {
    let ctx = generic(2, 2);
    let l1 = ctx.jm_element(1);
    let (q1, q2) = (LaurentPoly::big_q(2, 1), LaurentPoly::big_q(2, 2));
    let expected = ctx.element([
        (word(&ctx, &[1, 0], &[1, 2]), frac(&q1 + &q2)),
        (0, frac(-(&q1 * &q2))),
    ]);
    assert_eq!(ctx.multiply(&l1, &l1).unwrap(), expected);
}

#[test]
fn second_jm_element_has_six_eigenvalues() {
    // q = 3, Q = (5, 7): L_2 acts by Q_c and q^{+-1} Q_c.
    let ctx = AlgebraContext::new(2, 2, Parameters::rational(3, &[5, 7]).unwrap()).unwrap();
    let l2 = ctx.jm_element(2);
    let shift = |v: Scalar| l2.sub(&ctx.scalar(v)).unwrap();
    let r = |a: i64, b: i64| Scalar::Rat(cyclohecke::rings::Rational::new(a.into(), b.into()));
    let quadratic = ctx.multiply(&shift(r(5, 1)), &shift(r(7, 1))).unwrap();
    assert!(!quadratic.is_zero());
    let mut acc = ctx.one();
    for v in [r(5, 1), r(7, 1), r(15, 1), r(21, 1), r(5, 3), r(7, 3)] {
        acc = ctx.multiply(&acc, &shift(v)).unwrap();
    }
    assert!(acc.is_zero());
    assert_eq!(ctx.render(&ctx.jm_element(1)), "(1) * L1 * T[12]");
}

#[test]
fn jm_level_one() {
    let ctx = generic(2, 1);
    let q_inv = frac(LaurentPoly::q_pow(1, -1));
    let q1 = frac(LaurentPoly::big_q(1, 1));
    let t = ctx.t(1);
    let expected = ctx.multiply(&t, &t).unwrap().scale(&(&q_inv * &q1));
    assert_eq!(ctx.jm_element(2), expected);
    assert_eq!(ctx.symmetric_jm(1), ctx.jm_element(1).add(&ctx.jm_element(2)).unwrap());
}

#[test]
fn symmetric_jm_is_central() {
    for ctx in [generic(2, 1), generic(2, 2)] {
        for k in 1..=2 {
            assert!(ctx.is_central(&ctx.symmetric_jm(k)).unwrap());
        }
    }
}

#[test]
fn inverses() {
    let ctx = generic(2, 1);
    assert_eq!(ctx.invert(&ctx.one()).unwrap(), ctx.one());
    let t = ctx.t(1);
    let q_inv = LaurentPoly::q_pow(1, -1);
    let expected = t.scale(&frac(q_inv.clone())).sub(&ctx.scalar(frac(&LaurentPoly::one(1) - &q_inv))).unwrap();
    let inv = ctx.invert(&t).unwrap();
    assert_eq!(inv, expected);
    assert_eq!(ctx.multiply(&t, &inv).unwrap(), ctx.one());

    let ctx = AlgebraContext::new(2, 2, Parameters::rational(3, &[5, 7]).unwrap()).unwrap();
    let en = ctx.symmetric_jm(2);
    let inv = ctx.invert(&en).unwrap();
    assert_eq!(ctx.multiply(&en, &inv).unwrap(), ctx.one());
    assert_eq!(ctx.invert(&ctx.zero()), Err(HeckeError::NotInvertible));
}

#[test]
fn trace_and_pairing() {
    let ctx = generic(2, 1);
    let one = ctx.one();
    let t = ctx.t(1);
    assert!(ctx.tau(&one).is_one());
    assert!(ctx.tau(&t).is_zero());
    assert_eq!(ctx.tau(&ctx.multiply(&t, &t).unwrap()), frac(LaurentPoly::q(1)));
    assert!(ctx.pairing(&one, &one).unwrap().is_one());
    assert_eq!(ctx.pairing(&t, &t).unwrap(), frac(LaurentPoly::q(1)));
    assert!(ctx.pairing(&t, &one).unwrap().is_zero());
}

#[test]
fn contexts_do_not_mix() {
    let a = generic(2, 1);
    let b = generic(2, 1);
    assert_eq!(a.multiply(&a.t(1), &b.t(1)), Err(HeckeError::ContextMismatch));
}

#[test]
fn bad_parameters() {
    assert!(Parameters::rational(0, &[1]).is_err());
    assert!(Parameters::rational(2, &[0]).is_err());
    assert!(AlgebraContext::new(2, 2, Parameters::rational(2, &[1]).unwrap()).is_err());
}
