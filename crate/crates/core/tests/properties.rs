use cyclohecke::combinatorics::{
    alpha_multiset, block_partition, count_standard_tableaux, enumerate_multipartitions, factorial, partitions,
    residue_vector, standard_tableaux,
};
use cyclohecke::hecke::{AlgebraContext, Parameters};
use cyclohecke::rings::linalg::mat_vec;
use cyclohecke::rings::{kernel_basis, rank, specialize, CyclotomicNumber, LaurentPoly, Monomial, Rational, Scalar, ScalarDomain};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const R: usize = 2;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i32..=3, R + 1), rational()), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(R), |acc, (e, c)| &acc + &LaurentPoly::monomial(R, Monomial(e), c))
    })
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != Rational::from_integer(0.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn specialize_is_a_homomorphism(
        a in laurent(),
        b in laurent(),
        q in nonzero_rational(),
        q1 in nonzero_rational(),
        q2 in nonzero_rational(),
    ) {
        let qs = [Scalar::Rat(q1), Scalar::Rat(q2)];
        let q = Scalar::Rat(q);
        let s = |p: &LaurentPoly| specialize(p, &q, &qs).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn specialize_at_roots_of_unity(a in laurent(), b in laurent(), ell in 2u32..=12, k in 0i64..12) {
        let z = |e: i64| Scalar::Cyc(CyclotomicNumber::zeta_pow(ell, e));
        let qs = [z(k), z(k + 1)];
        let s = |p: &LaurentPoly| specialize(p, &z(1), &qs).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..5)) {
        let m: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_i64(x)).collect()).collect();
        let rk = rank(m.clone(), 4, ScalarDomain::Rational);
        let ker = kernel_basis(m.clone(), 4, ScalarDomain::Rational).unwrap();
        prop_assert_eq!(rk + ker.len(), 4);
        for v in &ker {
            prop_assert!(mat_vec(&m, v, ScalarDomain::Rational).iter().all(Scalar::is_zero));
        }
    }
}

#[test]
fn multipartition_counts_match_generating_function() {
    for r in 1..=4usize {
        // Coefficients of prod_{k>=1} (1 - x^k)^{-r}, by repeated convolution.
        let p: Vec<u64> = (0..=8).map(|n| partitions(n).len() as u64).collect();
        let mut series = vec![1u64; 1];
        series.resize(9, 0);
        for _ in 0..r {
            let mut next = vec![0u64; 9];
            for i in 0..=8 {
                for j in 0..=8 - i {
                    next[i + j] += series[i] * p[j];
                }
            }
            series = next;
        }
        for n in 0..=8 {
            assert_eq!(enumerate_multipartitions(n, r).len() as u64, series[n], "n={n} r={r}");
        }
    }
}

#[test]
fn tableau_squares_sum_to_pbw_dimension() {
    for r in 1..=5usize {
        for n in 0..=8usize {
            let dim = (r as u64).pow(n as u32) * factorial(n as u64);
            if dim > 10_000 {
                break;
            }
            let s: u64 = enumerate_multipartitions(n, r).iter().map(|m| count_standard_tableaux(m).pow(2)).sum();
            assert_eq!(s, dim, "n={n} r={r}");
        }
    }
}

#[test]
fn alpha_is_read_off_any_tableau() {
    for (n, r) in [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (4, 2)] {
        for mp in enumerate_multipartitions(n, r) {
            let mut expected: Vec<String> = alpha_multiset(&mp).iter().map(|p| p.to_string()).collect();
            expected.sort();
            for t in standard_tableaux(&mp) {
                let mut got: Vec<String> = (1..=n as u32)
                    .map(|i| {
                        let node = t.node_of(i).unwrap();
                        let c = node.col as i32 - node.row as i32;
                        let mut e = vec![0; r + 1];
                        e[0] = c;
                        e[node.component as usize] = 1;
                        LaurentPoly::from_exponents(&e).to_string()
                    })
                    .collect();
                got.sort();
                assert_eq!(got, expected, "{mp}");
            }
        }
    }
}

#[test]
fn residue_classes_partition_the_multipartitions() {
    for (n, r, ell) in [(3, 1, 2), (4, 2, 3), (3, 3, 2), (4, 1, 4)] {
        let charge: Vec<i64> = (0..r as i64).collect();
        let classes = block_partition(n, r, ell, &charge);
        let total: usize = classes.values().map(Vec::len).sum();
        assert_eq!(total, enumerate_multipartitions(n, r).len());
        for (d, members) in &classes {
            for m in members {
                assert_eq!(residue_vector(m, ell, &charge), *d);
                assert_eq!(d.counts.iter().sum::<u32>() as usize, n);
            }
        }
    }
}

#[test]
fn trace_is_symmetric_and_adjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, r) in [(2, 2), (3, 1)] {
        let ctx = AlgebraContext::new(n, r, Parameters::rational(3, &[5, 7][..r]).unwrap()).unwrap();
        let central = ctx.symmetric_jm(1);
        for _ in 0..1000 {
            let a = ctx.random_element(&mut rng, 4);
            let b = ctx.random_element(&mut rng, 4);
            assert_eq!(ctx.pairing(&a, &b).unwrap(), ctx.pairing(&b, &a).unwrap());
            let ab = ctx.multiply(&central, &a).unwrap();
            let cb = ctx.multiply(&central, &b).unwrap();
            assert_eq!(ctx.pairing(&ab, &b).unwrap(), ctx.pairing(&a, &cb).unwrap());
        }
    }
}

#[test]
fn every_context_has_pbw_dimension() {
    for (n, r) in [(1, 3), (2, 2), (3, 2), (4, 1)] {
        let ctx = AlgebraContext::new(n, r, Parameters::rational(2, &[3, 5, 7][..r]).unwrap()).unwrap();
        assert_eq!(ctx.basis().len(), r.pow(n as u32) * factorial(n as u64) as usize);
    }
}
