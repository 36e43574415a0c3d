//! Named verification campaigns. Each produces [`VerificationReport`]s that
//! are deterministic given their parameters and seed.

mod smash;

pub use smash::SmashProduct;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cache::OpCache;
use crate::combinatorics::{binomial, count_standard_tableaux, enumerate_multipartitions, factorial, partitions};
use crate::hecke::straighten;
use crate::hecke::{AlgebraContext, HeckeError, Parameters, SigmaDual};
use crate::ktheory;
use crate::report::{RunParams, Status, VerificationReport};
use crate::rings::linalg::echelon;
use crate::rings::{Rational, Scalar};

pub const DEFAULT_BUDGET: usize = 400;
pub const DEFAULT_SAMPLES: usize = 3;
pub const DEFAULT_MAX_LEVEL: usize = 4;
const MODULE_PROPERTY_SAMPLES: usize = 100;

/// `r^n n!`, the size of the PBW basis.
pub fn pbw_dim(n: usize, r: usize) -> usize {
    r.pow(n as u32) * factorial(n as u64) as usize
}

/// Where contexts come from: built fresh, or through the on-disk cache.
#[derive(Clone, Debug, Default)]
pub struct ContextSource {
    cache: Option<OpCache>,
}

impl ContextSource {
    pub fn uncached() -> Self {
        ContextSource { cache: None }
    }

    pub fn cached(cache: OpCache) -> Self {
        ContextSource { cache: Some(cache) }
    }

    pub fn build(&self, n: usize, r: usize, params: Parameters) -> Result<AlgebraContext, HeckeError> {
        if let Some(cache) = &self.cache {
            if let Ok((ctx, _)) = cache.load_or_build(n, r, params.clone()) {
                return Ok(ctx);
            }
        }
        AlgebraContext::new(n, r, params)
    }
}

/// `samples` random rational points away from the non-semisimple locus.
pub fn sampled_parameters(n: usize, r: usize, samples: usize, seed: u64) -> Vec<Parameters> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| Parameters::sample_generic(n, r, &mut rng)).collect()
}

fn params_for(ctx: &AlgebraContext) -> RunParams {
    let mut p = RunParams::nr(ctx.n(), ctx.r());
    p.specializations.push(ctx.params().describe());
    p
}

fn mode_of(ctx: &AlgebraContext) -> &'static str {
    if ctx.domain().is_field() {
        "specialized"
    } else {
        "symbolic"
    }
}

/// The closed straightening formula against the one-step rewriter.
pub fn check_straightening() -> VerificationReport {
    let mut report = VerificationReport::new("straightening_oracle", RunParams::default()).with_mode("symbolic");
    report.set("max_exponent", 4);
    if let Err((a, b)) = straighten::validated() {
        report.fail(serde_json::json!({ "a": a, "b": b }));
    }
    report
}

/// PBW basis size and the sum of squared tableau counts.
pub fn check_pbw(n: usize, r: usize) -> VerificationReport {
    let mut report = VerificationReport::new("pbw_dimension", RunParams::nr(n, r)).with_mode("symbolic");
    let expected = pbw_dim(n, r);
    let syt: u64 = enumerate_multipartitions(n, r).iter().map(|m| count_standard_tableaux(m).pow(2)).sum();
    report.set("expected", expected);
    report.set("sum_syt_squared", syt);
    report.require(syt as usize == expected, serde_json::json!({ "sum_syt_squared": syt }));
    if n >= 1 {
        let ctx = AlgebraContext::new(n, r, Parameters::rational(2, &vec![3; r]).expect("valid"));
        match ctx {
            Ok(ctx) => {
                let basis = ctx.basis().len();
                report.set("basis_size", basis);
                report.require(basis == expected, serde_json::json!({ "basis_size": basis }));
            }
            Err(e) => report.fail(e.to_string()),
        }
    }
    report
}

/// `e_k(L)` for all `k`, and `e_n(L)^{-1}`, commute with every generator.
pub fn check_centrality(ctx: &AlgebraContext) -> Result<VerificationReport, HeckeError> {
    let mut report = VerificationReport::new("centrality", params_for(ctx)).with_mode(mode_of(ctx));
    let n = ctx.n();
    let mut elems: Vec<(String, _)> = (1..=n).map(|k| (format!("e{k}"), ctx.symmetric_jm(k))).collect();
    elems.push((format!("e{n}^-1"), ctx.invert(&elems[n - 1].1)?));
    let gens = ctx.generators();
    for (name, z) in &elems {
        for (gi, g) in gens.iter().enumerate() {
            let c = ctx.commutator(z, g)?;
            if !c.is_zero() {
                report.fail(serde_json::json!({ "element": name, "generator": gi, "commutator": ctx.render(&c) }));
            }
        }
    }
    let inv = &elems[n].1;
    let prod = ctx.multiply(&elems[n - 1].1, inv)?;
    report.require(prod == ctx.one(), "e_n * e_n^-1 != 1");
    report.set("elements_checked", elems.len());
    Ok(report)
}

/// Rank of the sigma matrix of the spanned JM center.
pub fn check_sigma_injectivity(ctx: &AlgebraContext) -> Result<VerificationReport, HeckeError> {
    let mut report = VerificationReport::new("sigma_injectivity", params_for(ctx)).with_mode("generic (sampled)");
    let mps = enumerate_multipartitions(ctx.n(), ctx.r());
    let jm = ctx.jm_center()?;
    let sig = jm.sigma_matrix(ctx.params(), &mps);
    let rank = echelon(sig, mps.len(), ctx.domain()).rank();
    report.set("multipartitions", mps.len());
    report.set("jm_rank", jm.rank());
    report.set("sigma_rank", rank);
    report.set("jm_max_degree", jm.max_degree);
    report.require(rank == mps.len(), serde_json::json!({ "sigma_rank": rank, "expected": mps.len() }));
    report.require(!jm.cap_reached, "JM span degree cap reached");
    Ok(report)
}

/// `prod_v (e_k(L) - v) = 0` over the distinct values `v` of `sigma(e_k)`.
pub fn check_min_poly(ctx: &AlgebraContext) -> Result<VerificationReport, HeckeError> {
    let mut report = VerificationReport::new("minimal_polynomial", params_for(ctx)).with_mode("generic (sampled)");
    let mps = enumerate_multipartitions(ctx.n(), ctx.r());
    let mut distinct_counts = Vec::new();
    for k in 1..=ctx.n() {
        let f = crate::hecke::SymmetricExpr::elementary(ctx.n(), k, ctx.r());
        let values = crate::hecke::sigma(&f, &mps)?;
        let mut distinct: Vec<Scalar> = Vec::new();
        for v in values.iter().map(|p| ctx.params().eval(p)) {
            if !distinct.contains(&v) {
                distinct.push(v);
            }
        }
        let z = ctx.symmetric_jm(k);
        let mut acc = ctx.one();
        for v in &distinct {
            acc = ctx.multiply(&acc, &z.sub(&ctx.scalar(v.clone()))?)?;
        }
        if !acc.is_zero() {
            report.fail(serde_json::json!({ "k": k, "residual": ctx.render(&acc) }));
        }
        distinct_counts.push(distinct.len());
    }
    report.set("distinct_values", distinct_counts);
    Ok(report)
}

/// The main theorem over all `(n, r)` with `r^n n! <= budget`, `r <= max_level`.
pub fn suite_main_theorem(budget: usize, max_level: usize) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for r in 1..=max_level {
        let mut n = 0;
        while pbw_dim(n, r) <= budget {
            out.push(ktheory::verify_main_theorem(n, r));
            n += 1;
        }
    }
    out
}

/// `dim Z = dim Z^JM` for `r = 1`, `Q_1 = 1` at each `q`, and both equal to
/// `p(n)` at sampled generic `q`.
pub fn suite_hilb_fg06(
    source: &ContextSource,
    n: usize,
    q_values: &[Scalar],
    samples: usize,
    seed: u64,
) -> Result<VerificationReport, HeckeError> {
    let mut rp = RunParams::nr(n, 1);
    rp.seed = Some(seed);
    let mut report = VerificationReport::new("hilb_fg06", rp);
    let mut rows = Vec::new();
    let mut run = |q: Scalar, generic: bool, report: &mut VerificationReport| -> Result<(), HeckeError> {
        if q.is_one() {
            return Err(HeckeError::InvalidParameters("q = 1 is excluded".into()));
        }
        let params = Parameters::new(q.clone(), vec![Scalar::from_i64(1)])?;
        report.params.specializations.push(params.describe());
        let ctx = source.build(n, 1, params)?;
        report.absorb(&ctx.check_relations(seed)?);
        let center = ctx.center_basis()?.len();
        let jm = ctx.jm_center()?.rank();
        let mut row = serde_json::json!({ "q": q.to_string(), "center_dim": center, "jm_rank": jm });
        if generic {
            row["generic"] = true.into();
        }
        report.require(center == jm, row.clone());
        if generic {
            let p = partitions(n).len();
            report.require(center == p, serde_json::json!({ "q": q.to_string(), "center_dim": center, "partitions": p }));
        }
        rows.push(row);
        Ok(())
    };
    for q in q_values {
        run(q.clone(), false, &mut report)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let q: i64 = rng.gen_range(2..=97);
        run(Scalar::from_i64(q), true, &mut report)?;
    }
    report.set("results", rows);
    report.mode = Some(if samples > 0 { "generic (sampled)" } else { "specialized" }.into());
    Ok(report)
}

/// Invariants of the `q = 1` smash product against `|P^r_n|`.
pub fn suite_q1_gap(source: &ContextSource, n: usize, big_q: &[Rational]) -> Result<VerificationReport, HeckeError> {
    let r = big_q.len();
    let mut rp = RunParams::nr(n, r);
    rp.specializations.push(format!(
        "q=1; {}",
        big_q.iter().enumerate().map(|(i, v)| format!("Q{}={v}", i + 1)).collect::<Vec<_>>().join("; ")
    ));
    let mut report = VerificationReport::new("q1_gap", rp).with_mode("specialized");
    for i in 0..r {
        for j in 0..i {
            if big_q[i] == big_q[j] {
                return Err(HeckeError::InvalidParameters("Q values must be pairwise distinct".into()));
            }
        }
    }
    let fixed_points = enumerate_multipartitions(n, r).len();
    let expected = binomial((n + r - 1) as u64, n as u64) as usize;
    let smash = SmashProduct::new(n, big_q);
    let invariant_dim = smash.invariants().len();
    let symmetric_rank = smash.symmetric_span_rank();
    report.set("invariant_dim", invariant_dim);
    report.set("expected", expected);
    report.set("multipartitions", fixed_points);
    report.set("symmetric_span_rank", symmetric_rank);
    report.require(invariant_dim == expected, serde_json::json!({ "invariant_dim": invariant_dim, "expected": expected }));
    report.require(
        symmetric_rank == invariant_dim,
        serde_json::json!({ "symmetric_span_rank": symmetric_rank, "invariant_dim": invariant_dim }),
    );
    if n >= 2 && r >= 2 {
        report.set("gap", "strict");
        report.require(invariant_dim < fixed_points, serde_json::json!({ "invariant_dim": invariant_dim, "multipartitions": fixed_points }));
    } else if n == 1 {
        report.set("gap", "expected-equal");
        report.require(invariant_dim == fixed_points, serde_json::json!({ "invariant_dim": invariant_dim, "multipartitions": fixed_points }));
    }
    if n <= 2 {
        let params = Parameters::new(Scalar::from_i64(1), big_q.iter().cloned().map(Scalar::Rat).collect())?;
        let ctx = source.build(n, r, params)?;
        report.absorb(&ctx.check_relations(0)?);
        let jm_rank = ctx.jm_center()?.rank();
        report.set("hecke_jm_rank", jm_rank);
        report.require(jm_rank == invariant_dim, serde_json::json!({ "hecke_jm_rank": jm_rank, "invariant_dim": invariant_dim }));
    }
    Ok(report)
}

/// Trace symmetry, adjointness, the module property of `sigma*`, the
/// cocenter dimension and perfectness of the center-cocenter pairing.
pub fn suite_pairing(
    source: &ContextSource,
    n: usize,
    r: usize,
    trials: usize,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport, HeckeError> {
    let mut rp = RunParams::nr(n, r);
    rp.seed = Some(seed);
    let mut report = VerificationReport::new("pairing", rp).with_mode("generic (sampled)");
    let fixed_points = enumerate_multipartitions(n, r).len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cocenter_dims = Vec::new();
    for params in sampled_parameters(n, r, samples, seed) {
        report.params.specializations.push(params.describe());
        let ctx = source.build(n, r, params)?;
        report.absorb(&ctx.check_relations(seed)?);
        let terms = 4.min(ctx.dim());

        for k in 0..trials {
            let x = ctx.random_element(&mut rng, terms);
            let y = ctx.random_element(&mut rng, terms);
            if ctx.pairing(&x, &y)? != ctx.pairing(&y, &x)? {
                report.fail(serde_json::json!({ "check": "tau_symmetry", "trial": k, "x": ctx.render(&x), "y": ctx.render(&y) }));
                break;
            }
        }

        let jm = ctx.jm_center()?;
        let random_central = |rng: &mut ChaCha8Rng| -> Result<(Vec<Scalar>, _), HeckeError> {
            let coeffs: Vec<Scalar> = (0..jm.rank()).map(|_| Scalar::from_i64(rng.gen_range(-9..=9))).collect();
            let mut a = ctx.zero();
            for (c, m) in coeffs.iter().zip(&jm.elements) {
                a = a.add(&m.scale(c))?;
            }
            Ok((coeffs, a))
        };
        for k in 0..trials {
            let (_, a) = random_central(&mut rng)?;
            let b = ctx.random_element(&mut rng, terms);
            let c = ctx.random_element(&mut rng, terms);
            let lhs = ctx.pairing(&ctx.multiply(&a, &b)?, &c)?;
            let rhs = ctx.pairing(&b, &ctx.multiply(&a, &c)?)?;
            if lhs != rhs {
                report.fail(serde_json::json!({ "check": "adjointness", "trial": k }));
                break;
            }
        }

        let cocenter = ctx.cocenter()?;
        cocenter_dims.push(cocenter.dim());
        report.require(
            cocenter.dim() == fixed_points,
            serde_json::json!({ "check": "cocenter_dim", "dim": cocenter.dim(), "expected": fixed_points }),
        );
        let dual = match SigmaDual::new(&ctx, &cocenter, &jm) {
            Ok(d) => d,
            Err(e) => {
                report.fail(serde_json::json!({ "check": "gram_invertible", "error": e.to_string() }));
                continue;
            }
        };
        let mps = enumerate_multipartitions(n, r);
        let sig = jm.sigma_matrix(ctx.params(), &mps);
        let zero_image = dual.apply(&vec![ctx.domain().zero(); fixed_points]);
        report.require(zero_image.iter().all(Scalar::is_zero), "sigma*(0) != 0");
        for k in 0..trials.min(MODULE_PROPERTY_SAMPLES) {
            let (coeffs, a) = random_central(&mut rng)?;
            let x: Vec<Scalar> = (0..fixed_points).map(|_| Scalar::from_i64(rng.gen_range(-9..=9))).collect();
            let sigma_a: Vec<Scalar> = (0..fixed_points)
                .map(|l| coeffs.iter().zip(&sig).fold(ctx.domain().zero(), |acc, (c, row)| &acc + &(c * &row[l])))
                .collect();
            let ax: Vec<Scalar> = sigma_a.iter().zip(&x).map(|(s, v)| s * v).collect();
            let lhs = dual.apply(&ax);
            let h = cocenter.element(&ctx, &dual.apply(&x));
            let rhs = cocenter.project(&ctx, &ctx.multiply(&a, &h)?);
            if lhs != rhs {
                report.fail(serde_json::json!({ "check": "sigma_dual_module", "trial": k }));
                break;
            }
        }
    }
    report.set("cocenter_dims", cocenter_dims);
    report.set("trials", trials);
    Ok(report)
}

/// Combines several reports into one pass/fail bit.
pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_theorem_default_budget() {
        let reports = suite_main_theorem(DEFAULT_BUDGET, 3);
        assert!(all_passed(&reports));
        let covered: Vec<(usize, usize)> =
            reports.iter().map(|r| (r.params.n.unwrap(), r.params.r.unwrap())).collect();
        for nr in [(4, 1), (3, 2), (2, 3), (0, 1)] {
            assert!(covered.contains(&nr));
        }
    }

    #[test]
    fn q1_gap_examples() {
        let src = ContextSource::uncached();
        let q = |v: &[i64]| v.iter().map(|&x| Rational::from_integer(x.into())).collect::<Vec<_>>();
        let rep = suite_q1_gap(&src, 2, &q(&[2, 3])).unwrap();
        assert!(rep.passed(), "{}", rep.to_json_line());
        assert_eq!(rep.data["invariant_dim"], 3);
        let rep = suite_q1_gap(&src, 2, &q(&[2, 3, 5])).unwrap();
        assert!(rep.passed(), "{}", rep.to_json_line());
        assert_eq!(rep.data["invariant_dim"], 6);
        let rep = suite_q1_gap(&src, 1, &q(&[2, 3, 5])).unwrap();
        assert!(rep.passed(), "{}", rep.to_json_line());
    }

    #[test]
    fn pairing_small() {
        let rep = suite_pairing(&ContextSource::uncached(), 2, 2, 20, 1, 5).unwrap();
        assert!(rep.passed(), "{}", rep.to_json_line());
        assert_eq!(rep.data["cocenter_dims"][0], 5);
    }

    #[test]
    fn hilb_small() {
        let rep = suite_hilb_fg06(&ContextSource::uncached(), 2, &[Scalar::from_i64(-1)], 1, 3).unwrap();
        assert!(rep.passed(), "{}", rep.to_json_line());
    }
}
