//! Center, Jucys-Murphy center, cocenter and block idempotents.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::jm::JmMonomial;
use super::{AlgebraContext, AlgebraElement, HeckeError, Parameters};
use crate::combinatorics::{alpha_multiset, enumerate_multipartitions, Multipartition};
use crate::rings::linalg::{echelon, kernel_unchecked, solve, SpanBuilder};
use crate::rings::Scalar;

/// Largest algebra dimension for which the center is computed over the
/// symbolic fraction field.
pub const FRACTION_CENTER_CAP: usize = 100;

const SPLIT_TRIALS: usize = 8;

fn require_field(ctx: &AlgebraContext, what: &str) -> Result<(), HeckeError> {
    if ctx.domain().is_field() {
        Ok(())
    } else {
        Err(HeckeError::Unsupported(format!("{what} over {}", ctx.domain())))
    }
}

impl AlgebraContext {
    /// Generators that are not scalars: `T_1..T_{n-1}`, and `L_1` when `r > 1`.
    fn nonscalar_generators(&self) -> Vec<AlgebraElement> {
        let mut g: Vec<_> = (1..self.n()).map(|i| self.t(i)).collect();
        if self.r() > 1 {
            g.push(self.l1());
        }
        g
    }

    pub fn is_central(&self, x: &AlgebraElement) -> Result<bool, HeckeError> {
        for g in self.generators() {
            if !self.commutator(x, &g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x^k` by repeated squaring.
    pub fn power(&self, x: &AlgebraElement, mut k: u32) -> Result<AlgebraElement, HeckeError> {
        let mut acc = self.one();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Trace of left multiplication by `x` on the regular representation.
    pub fn regular_trace(&self, x: &AlgebraElement) -> Result<Scalar, HeckeError> {
        let mut t = self.domain().zero();
        for b in 0..self.dim() {
            if let Some(c) = self.multiply(x, &self.basis_element(b))?.coefficient(b) {
                t = &t + c;
            }
        }
        Ok(t)
    }

    /// Basis of the center, as the common kernel of `z -> [z, g]`.
    pub fn center_basis(&self) -> Result<Vec<AlgebraElement>, HeckeError> {
        self.center_basis_capped(FRACTION_CENTER_CAP)
    }

    pub fn center_basis_capped(&self, fraction_cap: usize) -> Result<Vec<AlgebraElement>, HeckeError> {
        let d = self.dim();
        if !self.domain().is_field() && d > fraction_cap {
            return Err(HeckeError::Unsupported(format!(
                "symbolic center for dimension {d} > {fraction_cap}"
            )));
        }
        let mut rows = Vec::new();
        for g in self.nonscalar_generators() {
            let cols: Vec<Vec<Scalar>> = (0..d)
                .map(|b| {
                    let e = self.basis_element(b);
                    self.commutator(&e, &g).map(|c| self.to_dense(&c))
                })
                .collect::<Result<_, _>>()?;
            rows.extend((0..d).map(|i| cols.iter().map(|c| c[i].clone()).collect::<Vec<_>>()));
        }
        if rows.is_empty() {
            return Ok((0..d).map(|b| self.basis_element(b)).collect());
        }
        Ok(kernel_unchecked(rows, d, self.domain()).iter().map(|v| self.from_dense(v)).collect())
    }

    /// Span of the monomials in `e_1(L), ..., e_n(L), e_n(L)^{-1}`, grown
    /// breadth-first until no product with a generator leaves the span.
    pub fn jm_center(&self) -> Result<JmSpan, HeckeError> {
        let cap = enumerate_multipartitions(self.n(), self.r()).len() as u32;
        self.jm_center_with_cap(cap)
    }

    pub fn jm_center_with_cap(&self, degree_cap: u32) -> Result<JmSpan, HeckeError> {
        require_field(self, "JM center")?;
        let n = self.n();
        let mut gens: Vec<AlgebraElement> = (1..=n).map(|k| self.symmetric_jm(k)).collect();
        gens.push(self.invert(&gens[n - 1])?);

        let mut span = SpanBuilder::new(self.dim(), self.domain());
        let one = self.one();
        span.insert(&self.to_dense(&one));
        let mut out = JmSpan {
            monomials: vec![JmMonomial::one(n)],
            elements: vec![one.clone()],
            max_degree: 0,
            cap_reached: false,
        };
        let mut seen = BTreeSet::from([JmMonomial::one(n)]);
        let mut queue = VecDeque::from([(JmMonomial::one(n), one)]);
        while let Some((m, x)) = queue.pop_front() {
            for (g, ge) in gens.iter().enumerate() {
                let mut next = m.clone();
                if g < n {
                    next.e_exps[g] += 1;
                } else {
                    next.inv_det += 1;
                }
                if (next.e_exps[n - 1] > 0 && next.inv_det > 0) || !seen.insert(next.clone()) {
                    continue;
                }
                let y = self.multiply(ge, &x)?;
                let dense = self.to_dense(&y);
                if next.degree() > degree_cap {
                    if !span.contains(&dense) {
                        out.cap_reached = true;
                    }
                    continue;
                }
                if span.insert(&dense) {
                    out.max_degree = out.max_degree.max(next.degree());
                    out.monomials.push(next.clone());
                    out.elements.push(y.clone());
                    queue.push_back((next, y));
                }
            }
        }
        Ok(out)
    }

    /// `H / [H, H]`, spanned by commutators of basis words with generators.
    pub fn cocenter(&self) -> Result<Cocenter, HeckeError> {
        require_field(self, "cocenter")?;
        let mut span = SpanBuilder::new(self.dim(), self.domain());
        for g in self.nonscalar_generators() {
            for b in 0..self.dim() {
                let c = self.commutator(&self.basis_element(b), &g)?;
                if !c.is_zero() {
                    span.insert(&self.to_dense(&c));
                }
            }
        }
        let pivots: BTreeSet<usize> = span.pivots().collect();
        let reps = (0..self.dim()).filter(|i| !pivots.contains(i)).collect();
        Ok(Cocenter { span, reps })
    }

    pub fn cocenter_dim(&self) -> Result<usize, HeckeError> {
        Ok(self.cocenter()?.dim())
    }

    /// Primitive central idempotents, found by splitting along eigenvalues
    /// of random elements of the JM center. Candidate eigenvalues are the
    /// specialized `sigma` values; each result is certified primitive by
    /// checking that every central element is scalar plus nilpotent on it.
    pub fn central_idempotents(&self, seed: u64) -> Result<Vec<BlockIdempotent>, HeckeError> {
        require_field(self, "central idempotents")?;
        let center = self.center_basis()?;
        let jm = self.jm_center()?;
        let mps = enumerate_multipartitions(self.n(), self.r());
        let sig = jm.sigma_matrix(self.params(), &mps);
        let nil_exp = center.len() as u32;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        let mut parts = vec![BlockIdempotent { element: self.one(), multipartitions: (0..mps.len()).collect() }];
        for _ in 0..SPLIT_TRIALS {
            if parts.iter().all(|p| self.is_local(&p.element, &center, nil_exp).unwrap_or(false)) {
                return Ok(parts);
            }
            let coeffs: Vec<Scalar> = (0..jm.rank()).map(|_| Scalar::from_i64(rng.gen_range(-20..=20))).collect();
            let mut z = self.zero();
            for (c, m) in coeffs.iter().zip(&jm.elements) {
                z = z.add(&m.scale(c))?;
            }
            let values: Vec<Scalar> = (0..mps.len())
                .map(|l| {
                    coeffs.iter().zip(&sig).fold(self.domain().zero(), |acc, (c, row)| &acc + &(c * &row[l]))
                })
                .collect();
            let mut next = Vec::new();
            for part in parts {
                let mut groups: Vec<(Scalar, Vec<usize>)> = Vec::new();
                for &l in &part.multipartitions {
                    match groups.iter_mut().find(|(v, _)| *v == values[l]) {
                        Some((_, ls)) => ls.push(l),
                        None => groups.push((values[l].clone(), vec![l])),
                    }
                }
                if groups.len() == 1 {
                    next.push(part);
                    continue;
                }
                for (c, ls) in &groups {
                    let mut y = part.element.clone();
                    for (c2, _) in &groups {
                        if c2 != c {
                            let shifted = z.sub(&self.scalar(c2.clone()))?;
                            y = self.multiply(&y, &self.power(&shifted, nil_exp)?)?;
                        }
                    }
                    let e = self.unit_of_ideal(&y, &center)?;
                    next.push(BlockIdempotent { element: e, multipartitions: ls.clone() });
                }
            }
            parts = next;
        }
        if parts.iter().all(|p| self.is_local(&p.element, &center, nil_exp).unwrap_or(false)) {
            Ok(parts)
        } else {
            Err(HeckeError::SplitFailure(format!("no primitive splitting after {SPLIT_TRIALS} trials")))
        }
    }

    /// Identity element of the ideal `y Z`, where `y` is a unit in some
    /// `e Z` and `e` is idempotent.
    fn unit_of_ideal(&self, y: &AlgebraElement, center: &[AlgebraElement]) -> Result<AlgebraElement, HeckeError> {
        let y2 = self.multiply(y, y)?;
        let cols: Vec<Vec<Scalar>> = center
            .iter()
            .map(|z| self.multiply(&y2, z).map(|v| self.to_dense(&v)))
            .collect::<Result<_, _>>()?;
        let rows: Vec<Vec<Scalar>> =
            (0..self.dim()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let alpha = solve(&rows, &self.to_dense(y), self.domain())
            .ok_or_else(|| HeckeError::SplitFailure("eigenvalue projection is not a unit".into()))?;
        let mut e = self.zero();
        for (a, z) in alpha.iter().zip(center) {
            if !a.is_zero() {
                e = e.add(&self.multiply(y, z)?.scale(a))?;
            }
        }
        Ok(e)
    }

    /// Whether `e Z` is local, i.e. every `z e` is a scalar multiple of `e`
    /// plus a nilpotent.
    fn is_local(&self, e: &AlgebraElement, center: &[AlgebraElement], nil_exp: u32) -> Result<bool, HeckeError> {
        let tr_e = self.regular_trace(e)?;
        if tr_e.is_zero() {
            return Ok(false);
        }
        for z in center {
            let x = self.multiply(z, e)?;
            let c = self.regular_trace(&x)?.div(&tr_e)?;
            let d = x.sub(&e.scale(&c))?;
            if !self.power(&d, nil_exp.max(1))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Basis of the JM center found by [`AlgebraContext::jm_center`].
#[derive(Clone, Debug)]
pub struct JmSpan {
    pub monomials: Vec<JmMonomial>,
    pub elements: Vec<AlgebraElement>,
    pub max_degree: u32,
    /// Whether the degree cap stopped the search with new elements pending.
    pub cap_reached: bool,
}

impl JmSpan {
    pub fn rank(&self) -> usize {
        self.monomials.len()
    }

    /// `sigma` of every spanning monomial, specialized: rows are monomials,
    /// columns multipartitions.
    pub fn sigma_matrix(&self, params: &Parameters, mps: &[Multipartition]) -> Vec<Vec<Scalar>> {
        let alphas: Vec<Vec<Scalar>> =
            mps.iter().map(|mp| alpha_multiset(mp).iter().map(|a| params.eval(a)).collect()).collect();
        let one = params.domain().one();
        self.monomials
            .iter()
            .map(|m| alphas.iter().map(|a| m.evaluate_scalars(a, &one).expect("parameters are invertible")).collect())
            .collect()
    }
}

/// Primitive central idempotent with the multipartitions whose cell
/// modules it retains.
#[derive(Clone, Debug)]
pub struct BlockIdempotent {
    pub element: AlgebraElement,
    /// Indices into `enumerate_multipartitions(n, r)`.
    pub multipartitions: Vec<usize>,
}

/// The cocenter as a complement of `[H, H]` spanned by basis words.
#[derive(Clone, Debug)]
pub struct Cocenter {
    span: SpanBuilder,
    reps: Vec<usize>,
}

impl Cocenter {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Basis words whose classes form a basis of the cocenter.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn commutator_rank(&self) -> usize {
        self.span.rank()
    }

    /// Coordinates of the class of `x`.
    pub fn project(&self, ctx: &AlgebraContext, x: &AlgebraElement) -> Vec<Scalar> {
        let v = self.span.reduce(&ctx.to_dense(x));
        self.reps.iter().map(|&i| v[i].clone()).collect()
    }

    pub fn element(&self, ctx: &AlgebraContext, coords: &[Scalar]) -> AlgebraElement {
        ctx.element(self.reps.iter().zip(coords).map(|(&i, c)| (i, c.clone())))
    }

    /// `tau(z_i b_j)` for central `z_i` and cocenter representatives `b_j`.
    pub fn gram(&self, ctx: &AlgebraContext, central: &[AlgebraElement]) -> Result<Vec<Vec<Scalar>>, HeckeError> {
        central
            .iter()
            .map(|z| self.reps.iter().map(|&j| ctx.pairing(z, &ctx.basis_element(j))).collect())
            .collect()
    }
}

/// The map `sigma*` into the cocenter, fixed by
/// `<z_i, sigma*(x)> = sum_l sigma(z_i)_l x_l` on a JM-center basis.
#[derive(Clone, Debug)]
pub struct SigmaDual {
    gram: Vec<Vec<Scalar>>,
    sigma: Vec<Vec<Scalar>>,
    domain: crate::rings::ScalarDomain,
}

impl SigmaDual {
    pub fn new(ctx: &AlgebraContext, cocenter: &Cocenter, jm: &JmSpan) -> Result<Self, HeckeError> {
        let mps = enumerate_multipartitions(ctx.n(), ctx.r());
        let gram = cocenter.gram(ctx, &jm.elements)?;
        let d = cocenter.dim();
        if jm.rank() != d || echelon(gram.clone(), d, ctx.domain()).rank() < d {
            return Err(HeckeError::Unsupported("center-cocenter Gram matrix is singular".into()));
        }
        Ok(SigmaDual { gram, sigma: jm.sigma_matrix(ctx.params(), &mps), domain: ctx.domain() })
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    /// Cocenter coordinates of `sigma*(x)`.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        let rhs: Vec<Scalar> = self
            .sigma
            .iter()
            .map(|row| row.iter().zip(x).fold(self.domain.zero(), |acc, (s, v)| &acc + &(s * v)))
            .collect();
        solve(&self.gram, &rhs, self.domain).expect("Gram matrix is invertible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize, r: usize, p: Parameters) -> AlgebraContext {
        AlgebraContext::new(n, r, p).unwrap()
    }

    #[test]
    fn center_dimensions() {
        assert_eq!(ctx(2, 1, Parameters::rational(3, &[1]).unwrap()).center_basis().unwrap().len(), 2);
        assert_eq!(ctx(3, 1, Parameters::rational(2, &[1]).unwrap()).center_basis().unwrap().len(), 3);
        assert_eq!(ctx(2, 1, Parameters::rational(-1, &[1]).unwrap()).center_basis().unwrap().len(), 2);
        assert_eq!(ctx(2, 1, Parameters::generic(1)).center_basis().unwrap().len(), 2);
    }

    #[test]
    fn jm_center_ranks() {
        assert_eq!(ctx(2, 1, Parameters::rational(3, &[5]).unwrap()).jm_center().unwrap().rank(), 2);
        let span = ctx(2, 2, Parameters::rational(3, &[5, 7]).unwrap()).jm_center().unwrap();
        assert_eq!(span.rank(), 5);
        assert!(!span.cap_reached);
        assert_eq!(ctx(2, 2, Parameters::rational(1, &[5, 7]).unwrap()).jm_center().unwrap().rank(), 3);
    }

    #[test]
    fn cocenter_dimensions() {
        assert_eq!(ctx(2, 1, Parameters::rational(3, &[5]).unwrap()).cocenter_dim().unwrap(), 2);
        assert_eq!(ctx(3, 1, Parameters::rational(5, &[1]).unwrap()).cocenter_dim().unwrap(), 3);
        assert_eq!(ctx(2, 2, Parameters::rational(3, &[5, 7]).unwrap()).cocenter_dim().unwrap(), 5);
    }

    #[test]
    fn idempotent_counts() {
        let check = |c: AlgebraContext, expected: usize| {
            let parts = c.central_idempotents(7).unwrap();
            assert_eq!(parts.len(), expected);
            let mut sum = c.zero();
            for p in &parts {
                assert!(c.is_central(&p.element).unwrap());
                sum = sum.add(&p.element).unwrap();
            }
            assert_eq!(sum, c.one());
        };
        check(ctx(2, 1, Parameters::root_of_unity(2, &[0])), 1);
        check(ctx(2, 1, Parameters::rational(3, &[5]).unwrap()), 2);
        check(ctx(2, 2, Parameters::root_of_unity(2, &[0, 0])), 2);
        check(ctx(3, 1, Parameters::root_of_unity(2, &[0])), 2);
    }

    #[test]
    fn fraction_center_is_capped() {
        let c = ctx(2, 2, Parameters::generic(2));
        assert!(matches!(c.center_basis_capped(4), Err(HeckeError::Unsupported(_))));
    }
}
