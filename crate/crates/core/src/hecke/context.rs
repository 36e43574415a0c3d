//! The algebra `H_{n,r}` over a fixed specialization, realised through its
//! left regular representation on the PBW basis `L^a T_w`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use sha2::{Digest, Sha256};

use super::perm::{all_permutations, Permutation};
use super::straighten::{self, correction_terms, StraighteningRule};
use super::HeckeError;
use crate::rings::{specialize, LaurentPoly, RatFunc, Rational, Scalar, ScalarDomain};

/// Images of `q, Q_1, ..., Q_r` in a coefficient domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameters {
    domain: ScalarDomain,
    q: Scalar,
    big_q: Vec<Scalar>,
}

impl Parameters {
    /// Infers the domain from the values; all values must be invertible.
    pub fn new(q: Scalar, big_q: Vec<Scalar>) -> Result<Self, HeckeError> {
        let mut domain = ScalarDomain::Rational;
        for v in std::iter::once(&q).chain(&big_q) {
            if !matches!(v, Scalar::Rat(_)) {
                if domain != ScalarDomain::Rational && domain != v.domain() {
                    return Err(HeckeError::InvalidParameters("parameters from different domains".into()));
                }
                domain = v.domain();
            }
        }
        let q = domain.coerce(&q)?;
        let big_q = big_q.iter().map(|v| domain.coerce(v)).collect::<Result<Vec<_>, _>>()?;
        if q.inv().is_none() || big_q.iter().any(|v| v.inv().is_none()) {
            return Err(HeckeError::InvalidParameters("q and all Q_i must be invertible".into()));
        }
        if big_q.is_empty() {
            return Err(HeckeError::InvalidParameters("need at least one cyclotomic parameter".into()));
        }
        Ok(Parameters { domain, q, big_q })
    }

    /// Rational specialization from integers.
    pub fn rational(q: i64, big_q: &[i64]) -> Result<Self, HeckeError> {
        Self::new(Scalar::from_i64(q), big_q.iter().map(|&v| Scalar::from_i64(v)).collect())
    }

    /// Indeterminate parameters over the fraction field of `R`.
    pub fn generic(r: usize) -> Self {
        let frac = |p: LaurentPoly| Scalar::Frac(RatFunc::from_poly(p));
        Parameters {
            domain: ScalarDomain::Fraction { num_q_vars: r },
            q: frac(LaurentPoly::q(r)),
            big_q: (1..=r).map(|k| frac(LaurentPoly::big_q(r, k))).collect(),
        }
    }

    /// `q = zeta_l`, `Q_i = zeta_l^{s_i}` over `Q(zeta_l)`.
    pub fn root_of_unity(ell: u32, charge: &[i64]) -> Self {
        use crate::rings::CyclotomicNumber;
        let z = |k: i64| Scalar::Cyc(CyclotomicNumber::zeta_pow(ell, k));
        Parameters {
            domain: ScalarDomain::Cyclotomic { order: ell },
            q: z(1),
            big_q: charge.iter().map(|&s| z(s)).collect(),
        }
    }

    /// Random rational point away from the non-semisimple locus: `q` and the
    /// `Q_i` are drawn from `2..=97`, rejecting `Q_i = q^m Q_j` for
    /// `|m| <= 2n`.
    pub fn sample_generic<R: Rng>(n: usize, r: usize, rng: &mut R) -> Self {
        loop {
            let q: i64 = rng.gen_range(2..=97);
            let qs: Vec<i64> = (0..r).map(|_| rng.gen_range(2..=97)).collect();
            let qq = Rational::from_integer(q.into());
            let bad = (0..r).any(|i| {
                (0..r).any(|j| {
                    i != j
                        && (-(2 * n as i32)..=(2 * n as i32)).any(|m| {
                            Rational::from_integer(qs[i].into())
                                == num_traits::pow::Pow::pow(&qq, m) * Rational::from_integer(qs[j].into())
                        })
                })
            });
            if !bad {
                return Self::rational(q, &qs).expect("nonzero integers are invertible");
            }
        }
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn big_q(&self) -> &[Scalar] {
        &self.big_q
    }

    pub fn level(&self) -> usize {
        self.big_q.len()
    }

    /// Image of a Laurent polynomial in `q, Q_i` under this specialization.
    pub fn eval(&self, p: &LaurentPoly) -> Scalar {
        let v = specialize(p, &self.q, &self.big_q).expect("parameters are invertible");
        self.domain.coerce(&v).expect("value lies in the parameter domain")
    }

    /// Stable textual description, used for cache keys and reports.
    pub fn describe(&self) -> String {
        let mut s = format!("{}; q={}", self.domain, self.q);
        for (i, v) in self.big_q.iter().enumerate() {
            let _ = write!(s, "; Q{}={}", i + 1, v);
        }
        s
    }

    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.describe().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Basis word `L_1^{a_1} ... L_n^{a_n} T_w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisWord {
    pub exponents: Vec<u32>,
    pub perm: Permutation,
}

/// Sparse linear map on the PBW basis; column `b` is the image of word `b`.
pub(crate) type SparseOp = Vec<Vec<(usize, Scalar)>>;

/// Sparse element of `H_{n,r}`, keyed by basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    ctx_id: u64,
    terms: BTreeMap<usize, Scalar>,
}

impl AlgebraElement {
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn coefficient(&self, idx: usize) -> Option<&Scalar> {
        self.terms.get(&idx)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn same_ctx(&self, other: &Self) -> Result<(), HeckeError> {
        if self.ctx_id == other.ctx_id {
            Ok(())
        } else {
            Err(HeckeError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        for (&k, v) in &other.terms {
            add_into(&mut out.terms, k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, HeckeError> {
        self.add(&other.scale(&Scalar::from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return AlgebraElement { ctx_id: self.ctx_id, terms: BTreeMap::new() };
        }
        let terms = self
            .terms
            .iter()
            .map(|(&k, v)| (k, v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        AlgebraElement { ctx_id: self.ctx_id, terms }
    }
}

fn add_into(map: &mut BTreeMap<usize, Scalar>, k: usize, v: Scalar) {
    if v.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &v;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn apply_op(op: &SparseOp, v: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
    let mut out = BTreeMap::new();
    for (&b, c) in v {
        for (k, x) in &op[b] {
            add_into(&mut out, *k, c * x);
        }
    }
    out
}

static NEXT_CTX_ID: AtomicU64 = AtomicU64::new(1);

/// `H_{n,r}` at fixed parameters with cached generator actions.
#[derive(Debug)]
pub struct AlgebraContext {
    id: u64,
    n: usize,
    r: usize,
    params: Parameters,
    rule: StraighteningRule,
    perms: Vec<Permutation>,
    perm_index: HashMap<Vec<u8>, usize>,
    reduced_words: Vec<Vec<usize>>,
    /// `L_1^r = sum_k cyclotomic[k] L_1^k`.
    cyclotomic: Vec<Scalar>,
    /// Left multiplication by `T_1, ..., T_{n-1}`.
    t_ops: Vec<SparseOp>,
    /// Left multiplication by `L_1, ..., L_n`.
    l_ops: Vec<SparseOp>,
}

impl AlgebraContext {
    pub fn new(n: usize, r: usize, params: Parameters) -> Result<Self, HeckeError> {
        Self::with_rule(n, r, params, StraighteningRule::Standard)
    }

    /// Builds a context with an explicit straightening rule. Anything other
    /// than [`StraighteningRule::Standard`] gives a deliberately wrong
    /// algebra, which is useful only as a negative control.
    pub fn with_rule(n: usize, r: usize, params: Parameters, rule: StraighteningRule) -> Result<Self, HeckeError> {
        if rule == StraighteningRule::Standard {
            straighten::validated()
                .map_err(|(a, b)| HeckeError::Straightening(format!("closed form disagrees at a={a}, b={b}")))?;
        }
        let mut ctx = Self::skeleton(n, r, params, rule)?;
        ctx.t_ops = (1..n).map(|i| ctx.build_t_op(i)).collect();
        let l1 = ctx.build_l1_op();
        ctx.l_ops.push(l1);
        for j in 2..=n {
            let op = ctx.build_l_op(j);
            ctx.l_ops.push(op);
        }
        Ok(ctx)
    }

    /// Rebuilds a context from cached generator actions.
    pub(crate) fn from_parts(
        n: usize,
        r: usize,
        params: Parameters,
        t_ops: Vec<SparseOp>,
        l_ops: Vec<SparseOp>,
    ) -> Result<Self, HeckeError> {
        let mut ctx = Self::skeleton(n, r, params, StraighteningRule::Standard)?;
        let dim = ctx.dim();
        if t_ops.len() + 1 != n || l_ops.len() != n || t_ops.iter().chain(&l_ops).any(|op| op.len() != dim) {
            return Err(HeckeError::InvalidParameters("cached operators have the wrong shape".into()));
        }
        ctx.t_ops = t_ops;
        ctx.l_ops = l_ops;
        Ok(ctx)
    }

    fn skeleton(n: usize, r: usize, params: Parameters, rule: StraighteningRule) -> Result<Self, HeckeError> {
        if n == 0 || r == 0 {
            return Err(HeckeError::InvalidParameters("need n >= 1 and r >= 1".into()));
        }
        if params.level() != r {
            return Err(HeckeError::InvalidParameters(format!(
                "expected {r} cyclotomic parameters, got {}",
                params.level()
            )));
        }
        let perms = all_permutations(n);
        let perm_index = perms.iter().enumerate().map(|(i, p)| (p.one_line().to_vec(), i)).collect();
        let reduced_words = perms.iter().map(Permutation::reduced_word).collect();
        let domain = params.domain();
        // prod_i (x - Q_i) = x^r + sum_k c_k x^k, so L_1^r = -sum_k c_k L_1^k.
        let mut poly = vec![domain.one()];
        for qi in params.big_q() {
            let mut next = vec![domain.zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * qi);
            }
            poly = next;
        }
        let cyclotomic = poly[..r].iter().map(|c| -c).collect();
        Ok(AlgebraContext {
            id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
            n,
            r,
            params,
            rule,
            perms,
            perm_index,
            reduced_words,
            cyclotomic,
            t_ops: Vec::new(),
            l_ops: Vec::new(),
        })
    }

    pub(crate) fn ops(&self) -> (&[SparseOp], &[SparseOp]) {
        (&self.t_ops, &self.l_ops)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn domain(&self) -> ScalarDomain {
        self.params.domain()
    }

    pub fn rule(&self) -> StraighteningRule {
        self.rule
    }

    /// `r^n * n!`.
    pub fn dim(&self) -> usize {
        self.r.pow(self.n as u32) * self.perms.len()
    }

    pub fn num_perms(&self) -> usize {
        self.perms.len()
    }

    fn encode(&self, exps: &[u32], perm_idx: usize) -> usize {
        let code = exps.iter().rev().fold(0usize, |acc, &e| acc * self.r + e as usize);
        code * self.perms.len() + perm_idx
    }

    fn decode(&self, idx: usize) -> (Vec<u32>, usize) {
        let nf = self.perms.len();
        let mut code = idx / nf;
        let mut exps = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            exps.push((code % self.r) as u32);
            code /= self.r;
        }
        (exps, idx % nf)
    }

    pub fn index_of(&self, word: &BasisWord) -> Option<usize> {
        if word.exponents.len() != self.n || word.exponents.iter().any(|&e| e as usize >= self.r) {
            return None;
        }
        let p = *self.perm_index.get(word.perm.one_line())?;
        Some(self.encode(&word.exponents, p))
    }

    pub fn word(&self, idx: usize) -> BasisWord {
        let (exponents, p) = self.decode(idx);
        BasisWord { exponents, perm: self.perms[p].clone() }
    }

    /// Every basis word in index order.
    pub fn basis(&self) -> Vec<BasisWord> {
        (0..self.dim()).map(|i| self.word(i)).collect()
    }

    fn q_minus_one(&self) -> Scalar {
        self.params.q() - &self.domain().one()
    }

    fn build_t_op(&self, i: usize) -> SparseOp {
        let q = self.params.q().clone();
        let qm1 = self.q_minus_one();
        (0..self.dim())
            .map(|idx| {
                let (a, p) = self.decode(idx);
                let w = &self.perms[p];
                let (alpha, beta) = (a[i - 1], a[i]);
                let mut col = BTreeMap::new();
                let mut swapped = a.clone();
                swapped.swap(i - 1, i);
                let sw = w.left_mul_simple(i);
                let sw_idx = self.perm_index[sw.one_line()];
                if w.left_ascent(i) {
                    add_into(&mut col, self.encode(&swapped, sw_idx), self.domain().one());
                } else {
                    add_into(&mut col, self.encode(&swapped, sw_idx), q.clone());
                    add_into(&mut col, self.encode(&swapped, p), qm1.clone());
                }
                for (k, l, sign) in correction_terms(alpha, beta, self.rule) {
                    let mut e = a.clone();
                    e[i - 1] = k;
                    e[i] = l;
                    let c = if sign > 0 { qm1.clone() } else { -&qm1 };
                    add_into(&mut col, self.encode(&e, p), c);
                }
                col.into_iter().collect()
            })
            .collect()
    }

    fn build_l1_op(&self) -> SparseOp {
        (0..self.dim())
            .map(|idx| {
                let (mut a, p) = self.decode(idx);
                if (a[0] as usize) + 1 < self.r {
                    a[0] += 1;
                    vec![(self.encode(&a, p), self.domain().one())]
                } else {
                    let mut col = BTreeMap::new();
                    for (k, c) in self.cyclotomic.iter().enumerate() {
                        a[0] = k as u32;
                        add_into(&mut col, self.encode(&a, p), c.clone());
                    }
                    col.into_iter().collect()
                }
            })
            .collect()
    }

    /// `L_j = q^{-1} T_{j-1} L_{j-1} T_{j-1}` as a composition of left actions.
    fn build_l_op(&self, j: usize) -> SparseOp {
        let q_inv = self.params.q().inv().expect("q is invertible");
        let t = &self.t_ops[j - 2];
        let l = &self.l_ops[j - 2];
        (0..self.dim())
            .map(|idx| {
                let e = BTreeMap::from([(idx, self.domain().one())]);
                let v = apply_op(t, &apply_op(l, &apply_op(t, &e)));
                v.into_iter().map(|(k, c)| (k, &c * &q_inv)).collect()
            })
            .collect()
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (usize, Scalar)>) -> AlgebraElement {
        let mut map = BTreeMap::new();
        for (k, v) in terms {
            assert!(k < self.dim(), "basis index out of range");
            add_into(&mut map, k, self.domain().coerce(&v).expect("coefficient in context domain"));
        }
        AlgebraElement { ctx_id: self.id, terms: map }
    }

    pub fn zero(&self) -> AlgebraElement {
        self.element([])
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(self.domain().one())
    }

    pub fn scalar(&self, c: Scalar) -> AlgebraElement {
        self.element([(0, c)])
    }

    pub fn basis_element(&self, idx: usize) -> AlgebraElement {
        self.element([(idx, self.domain().one())])
    }

    /// The generator `T_i`, `1 <= i < n`.
    pub fn t(&self, i: usize) -> AlgebraElement {
        assert!(i >= 1 && i < self.n, "T index out of range");
        let w = Permutation::identity(self.n).left_mul_simple(i);
        let p = self.perm_index[w.one_line()];
        self.basis_element(self.encode(&vec![0; self.n], p))
    }

    /// The generators `T_1, ..., T_{n-1}, L_1`.
    pub fn generators(&self) -> Vec<AlgebraElement> {
        let mut g: Vec<_> = (1..self.n).map(|i| self.t(i)).collect();
        g.push(self.l1());
        g
    }

    pub(crate) fn l1(&self) -> AlgebraElement {
        let mut e = vec![0; self.n];
        if self.r > 1 {
            e[0] = 1;
            self.basis_element(self.encode(&e, 0))
        } else {
            self.scalar(self.params.big_q()[0].clone())
        }
    }

    fn check(&self, x: &AlgebraElement) -> Result<(), HeckeError> {
        if x.ctx_id == self.id {
            Ok(())
        } else {
            Err(HeckeError::ContextMismatch)
        }
    }

    /// Left multiplication by `T_i`.
    pub fn left_t(&self, i: usize, y: &AlgebraElement) -> Result<AlgebraElement, HeckeError> {
        self.check(y)?;
        Ok(AlgebraElement { ctx_id: self.id, terms: apply_op(&self.t_ops[i - 1], &y.terms) })
    }

    /// Left multiplication by `L_j`.
    pub fn left_l(&self, j: usize, y: &AlgebraElement) -> Result<AlgebraElement, HeckeError> {
        self.check(y)?;
        Ok(AlgebraElement { ctx_id: self.id, terms: apply_op(&self.l_ops[j - 1], &y.terms) })
    }

    /// Product in PBW normal form.
    ///
    /// Each word `L^a T_w` of `x` acts on `y` as `T_w` along a reduced word,
    /// followed by the cached `L_j` actions.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, HeckeError> {
        self.check(x)?;
        self.check(y)?;
        let mut by_perm: BTreeMap<usize, Vec<(Vec<u32>, &Scalar)>> = BTreeMap::new();
        for (&idx, c) in &x.terms {
            let (a, p) = self.decode(idx);
            by_perm.entry(p).or_default().push((a, c));
        }
        let mut out = BTreeMap::new();
        for (p, words) in by_perm {
            let mut ty = y.terms.clone();
            for &i in self.reduced_words[p].iter().rev() {
                ty = apply_op(&self.t_ops[i - 1], &ty);
            }
            for (a, c) in words {
                let mut v = ty.clone();
                for (j, &e) in a.iter().enumerate() {
                    for _ in 0..e {
                        v = apply_op(&self.l_ops[j], &v);
                    }
                }
                for (k, val) in v {
                    add_into(&mut out, k, c * &val);
                }
            }
        }
        Ok(AlgebraElement { ctx_id: self.id, terms: out })
    }

    pub fn commutator(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, HeckeError> {
        self.multiply(x, y)?.sub(&self.multiply(y, x)?)
    }

    /// Dense coordinates in the PBW basis.
    pub fn to_dense(&self, x: &AlgebraElement) -> Vec<Scalar> {
        let mut v = vec![self.domain().zero(); self.dim()];
        for (&k, c) in &x.terms {
            v[k] = c.clone();
        }
        v
    }

    pub fn from_dense(&self, v: &[Scalar]) -> AlgebraElement {
        self.element(v.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()))
    }

    /// Renders terms as `c * L1^a1...Ln^an * T[w]`, joined by ` + `.
    pub fn render(&self, x: &AlgebraElement) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = x
            .terms
            .iter()
            .map(|(&idx, c)| {
                let w = self.word(idx);
                let mut mono = String::new();
                for (j, &e) in w.exponents.iter().enumerate() {
                    if e > 0 {
                        if !mono.is_empty() {
                            mono.push('*');
                        }
                        let _ = write!(mono, "L{}", j + 1);
                        if e > 1 {
                            let _ = write!(mono, "^{e}");
                        }
                    }
                }
                if mono.is_empty() {
                    mono.push('1');
                }
                format!("({c}) * {mono} * T[{}]", w.perm)
            })
            .collect();
        parts.join(" + ")
    }

    /// Random element with small integer coefficients on `terms` basis words.
    pub fn random_element<R: Rng>(&self, rng: &mut R, terms: usize) -> AlgebraElement {
        let d = self.dim();
        self.element((0..terms).map(|_| {
            let c: i64 = rng.gen_range(-5..=5);
            (rng.gen_range(0..d), Scalar::from_i64(c))
        }))
    }
}

