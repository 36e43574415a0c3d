use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AlgebraContext, AlgebraElement, HeckeError};
use crate::report::{RunParams, VerificationReport};

const ASSOCIATIVITY_TRIPLES: usize = 200;

impl AlgebraContext {
    /// Evaluates every defining relation, for all valid indices, plus
    /// associativity on random triples. The first failing family is the
    /// witness.
    pub fn check_relations(&self, seed: u64) -> Result<VerificationReport, HeckeError> {
        let mut params = RunParams::nr(self.n(), self.r());
        params.specializations.push(self.params().describe());
        params.seed = Some(seed);
        let mut report = VerificationReport::new("relations", params);
        report.set("dim", self.dim());

        let n = self.n();
        let q = self.domain().coerce(self.params().q())?;
        let qm1 = &q - &self.domain().one();
        let one = self.one();
        let ts: Vec<AlgebraElement> = (1..n).map(|i| self.t(i)).collect();
        let ls = self.jm_elements();
        let mul = |a: &AlgebraElement, b: &AlgebraElement| self.multiply(a, b);
        let mut residuals: Vec<(String, AlgebraElement)> = Vec::new();

        // Derived degree-one straightening rules come first: they pin down a
        // broken closed form most directly.
        for i in 1..n {
            let (t, li, lj) = (&ts[i - 1], &ls[i - 1], &ls[i]);
            let lhs = mul(t, li)?;
            let rhs = mul(lj, t)?.sub(&lj.scale(&qm1))?;
            residuals.push((format!("T_{i}L_{i}"), lhs.sub(&rhs)?));
            let lhs = mul(t, lj)?;
            let rhs = mul(li, t)?.add(&lj.scale(&qm1))?;
            residuals.push((format!("T_{i}L_{}", i + 1), lhs.sub(&rhs)?));
        }
        for (i, t) in ts.iter().enumerate() {
            let a = t.add(&one)?;
            let b = t.sub(&self.scalar(q.clone()))?;
            residuals.push((format!("(T_{0}+1)(T_{0}-q)", i + 1), mul(&a, &b)?));
        }
        for i in 1..n.saturating_sub(1) {
            let (a, b) = (&ts[i - 1], &ts[i]);
            let lhs = mul(a, &mul(b, a)?)?;
            let rhs = mul(b, &mul(a, b)?)?;
            residuals.push((format!("braid T_{i}T_{}", i + 1), lhs.sub(&rhs)?));
        }
        for i in 1..n {
            for j in i + 2..n {
                residuals.push((format!("T_{i}T_{j} = T_{j}T_{i}"), self.commutator(&ts[i - 1], &ts[j - 1])?));
            }
        }
        let mut cyc = one.clone();
        for qi in self.params().big_q() {
            cyc = mul(&cyc, &ls[0].sub(&self.scalar(qi.clone()))?)?;
        }
        residuals.push(("prod(L_1 - Q_i)".into(), cyc));
        for i in 1..n {
            let t = &ts[i - 1];
            let rhs = mul(t, &mul(&ls[i - 1], t)?)?;
            residuals.push((format!("qL_{} = T_{i}L_{i}T_{i}", i + 1), ls[i].scale(&q).sub(&rhs)?));
        }
        for i in 0..n {
            for j in i + 1..n {
                residuals.push((format!("L_{}L_{} = L_{}L_{}", i + 1, j + 1, j + 1, i + 1), self.commutator(&ls[i], &ls[j])?));
            }
        }
        for i in 1..n {
            for j in 1..=n {
                if j != i && j != i + 1 {
                    residuals.push((format!("T_{i}L_{j} = L_{j}T_{i}"), self.commutator(&ts[i - 1], &ls[j - 1])?));
                }
            }
        }
        if self.r() > 1 {
            for (i, l) in ls.iter().enumerate() {
                let mut e = vec![0; n];
                e[i] = 1;
                let word = super::BasisWord { exponents: e, perm: super::Permutation::identity(n) };
                let idx = self.index_of(&word).expect("valid word");
                residuals.push((format!("L_{} is a PBW word", i + 1), l.sub(&self.basis_element(idx))?));
            }
        }

        let mut checked = 0usize;
        for (name, res) in &residuals {
            checked += 1;
            if !res.is_zero() {
                report.fail(serde_json::json!({ "relation": name, "residual": self.render(res) }));
                break;
            }
        }
        report.set("relations_checked", checked);

        if report.passed() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for k in 0..ASSOCIATIVITY_TRIPLES {
                let a = self.random_element(&mut rng, 3);
                let b = self.random_element(&mut rng, 3);
                let c = self.random_element(&mut rng, 3);
                let lhs = mul(&mul(&a, &b)?, &c)?;
                let rhs = mul(&a, &mul(&b, &c)?)?;
                if lhs != rhs {
                    report.fail(serde_json::json!({
                        "relation": "associativity",
                        "triple": k,
                        "a": self.render(&a),
                        "b": self.render(&b),
                        "c": self.render(&c),
                    }));
                    break;
                }
            }
            report.set("associativity_triples", ASSOCIATIVITY_TRIPLES);
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{Parameters, StraighteningRule};

    #[test]
    fn relations_hold() {
        for (n, r, p) in [
            (2, 2, Parameters::rational(3, &[5, 7]).unwrap()),
            (3, 1, Parameters::rational(-1, &[1]).unwrap()),
            (2, 2, Parameters::generic(2)),
            (3, 2, Parameters::root_of_unity(3, &[0, 1])),
        ] {
            let ctx = AlgebraContext::new(n, r, p).unwrap();
            let rep = ctx.check_relations(1).unwrap();
            assert!(rep.passed(), "{}", rep.to_json_line());
        }
    }

    #[test]
    fn corrupted_sign_fails_at_t1_l1() {
        let p = Parameters::rational(3, &[5, 7]).unwrap();
        let ctx = AlgebraContext::with_rule(2, 2, p, StraighteningRule::CorruptedSign).unwrap();
        let rep = ctx.check_relations(1).unwrap();
        assert!(rep.failed());
        assert_eq!(rep.witnesses[0]["relation"], "T_1L_1");
    }
}
