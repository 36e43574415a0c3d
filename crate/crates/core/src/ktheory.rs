//! Torus fixed points of the Gieseker space and restrictions of
//! tautological classes to them.
//!
//! Weights are read off the monomial basis of `V = ⊕_k C[x, y]/J_{λ^k}`:
//! the box in row `i`, column `j` of component `k` carries `x^{i-1} y^{j-1}`,
//! and the torus scales `x` by `q^{-1}`, `y` by `q` and the framing line of
//! component `k` by `Q_k`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::combinatorics::{alpha_multiset, block_partition, enumerate_multipartitions, residue_vector, Multipartition};
use crate::hecke::{AlgebraContext, HeckeError, Parameters, SymmetricExpr};
use crate::report::{RunParams, VerificationReport};
use crate::rings::linalg::SpanBuilder;
use crate::rings::{elementary_symmetric, LaurentPoly, Scalar};

/// A basis vector `x^a y^b` of the `k`-th summand of `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramMonomial {
    pub component: usize,
    pub x_exp: u32,
    pub y_exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointCharacter {
    pub multipartition: Multipartition,
    pub basis: Vec<DiagramMonomial>,
    pub weights: Vec<LaurentPoly>,
}

/// Fills each Young diagram with monomials and reads off their weights.
pub fn fixed_point_character(mp: &Multipartition) -> FixedPointCharacter {
    let r = mp.level();
    let x_weight = LaurentPoly::q_pow(r, -1);
    let y_weight = LaurentPoly::q(r);
    let mut basis = Vec::new();
    let mut weights = Vec::new();
    for (k, lambda) in mp.components().iter().enumerate() {
        let framing = LaurentPoly::big_q(r, k + 1);
        for (row, &len) in lambda.parts().iter().enumerate() {
            for col in 0..len {
                let m = DiagramMonomial { component: k, x_exp: row as u32, y_exp: col };
                let w = &(&framing * &x_weight.pow(m.x_exp as i32).expect("monomial"))
                    * &y_weight.pow(m.y_exp as i32).expect("monomial");
                weights.push(w);
                basis.push(m);
            }
        }
    }
    FixedPointCharacter { multipartition: mp.clone(), basis, weights }
}

/// Rows indexed by `P^r_n`, columns `e_1, ..., e_n, det^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionTable {
    pub n: usize,
    pub r: usize,
    pub rows: Vec<Multipartition>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

#[derive(Serialize)]
struct TableRowJson<'a> {
    multipartition: &'a Multipartition,
    entries: Vec<String>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    n: usize,
    r: usize,
    columns: Vec<String>,
    rows: Vec<TableRowJson<'a>>,
}

impl RestrictionTable {
    pub fn columns(&self) -> Vec<String> {
        let mut c: Vec<String> = (1..=self.n).map(|i| format!("e{i}")).collect();
        c.push("det_inv".into());
        c
    }

    pub fn det_inv_column(&self) -> usize {
        self.n
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["multipartition".to_string()];
        header.extend(self.columns());
        w.write_record(&header).expect("in-memory write");
        for (mp, row) in self.rows.iter().zip(&self.entries) {
            let mut rec = vec![mp.to_string()];
            rec.extend(row.iter().map(|p| p.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_json(&self) -> String {
        let t = TableJson {
            n: self.n,
            r: self.r,
            columns: self.columns(),
            rows: self
                .rows
                .iter()
                .zip(&self.entries)
                .map(|(mp, row)| TableRowJson { multipartition: mp, entries: row.iter().map(|p| p.to_string()).collect() })
                .collect(),
        };
        serde_json::to_string_pretty(&t).expect("serializable")
    }

    /// Every entry specialized.
    pub fn specialize(&self, params: &Parameters) -> Vec<Vec<Scalar>> {
        self.entries.iter().map(|row| row.iter().map(|p| params.eval(p)).collect()).collect()
    }
}

/// The geometric table: elementary symmetric functions of the diagram
/// weights and the inverse of their product.
pub fn restriction_table(n: usize, r: usize) -> RestrictionTable {
    let rows = enumerate_multipartitions(n, r);
    let entries = rows
        .iter()
        .map(|mp| {
            let w = fixed_point_character(mp).weights;
            let e = elementary_symmetric(&w, r);
            let mut row: Vec<LaurentPoly> = e[1..].to_vec();
            let det_inv = w.iter().fold(LaurentPoly::one(r), |acc, x| &acc * &x.inverse_monomial().expect("weights are monomials"));
            row.push(det_inv);
            row
        })
        .collect();
    RestrictionTable { n, r, rows, entries }
}

/// The algebraic table: `e_i(L_1, ..., L_n)` and `(L_1 ... L_n)^{-1}` on the
/// content eigenvalues.
pub fn algebraic_table(n: usize, r: usize) -> RestrictionTable {
    let rows = enumerate_multipartitions(n, r);
    let exprs: Vec<SymmetricExpr> = (1..=n)
        .map(|k| SymmetricExpr::elementary(n, k, r))
        .chain(std::iter::once(SymmetricExpr::inverse_det(n, r)))
        .collect();
    let entries = rows
        .iter()
        .map(|mp| {
            let alpha = alpha_multiset(mp);
            exprs.iter().map(|f| f.evaluate(&alpha)).collect()
        })
        .collect();
    RestrictionTable { n, r, rows, entries }
}

pub fn verify_main_theorem(n: usize, r: usize) -> VerificationReport {
    compare_tables(&restriction_table(n, r), &algebraic_table(n, r))
}

/// Entrywise comparison of a geometric table against the algebraic one.
pub fn compare_tables(geometric: &RestrictionTable, algebraic: &RestrictionTable) -> VerificationReport {
    let mut report = VerificationReport::new("main_theorem", RunParams::nr(geometric.n, geometric.r)).with_mode("symbolic");
    report.set("rows", geometric.rows.len());
    report.set("columns", geometric.columns());
    if geometric.rows != algebraic.rows {
        report.fail("row index sets differ");
        return report;
    }
    let cols = geometric.columns();
    for (mp, (g, a)) in geometric.rows.iter().zip(geometric.entries.iter().zip(&algebraic.entries)) {
        for (c, (x, y)) in g.iter().zip(a).enumerate() {
            if x != y {
                report.fail(serde_json::json!({
                    "multipartition": mp,
                    "column": cols[c],
                    "geometric": x.to_string(),
                    "algebraic": y.to_string(),
                }));
            }
        }
        let det = geometric.det_inv_column();
        if geometric.n > 0 && !(&g[det - 1] * &g[det]).is_one() {
            report.fail(serde_json::json!({ "multipartition": mp, "column": "e_n * det_inv" }));
        }
    }
    report
}

/// Row separation and subalgebra rank of the table at a specialization.
pub fn verify_table_structure(n: usize, r: usize, params: &Parameters) -> VerificationReport {
    let mut rp = RunParams::nr(n, r);
    rp.specializations.push(params.describe());
    let mut report = VerificationReport::new("table_structure", rp).with_mode("generic (sampled)");
    let table = restriction_table(n, r);
    let vals = table.specialize(params);
    let p = table.rows.len();
    let mut distinct = 0;
    for i in 0..p {
        if (0..i).all(|j| vals[j] != vals[i]) {
            distinct += 1;
        }
    }
    report.set("fixed_points", p);
    report.set("distinct_rows", distinct);
    report.require(distinct == p, "restriction rows are not separated");

    // Span of pointwise products of columns, closed breadth-first.
    let domain = params.domain();
    let cols: Vec<Vec<Scalar>> = (0..=n).map(|c| vals.iter().map(|row| row[c].clone()).collect()).collect();
    let mut span = SpanBuilder::new(p, domain);
    let one = vec![domain.one(); p];
    span.insert(&one);
    let mut frontier = vec![one];
    while let Some(v) = frontier.pop() {
        for c in &cols {
            let w: Vec<Scalar> = v.iter().zip(c).map(|(a, b)| a * b).collect();
            if span.insert(&w) {
                frontier.push(w);
            }
        }
    }
    report.set("subalgebra_rank", span.rank());
    report.require(span.rank() == p, serde_json::json!({ "subalgebra_rank": span.rank(), "expected": p }));
    report
}

/// Per-block data reported by [`verify_blocks_in`].
#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    pub residues: String,
    pub class_size: usize,
    pub jm_image_dim: usize,
}

pub fn verify_blocks(n: usize, r: usize, ell: u32, charge: &[i64], seed: u64) -> Result<VerificationReport, HeckeError> {
    let ctx = AlgebraContext::new(n, r, Parameters::root_of_unity(ell, charge))?;
    verify_blocks_in(&ctx, ell, charge, seed)
}

/// Compares residue classes with the primitive central idempotents of a
/// context at `q = zeta_ell`, `Q_i = zeta_ell^{s_i}`.
pub fn verify_blocks_in(ctx: &AlgebraContext, ell: u32, charge: &[i64], seed: u64) -> Result<VerificationReport, HeckeError> {
    let (n, r) = (ctx.n(), ctx.r());
    let mut rp = RunParams::nr(n, r);
    rp.ell = Some(ell);
    rp.charge = Some(charge.to_vec());
    rp.seed = Some(seed);
    rp.specializations.push(ctx.params().describe());
    let mut report = VerificationReport::new("blocks", rp).with_mode("specialized");

    let mps = enumerate_multipartitions(n, r);
    let classes = block_partition(n, r, ell, charge);
    report.set("residue_classes", classes.len());

    // Residue vectors agree exactly when specialized eigenvalue multisets do.
    let spec: Vec<Vec<Scalar>> = mps
        .iter()
        .map(|mp| {
            let mut v: Vec<Scalar> = alpha_multiset(mp).iter().map(|a| ctx.params().eval(a)).collect();
            v.sort_by_key(|s| s.to_string());
            v
        })
        .collect();
    for i in 0..mps.len() {
        for j in 0..i {
            let same_res = residue_vector(&mps[i], ell, charge) == residue_vector(&mps[j], ell, charge);
            if same_res != (spec[i] == spec[j]) {
                report.fail(serde_json::json!({
                    "residue_convention": [mps[i].to_string(), mps[j].to_string()],
                }));
            }
        }
    }

    let idempotents = ctx.central_idempotents(seed)?;
    report.set("blocks", idempotents.len());
    report.require(
        idempotents.len() == classes.len(),
        serde_json::json!({ "blocks": idempotents.len(), "classes": classes.len() }),
    );

    let jm = ctx.jm_center()?;
    let sig = jm.sigma_matrix(ctx.params(), &mps);
    let index: BTreeMap<&Multipartition, usize> = mps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut summaries = Vec::new();
    for (d, members) in &classes {
        let ids: Vec<usize> = members.iter().map(|m| index[m]).collect();
        for row in &sig {
            if ids.iter().any(|&i| row[i] != row[ids[0]]) {
                report.fail(serde_json::json!({ "sigma_not_constant_on": d.to_string() }));
                break;
            }
        }
        let matched: Vec<_> = idempotents
            .iter()
            .filter(|e| {
                let mut s = e.multipartitions.clone();
                s.sort_unstable();
                s == ids
            })
            .collect();
        if matched.len() != 1 {
            report.fail(serde_json::json!({ "unmatched_class": d.to_string(), "matches": matched.len() }));
            continue;
        }
        let eps = &matched[0].element;
        let mut span = SpanBuilder::new(ctx.dim(), ctx.domain());
        for z in &jm.elements {
            span.insert(&ctx.to_dense(&ctx.multiply(z, eps)?));
        }
        let summary = BlockSummary { residues: d.to_string(), class_size: members.len(), jm_image_dim: span.rank() };
        if summary.class_size != summary.jm_image_dim {
            report.fail(&summary);
        }
        summaries.push(summary);
    }
    report.set("per_block", &summaries);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weights(parts: &[&[u32]]) -> Vec<String> {
        let mut w: Vec<String> =
            fixed_point_character(&Multipartition::from_parts(parts)).weights.iter().map(|p| p.to_string()).collect();
        w.sort();
        w
    }

    #[test]
    fn character_examples() {
        assert_eq!(weights(&[&[1]]), ["Q1"]);
        assert_eq!(weights(&[&[2]]), ["Q1", "q*Q1"]);
        assert_eq!(weights(&[&[1, 1], &[1]]), ["Q1", "Q2", "q^-1*Q1"]);
    }

    #[test]
    fn table_examples() {
        let t = restriction_table(1, 1);
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.entries[0].iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["Q1", "Q1^-1"]);
        let t = restriction_table(2, 1);
        let row: Vec<String> = t.entries[0].iter().map(|p| p.to_string()).collect();
        assert_eq!(row, ["Q1 + q*Q1", "q*Q1^2", "q^-1*Q1^-2"]);
        let t = restriction_table(2, 2);
        let i = t.rows.iter().position(|m| *m == Multipartition::from_parts(&[&[1], &[1]])).unwrap();
        let row: Vec<String> = t.entries[i].iter().map(|p| p.to_string()).collect();
        assert_eq!(row, ["Q1 + Q2", "Q1*Q2", "Q1^-1*Q2^-1"]);
    }

    #[test]
    fn main_theorem_small() {
        for (n, r, rows) in [(1, 1, 1), (3, 1, 3), (3, 2, 10), (0, 3, 1)] {
            let rep = verify_main_theorem(n, r);
            assert!(rep.passed(), "{}", rep.to_json_line());
            assert_eq!(rep.data["rows"], rows);
        }
    }

    #[test]
    fn corrupted_table_fails() {
        let mut t = restriction_table(2, 2);
        t.entries[1][0] = &t.entries[1][0] + &LaurentPoly::one(2);
        let rep = compare_tables(&t, &algebraic_table(2, 2));
        assert!(rep.failed());
        assert_eq!(rep.witnesses[0]["column"], "e1");
    }

    #[test]
    fn csv_export() {
        let csv = restriction_table(1, 2).to_csv();
        assert_eq!(csv, "multipartition,e1,det_inv\n\"[[1],[]]\",Q1,Q1^-1\n\"[[],[1]]\",Q2,Q2^-1\n");
    }

    #[test]
    fn blocks_examples() {
        let rep = verify_blocks(3, 1, 2, &[0], 1).unwrap();
        assert!(rep.passed(), "{}", rep.to_json_line());
        assert_eq!(rep.data["blocks"], 2);
        let rep = verify_blocks(2, 2, 2, &[0, 0], 1).unwrap();
        assert!(rep.passed(), "{}", rep.to_json_line());
        assert_eq!(rep.data["blocks"], 2);
    }
}
