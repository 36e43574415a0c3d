use wasm_bindgen::prelude::*;

use cyclohecke::combinatorics::enumerate_multipartitions;
use cyclohecke::hecke::{AlgebraContext, Parameters};
use cyclohecke::ktheory::{self, verify_blocks_in};
use cyclohecke::rings::parse_scalar;
use cyclohecke::verify::pbw_dim;

const BUDGET: usize = 400;

fn guard(n: usize, r: usize) -> Result<(), String> {
    if r == 0 || n > 8 || pbw_dim(n, r) > BUDGET {
        return Err(format!("r^n n! must be at most {BUDGET}"));
    }
    Ok(())
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse().map_err(|_| format!("bad entry `{t}`"))).collect()
}

/// Restriction table with its main-theorem check.
pub fn table_json(n: usize, r: usize) -> Result<String, String> {
    guard(n, r)?;
    let table: serde_json::Value = serde_json::from_str(&ktheory::restriction_table(n, r).to_json()).map_err(|e| e.to_string())?;
    let report = ktheory::verify_main_theorem(n, r);
    Ok(serde_json::json!({ "table": table, "report": report }).to_string())
}

pub fn blocks_json(n: usize, r: usize, ell: u32, charge: &str) -> Result<String, String> {
    guard(n, r)?;
    let charge: Vec<i64> = list(charge)?;
    if ell < 2 || charge.len() != r {
        return Err(format!("need ell >= 2 and {r} charge entries"));
    }
    let ctx = AlgebraContext::new(n, r, Parameters::root_of_unity(ell, &charge)).map_err(|e| e.to_string())?;
    let report = verify_blocks_in(&ctx, ell, &charge, 0).map_err(|e| e.to_string())?;
    Ok(report.to_json_line())
}

pub fn center_json(n: usize, r: usize, q: &str, big_q: &str) -> Result<String, String> {
    guard(n, r)?;
    let q = parse_scalar(q).map_err(|e| e.to_string())?;
    let big_q = big_q.split(',').map(parse_scalar).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    if big_q.len() != r {
        return Err(format!("need {r} Q values"));
    }
    let run = || -> Result<serde_json::Value, cyclohecke::hecke::HeckeError> {
        let ctx = AlgebraContext::new(n, r, Parameters::new(q, big_q)?)?;
        Ok(serde_json::json!({
            "parameters": ctx.params().describe(),
            "pbw_dim": ctx.dim(),
            "center_dim": ctx.center_basis()?.len(),
            "jm_rank": ctx.jm_center()?.rank(),
            "cocenter_dim": ctx.cocenter_dim()?,
            "multipartitions": enumerate_multipartitions(n, r).len(),
            "relations": ctx.check_relations(0)?.status,
        }))
    };
    run().map(|v| v.to_string()).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn restriction_table(n: usize, r: usize) -> Result<String, JsError> {
    table_json(n, r).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn blocks(n: usize, r: usize, ell: u32, charge: &str) -> Result<String, JsError> {
    blocks_json(n, r, ell, charge).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn center(n: usize, r: usize, q: &str, big_q: &str) -> Result<String, JsError> {
    center_json(n, r, q, big_q).map_err(|e| JsError::new(&e))
}
