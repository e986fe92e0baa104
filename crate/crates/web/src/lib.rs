//! WebAssembly bindings behind `www/index.html`.
//!
//! Each export takes text input and returns a JSON string. Failures come back
//! as `{"error": "..."}` so the page never has to catch exceptions. The
//! `*_value` functions hold the logic and are tested natively.

use linkform::invariants::{decompose, invariant_table_with, GaussOptions, TableMethod};
use linkform::parse::{parse_pairing, parse_presentation};
use linkform::seifert::{homology_snf, linking_pairing};
use linkform::LinkingPairing;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Groups above this size use the blockwise route, keeping the page responsive.
pub const BROWSER_MAX_GROUP: u64 = 1 << 20;

fn opts() -> GaussOptions {
    GaussOptions {
        max_elements: BROWSER_MAX_GROUP,
        workers: 1,
    }
}

fn error(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

/// A presentation if the text contains `;`, otherwise a pairing.
fn read_pairing(src: &str) -> Result<(LinkingPairing, Value), String> {
    if src.contains(';') && !src.trim_start().starts_with('{') {
        let p = parse_presentation(src).map_err(|e| e.render(src))?;
        let lp = linking_pairing(&p, 2, false).map_err(|e| e.to_string())?;
        let origin = json!({ "presentation": p.to_string(), "path": lp.path, "fallback_reason": lp.fallback_reason });
        Ok((lp.pairing, origin))
    } else {
        Ok((parse_pairing(src).map_err(|e| e.render(src))?, Value::Null))
    }
}

pub fn linkmat_value(presentation: &str) -> Value {
    let run = || -> Result<Value, String> {
        let p = parse_presentation(presentation).map_err(|e| e.render(presentation))?;
        let h = homology_snf(&p).map_err(|e| e.to_string())?;
        let lp = linking_pairing(&p, 2, false).map_err(|e| e.to_string())?;
        Ok(json!({
            "presentation": p.to_string(),
            "h1": h.torsion().map_err(|e| e.to_string())?.to_string(),
            "group": lp.pairing.group().to_string(),
            "rows": lp.pairing.display_rows(),
            "path": lp.path,
            "fallback_reason": lp.fallback_reason,
        }))
    };
    run().unwrap_or_else(error)
}

pub fn invariants_value(input: &str) -> Value {
    let run = || -> Result<Value, String> {
        let (l, origin) = read_pairing(input)?;
        let table = invariant_table_with(&l, TableMethod::Auto, &opts()).map_err(|e| e.to_string())?;
        let d = decompose(&l, &opts()).map_err(|e| e.to_string())?;
        Ok(json!({
            "table": table,
            "rows": table.rows(),
            "decomposition": d.to_string(),
            "group": l.group().to_string(),
            "origin": origin,
        }))
    };
    run().unwrap_or_else(error)
}

pub fn isomorphic_value(a: &str, b: &str) -> Value {
    let run = || -> Result<Value, String> {
        let (la, _) = read_pairing(a)?;
        let (lb, _) = read_pairing(b)?;
        let ta = invariant_table_with(&la, TableMethod::Auto, &opts()).map_err(|e| e.to_string())?;
        let tb = invariant_table_with(&lb, TableMethod::Auto, &opts()).map_err(|e| e.to_string())?;
        Ok(json!({ "isomorphic": ta == tb, "rows_a": ta.rows(), "rows_b": tb.rows() }))
    };
    run().unwrap_or_else(error)
}

#[wasm_bindgen]
pub fn linkmat(presentation: &str) -> String {
    linkmat_value(presentation).to_string()
}

#[wasm_bindgen]
pub fn invariants(input: &str) -> String {
    invariants_value(input).to_string()
}

#[wasm_bindgen]
pub fn isomorphic(a: &str, b: &str) -> String {
    isomorphic_value(a, b).to_string()
}
