//! Browser bindings. Three operations are exported to JavaScript; each one also exists as
//! a plain Rust function so it can be exercised without a browser.

use eqloc::algebra::format_scalar;
use eqloc::expr::{parse_constant, parse_expression};
use eqloc::format::{laurent_json, qr_report_json, to_canonical_string};
use eqloc::localization::{pushforward_closed, qr_check};
use eqloc::models::ModelRecipe;
use eqloc::series::{expand, residue_map, Domain, ExpansionAnchor, ResidueKind};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Applies `borel`, `rho1` or `rho0inf` to an expression in `u`.
pub fn residue_text(expr: &str, kind: &str, strict: bool) -> Result<String, String> {
    let kind: ResidueKind = kind.parse().map_err(|e: eqloc::Error| e.to_string())?;
    let f = parse_expression(expr).map_err(|e| e.to_string())?;
    let domain = if strict {
        Domain::Strict
    } else {
        Domain::Relaxed
    };
    residue_map(kind, &f, domain)
        .map(|v| format_scalar(&v))
        .map_err(|e| e.to_string())
}

/// Expands an expression at `zero`, `inf` or a rational point up to `order`.
pub fn expand_text(expr: &str, at: &str, order: i32) -> Result<String, String> {
    let f = parse_expression(expr).map_err(|e| e.to_string())?;
    let anchor = match at.trim() {
        "zero" | "0" => ExpansionAnchor::Zero,
        "inf" | "infinity" => ExpansionAnchor::Infinity,
        p => ExpansionAnchor::FinitePoint(parse_constant(p).map_err(|e| e.to_string())?),
    };
    Ok(expand(&f, &anchor, order.into()).to_string())
}

/// Builds a model from a recipe and reports its pushforward and the reduction check.
/// Recipes that need the file system (`file:`) are refused.
pub fn quantize_text(recipe: &str) -> Result<String, String> {
    let recipe: ModelRecipe = recipe.parse().map_err(|e: eqloc::Error| e.to_string())?;
    if recipe.to_string().contains("file:") {
        return Err("file recipes are not available in the browser".into());
    }
    let m = recipe.build().map_err(|e| e.to_string())?;
    let push = pushforward_closed(&m).map_err(|e| e.to_string())?;
    let qr = match m.theory() {
        eqloc::algebra::TheoryKind::KTheory => {
            qr_report_json(&qr_check(&m).map_err(|e| e.to_string())?)
        }
        eqloc::algebra::TheoryKind::Borel => serde_json::Value::Null,
    };
    Ok(to_canonical_string(&json!({
        "model": m.name(),
        "fixedPoints": m.components().len(),
        "pushforward": laurent_json(&push),
        "pushforwardText": push.to_string(),
        "qr": qr,
    })))
}

#[wasm_bindgen]
pub fn residue(expr: &str, kind: &str, strict: bool) -> Result<String, JsError> {
    residue_text(expr, kind, strict).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = expandSeries)]
pub fn expand_series(expr: &str, at: &str, order: i32) -> Result<String, JsError> {
    expand_text(expr, at, order).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn quantize(recipe: &str) -> Result<String, JsError> {
    quantize_text(recipe).map_err(|e| JsError::new(&e))
}
