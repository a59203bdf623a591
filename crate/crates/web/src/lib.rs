//! Browser demo. The `*_json` functions are plain Rust so they can be tested
//! natively; the `#[wasm_bindgen]` wrappers only translate errors.

use serde_json::{json, Value};
use strongid::code::{self, CodeParams};
use strongid::{analysis, generators, BitSet, Graph};
use wasm_bindgen::prelude::*;

/// Largest graph the page will build. Layout and exact search are the limits.
pub const MAX_N: usize = 200;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn build_graph(kind: &str, n: usize, p: f64, seed: u64) -> Result<Graph, String> {
    if n > MAX_N {
        return Err(format!("n = {n} exceeds the demo limit of {MAX_N}"));
    }
    match kind {
        "cycle" => generators::cycle(n),
        "path" => generators::path(n),
        "complete" => generators::complete(n),
        "petersen" => Ok(generators::petersen()),
        "gnp" => generators::gnp(n, p, seed),
        other => return Err(format!("unknown graph kind {other:?}")),
    }
    .map_err(err)
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "n": g.n(),
        "edges": g.edges().collect::<Vec<_>>(),
        "strong_index": code::strong_index(g).ok(),
    })
}

/// Γ(q) sampled at `points` evenly spaced q in [0, 1], plus the bound report.
pub fn gamma_curve_json(delta_max: usize, r: usize, d: usize, points: usize) -> Result<String, String> {
    let report = analysis::theta_bounds(delta_max + 1, delta_max, r, d).map_err(err)?;
    let points = points.clamp(2, 2000);
    let curve: Vec<[f64; 2]> = (0..points)
        .map(|i| {
            let q = i as f64 / (points - 1) as f64;
            [q, analysis::gamma(q, delta_max, r, d)]
        })
        .collect();
    Ok(json!({
        "bounds": report,
        "q_star_gap": analysis::q_star_gap(delta_max, r, d),
        "curve": curve,
    })
    .to_string())
}

/// Builds a graph and runs the randomized construction on it. A negative or
/// NaN `q` selects the default sampling rate.
#[allow(clippy::too_many_arguments)]
pub fn construct_json(
    kind: &str,
    n: usize,
    p: f64,
    graph_seed: u64,
    r: usize,
    d: usize,
    q: f64,
    seed: u64,
) -> Result<String, String> {
    let g = build_graph(kind, n, p, graph_seed)?;
    let params = CodeParams::new(r, d).map_err(err)?;
    let q = (q >= 0.0).then_some(q);
    let res = code::randomized_code(&g, params, q, seed).map_err(err)?;
    let outcome = code::verify_set(&g, &BitSet::from_ids(g.n(), res.code.iter().copied()), r).map_err(err)?;
    Ok(json!({
        "graph": graph_json(&g),
        "result": res,
        "valid": outcome.valid,
    })
    .to_string())
}

/// Checks a user-chosen code and, when the graph is small enough, reports
/// a minimum one for comparison.
pub fn verify_json(kind: &str, n: usize, p: f64, graph_seed: u64, r: usize, code_ids: &[u32]) -> Result<String, String> {
    let g = build_graph(kind, n, p, graph_seed)?;
    let ids: Vec<usize> = code_ids.iter().map(|&v| v as usize).collect();
    let outcome = code::is_identification_code(&g, &ids, r).map_err(err)?;
    let exact = match code::exact_min_code(&g, r, None) {
        Ok(Some((theta, code))) => json!({ "theta": theta, "code": code }),
        Ok(None) => json!({ "theta": null, "code": null }),
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    Ok(json!({
        "graph": graph_json(&g),
        "verify": outcome,
        "exact": exact,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn gamma_curve(delta_max: usize, r: usize, d: usize, points: usize) -> Result<String, JsError> {
    gamma_curve_json(delta_max, r, d, points).map_err(|e| JsError::new(&e))
}

#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn construct(
    kind: &str,
    n: usize,
    p: f64,
    graph_seed: u64,
    r: usize,
    d: usize,
    q: f64,
    seed: u64,
) -> Result<String, JsError> {
    construct_json(kind, n, p, graph_seed, r, d, q, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(kind: &str, n: usize, p: f64, graph_seed: u64, r: usize, code: &[u32]) -> Result<String, JsError> {
    verify_json(kind, n, p, graph_seed, r, code).map_err(|e| JsError::new(&e))
}
