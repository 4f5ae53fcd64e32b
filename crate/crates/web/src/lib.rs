//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function returns a JSON string; the plain Rust functions
//! behind them are public so they can be tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use f1ci::simulation::{run_condition, ConditionalEnumerator, Scenario, SimulationConfig};
use f1ci::{compute_all, estimates_from_counts, ConfusionCounts, Method};

/// Largest replicate count the page may request; keeps the UI responsive.
pub const MAX_REPLICATES: u32 = 200_000;

/// Largest `nu` for the coverage curve.
pub const MAX_CURVE_NU: u32 = 2_000;

fn finite(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// All four intervals for one confusion matrix.
pub fn intervals_json(tp: u32, fp: u32, fn_: u32, alpha: f64) -> Result<Value, String> {
    let counts = ConfusionCounts::new(tp.into(), fp.into(), fn_.into(), 0);
    let est = estimates_from_counts(&counts).map_err(|e| e.to_string())?;
    let rows = compute_all(&counts, alpha)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(m, r)| match r {
            Ok(iv) => json!({
                "method": m.name(),
                "lower": iv.lower,
                "upper": iv.upper,
                "length": iv.length(),
                "overshoot": iv.overshoots(),
                "degenerate": iv.is_degenerate(),
            }),
            Err(e) => json!({ "method": m.name(), "error": e.to_string() }),
        })
        .collect::<Vec<_>>();
    Ok(json!({ "nu": est.nu, "f1_hat": est.f1_hat, "intervals": rows }))
}

/// Exact conditional coverage of `method` over `grid` evenly spaced F* values.
pub fn coverage_curve_json(nu: u32, method: &str, alpha: f64, grid: u32) -> Result<Value, String> {
    if nu > MAX_CURVE_NU {
        return Err(format!("nu is limited to {MAX_CURVE_NU} in the demo"));
    }
    if grid == 0 {
        return Err("grid must be at least 1".into());
    }
    let method: Method = method
        .parse()
        .map_err(|e: f1ci::UnknownMethod| e.to_string())?;
    let e = ConditionalEnumerator::new(nu.into(), method, alpha).map_err(|e| e.to_string())?;
    let mut points = Vec::with_capacity(grid as usize);
    for i in 1..=grid {
        let fstar = f64::from(i) / f64::from(grid + 1);
        let c = e.evaluate(fstar).map_err(|e| e.to_string())?;
        points.push(json!({
            "fstar": fstar,
            "f1": 2.0 * fstar / (1.0 + fstar),
            "coverage": c.coverage,
            "expected_length": c.expected_length,
        }));
    }
    Ok(json!({ "method": method.name(), "nu": nu, "alpha": alpha, "points": points }))
}

/// Monte Carlo metrics for one condition with cell probabilities
/// `[tp, fp, fn, tn]`.
pub fn simulate_json(
    probs: [f64; 4],
    n: u32,
    replicates: u32,
    seed: u32,
    alpha: f64,
) -> Result<Value, String> {
    if replicates == 0 || replicates > MAX_REPLICATES {
        return Err(format!("replicates must be between 1 and {MAX_REPLICATES}"));
    }
    let scenario = Scenario::new("custom", probs).map_err(|e| e.to_string())?;
    let cfg = SimulationConfig::new(scenario, n.into(), replicates.into(), alpha, seed.into());
    let m = run_condition(&cfg).map_err(|e| e.to_string())?;
    let rows = m
        .methods
        .iter()
        .map(|mm| {
            json!({
                "method": mm.method.name(),
                "evaluated": mm.evaluated,
                "coverage": finite(mm.coverage),
                "coverage_se": finite(mm.coverage_std_error()),
                "expected_length": finite(mm.expected_length),
                "overshoot_prob": finite(mm.overshoot_prob),
                "degeneracy_prob": finite(mm.degeneracy_prob),
            })
        })
        .collect::<Vec<_>>();
    Ok(json!({
        "true_f1": m.scenario.true_f1,
        "skipped_nu_zero": m.skipped_nu_zero,
        "methods": rows,
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn intervals(tp: u32, fp: u32, fn_: u32, alpha: f64) -> Result<String, JsError> {
    to_js(intervals_json(tp, fp, fn_, alpha))
}

#[wasm_bindgen(js_name = coverageCurve)]
pub fn coverage_curve(nu: u32, method: &str, alpha: f64, grid: u32) -> Result<String, JsError> {
    to_js(coverage_curve_json(nu, method, alpha, grid))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn simulate(
    p11: f64,
    p10: f64,
    p01: f64,
    p00: f64,
    n: u32,
    replicates: u32,
    seed: u32,
    alpha: f64,
) -> Result<String, JsError> {
    to_js(simulate_json(
        [p11, p10, p01, p00],
        n,
        replicates,
        seed,
        alpha,
    ))
}
