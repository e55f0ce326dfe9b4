//! wasm-bindgen entry points for the browser demo in `www/`.
//!
//! Every function takes plain numbers or descriptor JSON and returns a JSON
//! string, so the page needs no bindings beyond `JSON.parse`.

use serde_json::json;
use wasm_bindgen::prelude::*;

use skewmdp::construct::{build_generator, ConstructionParams};
use skewmdp::conv::{bounds, column_distance_bruteforce, profile};
use skewmdp::descriptor;
use skewmdp::mdp::{classify, ClassifyOptions};
use skewmdp::Field;

/// Keeps a single call well under a second in the browser.
const DISTANCE_BUDGET: u128 = 2_000_000;
const MINOR_BUDGET: u128 = 1_000_000;

fn err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// Builds the skew-Vandermonde code for `(n, k)` over `F_q` and classifies it.
/// Returns `{"descriptor": ..., "report": ...}`.
#[wasm_bindgen]
pub fn construct_and_verify(n: usize, k: usize, q: u32) -> Result<String, JsError> {
    let params = ConstructionParams::new(n, k, q.into()).map_err(err)?;
    let code = build_generator(&params).map_err(err)?;
    let opts = ClassifyOptions {
        minor_budget: MINOR_BUDGET,
        distance_budget: DISTANCE_BUDGET,
        ..Default::default()
    };
    let report = classify(&code, &opts).map_err(err)?;
    let desc: serde_json::Value = serde_json::from_str(&descriptor::to_json(&code)).map_err(err)?;
    Ok(json!({ "descriptor": desc, "report": report }).to_string())
}

/// Frobenius conjugacy classes of `F_{q^k}` for `q = p^e`, zero included.
#[wasm_bindgen]
pub fn conjugacy_partition(p: u32, e: u32, k: u32) -> Result<String, JsError> {
    let f = Field::build(p.into(), e, k).map_err(err)?;
    if f.order() > 4096 {
        return Err(JsError::new("field too large for the demo (at most 4096 elements)"));
    }
    let classes = f.conjugacy_partition().map_err(err)?;
    Ok(json!({ "q": f.q(), "order": f.order(), "classes": classes }).to_string())
}

/// Brute-force column distances `d_0..=d_jmax` of a descriptor, each next to
/// its upper bound.
#[wasm_bindgen]
pub fn column_distances(descriptor_json: &str, j_max: usize) -> Result<String, JsError> {
    let code = descriptor::from_json(descriptor_json).map_err(err)?;
    let delta = profile(&code).delta;
    let mut rows = Vec::new();
    for j in 0..=j_max {
        let d = column_distance_bruteforce(&code, j, DISTANCE_BUDGET).map_err(err)?;
        let (_, bound) = bounds(code.n, code.k, delta, j);
        rows.push(json!({ "j": j, "distance": d, "bound": bound, "attains": d == bound }));
    }
    Ok(json!({ "n": code.n, "k": code.k, "delta": delta, "columns": rows }).to_string())
}
