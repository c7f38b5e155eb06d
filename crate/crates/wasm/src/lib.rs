//! Browser bindings: count table, graded dimensions, Heisenberg multipliers.
//! Each entry point returns a JSON string.

use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;
use wasm_bindgen::JsValue;

use nlie_core::algebra::heisenberg;
use nlie_core::count::{compare_table, grid};
use nlie_core::free::{graded_component, set_max_trees};
use nlie_core::multiplier::{c_multiplier, closed_form_heisenberg};

const MAX_TREES: usize = 20_000;

fn guard(name: &str, value: usize, max: usize) -> Result<(), String> {
    if value > max {
        return Err(format!("{name} is limited to {max} in the browser"));
    }
    Ok(())
}

pub fn count_table_json(n: usize, d_max: usize, w_max: usize) -> Result<String, String> {
    guard("n", n, 4)?;
    guard("d_max", d_max, 6)?;
    guard("w_max", w_max, 5)?;
    set_max_trees(MAX_TREES);
    let rows = compare_table(&grid(n, d_max, w_max)).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&rows).expect("rows serialize"))
}

pub fn graded_json(n: usize, d: usize, w: usize) -> Result<String, String> {
    guard("n", n, 4)?;
    guard("d", d, 6)?;
    guard("w", w, 5)?;
    set_max_trees(MAX_TREES);
    let comp = graded_component(n, d, w).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n, "d": d, "w": w,
        "dim": comp.dim(),
        "canonical_trees": comp.num_trees(),
        "relation_rank": comp.relation_rank(),
        "basis": comp.basis_labels(),
    })
    .to_string())
}

pub fn heisenberg_json(n: usize, m: usize, c: usize) -> Result<String, String> {
    guard("n", n, 3)?;
    guard("m", m, 2)?;
    guard("c", c, 2)?;
    set_max_trees(MAX_TREES);
    let h = heisenberg(n, m).map_err(|e| e.to_string())?;
    let r = c_multiplier(&h, c).map_err(|e| e.to_string())?;
    let closed = closed_form_heisenberg(n, m, c).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n, "m": m, "c": c,
        "dim": h.dim(),
        "multiplier_dim": r.multiplier_dim,
        "closed_form": closed,
        "capable": r.capable_c,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn count_table(n: usize, d_max: usize, w_max: usize) -> Result<String, JsValue> {
    count_table_json(n, d_max, w_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn graded(n: usize, d: usize, w: usize) -> Result<String, JsValue> {
    graded_json(n, d, w).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn heisenberg_multiplier(n: usize, m: usize, c: usize) -> Result<String, JsValue> {
    heisenberg_json(n, m, c).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let v: serde_json::Value = serde_json::from_str(&count_table_json(2, 3, 3).unwrap()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 9);
    }

    #[test]
    fn graded_dim() {
        let v: serde_json::Value = serde_json::from_str(&graded_json(2, 3, 3).unwrap()).unwrap();
        assert_eq!(v["dim"], 8);
    }

    #[test]
    fn heisenberg_values() {
        let v: serde_json::Value = serde_json::from_str(&heisenberg_json(2, 2, 1).unwrap()).unwrap();
        assert_eq!((v["multiplier_dim"].as_u64(), v["closed_form"].as_i64()), (Some(5), Some(5)));
    }

    #[test]
    fn oversized_input_is_refused() {
        assert!(heisenberg_json(5, 1, 1).is_err());
    }
}
