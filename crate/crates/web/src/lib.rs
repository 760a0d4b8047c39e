//! wasm-bindgen wrappers used by `www/index.html`.
//!
//! Every export takes a point-set JSON string (`{"p":3,"n":2,"points":[...]}`)
//! and returns a JSON string; errors come back as a thrown string.

use serde::Serialize;
use stairgb::groebner::{all_reduced_gbs, bm_reduced_gb};
use stairgb::io::parse_points_json;
use stairgb::shifts::find_staircase_shift;
use stairgb::{MonomialOrder, PointSet, ReducedGroebnerBasis};
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Basis {
    order: String,
    gb: Vec<String>,
    leading: Vec<Vec<u32>>,
    sm: Vec<Vec<u32>>,
}

impl Basis {
    fn from(g: &ReducedGroebnerBasis) -> Self {
        Basis {
            order: g.order().to_string(),
            gb: g.to_strings(),
            leading: g.generators().iter().map(|h| h.leading().as_slice().to_vec()).collect(),
            sm: g.standard_monomials().to_rows(),
        }
    }
}

#[derive(Serialize)]
struct FanView {
    p: u32,
    points: Vec<Vec<u32>>,
    entries: Vec<FanEntryView>,
}

#[derive(Serialize)]
struct FanEntryView {
    witness_weight: Vec<u64>,
    basis: Basis,
}

#[derive(Serialize)]
struct StaircaseView {
    shift: String,
    a: Vec<u32>,
    b: Vec<u32>,
    staircase: Vec<Vec<u32>>,
}

// small enough to stay responsive in a browser tab
const MAX_POINTS: usize = 12;

fn points(json: &str) -> Result<PointSet, String> {
    let v = parse_points_json(json).map_err(|e| e.to_string())?;
    if v.len() > MAX_POINTS {
        return Err(format!("at most {MAX_POINTS} points in the demo"));
    }
    Ok(v)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

pub fn reduced_gb_json(points_json: &str, order: &str) -> Result<String, String> {
    let v = points(points_json)?;
    let order = MonomialOrder::parse(order, v.nvars()).map_err(|e| e.to_string())?;
    let g = bm_reduced_gb(&v, &order).map_err(|e| e.to_string())?;
    Ok(to_json(&Basis::from(&g)))
}

pub fn fan_json(points_json: &str) -> Result<String, String> {
    let v = points(points_json)?;
    let fan = all_reduced_gbs(&v).map_err(|e| e.to_string())?;
    let entries = fan
        .entries
        .iter()
        .map(|e| FanEntryView { witness_weight: e.witness_weight.clone(), basis: Basis::from(&e.basis) })
        .collect();
    Ok(to_json(&FanView { p: v.p(), points: v.to_rows(), entries }))
}

/// `null` when the set is not a shifted staircase.
pub fn staircase_shift_json(points_json: &str) -> Result<String, String> {
    let v = points(points_json)?;
    let view = find_staircase_shift(&v).map(|(phi, s)| StaircaseView {
        shift: phi.to_string(),
        a: phi.a().to_vec(),
        b: phi.b().to_vec(),
        staircase: s.to_rows(),
    });
    Ok(to_json(&view))
}

#[wasm_bindgen]
pub fn reduced_gb(points_json: &str, order: &str) -> Result<String, JsValue> {
    reduced_gb_json(points_json, order).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fan(points_json: &str) -> Result<String, JsValue> {
    fan_json(points_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn staircase_shift(points_json: &str) -> Result<String, JsValue> {
    staircase_shift_json(points_json).map_err(|e| JsValue::from_str(&e))
}
