//! Browser bindings: classify a squared diameter and draw a sublattice or
//! its defect geometry as SVG. The plain functions return `Result<String,
//! String>` and are what the native tests exercise; the `#[wasm_bindgen]`
//! wrappers only convert errors for JavaScript.

use wasm_bindgen::prelude::*;

use hct::eisenstein::{classify_diameter, ground_state_count};
use hct::excitations::count_defects;
use hct::render::{render_svg, RenderSpec, Viewport};
use hct::Sublattice;

pub fn classify_json(n: u32) -> Result<String, String> {
    let n = u64::from(n);
    let c = classify_diameter(n).map_err(|e| e.to_string())?;
    let count = ground_state_count(n).map_err(|e| e.to_string())?;
    let classes: Vec<_> = c
        .representations
        .iter()
        .map(|&(a, b)| {
            let d = count_defects(&Sublattice::new(a as i64, b as i64).expect("representation"));
            serde_json::json!({
                "class": [a, b],
                "pairs": d.pairs,
                "triples": d.triples,
                "quadruples": d.quadruples,
            })
        })
        .collect();
    Ok(serde_json::json!({
        "n": n,
        "case": c.case.to_string(),
        "ground_states": count,
        "classes": classes,
    })
    .to_string())
}

fn class(a: i32, b: i32) -> Result<Sublattice, String> {
    Sublattice::new(a.into(), b.into()).map_err(|e| e.to_string())
}

/// `size` sites on each side, starting at the origin.
pub fn sublattice_svg(a: i32, b: i32, size: i32) -> Result<String, String> {
    let s = class(a, b)?;
    let view = Viewport::new(0, i64::from(size) - 1, 0, i64::from(size) - 1).map_err(|e| e.to_string())?;
    render_svg(&RenderSpec::sublattice(s, view)).map_err(|e| e.to_string())
}

pub fn defect_svg(a: i32, b: i32) -> Result<String, String> {
    render_svg(&RenderSpec::defect_geometry(class(a, b)?)).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn classify(n: u32) -> Result<String, JsError> {
    classify_json(n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn render_sublattice(a: i32, b: i32, size: i32) -> Result<String, JsError> {
    sublattice_svg(a, b, size).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn render_defects(a: i32, b: i32) -> Result<String, JsError> {
    defect_svg(a, b).map_err(|e| JsError::new(&e))
}
