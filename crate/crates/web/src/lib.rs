//! wasm-bindgen bindings for the demo page in `www/`. Every export returns a
//! JSON string; failures come back as a JS error carrying the message.

use redraw::bounds::{optimize_growth, ConstraintKind};
use redraw::comb::{build_k_nested_double_chain, build_k_nested_regular};
use redraw::drawings::{
    find_drawings, recursive_layer_count, render_svg, Backend, GeomTriangulation, SearchConfig,
};
use redraw::pointsets::{gen_double_chain, gen_nested_triangles};
use serde_json::json;
use wasm_bindgen::prelude::*;

// Browsers get one thread and tighter guards than the CLI.
fn config() -> SearchConfig {
    SearchConfig {
        max_direct_n: 16,
        ..SearchConfig::default()
    }
}

fn gallery(drawings: &[GeomTriangulation]) -> String {
    let svgs: Vec<String> = drawings.iter().map(render_svg).collect();
    json!({"count": drawings.len(), "svgs": svgs}).to_string()
}

/// Drawings of the one-layer nested double chain on the double chain with
/// `t` and `l` interior chain points (`t + l = 8`).
pub fn split_drawings_json(t: usize, l: usize) -> redraw::Result<String> {
    let tri = build_k_nested_double_chain(1)?;
    let ps = gen_double_chain(t + 2, l + 2)?;
    Ok(gallery(&find_drawings(
        &tri,
        &ps,
        Backend::Direct,
        &config(),
    )?))
}

/// Drawings of the nested regular triangulation on nested triangles.
pub fn nested_drawings_json(n: usize) -> redraw::Result<String> {
    let tri = build_k_nested_regular(n)?;
    let ps = gen_nested_triangles(n)?;
    Ok(gallery(&find_drawings(
        &tri,
        &ps,
        Backend::Direct,
        &config(),
    )?))
}

pub fn optimize_json(constraint: &str) -> redraw::Result<String> {
    let kind: ConstraintKind = constraint.parse()?;
    let opt = optimize_growth(kind, 1e-12)?;
    let layers: Vec<String> = (1..=8)
        .map(|k| recursive_layer_count(k).map(|c| c.to_string()))
        .collect::<redraw::Result<_>>()?;
    let mut v: serde_json::Value = serde_json::from_str(&opt.to_json())?;
    v["layer_counts"] = json!(layers);
    Ok(v.to_string())
}

fn js(r: redraw::Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = splitDrawings)]
pub fn split_drawings(t: usize, l: usize) -> Result<String, JsError> {
    js(split_drawings_json(t, l))
}

#[wasm_bindgen(js_name = nestedDrawings)]
pub fn nested_drawings(n: usize) -> Result<String, JsError> {
    js(nested_drawings_json(n))
}

#[wasm_bindgen]
pub fn optimize(constraint: &str) -> Result<String, JsError> {
    js(optimize_json(constraint))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn balanced_split_has_three_svgs() {
        let v = parse(&split_drawings_json(4, 4).unwrap());
        assert_eq!(v["count"], 3);
        assert_eq!(v["svgs"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn extreme_split_is_empty() {
        assert_eq!(parse(&split_drawings_json(7, 1).unwrap())["count"], 0);
        assert!(split_drawings_json(3, 3).is_err());
    }

    #[test]
    fn nested_counts() {
        assert_eq!(parse(&nested_drawings_json(6).unwrap())["count"], 2);
    }

    #[test]
    fn optimize_report() {
        let v = parse(&optimize_json("paper").unwrap());
        assert!((v["growth"].as_f64().unwrap() - 1.31002).abs() < 1e-5);
        assert_eq!(v["layer_counts"][1], "19");
        assert!(optimize_json("bogus").is_err());
    }
}
