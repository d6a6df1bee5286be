//! wasm-bindgen entry points for `www/index.html`. Every function returns a
//! JSON string, or an error message the page shows as is.

use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use lietower::cdgl::bch;
use lietower::freelie::{graded_witt_dimension, lyndon_basis, necklace_dimension, GeneratorSet, LieElement};
use lietower::simpset::load_simplicial_set;
use lietower::tower::tower_homotopy;
use lietower::verify::FIXTURES;

fn to_string(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Stems of the bundled fixtures, as a JSON array.
#[wasm_bindgen]
pub fn fixture_names() -> String {
    let names: Vec<&str> = FIXTURES.iter().map(|(s, _)| *s).collect();
    json!(names).to_string()
}

#[wasm_bindgen]
pub fn fixture_document(stem: &str) -> Result<String, String> {
    FIXTURES
        .iter()
        .find(|(s, _)| *s == stem)
        .map(|(_, doc)| doc.to_string())
        .ok_or_else(|| format!("no fixture named {stem}"))
}

/// The tower report of a simplicial-set document.
#[wasm_bindgen]
pub fn tower(document: &str, stages: u32, degrees: usize) -> Result<String, String> {
    if stages > 6 || degrees > 5 {
        return Err("the demo stops at 6 stages and 5 degrees".into());
    }
    let x = load_simplicial_set(document).map_err(to_string)?;
    let report = tower_homotopy(&x, stages, degrees).map_err(to_string)?;
    serde_json::to_string(&report).map_err(to_string)
}

/// `log(eˣ eʸ)` for free generators `x`, `y` of degree 0, modulo brackets
/// longer than `order`, with each homogeneous length on its own line.
#[wasm_bindgen]
pub fn bch_series(order: u32) -> Result<String, String> {
    if !(1..=8).contains(&order) {
        return Err("order must be between 1 and 8".into());
    }
    let gens = GeneratorSet::from_degrees(&[("x", 0), ("y", 0)]).map_err(to_string)?;
    let x = LieElement::named(&gens, order, "x").map_err(to_string)?;
    let y = LieElement::named(&gens, order, "y").map_err(to_string)?;
    let z = bch(&x, &y).map_err(to_string)?;
    let parts: Vec<_> = (1..=order as usize)
        .map(|k| json!({ "length": k, "terms": z.length_part(k).to_string() }))
        .collect();
    Ok(json!(parts).to_string())
}

/// Free Lie algebra dimensions on `generators` letters of degree 0 by
/// length: Lyndon words, the necklace formula and the tensor-algebra rank.
#[wasm_bindgen]
pub fn witt_table(generators: usize, max_length: usize) -> Result<String, String> {
    if !(1..=4).contains(&generators) || !(1..=8).contains(&max_length) {
        return Err("use 1 to 4 generators and lengths up to 8".into());
    }
    let names = ["x", "y", "z", "w"];
    let spec: Vec<(&str, i32)> = names[..generators].iter().map(|n| (*n, 0)).collect();
    let gens = GeneratorSet::from_degrees(&spec).map_err(to_string)?;
    let rows: Vec<_> = (1..=max_length)
        .map(|len| {
            // the rank computation is the slow one; skip it past length 6
            let rank = (len <= 6).then(|| graded_witt_dimension(&gens, len));
            json!({
                "length": len,
                "lyndon": lyndon_basis(&gens, len, None).len(),
                "necklace": necklace_dimension(generators as u64, len as u32),
                "rank": rank,
            })
        })
        .collect();
    Ok(json!(rows).to_string())
}
