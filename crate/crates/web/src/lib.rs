//! Browser bindings: expand a graph, compare two graphs, list P-tableaux.
//! The `*_json` functions are plain Rust and carry all the logic.

use std::collections::BTreeMap;

use kromatic::basis::{convert_classical, expand_in};
use kromatic::gasharov::{enumerate_p_tableaux, verify_theorem};
use kromatic::graph::WeightedGraph;
use kromatic::kromatic::{
    chromatic_sym, expansion_json, format_expansion, groth_coefficient, kromatic_covers, realize,
};
use kromatic::poset::Poset;
use kromatic::series::terms_json;
use kromatic::{BasisId, Partition};
use num_traits::Zero;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest graph the demo accepts.
pub const MAX_WEB_VERTICES: usize = 10;

fn graph(spec: &str) -> Result<WeightedGraph, String> {
    let g = WeightedGraph::from_spec(spec).map_err(|e| e.to_string())?;
    if g.n() > MAX_WEB_VERTICES {
        return Err(format!(
            "the demo handles up to {MAX_WEB_VERTICES} vertices"
        ));
    }
    Ok(g)
}

pub fn expand_json(spec: &str, basis: &str, degree: usize) -> Result<String, String> {
    let g = graph(spec)?;
    let basis: BasisId = basis.parse().map_err(|e: kromatic::Error| e.to_string())?;
    let e = kromatic_covers(&g).map_err(|e| e.to_string())?;
    let out = if basis == BasisId::KMonomial {
        json!({ "expansion": expansion_json(&e), "text": format_expansion(&e) })
    } else {
        let x = realize(&e, degree);
        let terms = match basis {
            BasisId::Monomial => x.into_terms(),
            BasisId::Grothendieck => {
                let mut out = BTreeMap::new();
                for l in Partition::up_to(degree) {
                    let c = groth_coefficient(&x, &l).map_err(|e| e.to_string())?;
                    if !c.is_zero() {
                        out.insert(l, c);
                    }
                }
                out
            }
            b if b.is_classical() => convert_classical(&x, b).map_err(|e| e.to_string())?,
            b => expand_in(&x, b, degree).map_err(|e| e.to_string())?,
        };
        json!({
            "expansion": { "basis": basis.as_str(), "degreeCap": degree, "terms": terms_json(&terms) },
        })
    };
    Ok(out.to_string())
}

pub fn compare_json(left: &str, right: &str, degree: usize) -> Result<String, String> {
    let g = graph(left)?;
    let h = graph(right)?;
    let chromatic_equal = g.total_weight() == h.total_weight()
        && chromatic_sym(&g, g.total_weight()) == chromatic_sym(&h, h.total_weight());
    let eg = kromatic_covers(&g).map_err(|e| e.to_string())?;
    let eh = kromatic_covers(&h).map_err(|e| e.to_string())?;
    let only = |a: &kromatic::kromatic::KExpansion, b: &kromatic::kromatic::KExpansion| {
        a.keys()
            .filter(|l| !b.contains_key(*l))
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
    };
    Ok(json!({
        "chromaticEqual": chromatic_equal,
        "kromaticEqualUpToD": realize(&eg, degree) == realize(&eh, degree),
        "kmSupportOnlyLeft": only(&eg, &eh),
        "kmSupportOnlyRight": only(&eh, &eg),
    })
    .to_string())
}

pub fn tableaux_json(poset: &str, shape: &str) -> Result<String, String> {
    let p = Poset::from_spec(poset).map_err(|e| e.to_string())?;
    let shape: Partition = shape.parse().map_err(|e: kromatic::Error| e.to_string())?;
    if p.n() > 5 || shape.size() > 6 {
        return Err("the demo handles posets up to 5 elements and shapes up to size 6".into());
    }
    let ts = enumerate_p_tableaux(&p, &shape).map_err(|e| e.to_string())?;
    let report = verify_theorem(&p, &shape).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<Vec<String>>> = ts
        .iter()
        .map(|t| {
            t.rows
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect())
                .collect()
        })
        .collect();
    Ok(json!({ "count": ts.len(), "tableaux": rows, "report": report.to_json() }).to_string())
}

#[wasm_bindgen]
pub fn expand(spec: &str, basis: &str, degree: usize) -> Result<String, JsError> {
    expand_json(spec, basis, degree).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn compare(left: &str, right: &str, degree: usize) -> Result<String, JsError> {
    compare_json(left, right, degree).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tableaux(poset: &str, shape: &str) -> Result<String, JsError> {
    tableaux_json(poset, shape).map_err(|e| JsError::new(&e))
}
