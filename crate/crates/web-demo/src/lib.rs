//! Browser bindings. Every export takes plain strings and numbers and returns
//! a JSON string; errors come back as `{"error": reason, "message": ...}`.

use chebotarev::abstract_model::{random_abstract_model, FiniteGroup, Measure};
use chebotarev::algebra::FiniteField;
use chebotarev::covers::{make_cover, splitting_data, Cover};
use chebotarev::descriptor::parse_cover_any;
use chebotarev::function_field::places_up_to_degree;
use chebotarev::theorem::{make_gamma_context, verify, VerifyOptions};
use chebotarev::{Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Keeps the page responsive: no enumeration beyond this many candidates.
const LIMIT: u64 = 200_000;

fn cover(q: u64, descriptor: &str) -> Result<Cover> {
    let field = FiniteField::of_order(q)?;
    make_cover(&field, &parse_cover_any(&field, descriptor.trim())?)
}

fn to_json(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.reason(), "message": e.to_string() }).to_string(),
    }
}

pub fn splitting_table_value(q: u64, descriptor: &str, max_degree: usize) -> Result<Value> {
    let c = cover(q, descriptor)?;
    let rows = places_up_to_degree(c.base(), max_degree.max(1), LIMIT)?
        .iter()
        .map(|p| splitting_data(&c, p).map(|d| d.to_repr()))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "cover": c.descriptor().to_string(),
        "group_orders": c.group().orders(),
        "geometric_order": c.geometric_order(),
        "constant_degree": c.constant_degree(),
        "places": rows,
    }))
}

pub fn verify_value(q: u64, descriptor: &str, gamma: &str) -> Result<Value> {
    let c = cover(q, descriptor)?;
    let gammas = if gamma.trim() == "all" {
        chebotarev::theorem::gamma_choices(&c)
    } else {
        vec![c.group().parse_element(gamma)?]
    };
    let opts = VerifyOptions {
        enumeration_limit: LIMIT,
        ..VerifyOptions::default()
    };
    let reports = gammas
        .iter()
        .map(|g| verify(&make_gamma_context(&c, g)?, &opts))
        .collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.pass());
    let text: Vec<String> = reports.iter().map(ToString::to_string).collect();
    Ok(json!({ "pass": pass, "reports": reports, "text": text }))
}

pub fn abstract_trial_value(group: &str, trials: u32, seed: u64) -> Result<Value> {
    let g = FiniteGroup::library(group)?;
    let mut places = 0;
    let mut checks = 0;
    for t in 0..trials.clamp(1, 1000) {
        let model = random_abstract_model(&g, seed.wrapping_add(t as u64));
        model.validate()?;
        for i in 0..model.places.len() {
            places += 1;
            let mut total = Measure::from_integer(0);
            for x in g.elements() {
                total += model.measure(i, x)?;
                if model.places[i].degree == 1 {
                    model.psi_fiber_count(i, x)?;
                    checks += 1;
                }
            }
            if total != Measure::from_integer(1) {
                return Err(Error::FormulaMismatch {
                    direct: total.to_string(),
                    formula: "1".into(),
                });
            }
        }
    }
    Ok(
        json!({ "group": g.name, "order": g.order(), "trials": trials, "places": places, "fiber_checks": checks, "pass": true }),
    )
}

/// Frobenius data at every place of degree at most `max_degree`.
#[wasm_bindgen]
pub fn splitting_table(q: u32, cover: &str, max_degree: u32) -> String {
    to_json(splitting_table_value(q as u64, cover, max_degree as usize))
}

/// Theorem and corollary reports for one element of `F N`, or `"all"`.
#[wasm_bindgen]
pub fn verify_theorem(q: u32, cover: &str, gamma: &str) -> String {
    to_json(verify_value(q as u64, cover, gamma))
}

/// Random abstract models of a library group, checked place by place.
#[wasm_bindgen]
pub fn abstract_trial(group: &str, trials: u32, seed: u32) -> String {
    to_json(abstract_trial_value(group, trials, seed as u64))
}
