//! Browser bindings: fidelity curves and surfaces over the co-sender basis,
//! and the exhaustive table search, all returned as JSON strings.

use std::f64::consts::PI;

use serde::Serialize;
use tripartite_core::fidelity::FormProbe;
use tripartite_core::report::FormRecord;
use tripartite_core::{
    best_condition, search_tables, BestCondition, CorrectionTable, Family, RoleAssignment, Scenario, StateTypeId,
};
use wasm_bindgen::prelude::*;

/// Maximizers listed in a search summary; the full list can run to hundreds.
const MAX_LISTED: usize = 16;
const MAX_GRID: usize = 721;

#[derive(Debug, Serialize)]
pub struct Curve {
    pub form: FormRecord,
    pub pretty: String,
    pub best: BestCondition,
    pub kappa: f64,
    pub nu: Vec<f64>,
    pub fidelity: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct Surface {
    pub form: FormRecord,
    pub best: BestCondition,
    pub nu: Vec<f64>,
    pub kappa: Vec<f64>,
    /// Row-major, one row per κ.
    pub fidelity: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct ListedTable {
    pub table: CorrectionTable,
    pub code: u32,
    pub pretty: String,
    pub best: BestCondition,
}

#[derive(Debug, Serialize)]
pub struct SearchSummary {
    pub f_max_global: f64,
    pub family: Family,
    pub maximizer_count: usize,
    pub maximizers: Vec<ListedTable>,
}

fn scenario(state: &str, roles: &str) -> Result<Scenario, String> {
    let state: StateTypeId = state.parse().map_err(|e| format!("{e}"))?;
    let roles: RoleAssignment = roles.parse().map_err(|e| format!("{e}"))?;
    Ok(Scenario::new(state, roles))
}

fn grid(n: usize, period: f64) -> Result<Vec<f64>, String> {
    if !(2..=MAX_GRID).contains(&n) {
        return Err(format!("grid size {n} outside 2..={MAX_GRID}"));
    }
    Ok((0..n).map(|i| period * i as f64 / (n - 1) as f64).collect())
}

/// `F(ν)` at fixed κ for `ν ∈ [0, π]`.
pub fn curve(state: &str, roles: &str, protocol: &str, kappa: f64, samples: usize) -> Result<Curve, String> {
    let s = scenario(state, roles)?;
    let table: CorrectionTable = protocol.parse().map_err(|e| format!("{e}"))?;
    let form = FormProbe::new(&s)
        .and_then(|p| p.form(&table))
        .map_err(|e| format!("{e}"))?;
    let nu = grid(samples, PI)?;
    let fidelity = nu.iter().map(|&n| form.eval(n, kappa)).collect();
    let record = FormRecord::from_form(&form);
    Ok(Curve {
        pretty: record.pretty(),
        form: record,
        best: best_condition(&form),
        kappa,
        nu,
        fidelity,
    })
}

/// `F(ν, κ)` on `[0, π] × [0, 2π]`.
pub fn surface(state: &str, roles: &str, protocol: &str, n_nu: usize, n_kappa: usize) -> Result<Surface, String> {
    let s = scenario(state, roles)?;
    let table: CorrectionTable = protocol.parse().map_err(|e| format!("{e}"))?;
    let form = FormProbe::new(&s)
        .and_then(|p| p.form(&table))
        .map_err(|e| format!("{e}"))?;
    let nu = grid(n_nu, PI)?;
    let kappa = grid(n_kappa, 2.0 * PI)?;
    let fidelity = kappa
        .iter()
        .map(|&k| nu.iter().map(|&n| form.eval(n, k)).collect())
        .collect();
    Ok(Surface {
        form: FormRecord::from_form(&form),
        best: best_condition(&form),
        nu,
        kappa,
        fidelity,
    })
}

pub fn search(state: &str, roles: &str) -> Result<SearchSummary, String> {
    let report = search_tables(&scenario(state, roles)?).map_err(|e| format!("{e}"))?;
    Ok(SearchSummary {
        f_max_global: report.f_max_global,
        family: report.family,
        maximizer_count: report.maximizers.len(),
        maximizers: report
            .maximizers
            .iter()
            .take(MAX_LISTED)
            .map(|m| ListedTable {
                table: m.table,
                code: m.code,
                pretty: FormRecord::from_form(&m.form).pretty(),
                best: m.best,
            })
            .collect(),
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fidelity_curve(state: &str, roles: &str, protocol: &str, kappa: f64, samples: usize) -> Result<String, JsValue> {
    to_js(curve(state, roles, protocol, kappa, samples))
}

#[wasm_bindgen]
pub fn fidelity_surface(
    state: &str,
    roles: &str,
    protocol: &str,
    n_nu: usize,
    n_kappa: usize,
) -> Result<String, JsValue> {
    to_js(surface(state, roles, protocol, n_nu, n_kappa))
}

#[wasm_bindgen]
pub fn search_summary(state: &str, roles: &str) -> Result<String, JsValue> {
    to_js(search(state, roles))
}

/// State tags accepted by the other functions, as a JSON array.
#[wasm_bindgen]
pub fn state_tags() -> String {
    let tags: Vec<&str> = StateTypeId::ALL.iter().map(|t| t.tag()).collect();
    serde_json::to_string(&tags).unwrap_or_default()
}
