//! Exhaustive search over Pauli correction tables.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::catalog::{CorrectionTable, Family, ProtocolName, Scenario, TABLE_COUNT};
use crate::error::{Error, Result};
use crate::fidelity::{best_condition, BestCondition, FidelityForm, FormProbe};
use crate::measurement::{BellOutcome, CosenderBasis};

/// Tables within this distance of the best `f_max` count as maximizers.
pub const MAXIMIZER_TOL: f64 = 1e-9;

pub const GRID_STEPS: usize = 720;

/// W iff the correction ignores the co-sender's outcome.
pub fn protocol_family(table: &CorrectionTable) -> Family {
    if table.rows_equal() {
        Family::W
    } else {
        Family::Ghz
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Maximizer {
    pub table: CorrectionTable,
    pub code: u32,
    pub form: FidelityForm,
    pub best: BestCondition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub scenario: Scenario,
    pub maximizers: Vec<Maximizer>,
    pub f_max_global: f64,
    pub family: Family,
}

impl SearchReport {
    pub fn contains(&self, table: &CorrectionTable) -> bool {
        self.maximizers.iter().any(|m| m.table == *table)
    }
}

fn sweep<T: Send>(f: impl Fn(u32) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..TABLE_COUNT).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..TABLE_COUNT).map(f).collect()
    }
}

/// Fits every one of the 4⁸ tables and keeps those reaching the global
/// optimum over `(table, ν, κ)`. Maximizers are sorted by table code.
pub fn search_tables(scenario: &Scenario) -> Result<SearchReport> {
    let probe = FormProbe::new(scenario)?;
    let fitted = sweep(|code| {
        let table = CorrectionTable::from_code(code)?;
        let form = probe.form(&table)?;
        Ok((code, form, best_condition(&form)))
    })?;
    let f_max_global = fitted.iter().map(|(_, _, b)| b.f_max).fold(f64::NEG_INFINITY, f64::max);
    let mut maximizers: Vec<Maximizer> = fitted
        .into_iter()
        .filter(|(_, _, b)| b.f_max >= f_max_global - MAXIMIZER_TOL)
        .map(|(code, form, best)| Maximizer {
            table: CorrectionTable::from_code(code).expect("sweep codes are valid"),
            code,
            form,
            best,
        })
        .collect();
    maximizers.sort_by_key(|m| m.code);
    let first = protocol_family(&maximizers[0].table);
    let family = if maximizers.iter().all(|m| protocol_family(&m.table) == first) {
        first
    } else {
        Family::Other
    };
    Ok(SearchReport {
        scenario: *scenario,
        maximizers,
        f_max_global,
        family,
    })
}

/// Analytic optimum for one table, cross-checked against a
/// [`GRID_STEPS`]² scan of `[0, π) × [0, 2π)`.
pub fn optimize_angles(scenario: &Scenario, table: &CorrectionTable) -> Result<BestCondition> {
    let form = FormProbe::new(scenario)?.form(table)?;
    let best = best_condition(&form);
    grid_check(&form, &best)?;
    Ok(best)
}

fn circular_gap(x: f64, y: f64, period: f64) -> f64 {
    let d = (x - y).rem_euclid(period);
    d.min(period - d)
}

fn grid_check(form: &FidelityForm, best: &BestCondition) -> Result<()> {
    let (dnu, dkappa) = (PI / GRID_STEPS as f64, 2.0 * PI / GRID_STEPS as f64);
    let mut top = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..GRID_STEPS {
        let nu = i as f64 * dnu;
        for m in 0..GRID_STEPS {
            let kappa = m as f64 * dkappa;
            let f = form.eval(nu, kappa);
            if f > top.0 {
                top = (f, nu, kappa);
            }
        }
    }
    if top.0 > best.f_max + 1e-9 {
        return Err(Error::GridMismatch(format!(
            "grid value {} at ν={}, κ={} exceeds analytic maximum {}",
            top.0, top.1, top.2, best.f_max
        )));
    }
    // the argmax is unique (mod π, 2π) only when the κ-dependent part is present
    if !best.angle_independent && form.c.hypot(form.d) > 1e-6 {
        let gap_nu = circular_gap(top.1, best.nu_star, PI);
        let gap_kappa = circular_gap(top.2, best.kappa_star, 2.0 * PI);
        if gap_nu > dnu || gap_kappa > dkappa {
            return Err(Error::GridMismatch(format!(
                "grid argmax (ν={}, κ={}) is more than one cell from (ν*={}, κ*={})",
                top.1, top.2, best.nu_star, best.kappa_star
            )));
        }
    }
    Ok(())
}

/// Finds a table of `family` whose fitted form matches `target` within
/// `tol`: named protocols first, then every table in code order.
pub fn resolve_protocol(
    scenario: &Scenario,
    family: Family,
    target: &FidelityForm,
    tol: f64,
) -> Result<Option<CorrectionTable>> {
    let probe = FormProbe::new(scenario)?;
    for name in ProtocolName::ALL.into_iter().filter(|p| p.family() == family) {
        if probe.form(&name.table())?.max_abs_diff(target) <= tol {
            return Ok(Some(name.table()));
        }
    }
    for code in 0..TABLE_COUNT {
        let table = CorrectionTable::from_code(code)?;
        if protocol_family(&table) == family && probe.form(&table)?.max_abs_diff(target) <= tol {
            return Ok(Some(table));
        }
    }
    Ok(None)
}

/// Optimum when the co-sender may pick a different basis for each sender
/// outcome. The branches for outcome `j` depend only on basis `j`, so the
/// joint optimum is the sum of four independent closed-form maxima.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerOutcomeOptimum {
    pub bases: [CosenderBasis; 4],
    pub forms: [FidelityForm; 4],
    pub f_max: f64,
}

pub fn optimize_per_outcome(scenario: &Scenario, table: &CorrectionTable) -> Result<PerOutcomeOptimum> {
    let probe = FormProbe::new(scenario)?;
    let mut forms = [FidelityForm::new(0.0, 0.0, 0.0, 0.0); 4];
    let mut bases = [CosenderBasis::new(0.0, 0.0); 4];
    let mut f_max = 0.0;
    for j in BellOutcome::ALL {
        let form = probe.outcome_form(table, j)?;
        let best = best_condition(&form);
        forms[j.column()] = form;
        bases[j.column()] = CosenderBasis::new(best.nu_star, best.kappa_star);
        f_max += best.f_max;
    }
    Ok(PerOutcomeOptimum { bases, forms, f_max })
}
