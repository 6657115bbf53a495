//! Report documents for the command-line surface.
//!
//! A [`ReportDocument`] is a single self-describing structure carrying a
//! `schema_version`, the echoed inputs and one record per scenario. JSON is the
//! lossless rendering; CSV flattens `rows` only; markdown is for reading.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::{
    ratio_f64, scenario_registry, CorrectionTable, DeviationFlag, Family, ProtocolName, ReferenceResult, Scenario,
};
use crate::error::{Error, Result};
use crate::fidelity::{
    average_monte_carlo, average_quadrature, average_two_design, best_condition, BestCondition, FidelityForm,
    FormProbe, MonteCarloEstimate, QuadratureRule,
};
use crate::measurement::{bloch_state, BlochAngles, CosenderBasis};
use crate::protocol::{run_all, CosenderSetting};
use crate::search::{optimize_angles, protocol_family, search_tables, SearchReport};

pub const SCHEMA_VERSION: &str = "1";

/// Agreement required between computed and reference coefficients.
pub const FORM_TOL: f64 = 1e-9;
/// Agreement required between the exact averaging routes.
pub const ORACLE_TOL: f64 = 1e-10;
pub const MC_SIGMAS: f64 = 5.0;
/// Absolute floor on the Monte Carlo band, for zero-variance integrands.
pub const MC_FLOOR: f64 = 1e-12;
pub const DEFAULT_MC_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ValidationFailed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::Report(format!("unknown format `{other}`"))),
        }
    }
}

/// A coefficient as a float plus, when one with denominator ≤ 360 matches
/// within 1e-10, its exact rational value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub value: f64,
    pub num: Option<i64>,
    pub den: Option<i64>,
}

impl Coefficient {
    pub fn from_f64(value: f64) -> Self {
        match rationalize(value) {
            Some((n, d)) => Self {
                value,
                num: Some(n),
                den: Some(d),
            },
            None => Self {
                value,
                num: None,
                den: None,
            },
        }
    }

    fn exact(num: i64, den: i64) -> Self {
        Self {
            value: num as f64 / den as f64,
            num: Some(num),
            den: Some(den),
        }
    }

    fn pretty(&self) -> String {
        match (self.num, self.den) {
            (Some(n), Some(1)) => n.to_string(),
            (Some(n), Some(d)) => format!("{n}/{d}"),
            _ => format!("{:.6}", self.value),
        }
    }
}

pub fn rationalize(x: f64) -> Option<(i64, i64)> {
    if !x.is_finite() {
        return None;
    }
    (1..=360i64).find_map(|den| {
        let num = (x * den as f64).round();
        ((x - num / den as f64).abs() < 1e-10).then(|| {
            let num = num as i64;
            let g = gcd(num.unsigned_abs(), den as u64) as i64;
            (num / g, den / g)
        })
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormRecord {
    pub a: Coefficient,
    pub b: Coefficient,
    pub c: Coefficient,
    pub d: Coefficient,
}

impl FormRecord {
    pub fn from_form(f: &FidelityForm) -> Self {
        Self {
            a: Coefficient::from_f64(f.a),
            b: Coefficient::from_f64(f.b),
            c: Coefficient::from_f64(f.c),
            d: Coefficient::from_f64(f.d),
        }
    }

    fn from_reference(r: &ReferenceResult) -> Self {
        let [a, b, c, d] = r.form.map(|q| Coefficient::exact(*q.numer(), *q.denom()));
        Self { a, b, c, d }
    }

    pub fn values(&self) -> [f64; 4] {
        [self.a.value, self.b.value, self.c.value, self.d.value]
    }

    /// `a + b·cos2ν + c·cosκ·sin2ν + d·sinκ·sin2ν`, omitting zero terms.
    pub fn pretty(&self) -> String {
        let mut out = self.a.pretty();
        for (coef, term) in [(&self.b, "cos2ν"), (&self.c, "cosκ·sin2ν"), (&self.d, "sinκ·sin2ν")] {
            if coef.value.abs() < 1e-12 {
                continue;
            }
            let mag = Coefficient::from_f64(coef.value.abs()).pretty();
            let sign = if coef.value < 0.0 { '−' } else { '+' };
            let _ = write!(out, " {sign} {mag}·{term}");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BestRecord {
    pub nu_star: f64,
    pub kappa_star: f64,
    pub nu_over_pi: Coefficient,
    pub kappa_over_pi: Coefficient,
    pub f_max: f64,
    pub angle_independent: bool,
}

impl BestRecord {
    pub fn from_best(b: &BestCondition) -> Self {
        Self {
            nu_star: b.nu_star,
            kappa_star: b.kappa_star,
            nu_over_pi: Coefficient::from_f64(b.nu_star / PI),
            kappa_over_pi: Coefficient::from_f64(b.kappa_star / PI),
            f_max: b.f_max,
            angle_independent: b.angle_independent,
        }
    }

    fn pretty(&self) -> String {
        if self.angle_independent {
            return "any (ν, κ)".to_string();
        }
        let angle = |c: &Coefficient| match (c.num, c.den) {
            (Some(0), _) => "0".to_string(),
            (Some(1), Some(1)) => "π".to_string(),
            (Some(1), Some(d)) => format!("π/{d}"),
            (Some(n), Some(1)) => format!("{n}π"),
            (Some(n), Some(d)) => format!("{n}π/{d}"),
            _ => format!("{:.6}", c.value * PI),
        };
        format!("ν = {}, κ = {}", angle(&self.nu_over_pi), angle(&self.kappa_over_pi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub f_max_global: f64,
    pub family: Family,
    pub maximizer_count: usize,
    pub first_maximizer: CorrectionTable,
}

impl SearchSummary {
    fn from_report(r: &SearchReport) -> Self {
        Self {
            f_max_global: r.f_max_global,
            family: r.family,
            maximizer_count: r.maximizers.len(),
            first_maximizer: r.maximizers[0].table,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Averages {
    pub nu: f64,
    pub kappa: f64,
    pub quadrature: f64,
    pub quadrature_doubled: f64,
    pub two_design: f64,
    pub form_value: Option<f64>,
    pub monte_carlo_mean: f64,
    pub monte_carlo_stderr: f64,
    pub monte_carlo_samples: usize,
    pub seed: u64,
}

impl Averages {
    /// Pairwise agreement of the exact routes, and the Monte Carlo band.
    pub fn consistent(&self) -> bool {
        let mut exact = vec![self.quadrature, self.quadrature_doubled, self.two_design];
        exact.extend(self.form_value);
        let spread =
            exact.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x)) - exact.iter().fold(f64::INFINITY, |m, &x| m.min(x));
        let mc_ok = (self.monte_carlo_mean - self.quadrature).abs() <= MC_SIGMAS * self.monte_carlo_stderr + MC_FLOOR;
        spread <= ORACLE_TOL && mc_ok
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub state: String,
    pub roles: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_roles: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub protocol: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<CorrectionTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<FormRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_form: Option<FormRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form_deltas: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best: Option<BestRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_best: Option<BestRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub averages: Option<Averages>,
    pub flags: Vec<String>,
}

impl ReportRow {
    fn new(scenario: &Scenario) -> Self {
        Self {
            id: None,
            state: scenario.state.to_string(),
            roles: scenario.roles.to_string(),
            printed_roles: None,
            protocol: None,
            table: None,
            family: None,
            form: None,
            reference_form: None,
            form_deltas: None,
            best: None,
            reference_best: None,
            search: None,
            averages: None,
            flags: Vec::new(),
        }
    }

    fn with_table(mut self, table: &CorrectionTable) -> Self {
        self.protocol = Some(
            ProtocolName::identify(table)
                .map(|p| p.name().to_string())
                .unwrap_or_else(|| table.compact()),
        );
        self.table = Some(*table);
        self.family = Some(protocol_family(table));
        self
    }

    fn flag(&mut self, f: &str) {
        if !self.flags.iter().any(|x| x == f) {
            self.flags.push(f.to_string());
        }
    }

    /// Flags that make the document fail validation.
    pub fn is_failure(&self) -> bool {
        self.flags.iter().any(|f| FAILURE_FLAGS.contains(&f.as_str()))
    }
}

/// Computed disagreements. Other flags are informational.
pub const FAILURE_FLAGS: [&str; 5] = [
    "form_mismatch",
    "best_condition_mismatch",
    "oracle_disagreement",
    "symmetric_swap_mismatch",
    "grid_mismatch",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchRow {
    pub j: u8,
    pub k: u8,
    pub correction: String,
    pub probability: f64,
    pub branch_fidelity: f64,
    /// `[re0, im0, re1, im1]` of the corrected, unnormalized receiver state.
    pub tau: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximizerRow {
    pub table: CorrectionTable,
    pub code: u32,
    pub family: Family,
    pub form: FormRecord,
    pub best: BestRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub status: Status,
    pub notes: Vec<String>,
    pub rows: Vec<ReportRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branches: Vec<BranchRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maximizers: Vec<MaximizerRow>,
}

impl ReportDocument {
    fn new(command: &str, inputs: BTreeMap<String, Value>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            status: Status::Ok,
            notes: Vec::new(),
            rows: Vec::new(),
            branches: Vec::new(),
            maximizers: Vec::new(),
        }
    }

    fn finish(mut self) -> Self {
        self.status = if self.rows.iter().any(ReportRow::is_failure) {
            Status::ValidationFailed
        } else {
            Status::Ok
        };
        self
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => to_csv(self),
            Format::Markdown => Ok(to_markdown(self)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarloOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for MonteCarloOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_MC_SAMPLES,
            seed: 0,
        }
    }
}

fn averages(
    scenario: &Scenario,
    table: &CorrectionTable,
    basis: CosenderBasis,
    form: Option<&FidelityForm>,
    mc: MonteCarloOptions,
) -> Result<Averages> {
    let setting: CosenderSetting = basis.into();
    let rule = QuadratureRule::default();
    let est: MonteCarloEstimate = average_monte_carlo(scenario, table, &setting, mc.samples, mc.seed)?;
    Ok(Averages {
        nu: basis.nu,
        kappa: basis.kappa,
        quadrature: average_quadrature(scenario, table, &setting, rule)?,
        quadrature_doubled: average_quadrature(scenario, table, &setting, rule.doubled())?,
        two_design: average_two_design(scenario, table, &setting)?,
        form_value: form.map(|f| f.eval(basis.nu, basis.kappa)),
        monte_carlo_mean: est.mean,
        monte_carlo_stderr: est.stderr,
        monte_carlo_samples: est.samples,
        seed: est.seed,
    })
}

fn reference_best(r: &ReferenceResult) -> Option<BestRecord> {
    r.best.map(|b| BestRecord {
        nu_star: b.nu(),
        kappa_star: b.kappa(),
        nu_over_pi: Coefficient::exact(*b.nu_over_pi.numer(), *b.nu_over_pi.denom()),
        kappa_over_pi: Coefficient::exact(*b.kappa_over_pi.numer(), *b.kappa_over_pi.denom()),
        f_max: r.f_max(),
        angle_independent: false,
    })
}

fn deviation_flag_name(f: DeviationFlag) -> String {
    serde_json::to_value(f)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// Compares one computed row against its reference entry.
fn reference_row(r: &ReferenceResult, mc: MonteCarloOptions) -> Result<ReportRow> {
    let scenario = r.scenario;
    let table = r.table();
    let probe = FormProbe::new(&scenario)?;
    let form = probe.form(&table)?;
    let best = best_condition(&form);
    let reference = FormRecord::from_reference(r);

    let mut row = ReportRow::new(&scenario).with_table(&table);
    row.id = Some(r.id.clone());
    row.printed_roles = Some(r.printed_roles.clone());
    row.form = Some(FormRecord::from_form(&form));
    row.reference_form = Some(reference);
    let deltas: [f64; 4] = std::array::from_fn(|i| form.coefficients()[i] - ratio_f64(r.form[i]));
    row.form_deltas = Some(deltas);
    row.best = Some(BestRecord::from_best(&best));
    row.reference_best = reference_best(r);
    for f in &r.flags {
        row.flag(&deviation_flag_name(*f));
    }

    if deltas.iter().any(|d| d.abs() > FORM_TOL) {
        row.flag("form_mismatch");
    }
    if let Some(rb) = &row.reference_best {
        let nu_ok = (best.nu_star - rb.nu_star).abs() <= ORACLE_TOL;
        let kappa_ok = (best.kappa_star - rb.kappa_star).abs() <= ORACLE_TOL;
        if best.angle_independent || !nu_ok || !kappa_ok || (best.f_max - rb.f_max).abs() > FORM_TOL {
            row.flag("best_condition_mismatch");
        }
    }
    if r.symmetric {
        let swapped = FormProbe::new(&Scenario::new(scenario.state, scenario.roles.swapped()))?.form(&table)?;
        if swapped.max_abs_diff(&form) > FORM_TOL {
            row.flag("symmetric_swap_mismatch");
        }
    }

    let basis = CosenderBasis::new(best.nu_star, best.kappa_star);
    let avg = averages(&scenario, &table, basis, Some(&form), mc)?;
    if !avg.consistent() {
        row.flag("oracle_disagreement");
    }
    row.averages = Some(avg);

    let search = search_tables(&scenario)?;
    if search.f_max_global > r.f_max() + FORM_TOL {
        row.flag("search_exceeds_reference");
    }
    if search.family != r.family {
        row.flag("search_family_differs");
    }
    row.search = Some(SearchSummary::from_report(&search));
    Ok(row)
}

const TABLE_NOTES: [&str; 5] = [
    "rows 'ghz' and 'w' are the symmetric-state baselines; the rest follow the reference table in order",
    "reference table headers list fidelity before protocol while its rows list protocol first; rows are read by content",
    "type 5 is normalized with 1/sqrt(5) (five equal terms)",
    "extended GHZ rows use state 3bI with printed Alice on qubit C, Bob on B, Cindy on A",
    "flags search_exceeds_reference and search_family_differs report exhaustive-search findings and do not fail validation",
];

/// Every reference row with computed form, best condition, averages at the
/// optimum and the exhaustive-search summary.
pub fn table_report(mc: MonteCarloOptions) -> Result<ReportDocument> {
    let mut inputs = BTreeMap::new();
    inputs.insert("mc_samples".into(), json!(mc.samples));
    inputs.insert("seed".into(), json!(mc.seed));
    let mut doc = ReportDocument::new("table", inputs);
    doc.notes = TABLE_NOTES.iter().map(|s| s.to_string()).collect();
    doc.rows = scenario_registry()
        .iter()
        .map(|r| reference_row(r, mc))
        .collect::<Result<_>>()?;
    Ok(doc.finish())
}

fn find_reference(scenario: &Scenario, table: &CorrectionTable) -> Option<ReferenceResult> {
    scenario_registry()
        .into_iter()
        .find(|r| r.scenario == *scenario && r.table() == *table)
}

fn scenario_inputs(scenario: &Scenario) -> BTreeMap<String, Value> {
    let mut inputs = BTreeMap::new();
    inputs.insert("state".into(), json!(scenario.state.tag()));
    inputs.insert("roles".into(), json!(scenario.roles.to_string()));
    inputs
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub basis: CosenderBasis,
    pub info: BlochAngles,
    pub mc: MonteCarloOptions,
}

/// All eight branches for one information state, plus the three averages.
pub fn run_report(scenario: &Scenario, table: &CorrectionTable, opts: RunOptions) -> Result<ReportDocument> {
    let mut inputs = scenario_inputs(scenario);
    inputs.insert("table".into(), json!(table.compact()));
    inputs.insert("nu".into(), json!(opts.basis.nu));
    inputs.insert("kappa".into(), json!(opts.basis.kappa));
    inputs.insert("theta".into(), json!(opts.info.theta));
    inputs.insert("phi".into(), json!(opts.info.phi));
    inputs.insert("mc_samples".into(), json!(opts.mc.samples));
    inputs.insert("seed".into(), json!(opts.mc.seed));
    let mut doc = ReportDocument::new("run", inputs);

    let form = FormProbe::new(scenario)?.form(table)?;
    let mut row = ReportRow::new(scenario).with_table(table);
    row.form = Some(FormRecord::from_form(&form));
    row.best = Some(BestRecord::from_best(&best_condition(&form)));
    if let Some(r) = find_reference(scenario, table) {
        row.id = Some(r.id.clone());
        row.printed_roles = Some(r.printed_roles.clone());
        row.reference_form = Some(FormRecord::from_reference(&r));
        let deltas: [f64; 4] = std::array::from_fn(|i| form.coefficients()[i] - ratio_f64(r.form[i]));
        if deltas.iter().any(|d| d.abs() > FORM_TOL) {
            row.flag("form_mismatch");
        }
        row.form_deltas = Some(deltas);
    }
    let avg = averages(scenario, table, opts.basis, Some(&form), opts.mc)?;
    if !avg.consistent() {
        row.flag("oracle_disagreement");
    }
    row.averages = Some(avg);
    doc.rows.push(row);

    let info = bloch_state(opts.info);
    for rec in run_all(&info, scenario, &opts.basis.into(), table)? {
        doc.branches.push(BranchRow {
            j: rec.j.j(),
            k: rec.k.k(),
            correction: table.get(rec.j, rec.k).to_string(),
            probability: rec.probability,
            branch_fidelity: rec.branch_fidelity,
            tau: [
                rec.tau.amp(0).re,
                rec.tau.amp(0).im,
                rec.tau.amp(1).re,
                rec.tau.amp(1).im,
            ],
        });
    }
    Ok(doc.finish())
}

pub fn search_report(scenario: &Scenario) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("search", scenario_inputs(scenario));
    let search = search_tables(scenario)?;
    let mut row = ReportRow::new(scenario);
    row.family = Some(search.family);
    row.search = Some(SearchSummary::from_report(&search));
    let top = &search.maximizers[0];
    row.form = Some(FormRecord::from_form(&top.form));
    row.best = Some(BestRecord::from_best(&top.best));
    doc.rows.push(row);
    doc.maximizers = search
        .maximizers
        .iter()
        .map(|m| MaximizerRow {
            table: m.table,
            code: m.code,
            family: protocol_family(&m.table),
            form: FormRecord::from_form(&m.form),
            best: BestRecord::from_best(&m.best),
        })
        .collect();
    Ok(doc.finish())
}

pub fn optimize_report(scenario: &Scenario, table: &CorrectionTable) -> Result<ReportDocument> {
    let mut inputs = scenario_inputs(scenario);
    inputs.insert("table".into(), json!(table.compact()));
    let mut doc = ReportDocument::new("optimize", inputs);
    let form = FormProbe::new(scenario)?.form(table)?;
    let mut row = ReportRow::new(scenario).with_table(table);
    row.form = Some(FormRecord::from_form(&form));
    match optimize_angles(scenario, table) {
        Ok(best) => row.best = Some(BestRecord::from_best(&best)),
        Err(Error::GridMismatch(_)) => {
            row.best = Some(BestRecord::from_best(&best_condition(&form)));
            row.flag("grid_mismatch");
        }
        Err(e) => return Err(e),
    }
    if let Some(r) = find_reference(scenario, table) {
        row.id = Some(r.id.clone());
        row.reference_form = Some(FormRecord::from_reference(&r));
        row.reference_best = reference_best(&r);
    }
    doc.rows.push(row);
    Ok(doc.finish())
}

pub fn to_json(doc: &ReportDocument) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| Error::Report(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(s: &str) -> Result<ReportDocument> {
    serde_json::from_str(s).map_err(|e| Error::Report(e.to_string()))
}

pub const CSV_COLUMNS: [&str; 28] = [
    "id",
    "state",
    "roles",
    "printed_roles",
    "protocol",
    "table",
    "family",
    "a",
    "b",
    "c",
    "d",
    "ref_a",
    "ref_b",
    "ref_c",
    "ref_d",
    "nu_star",
    "kappa_star",
    "f_max",
    "angle_independent",
    "ref_nu_star",
    "ref_kappa_star",
    "search_f_max",
    "search_family",
    "search_maximizers",
    "quadrature",
    "two_design",
    "mc_mean",
    "flags",
];

fn num(x: f64) -> String {
    format!("{x}")
}

fn csv_record(row: &ReportRow) -> Vec<String> {
    let opt = |v: Option<String>| v.unwrap_or_default();
    let form = |f: &Option<FormRecord>, i: usize| opt(f.as_ref().map(|f| num(f.values()[i])));
    let mut rec = vec![
        opt(row.id.clone()),
        row.state.clone(),
        row.roles.clone(),
        opt(row.printed_roles.clone()),
        opt(row.protocol.clone()),
        opt(row.table.map(|t| t.compact())),
        opt(row.family.map(|f| f.to_string())),
    ];
    rec.extend((0..4).map(|i| form(&row.form, i)));
    rec.extend((0..4).map(|i| form(&row.reference_form, i)));
    rec.push(opt(row.best.map(|b| num(b.nu_star))));
    rec.push(opt(row.best.map(|b| num(b.kappa_star))));
    rec.push(opt(row.best.map(|b| num(b.f_max))));
    rec.push(opt(row.best.map(|b| b.angle_independent.to_string())));
    rec.push(opt(row.reference_best.map(|b| num(b.nu_star))));
    rec.push(opt(row.reference_best.map(|b| num(b.kappa_star))));
    rec.push(opt(row.search.map(|s| num(s.f_max_global))));
    rec.push(opt(row.search.map(|s| s.family.to_string())));
    rec.push(opt(row.search.map(|s| s.maximizer_count.to_string())));
    rec.push(opt(row.averages.map(|a| num(a.quadrature))));
    rec.push(opt(row.averages.map(|a| num(a.two_design))));
    rec.push(opt(row.averages.map(|a| num(a.monte_carlo_mean))));
    rec.push(row.flags.join(";"));
    rec
}

pub fn to_csv(doc: &ReportDocument) -> Result<String> {
    let err = |e: csv::Error| Error::Report(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).map_err(err)?;
    for row in &doc.rows {
        w.write_record(csv_record(row)).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Report(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Report(e.to_string()))
}

pub fn to_markdown(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# `{}` report (schema {})\n", doc.command, doc.schema_version);
    let status = match doc.status {
        Status::Ok => "ok",
        Status::ValidationFailed => "validation failed",
    };
    let _ = writeln!(out, "Status: **{status}**\n");
    if !doc.inputs.is_empty() {
        let inputs: Vec<String> = doc.inputs.iter().map(|(k, v)| format!("`{k}={v}`")).collect();
        let _ = writeln!(out, "Inputs: {}\n", inputs.join(", "));
    }
    for n in &doc.notes {
        let _ = writeln!(out, "- {n}");
    }
    if !doc.notes.is_empty() {
        out.push('\n');
    }
    out.push_str(
        "| id | state | role | protocol | fidelity | reference | best condition | max | search max | flags |\n",
    );
    out.push_str("|---|---|---|---|---|---|---|---|---|---|\n");
    for r in &doc.rows {
        let role = r.printed_roles.clone().unwrap_or_else(|| r.roles.clone());
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            r.id.as_deref().unwrap_or(""),
            r.state,
            role,
            r.protocol.as_deref().unwrap_or(""),
            r.form.as_ref().map(FormRecord::pretty).unwrap_or_default(),
            r.reference_form.as_ref().map(FormRecord::pretty).unwrap_or_default(),
            r.best.as_ref().map(BestRecord::pretty).unwrap_or_default(),
            r.best.map(|b| format!("{:.6}", b.f_max)).unwrap_or_default(),
            r.search
                .map(|s| format!("{:.6} ({})", s.f_max_global, s.family))
                .unwrap_or_default(),
            r.flags.join(", "),
        );
    }
    if !doc.branches.is_empty() {
        out.push_str("\n| j | k | correction | probability | branch fidelity |\n|---|---|---|---|---|\n");
        for b in &doc.branches {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {:.6} | {:.6} |",
                b.j, b.k, b.correction, b.probability, b.branch_fidelity
            );
        }
    }
    if !doc.maximizers.is_empty() {
        out.push_str("\n| table | code | family | fidelity | best condition |\n|---|---|---|---|---|\n");
        for m in &doc.maximizers {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                m.table,
                m.code,
                m.family,
                m.form.pretty(),
                m.best.pretty()
            );
        }
    }
    out
}
