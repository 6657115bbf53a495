//! Bloch-sphere averages of the pointwise fidelity and the closed-form
//! dependence on the co-sender basis.
//!
//! Three averaging routes are provided and are expected to agree:
//! Gauss–Legendre × uniform-φ quadrature over the full pipeline, the six-state
//! spherical 2-design over the compiled branch maps, and Monte Carlo.
//!
//! Every branch amplitude is linear in `(sinν, e^{−iκ}cosν)`, so the average
//! fidelity as a function of the basis lies in the span of
//! `{1, cos2ν, cosκ·sin2ν, sinκ·sin2ν}`. [`FidelityForm`] stores those four
//! coefficients and [`best_condition`] maximizes them in closed form.

use std::f64::consts::{FRAC_PI_4, PI};
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{CorrectionTable, Scenario};
use crate::error::{Error, Result};
use crate::measurement::{bloch_state, pauli_eigenstates, BellOutcome, BlochAngles, CosenderBasis, CosenderOutcome};
use crate::protocol::{amps2, pointwise_fidelity, BranchMaps, CosenderSetting};
use crate::qcore::Pauli;

/// Maximum residual allowed when validating a fitted form.
pub const FORM_RESIDUAL_TOL: f64 = 1e-9;

/// Coefficients below this magnitude are treated as zero when locating the
/// optimum, and the form is angle independent when `√(b²+c²+d²)` is below
/// [`ANGLE_INDEPENDENT_TOL`].
pub const COEFF_ZERO_TOL: f64 = 1e-12;
pub const ANGLE_INDEPENDENT_TOL: f64 = 1e-10;

pub const MIN_THETA_NODES: usize = 4;
pub const MIN_PHI_NODES: usize = 8;
pub const MIN_MC_SAMPLES: usize = 1000;

/// `F(ν, κ) = a + b·cos2ν + c·cosκ·sin2ν + d·sinκ·sin2ν`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl FidelityForm {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_array([a, b, c, d]: [f64; 4]) -> Self {
        Self { a, b, c, d }
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn eval(&self, nu: f64, kappa: f64) -> f64 {
        let (s2, c2) = (2.0 * nu).sin_cos();
        let (sk, ck) = kappa.sin_cos();
        self.a + self.b * c2 + self.c * ck * s2 + self.d * sk * s2
    }

    /// Amplitude of the angle-dependent part, `√(b²+c²+d²)`.
    pub fn amplitude(&self) -> f64 {
        (self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    pub fn max_abs_diff(&self, other: &FidelityForm) -> f64 {
        self.coefficients()
            .iter()
            .zip(other.coefficients())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// Solves the four coefficients from values at [`FIT_POINTS`] and checks
    /// the fit against [`VALIDATION_POINTS`].
    pub fn fit(values: &[f64; PROBE_POINTS]) -> Result<FidelityForm> {
        let [f00, f90, f45, f45k] = [values[0], values[1], values[2], values[3]];
        let a = 0.5 * (f00 + f90);
        let form = FidelityForm {
            a,
            b: 0.5 * (f00 - f90),
            c: f45 - a,
            d: f45k - a,
        };
        let residual = VALIDATION_POINTS
            .iter()
            .zip(&values[FIT_POINTS.len()..])
            .map(|(&(nu, kappa), v)| (form.eval(nu, kappa) - v).abs())
            .fold(0.0, f64::max);
        if residual > FORM_RESIDUAL_TOL {
            return Err(Error::ValidationResidualExceeded {
                residual,
                tolerance: FORM_RESIDUAL_TOL,
            });
        }
        Ok(form)
    }
}

/// `(ν, κ)` where `F` equals `a+b`, `a−b`, `a+c` and `a+d` respectively.
pub const FIT_POINTS: [(f64, f64); 4] = [
    (0.0, 0.0),
    (std::f64::consts::FRAC_PI_2, 0.0),
    (FRAC_PI_4, 0.0),
    (FRAC_PI_4, std::f64::consts::FRAC_PI_2),
];

/// Off-grid points used to reject a fit that is not of the four-term shape.
pub const VALIDATION_POINTS: [(f64, f64); 8] = [
    (0.3, 0.7),
    (1.1, 2.9),
    (2.0, 4.4),
    (0.05, 5.9),
    (2.7, 1.3),
    (0.9, 3.3),
    (1.6, 0.2),
    (3.0, 6.1),
];

pub const PROBE_POINTS: usize = 12;

fn probe_point(i: usize) -> (f64, f64) {
    if i < FIT_POINTS.len() {
        FIT_POINTS[i]
    } else {
        VALIDATION_POINTS[i - FIT_POINTS.len()]
    }
}

/// Per-cell 2-design averages of one scenario at the twelve probe bases.
///
/// The average fidelity of a table is the sum of its eight cells, so any of
/// the 4⁸ tables can be fitted from these 12·8·4 numbers.
#[derive(Debug, Clone)]
pub struct FormProbe {
    // [point][j][k][pauli]
    cells: Vec<[[[f64; 4]; 2]; 4]>,
}

impl FormProbe {
    pub fn new(scenario: &Scenario) -> Result<Self> {
        let infos = pauli_eigenstates().map(|s| amps2(&s));
        let mut cells = Vec::with_capacity(PROBE_POINTS);
        for i in 0..PROBE_POINTS {
            let (nu, kappa) = probe_point(i);
            let maps = BranchMaps::new(scenario, &CosenderBasis::new(nu, kappa).into())?;
            let mut c = [[[0.0; 4]; 2]; 4];
            for j in BellOutcome::ALL {
                for k in CosenderOutcome::ALL {
                    for p in Pauli::ALL {
                        c[j.column()][k.row()][p as usize] =
                            infos.iter().map(|&info| maps.cell_fidelity(info, j, k, p)).sum::<f64>()
                                / infos.len() as f64;
                    }
                }
            }
            cells.push(c);
        }
        Ok(Self { cells })
    }

    /// 2-design averages of `table` at every probe point.
    pub fn values(&self, table: &CorrectionTable) -> [f64; PROBE_POINTS] {
        self.column_values(table, &BellOutcome::ALL)
    }

    fn column_values(&self, table: &CorrectionTable, columns: &[BellOutcome]) -> [f64; PROBE_POINTS] {
        let mut out = [0.0; PROBE_POINTS];
        for (v, c) in out.iter_mut().zip(&self.cells) {
            for &j in columns {
                for k in CosenderOutcome::ALL {
                    *v += c[j.column()][k.row()][table.get(j, k) as usize];
                }
            }
        }
        out
    }

    pub fn form(&self, table: &CorrectionTable) -> Result<FidelityForm> {
        FidelityForm::fit(&self.values(table))
    }

    /// Contribution of sender outcome `j` alone; these four forms sum to
    /// [`FormProbe::form`].
    pub fn outcome_form(&self, table: &CorrectionTable, j: BellOutcome) -> Result<FidelityForm> {
        FidelityForm::fit(&self.column_values(table, &[j]))
    }
}

pub fn extract_form(scenario: &Scenario, table: &CorrectionTable) -> Result<FidelityForm> {
    FormProbe::new(scenario)?.form(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BestCondition {
    pub nu_star: f64,
    pub kappa_star: f64,
    pub f_max: f64,
    pub angle_independent: bool,
}

fn snap(x: f64) -> f64 {
    if x.abs() < COEFF_ZERO_TOL {
        0.0
    } else {
        x
    }
}

/// Closed-form maximizer of a [`FidelityForm`].
///
/// With `c·cosκ + d·sinκ ≤ √(c²+d²)` the maximum over κ is at
/// `κ* = atan2(d, c)`, and `b·cos2ν + √(c²+d²)·sin2ν` peaks at
/// `2ν* = atan2(√(c²+d²), b)`.
pub fn best_condition(form: &FidelityForm) -> BestCondition {
    let amplitude = form.amplitude();
    let f_max = form.a + amplitude;
    if amplitude < ANGLE_INDEPENDENT_TOL {
        return BestCondition {
            nu_star: FRAC_PI_4,
            kappa_star: 0.0,
            f_max,
            angle_independent: true,
        };
    }
    let (b, c, d) = (snap(form.b), snap(form.c), snap(form.d));
    let kappa_star = d.atan2(c).rem_euclid(2.0 * PI);
    let nu_star = (0.5 * c.hypot(d).atan2(b)).rem_euclid(PI);
    BestCondition {
        // rem_euclid can round up to the period itself
        nu_star: if nu_star >= PI { 0.0 } else { nu_star },
        kappa_star: if kappa_star >= 2.0 * PI { 0.0 } else { kappa_star },
        f_max,
        angle_independent: false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl QuadratureRule {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < MIN_THETA_NODES || n_phi < MIN_PHI_NODES {
            return Err(Error::TooFewNodes { n_theta, n_phi });
        }
        Ok(Self { n_theta, n_phi })
    }

    pub fn doubled(&self) -> Self {
        Self {
            n_theta: 2 * self.n_theta,
            n_phi: 2 * self.n_phi,
        }
    }

    /// `(θ, φ, weight)` with weights summing to one.
    pub fn nodes(&self) -> Result<Vec<(f64, f64, f64)>> {
        Self::new(self.n_theta, self.n_phi)?;
        let gl = GaussLegendre::new(NonZeroUsize::new(self.n_theta).expect("checked above"));
        let mut out = Vec::with_capacity(self.n_theta * self.n_phi);
        for &(u, w) in gl.as_node_weight_pairs() {
            for m in 0..self.n_phi {
                let phi = 2.0 * PI * m as f64 / self.n_phi as f64;
                // ∫du over [−1, 1] has total weight 2
                out.push((u.clamp(-1.0, 1.0).acos(), phi, w / (2.0 * self.n_phi as f64)));
            }
        }
        Ok(out)
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self { n_theta: 6, n_phi: 12 }
    }
}

/// `(1/4π)∫dφ∫sinθ dθ Σ|⟨ψ|τ⟩|²` by product quadrature over the full
/// teleportation pipeline. Exact for these node counts: the integrand has
/// harmonic degree at most two in each angle.
pub fn average_quadrature(
    scenario: &Scenario,
    table: &CorrectionTable,
    setting: &CosenderSetting,
    rule: QuadratureRule,
) -> Result<f64> {
    rule.nodes()?
        .into_iter()
        .map(|(theta, phi, w)| {
            let info = bloch_state(BlochAngles::new(theta, phi));
            pointwise_fidelity(&info, scenario, setting, table).map(|f| w * f)
        })
        .sum()
}

/// Mean over the six Pauli eigenstates.
pub fn average_two_design(scenario: &Scenario, table: &CorrectionTable, setting: &CosenderSetting) -> Result<f64> {
    let maps = BranchMaps::new(scenario, setting)?;
    let infos = pauli_eigenstates();
    Ok(infos.iter().map(|s| maps.fidelity(amps2(s), table)).sum::<f64>() / infos.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

const MC_CHUNK: usize = 8192;

/// Haar-random information states (`θ = arccos(1−2u)`, uniform φ).
///
/// Samples are drawn in fixed-size chunks, chunk `i` using ChaCha stream `i`
/// of `seed`, so the estimate does not depend on how chunks are scheduled.
pub fn average_monte_carlo(
    scenario: &Scenario,
    table: &CorrectionTable,
    setting: &CosenderSetting,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if samples < MIN_MC_SAMPLES {
        return Err(Error::TooFewSamples(samples));
    }
    let maps = BranchMaps::new(scenario, setting)?;
    let chunks = samples.div_ceil(MC_CHUNK);
    let run_chunk = |i: usize| -> (f64, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let n = MC_CHUNK.min(samples - i * MC_CHUNK);
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let u: f64 = rng.random();
            let phi = 2.0 * PI * rng.random::<f64>();
            let theta = (1.0 - 2.0 * u).clamp(-1.0, 1.0).acos();
            let (sh, ch) = (theta / 2.0).sin_cos();
            let info = [Complex64::new(ch, 0.0), Complex64::from_polar(sh, phi)];
            let f = maps.fidelity(info, table);
            s += f;
            s2 += f * f;
        }
        (s, s2)
    };

    #[cfg(feature = "parallel")]
    let partial: Vec<(f64, f64)> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(run_chunk).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partial: Vec<(f64, f64)> = (0..chunks).map(run_chunk).collect();

    let (sum, sum2) = partial.iter().fold((0.0, 0.0), |(a, b), (s, s2)| (a + s, b + s2));
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum2 - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(MonteCarloEstimate {
        mean,
        stderr: (var / n).sqrt(),
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ProtocolName, StateTypeId};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_8};

    fn scenario(tag: &str, roles: &str) -> Scenario {
        Scenario::new(tag.parse().unwrap(), roles.parse().unwrap())
    }

    fn basis(nu: f64, kappa: f64) -> CosenderSetting {
        CosenderBasis::new(nu, kappa).into()
    }

    #[test]
    fn quadrature_rule_minimums() {
        assert!(QuadratureRule::new(4, 8).is_ok());
        assert_eq!(
            QuadratureRule::new(3, 8),
            Err(Error::TooFewNodes { n_theta: 3, n_phi: 8 })
        );
        assert!(QuadratureRule::new(4, 7).is_err());
        let w: f64 = QuadratureRule::default().nodes().unwrap().iter().map(|n| n.2).sum();
        assert!((w - 1.0).abs() < 1e-14);
    }

    #[test]
    fn quadrature_examples() {
        let ghz = scenario("2b", "A,B,C");
        let t = ProtocolName::Ghz.table();
        let rule = QuadratureRule::default();
        let f = average_quadrature(&ghz, &t, &basis(FRAC_PI_4, 0.0), rule).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        let f = average_quadrature(&ghz, &t, &basis(0.0, 0.0), rule).unwrap();
        assert!((f - 2.0 / 3.0).abs() < 1e-12);

        let ext = scenario("3bI", "B,C,A");
        for (nu, kappa) in [(0.0, 0.0), (0.4, 1.0), (1.3, 4.0), (2.9, 6.0)] {
            let f = average_quadrature(&ext, &ProtocolName::WI.table(), &basis(nu, kappa), rule).unwrap();
            assert!((f - 8.0 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_design_examples() {
        let ghz = scenario("2b", "A,B,C");
        let f = average_two_design(&ghz, &ProtocolName::Ghz.table(), &basis(FRAC_PI_4, 0.0)).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        let f = average_two_design(&ghz, &CorrectionTable::uniform(Pauli::I), &basis(FRAC_PI_4, 0.0)).unwrap();
        assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn monte_carlo_examples() {
        let ghz = scenario("2b", "A,B,C");
        let est = average_monte_carlo(&ghz, &ProtocolName::Ghz.table(), &basis(FRAC_PI_4, 0.0), 100_000, 0).unwrap();
        assert!((est.mean - 1.0).abs() < 1e-12);
        assert!(est.stderr < 1e-12);

        let b1 = scenario("4bI", "A,B,C");
        let est = average_monte_carlo(&b1, &ProtocolName::Ghz.table(), &basis(FRAC_PI_4, 0.0), 100_000, 3).unwrap();
        assert!((est.mean - 2.0 / 3.0).abs() < 5.0 * est.stderr, "{est:?}");
        assert!(est.stderr < 0.002);

        let again = average_monte_carlo(&b1, &ProtocolName::Ghz.table(), &basis(FRAC_PI_4, 0.0), 100_000, 3).unwrap();
        assert_eq!(est, again);

        assert_eq!(
            average_monte_carlo(&b1, &ProtocolName::Ghz.table(), &basis(0.0, 0.0), 999, 0),
            Err(Error::TooFewSamples(999))
        );
    }

    #[test]
    fn extract_form_examples() {
        let close = |f: FidelityForm, want: [f64; 4]| f.max_abs_diff(&FidelityForm::from_array(want)) < 1e-10;
        let ghz = extract_form(&scenario("2b", "A,B,C"), &ProtocolName::Ghz.table()).unwrap();
        assert!(close(ghz, [2.0 / 3.0, 0.0, 1.0 / 3.0, 0.0]), "{ghz:?}");
        let b3 = extract_form(&scenario("4bI", "B,A,C"), &ProtocolName::Ghz.table()).unwrap();
        assert!(close(b3, [7.0 / 12.0, 1.0 / 6.0, 1.0 / 6.0, 0.0]), "{b3:?}");
        let t5 = extract_form(&scenario("5", "B,A,C"), &ProtocolName::Ghz.table()).unwrap();
        assert!(close(t5, [8.0 / 15.0, 2.0 / 15.0, 2.0 / 15.0, 0.0]), "{t5:?}");
    }

    #[test]
    fn outcome_forms_sum_to_total() {
        let s = scenario("4c", "B,A,C");
        let probe = FormProbe::new(&s).unwrap();
        let t: CorrectionTable = "XYZI/ZZXY".parse().unwrap();
        let total = probe.form(&t).unwrap();
        let mut acc = [0.0; 4];
        for j in BellOutcome::ALL {
            let f = probe.outcome_form(&t, j).unwrap();
            for (a, c) in acc.iter_mut().zip(f.coefficients()) {
                *a += c;
            }
        }
        assert!(total.max_abs_diff(&FidelityForm::from_array(acc)) < 1e-12);
    }

    #[test]
    fn fit_rejects_non_form_data() {
        let mut values = [0.5; PROBE_POINTS];
        values[7] = 0.9;
        assert!(matches!(
            FidelityForm::fit(&values),
            Err(Error::ValidationResidualExceeded { .. })
        ));
    }

    #[test]
    fn best_condition_examples() {
        let b = best_condition(&FidelityForm::new(5.0 / 9.0, 0.0, 2.0 / 9.0, 0.0));
        assert!((b.nu_star - FRAC_PI_4).abs() < 1e-12);
        assert_eq!(b.kappa_star, 0.0);
        assert!((b.f_max - 7.0 / 9.0).abs() < 1e-12);
        assert!(!b.angle_independent);

        let b = best_condition(&FidelityForm::new(7.0 / 12.0, 1.0 / 6.0, 1.0 / 6.0, 0.0));
        assert!((b.nu_star - FRAC_PI_8).abs() < 1e-12);
        assert_eq!(b.kappa_star, 0.0);
        assert!((b.f_max - 0.819036).abs() < 1e-6);
        assert!((b.f_max - (7.0 / 12.0 + 2f64.sqrt() / 6.0)).abs() < 1e-12);

        let b = best_condition(&FidelityForm::new(8.0 / 15.0, 2.0 / 15.0, 2.0 / 15.0, 0.0));
        assert!((b.nu_star - FRAC_PI_8).abs() < 1e-12);
        assert!((b.f_max - 0.721895).abs() < 1e-6);

        let b = best_condition(&FidelityForm::new(0.75, 0.0, 0.0, 0.0));
        assert!(b.angle_independent);
        assert_eq!((b.nu_star, b.kappa_star, b.f_max), (FRAC_PI_4, 0.0, 0.75));
    }

    #[test]
    fn best_condition_quadrants() {
        // negative c pushes κ* to π; negative b pushes ν* past π/4
        let b = best_condition(&FidelityForm::new(0.5, -0.1, -0.2, 0.0));
        assert!((b.kappa_star - PI).abs() < 1e-12);
        assert!(b.nu_star > FRAC_PI_4 && b.nu_star < FRAC_PI_2);
        let b = best_condition(&FidelityForm::new(0.5, 0.0, 0.0, -0.2));
        assert!((b.kappa_star - 1.5 * PI).abs() < 1e-12);
        // tiny negative noise in c must not wrap κ* to 2π
        let b = best_condition(&FidelityForm::new(0.5, 0.0, 0.2, -1e-17));
        assert_eq!(b.kappa_star, 0.0);
        // pure b: ν* = 0 or π/2
        assert_eq!(best_condition(&FidelityForm::new(0.5, 0.2, 0.0, 0.0)).nu_star, 0.0);
        assert!((best_condition(&FidelityForm::new(0.5, -0.2, 0.0, 0.0)).nu_star - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn every_state_admits_a_form() {
        for t in StateTypeId::ALL {
            for roles in crate::catalog::RoleAssignment::all() {
                let probe = FormProbe::new(&Scenario::new(t, roles)).unwrap();
                for p in ProtocolName::ALL {
                    probe.form(&p.table()).unwrap();
                }
            }
        }
    }
}
