//! One full three-party teleportation run.
//!
//! The information qubit is attached as qubit 0 of a four-qubit composite
//! `info ⊗ |resource⟩_{ABC}`. The sender projects `(info, sender)` onto a Bell
//! state, the co-sender projects their qubit onto `|μ±⟩`, and the receiver
//! applies the Pauli correction for `(j, k)`. Every branch is kept
//! unnormalized so that its squared norm is the branch probability.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{CorrectionTable, Scenario};
use crate::error::{Error, Result};
use crate::measurement::{bell_state, BellOutcome, CosenderBasis, CosenderOutcome};
use crate::qcore::{Operator, Pauli, StateVector, ZERO};

/// Probabilities at or below this are treated as impossible branches.
pub const ZERO_PROBABILITY: f64 = 1e-24;

/// Which basis the co-sender measures in, possibly depending on `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CosenderSetting {
    Shared(CosenderBasis),
    PerOutcome([CosenderBasis; 4]),
}

impl CosenderSetting {
    pub fn basis_for(&self, j: BellOutcome) -> CosenderBasis {
        match self {
            CosenderSetting::Shared(b) => *b,
            CosenderSetting::PerOutcome(bs) => bs[j.column()],
        }
    }
}

impl From<CosenderBasis> for CosenderSetting {
    fn from(b: CosenderBasis) -> Self {
        CosenderSetting::Shared(b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeRecord {
    pub j: BellOutcome,
    pub k: CosenderOutcome,
    /// Receiver's corrected, unnormalized state.
    pub tau: StateVector,
    pub probability: f64,
    /// Fidelity of the normalized branch state; 0 for impossible branches.
    pub branch_fidelity: f64,
}

impl OutcomeRecord {
    /// `|⟨ψ|τ̃⟩|²`, the branch's contribution to the pointwise fidelity.
    pub fn weighted_fidelity(&self) -> f64 {
        self.probability * self.branch_fidelity
    }
}

pub fn assemble(info: &StateVector, scenario: &Scenario) -> Result<StateVector> {
    if info.n_qubits() != 1 || !info.is_normalized() {
        return Err(Error::InfoNotNormalized);
    }
    info.tensor(&scenario.state.canonical_state())
}

/// Sender and co-sender measurement for branch `(j, k)`, before correction.
/// Returns the receiver's unnormalized single-qubit state.
fn measured_branch(
    composite: &StateVector,
    scenario: &Scenario,
    basis: CosenderBasis,
    j: BellOutcome,
    k: CosenderOutcome,
) -> Result<StateVector> {
    let roles = scenario.roles;
    let sender = roles.sender().composite_qubit();
    let after_bell = composite.project_pair(&bell_state(j), (0, sender))?;
    // remaining qubits keep their composite order
    let cosender = roles.cosender().composite_qubit();
    let pos = (1..=3)
        .filter(|&q| q != sender)
        .position(|q| q == cosender)
        .expect("co-sender differs from sender");
    after_bell.project_single(&basis.state(k), pos)
}

pub fn run_branch(
    info: &StateVector,
    scenario: &Scenario,
    setting: &CosenderSetting,
    table: &CorrectionTable,
    j: BellOutcome,
    k: CosenderOutcome,
) -> Result<OutcomeRecord> {
    let composite = assemble(info, scenario)?;
    branch_record(&composite, info, scenario, setting, table, j, k)
}

fn branch_record(
    composite: &StateVector,
    info: &StateVector,
    scenario: &Scenario,
    setting: &CosenderSetting,
    table: &CorrectionTable,
    j: BellOutcome,
    k: CosenderOutcome,
) -> Result<OutcomeRecord> {
    let raw = measured_branch(composite, scenario, setting.basis_for(j), j, k)?;
    let tau = raw.apply_single(&table.get(j, k).matrix(), 0)?;
    let probability = tau.norm2();
    let overlap = info.inner(&tau)?.norm_sqr();
    let branch_fidelity = if probability > ZERO_PROBABILITY {
        (overlap / probability).clamp(0.0, 1.0)
    } else {
        0.0
    };
    Ok(OutcomeRecord {
        j,
        k,
        tau,
        probability,
        branch_fidelity,
    })
}

/// All eight `(j, k)` branches, ordered by `j` then `k`.
pub fn run_all(
    info: &StateVector,
    scenario: &Scenario,
    setting: &CosenderSetting,
    table: &CorrectionTable,
) -> Result<Vec<OutcomeRecord>> {
    let composite = assemble(info, scenario)?;
    let mut out = Vec::with_capacity(8);
    for j in BellOutcome::ALL {
        for k in CosenderOutcome::ALL {
            out.push(branch_record(&composite, info, scenario, setting, table, j, k)?);
        }
    }
    Ok(out)
}

/// `Σ_{j,k} |⟨ψ|τ̃_{jk}⟩|²` for one information state.
pub fn pointwise_fidelity(
    info: &StateVector,
    scenario: &Scenario,
    setting: &CosenderSetting,
    table: &CorrectionTable,
) -> Result<f64> {
    run_all(info, scenario, setting, table)?
        .iter()
        .map(|r| info.inner(&r.tau).map(|o| o.norm_sqr()))
        .sum()
}

/// The uncorrected branch maps `info ↦ τ̃_{jk}` as 2×2 matrices.
///
/// Every branch is linear in the information state, so two pipeline runs
/// (on `|0⟩` and `|1⟩`) fix all eight maps.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchMaps {
    maps: [[Operator; 2]; 4],
}

impl BranchMaps {
    pub fn new(scenario: &Scenario, setting: &CosenderSetting) -> Result<Self> {
        let zero = StateVector::basis(1, 0)?;
        let one = StateVector::basis(1, 1)?;
        let c0 = assemble(&zero, scenario)?;
        let c1 = assemble(&one, scenario)?;
        let mut maps = [[Operator([[ZERO; 2]; 2]); 2]; 4];
        for j in BellOutcome::ALL {
            for k in CosenderOutcome::ALL {
                let basis = setting.basis_for(j);
                let col0 = measured_branch(&c0, scenario, basis, j, k)?;
                let col1 = measured_branch(&c1, scenario, basis, j, k)?;
                maps[j.column()][k.row()] = Operator([[col0.amp(0), col1.amp(0)], [col0.amp(1), col1.amp(1)]]);
            }
        }
        Ok(Self { maps })
    }

    pub fn map(&self, j: BellOutcome, k: CosenderOutcome) -> &Operator {
        &self.maps[j.column()][k.row()]
    }

    /// `|⟨ψ|P·M_{jk}|ψ⟩|²` for a single cell.
    pub fn cell_fidelity(&self, info: [Complex64; 2], j: BellOutcome, k: CosenderOutcome, p: Pauli) -> f64 {
        let tau = p.matrix().apply(self.map(j, k).apply(info));
        (info[0].conj() * tau[0] + info[1].conj() * tau[1]).norm_sqr()
    }

    pub fn fidelity(&self, info: [Complex64; 2], table: &CorrectionTable) -> f64 {
        let mut total = 0.0;
        for j in BellOutcome::ALL {
            for k in CosenderOutcome::ALL {
                total += self.cell_fidelity(info, j, k, table.get(j, k));
            }
        }
        total
    }

    /// Total probability `Σ ‖M_{jk}ψ‖²`.
    pub fn probability(&self, info: [Complex64; 2]) -> f64 {
        self.maps
            .iter()
            .flatten()
            .map(|m| m.apply(info).iter().map(|a| a.norm_sqr()).sum::<f64>())
            .sum()
    }
}

pub(crate) fn amps2(s: &StateVector) -> [Complex64; 2] {
    [s.amp(0), s.amp(1)]
}
