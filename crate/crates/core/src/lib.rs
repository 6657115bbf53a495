//! Simulation and optimization of three-party quantum teleportation.
//!
//! A sender Bell-measures an information qubit together with their share of
//! a three-qubit resource state, a co-sender measures in a `(ν, κ)` basis, and
//! a receiver applies a Pauli correction chosen from a 2×4 table. This crate
//! computes branch records, Bloch-averaged fidelities (three independent
//! ways), the closed-form dependence on `(ν, κ)` and its maximum, and runs an
//! exhaustive search over all 4⁸ correction tables.

pub mod catalog;
pub mod error;
pub mod fidelity;
pub mod measurement;
pub mod protocol;
pub mod qcore;
pub mod report;
pub mod search;

pub use catalog::{
    canonical_state, named_protocol, scenario_registry, CorrectionTable, Family, Party, ProtocolName, ReferenceResult,
    RoleAssignment, Scenario, StateTypeId,
};
pub use error::{Error, Result};
pub use fidelity::{
    average_monte_carlo, average_quadrature, average_two_design, best_condition, extract_form, BestCondition,
    FidelityForm, QuadratureRule,
};
pub use measurement::{bell_state, bloch_state, cosender_states, BellOutcome, BlochAngles, CosenderBasis};
pub use protocol::{assemble, pointwise_fidelity, run_all, run_branch, CosenderSetting, OutcomeRecord};
pub use qcore::{Pauli, StateVector};
pub use search::{optimize_angles, protocol_family, search_tables, SearchReport};
