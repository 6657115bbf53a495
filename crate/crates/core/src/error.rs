use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..=4")]
    QubitCount(usize),

    #[error("{got} amplitudes supplied, a {n_qubits}-qubit state needs {expected}")]
    LengthMismatch {
        n_qubits: usize,
        expected: usize,
        got: usize,
    },

    #[error("amplitude {0} is not finite")]
    NonFinite(usize),

    #[error("tensor product of {0} and {1} qubits exceeds the 4-qubit limit")]
    DimensionOverflow(usize, usize),

    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),

    #[error("qubit index {index} out of range for a {n_qubits}-qubit state")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit index {0} used twice")]
    QubitCollision(usize),

    #[error("projection needs at least {needed} qubits, state has {got}")]
    TooFewQubits { needed: usize, got: usize },

    #[error("measurement bra is not normalized")]
    BraNotNormalized,

    #[error("information state is not a normalized single qubit")]
    InfoNotNormalized,

    #[error("unknown state type `{0}`")]
    UnknownStateTag(String),

    #[error("unknown protocol `{0}`")]
    UnknownProtocol(String),

    #[error("unknown party `{0}`")]
    UnknownParty(String),

    #[error("invalid role assignment: {0}")]
    InvalidRoles(String),

    #[error("unknown Pauli label `{0}`")]
    UnknownPauli(String),

    #[error("correction table code {0} outside 0..65536")]
    TableCode(u32),

    #[error("quadrature needs at least 4 θ nodes and 8 φ nodes, got {n_theta}×{n_phi}")]
    TooFewNodes { n_theta: usize, n_phi: usize },

    #[error("Monte Carlo needs at least 1000 samples, got {0}")]
    TooFewSamples(usize),

    #[error("per-outcome co-sender bases do not admit a four-term fidelity form")]
    PerOutcomeBasis,

    #[error("fidelity form validation residual {residual:e} exceeds {tolerance:e}")]
    ValidationResidualExceeded { residual: f64, tolerance: f64 },

    #[error("grid scan disagrees with the analytic optimum: {0}")]
    GridMismatch(String),

    #[error("report: {0}")]
    Report(String),
}
