use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate qubit name `{0}`")]
    DuplicateQubit(String),
    #[error("qubit index {index} out of range for a {width}-qubit circuit")]
    QubitOutOfRange { index: usize, width: usize },
    #[error("gate operands overlap on qubit {0}")]
    OverlappingOperands(usize),
    #[error("basis-level circuits only admit single-qubit gates and CX, got {0}")]
    NotBasisGate(String),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("angle must be finite")]
    NonFiniteAngle,
    #[error("cannot lower a gate with {0} controls; at most 5 are supported")]
    ArityTooLarge(usize),
    #[error("lowering a {0}-control X needs a spare qubit but the gate touches every wire")]
    NoSpareQubit(usize),
    #[error("operator does not square to the identity")]
    NotInvolution,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("insufficient scratch: need {needed} wires, got {available}")]
    InsufficientScratch { needed: usize, available: usize },
    #[error("gate {index} ({gate}) is not classical; use dense simulation")]
    NonClassicalGate { index: usize, gate: String },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("{qubits} qubits exceeds the dense simulation limit of {limit}")]
    TooManyQubits { qubits: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
