//! Qubit registers: encoding, isometry compilation, gates and circuits.

mod compile;
mod formats;
mod matrix;
mod state;

use thiserror::Error;

use crate::eval::EvalError;

pub use compile::{case_construct, compile_isometry, run_circuit, CircuitRun, PlacedGate};
pub use formats::{parse_circuit, parse_complex, parse_matrix, print_matrix};
pub use matrix::{gate, matrix_apply, GateMatrix, GATE_NAMES};
pub use state::{basis_index, basis_term, decode, encode, encode_amplitudes, qubits_for_dim, StateVector};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum FrontendError {
    #[error("dimension {0} is not a power of two of at least 2")]
    DimensionNotPowerOfTwo(usize),
    #[error("expected norm 1, found {0}")]
    NormViolation(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not an isometry")]
    NotAnIsometry,
    #[error("`{0}` is not a basis-state encoding of the expected width")]
    MalformedEncoding(String),
    #[error("expected {expected} images, found {found}")]
    WrongImageCount { expected: usize, found: usize },
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("gate acts on {expected} qubits, {found} wires given")]
    WrongArity { expected: usize, found: usize },
    #[error("wire {qubit} is outside a {width}-qubit register")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("wire {0} is used twice by one gate")]
    RepeatedQubit(usize),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
