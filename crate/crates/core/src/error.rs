use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Pauli letter {letter:?} at position {position}")]
    InvalidLetter { letter: char, position: usize },
    #[error("empty Pauli string")]
    EmptyString,
    #[error("{n} qubits exceeds the limit of {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("basis index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: u64, n: usize },
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Pauli string with phase i^{phase_exp} and {y_count} Y factors is not Hermitian")]
    NonHermitian { phase_exp: u8, y_count: u32 },
    #[error("coefficient {0} is not an integer")]
    NonIntegerCoefficient(String),
    #[error("exact application left imaginary amplitudes on {support} basis states")]
    ImaginaryResidual { support: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),
    #[error("{what}: {n} exceeds the configured guard of {max}")]
    GuardExceeded { what: &'static str, n: usize, max: usize },
    #[error("invalid Dicke label: weight {m} for {n} qubits")]
    InvalidDickeLabel { n: usize, m: usize },
    #[error("invalid observable: {0}")]
    InvalidObservable(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("group {group} has {found} coefficients, expected {expected}")]
    Arity {
        group: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid operator text on line {line}: {message}")]
    OperatorText { line: usize, message: String },
    #[error("operator is not permutation invariant")]
    NotPermutationInvariant,
    #[error("operator is not Hermitian")]
    NotHermitianMatrix,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
