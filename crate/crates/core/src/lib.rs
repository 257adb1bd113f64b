//! Permutation-invariant Bell operators for n-qubit systems.
//!
//! The crate builds the Dicke-state Bell operator `B_n` together with the
//! W-state, Mermin and MABK operators, checks Dicke eigenstates exactly,
//! computes dense and matrix-free spectra, and evaluates local
//! (deterministic) bounds of the underlying Bell polynomials.

pub mod bell;
pub mod bound;
pub mod dicke;
pub mod error;
pub mod notation;
pub mod pauli;
pub mod spectra;

pub use bell::{compile_pi, dicke_bell, mabk4, mermin3, w_bell, ObservableSpec};
pub use bound::{local_bound_bruteforce, local_bound_symmetric, LocalBound, SettingPolynomial};
pub use dicke::{dicke, ghz, w_state, DickeLabel};
pub use error::{Error, Result};
pub use notation::CoefficientGroups;
pub use pauli::{ExactVector, FloatVector, PauliString, PauliSum};
pub use spectra::{
    alternating_sum_lambda, conjecture_report, dense_spectrum, eigencheck_exact, extremal_eigen_iterative,
    ConjectureReport, DenseOptions, EigenReport, IterativeOptions, SpectralReport,
};
