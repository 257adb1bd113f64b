//! Pauli strings, weighted sums of them, and their action on state vectors.
//!
//! Basis convention: qubit 1 (the leftmost ket symbol) is the most
//! significant bit of a basis index, so `|001>` is index 1.

mod apply;
mod string;
mod sum;
mod vector;

pub use apply::{
    apply_sum_exact, apply_sum_float, apply_sum_gaussian, expectation_exact, expectation_float, to_dense,
    to_dense_exact, CompiledSum, DenseOperator, GaussianVector, DEFAULT_DENSE_GUARD,
};
pub use string::{Pauli, PauliString, Phase, MAX_QUBITS};
pub use sum::{parse_rational, PauliSum};
pub use vector::{ExactVector, FloatVector, MAX_DENSE_QUBITS};

/// Formats a basis index as a ket label, qubit 1 first (`1, 3` gives `"001"`).
pub fn ket_label(b: u64, n: usize) -> String {
    (0..n)
        .map(|q| if b >> (n - 1 - q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`ket_label`].
pub fn parse_ket(label: &str) -> Option<(u64, usize)> {
    let label = label.trim_start_matches('|').trim_end_matches('>');
    if label.is_empty() || label.len() > MAX_QUBITS {
        return None;
    }
    label
        .chars()
        .try_fold(0u64, |acc, c| match c {
            '0' => Some(acc << 1),
            '1' => Some(acc << 1 | 1),
            _ => None,
        })
        .map(|b| (b, label.len()))
}
