//! Fixtures shared by the benchmarks in `benches/`.

use symbell_core::pauli::CompiledSum;
use symbell_core::{dicke_bell, Result};

/// Deterministic dense vector with no special symmetry.
pub fn test_vector(n: usize) -> Vec<f64> {
    (0..1usize << n)
        .map(|i| ((i * 2654435761) % 1000) as f64 / 1000.0 - 0.5)
        .collect()
}

pub fn compiled_b(n: usize) -> Result<CompiledSum> {
    Ok(CompiledSum::new(&dicke_bell(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures() {
        let v = test_vector(4);
        assert_eq!(v.len(), 16);
        assert!(v.iter().all(|x| x.abs() <= 0.5));
        assert_eq!(compiled_b(5).unwrap().dim(), 32);
    }
}
