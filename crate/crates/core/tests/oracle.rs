use nalgebra::DVector;
use num::BigRational;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symbell_core::pauli::{apply_sum_float, to_dense, Pauli, PauliString, DEFAULT_DENSE_GUARD};
use symbell_core::{dicke_bell, mabk4, mermin3, FloatVector, PauliSum};

fn random_sum(rng: &mut ChaCha8Rng, n: usize) -> PauliSum {
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let mut sum = PauliSum::new(n);
    for _ in 0..rng.random_range(1..12) {
        let paulis: Vec<Pauli> = (0..n).map(|_| letters[rng.random_range(0..4)]).collect();
        let coeff = BigRational::new(rng.random_range(-9i64..10).into(), rng.random_range(1i64..4).into());
        sum.add(coeff, PauliString::from_paulis(&paulis).unwrap()).unwrap();
    }
    sum
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> FloatVector {
    let amps = (0..1usize << n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    FloatVector::from_amplitudes(n, amps).unwrap()
}

fn check(sum: &PauliSum, v: &FloatVector) -> f64 {
    let dense = to_dense(sum, DEFAULT_DENSE_GUARD).unwrap();
    let expected = &dense.matrix * DVector::from_column_slice(v.amplitudes());
    let got = apply_sum_float(sum, v).unwrap();
    got.amplitudes()
        .iter()
        .zip(expected.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

#[test]
fn matrix_free_matches_dense_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let n = 1 + case % 8;
        let sum = random_sum(&mut rng, n);
        let v = random_vector(&mut rng, n);
        let err = check(&sum, &v);
        assert!(err < 1e-10, "case {case}: n={n} err={err}");
    }
}

#[test]
fn matrix_free_matches_dense_on_named_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ops = vec![mermin3(), mabk4()];
    ops.extend((2..=8).map(|n| dicke_bell(n).unwrap()));
    for op in ops {
        let v = random_vector(&mut rng, op.n());
        assert!(check(&op, &v) < 1e-10);
    }
}
