use symbell_core::spectra::{balanced_weight_lambda, Solver, SpectrumMethod};
use symbell_core::{
    alternating_sum_lambda, conjecture_report, dense_spectrum, dicke_bell, extremal_eigen_iterative, mabk4, mermin3,
    DenseOptions, IterativeOptions,
};

#[test]
fn conjecture_holds_densely_up_to_12() {
    for n in 3..=12 {
        let r = conjecture_report(
            n,
            SpectrumMethod::Dense,
            &DenseOptions::default(),
            &IterativeOptions::default(),
        )
        .unwrap();
        assert!(r.agrees, "n={n}");
        assert!((r.max_abs - r.formula as f64).abs() < 1e-8);
        assert_eq!(r.formula as i128, balanced_weight_lambda(n as u64));
        assert!(
            r.balanced_dicke
                .iter()
                .all(|d| d.in_extremal_eigenspace && d.residual < 1e-8),
            "n={n}"
        );
        assert_eq!(r.spectrum.eigenvalues.as_ref().unwrap().len(), 1 << n);
    }
}

#[test]
fn formula_identity_to_100() {
    for n in 2..=100 {
        assert_eq!(alternating_sum_lambda(n), balanced_weight_lambda(n));
    }
}

#[test]
fn iterative_matches_dense_up_to_12() {
    for n in 2..=12 {
        let b = dicke_bell(n).unwrap();
        let dense = dense_spectrum(&b, &DenseOptions::default()).unwrap();
        let iter = extremal_eigen_iterative(&b, &IterativeOptions::default()).unwrap();
        assert!(iter.converged);
        assert!((dense.max_abs - iter.max_abs).abs() < 1e-7, "n={n}");
    }
    for op in [mermin3(), mabk4()] {
        let dense = dense_spectrum(&op, &DenseOptions::default()).unwrap();
        for solver in [Solver::Lanczos, Solver::Power] {
            let opts = IterativeOptions {
                solver,
                ..Default::default()
            };
            let iter = extremal_eigen_iterative(&op, &opts).unwrap();
            assert!((dense.max_abs - iter.max_abs).abs() < 1e-7, "{solver:?}");
        }
    }
}

#[test]
fn iterative_b14() {
    let r = conjecture_report(
        14,
        SpectrumMethod::Iterative,
        &DenseOptions::default(),
        &IterativeOptions::default(),
    )
    .unwrap();
    assert!(r.converged);
    assert!((r.max_abs - 98.0).abs() < 1e-6);
    assert!(r.agrees);
}
