//! Exact eigenstate checks, dense and matrix-free spectra, and the
//! extremal-eigenvalue formula for `B_n`.

mod conjecture;
mod dense;
mod exact;
mod iterative;
mod report;

pub use conjecture::{conjecture_report, ConjectureMembership, ConjectureReport};
pub use dense::{dense_spectrum, DenseOptions, DEFAULT_DENSE_SPECTRUM_GUARD};
pub use exact::{eigencheck_exact, EigenReport};
pub use iterative::{extremal_eigen_iterative, IterativeOptions, Solver};
pub use report::{DickeMembership, MembershipMetric, SpectralReport, SpectrumMethod};

/// `2 * sum_{j=0}^{n-2} C(n-j, 2) (-1)^j`.
pub fn alternating_sum_lambda(n: u64) -> i128 {
    assert!(n >= 2, "alternating_sum_lambda needs n >= 2");
    let sum: i128 = (0..=n - 2)
        .map(|j| {
            let k = (n - j) as i128;
            let c = k * (k - 1) / 2;
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum();
    2 * sum
}

/// `2 * floor(n/2) * ceil(n/2)`, the largest `|2 m (n - m)|` over weights `m`.
pub fn balanced_weight_lambda(n: u64) -> i128 {
    2 * (n / 2) as i128 * n.div_ceil(2) as i128
}

/// `(-1)^{m-1} 2 m (n - m)`, the `B_n` eigenvalue of `|m,n>`.
pub fn dicke_eigenvalue(m: u64, n: u64) -> i128 {
    let mag = 2 * m as i128 * (n as i128 - m as i128);
    if m % 2 == 1 {
        mag
    } else {
        -mag
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(alternating_sum_lambda(3), 4);
        assert_eq!(alternating_sum_lambda(10), 50);
        assert_eq!(alternating_sum_lambda(2), 2);
        assert_eq!(alternating_sum_lambda(11), 60);
    }

    #[test]
    fn formula_matches_closed_form() {
        for n in 2..=100 {
            assert_eq!(alternating_sum_lambda(n), balanced_weight_lambda(n), "n={n}");
            let best = (1..n).map(|m| dicke_eigenvalue(m, n).abs()).max().unwrap();
            assert_eq!(best, balanced_weight_lambda(n));
        }
    }
}
