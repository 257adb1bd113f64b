use num::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::dense::{dense_spectrum, DenseOptions};
use super::exact::eigencheck_exact;
use super::iterative::{extremal_eigen_iterative, IterativeOptions};
use super::report::{SpectralReport, SpectrumMethod};
use super::{alternating_sum_lambda, balanced_weight_lambda};
use crate::bell::dicke_bell;
use crate::dicke::{dicke, DickeLabel};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureMembership {
    pub m: usize,
    /// Exact `B_n` eigenvalue of `|m,n>`.
    pub eigenvalue: i64,
    pub residual: f64,
    pub in_extremal_eigenspace: bool,
}

/// Spectrum of `B_n` set against the alternating-sum formula.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub method: SpectrumMethod,
    pub max_abs: f64,
    pub formula: i64,
    pub closed_form: i64,
    pub tolerance: f64,
    pub agrees: bool,
    /// Weights `floor(n/2)` and `ceil(n/2)` (one entry when equal).
    pub balanced_dicke: Vec<ConjectureMembership>,
    pub converged: bool,
    pub spectrum: SpectralReport,
}

pub fn conjecture_report(
    n: usize,
    method: SpectrumMethod,
    dense: &DenseOptions,
    iterative: &IterativeOptions,
) -> Result<ConjectureReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("conjecture needs n >= 2, got {n}")));
    }
    let b = dicke_bell(n)?;
    let (spectrum, tolerance) = match method {
        SpectrumMethod::Dense => (dense_spectrum(&b, dense)?, dense.eigen_tol),
        SpectrumMethod::Iterative => {
            let r = extremal_eigen_iterative(&b, iterative)?;
            // eigenvalue accuracy is relative for the iterative path
            let tol = (iterative.tol * r.max_abs).max(1e-7);
            (r, tol)
        }
    };
    let spectrum = spectrum.with_operator_name(format!("dicke-bell:{n}"));
    let formula = alternating_sum_lambda(n as u64);
    let closed_form = balanced_weight_lambda(n as u64);
    let agrees = formula == closed_form && (spectrum.max_abs - formula as f64).abs() <= tolerance;

    let mut weights = vec![n / 2, n.div_ceil(2)];
    weights.dedup();
    let mut balanced_dicke = Vec::new();
    for m in weights {
        let report = eigencheck_exact(&b, &dicke(DickeLabel::new(m, n)?)?)?;
        let eigenvalue = report
            .eigenvalue
            .and_then(|e| e.to_integer().to_i64())
            .ok_or_else(|| Error::InvalidArgument(format!("|{m},{n}> is not an eigenvector")))?;
        let (residual, in_extremal_eigenspace) = match spectrum.membership(m) {
            Some(d) => (d.residual, d.in_extremal_eigenspace),
            None => (f64::NAN, false),
        };
        balanced_dicke.push(ConjectureMembership {
            m,
            eigenvalue,
            residual,
            in_extremal_eigenspace,
        });
    }
    Ok(ConjectureReport {
        n,
        method,
        max_abs: spectrum.max_abs,
        formula: formula as i64,
        closed_form: closed_form as i64,
        tolerance,
        agrees,
        balanced_dicke,
        converged: spectrum.converged,
        spectrum,
    })
}
