use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::pauli::{apply_sum_gaussian, ExactVector, PauliSum};

/// Outcome of an exact eigenvector test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    pub is_eigen: bool,
    /// Set iff `is_eigen`.
    pub eigenvalue: Option<BigRational>,
    /// `<v|S|v> / <v|v>`, the only candidate eigenvalue.
    pub rayleigh: BigRational,
    /// `|| q S v - p v ||^2` for `rayleigh = p / q` in lowest terms, imaginary
    /// part included. Zero iff `v` is an eigenvector.
    pub residual_norm_sq: BigInt,
}

/// Decides exactly whether `v` is an eigenvector of an integer operator.
pub fn eigencheck_exact(sum: &PauliSum, v: &ExactVector) -> Result<EigenReport> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let sv = apply_sum_gaussian(sum, v)?;
    let rayleigh = BigRational::new(v.inner(&sv.re)?, v.norm_sq().clone());
    let residual = sv.re.scaled(rayleigh.denom()).sub(&v.scaled(rayleigh.numer()))?;
    let residual_norm_sq = residual.norm_sq() + sv.im.scaled(rayleigh.denom()).norm_sq();
    let is_eigen = residual_norm_sq.is_zero();
    Ok(EigenReport {
        is_eigen,
        eigenvalue: is_eigen.then(|| rayleigh.clone()),
        rayleigh,
        residual_norm_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::dicke_bell;
    use crate::dicke::{dicke, DickeLabel};
    use crate::spectra::dicke_eigenvalue;

    #[test]
    fn dicke_states_are_eigenvectors() {
        for n in 2..=9 {
            let b = dicke_bell(n).unwrap();
            for m in 1..n {
                let r = eigencheck_exact(&b, &dicke(DickeLabel::new(m, n).unwrap()).unwrap()).unwrap();
                assert!(r.is_eigen, "m={m} n={n}");
                assert!(r.residual_norm_sq.is_zero());
                let expected = dicke_eigenvalue(m as u64, n as u64);
                assert_eq!(r.eigenvalue, Some(BigRational::from_integer(expected.into())));
            }
        }
    }

    #[test]
    fn zero_ket_and_single_basis_state() {
        let b3 = dicke_bell(3).unwrap();
        let r = eigencheck_exact(&b3, &ExactVector::basis(3, 0).unwrap()).unwrap();
        assert!(r.is_eigen);
        assert_eq!(r.eigenvalue, Some(BigRational::zero()));
        let r = eigencheck_exact(&b3, &ExactVector::basis(3, 1).unwrap()).unwrap();
        assert!(!r.is_eigen);
        assert_eq!(r.eigenvalue, None);
        // B_3|001> = 2|010> + 2|100>
        assert_eq!(r.residual_norm_sq, BigInt::from(8));
    }

    #[test]
    fn imaginary_output_is_not_an_eigenvector() {
        let xy = PauliSum::from_letters([(1, "XY")]).unwrap();
        let r = eigencheck_exact(&xy, &ExactVector::basis(2, 0).unwrap()).unwrap();
        assert!(!r.is_eigen);
        assert_eq!(r.residual_norm_sq, BigInt::from(1));
    }

    #[test]
    fn errors() {
        let b3 = dicke_bell(3).unwrap();
        assert_eq!(
            eigencheck_exact(&b3, &ExactVector::zero(3).unwrap()),
            Err(Error::ZeroVector)
        );
        let half = PauliSum::from_text("1/2 ZZZ\n").unwrap();
        assert!(matches!(
            eigencheck_exact(&half, &ExactVector::basis(3, 0).unwrap()),
            Err(Error::NonIntegerCoefficient(_))
        ));
    }
}
