use std::collections::BTreeMap;

use num::{BigInt, Signed, ToPrimitive, Zero};
use num_complex::Complex64;

use super::string::{check_permutation, permute_index, MAX_QUBITS};
use crate::error::{Error, Result};

/// Unnormalized state with integer amplitudes over the computational basis.
///
/// Only nonzero amplitudes are stored. `norm_sq` is kept equal to the sum
/// of squared amplitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactVector {
    n: usize,
    amplitudes: BTreeMap<u64, BigInt>,
    norm_sq: BigInt,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
    }
    Ok(())
}

fn check_index(b: u64, n: usize) -> Result<()> {
    if n < 64 && b >> n != 0 {
        return Err(Error::IndexOutOfRange { index: b, n });
    }
    Ok(())
}

impl ExactVector {
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            amplitudes: BTreeMap::new(),
            norm_sq: BigInt::zero(),
        })
    }

    pub fn basis(n: usize, b: u64) -> Result<Self> {
        Self::from_amplitudes(n, [(b, BigInt::from(1))])
    }

    /// Sums repeated indices; zero results are dropped.
    pub fn from_amplitudes<I>(n: usize, amplitudes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, BigInt)>,
    {
        let mut v = Self::zero(n)?;
        for (b, a) in amplitudes {
            check_index(b, n)?;
            v.add_to(b, a);
        }
        Ok(v)
    }

    pub(crate) fn add_to(&mut self, b: u64, a: BigInt) {
        if a.is_zero() {
            return;
        }
        let entry = self.amplitudes.entry(b).or_insert_with(BigInt::zero);
        self.norm_sq -= &*entry * &*entry;
        *entry += a;
        if entry.is_zero() {
            self.amplitudes.remove(&b);
        } else {
            self.norm_sq += &*entry * &*entry;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn norm_sq(&self) -> &BigInt {
        &self.norm_sq
    }

    pub fn amplitude(&self, b: u64) -> BigInt {
        self.amplitudes.get(&b).cloned().unwrap_or_default()
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.amplitudes.iter().map(|(&b, a)| (b, a))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.amplitudes.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn inner(&self, other: &ExactVector) -> Result<BigInt> {
        self.check_same_n(other.n)?;
        let (small, large) = if self.support_len() <= other.support_len() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small
            .amplitudes
            .iter()
            .filter_map(|(b, a)| large.amplitudes.get(b).map(|c| a * c))
            .sum())
    }

    pub fn scaled(&self, k: &BigInt) -> ExactVector {
        let mut out = ExactVector::zero(self.n).expect("valid n");
        for (&b, a) in &self.amplitudes {
            out.add_to(b, a * k);
        }
        out
    }

    /// `self - other`.
    pub fn sub(&self, other: &ExactVector) -> Result<ExactVector> {
        self.check_same_n(other.n)?;
        let mut out = self.clone();
        for (&b, a) in &other.amplitudes {
            out.add_to(b, -a);
        }
        Ok(out)
    }

    pub fn permute(&self, perm: &[usize]) -> Result<ExactVector> {
        check_permutation(perm, self.n)?;
        ExactVector::from_amplitudes(
            self.n,
            self.amplitudes
                .iter()
                .map(|(&b, a)| (permute_index(b, self.n, perm), a.clone())),
        )
    }

    /// Recomputes `norm_sq` from the stored amplitudes.
    pub fn recomputed_norm_sq(&self) -> BigInt {
        self.amplitudes.values().map(|a| a * a).sum()
    }

    /// Float copy, normalized to unit length unless the vector is zero.
    pub fn to_float_normalized(&self) -> Result<FloatVector> {
        let mut v = FloatVector::zeros(self.n)?;
        let norm = self.norm_sq.to_f64().unwrap_or(f64::INFINITY).sqrt();
        let norm = if norm == 0.0 { 1.0 } else { norm };
        for (&b, a) in &self.amplitudes {
            v.amps[b as usize] = Complex64::new(a.to_f64().unwrap_or(f64::NAN) / norm, 0.0);
        }
        Ok(v)
    }

    /// Parity of the Hamming weights present in the support: bit 0 for even, bit 1 for odd.
    pub fn parity_classes(&self) -> u8 {
        self.amplitudes.keys().fold(0, |acc, b| acc | 1 << (b.count_ones() % 2))
    }

    pub fn max_abs_amplitude(&self) -> BigInt {
        self.amplitudes.values().map(|a| a.abs()).max().unwrap_or_default()
    }

    fn check_same_n(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            });
        }
        Ok(())
    }
}

/// Largest qubit count for dense float vectors.
pub const MAX_DENSE_QUBITS: usize = 30;

/// Dense complex amplitudes over all `2^n` basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl FloatVector {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_QUBITS {
            return Err(Error::GuardExceeded {
                what: "dense vector qubits",
                n,
                max: MAX_DENSE_QUBITS,
            });
        }
        Ok(Self {
            n,
            amps: vec![Complex64::new(0.0, 0.0); 1 << n],
        })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_QUBITS {
            return Err(Error::GuardExceeded {
                what: "dense vector qubits",
                n,
                max: MAX_DENSE_QUBITS,
            });
        }
        if amps.len() != 1 << n {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes for {n} qubits",
                amps.len()
            )));
        }
        if let Some(i) = amps.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { n, amps })
    }

    pub fn basis(n: usize, b: u64) -> Result<Self> {
        let mut v = Self::zeros(n)?;
        check_index(b, n)?;
        v.amps[b as usize] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Result<FloatVector> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a / norm).collect(),
        })
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &FloatVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scaled(&self, k: Complex64) -> FloatVector {
        Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a * k).collect(),
        }
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &FloatVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_tracks_amplitudes() {
        let mut v = ExactVector::from_amplitudes(3, [(1, 2.into()), (2, BigInt::from(-3)), (1, 1.into())]).unwrap();
        assert_eq!(v.amplitude(1), BigInt::from(3));
        assert_eq!(*v.norm_sq(), BigInt::from(18));
        v.add_to(1, BigInt::from(-3));
        assert_eq!(v.support_len(), 1);
        assert_eq!(*v.norm_sq(), BigInt::from(9));
        assert_eq!(v.recomputed_norm_sq(), *v.norm_sq());
    }

    #[test]
    fn index_bounds() {
        assert_eq!(ExactVector::basis(3, 8), Err(Error::IndexOutOfRange { index: 8, n: 3 }));
        assert!(FloatVector::basis(3, 9).is_err());
        assert!(FloatVector::zeros(31).is_err());
    }

    #[test]
    fn inner_products() {
        let a = ExactVector::from_amplitudes(2, [(1, 1.into()), (2, 1.into())]).unwrap();
        let b = ExactVector::from_amplitudes(2, [(2, 3.into()), (3, 1.into())]).unwrap();
        assert_eq!(a.inner(&b).unwrap(), BigInt::from(3));
        let c = ExactVector::basis(3, 0).unwrap();
        assert!(a.inner(&c).is_err());
    }

    #[test]
    fn float_checks() {
        let bad = vec![Complex64::new(f64::NAN, 0.0), Complex64::new(0.0, 0.0)];
        assert_eq!(FloatVector::from_amplitudes(1, bad), Err(Error::NonFinite(0)));
        let v = ExactVector::from_amplitudes(2, [(1, 1.into()), (2, 1.into())])
            .unwrap()
            .to_float_normalized()
            .unwrap();
        assert!(v.is_unit(1e-12));
        assert!(FloatVector::zeros(2).unwrap().normalized().is_err());
    }
}
