use nalgebra::DMatrix;
use num::{BigInt, BigRational, ToPrimitive, Zero};
use num_complex::Complex64;
use rayon::prelude::*;

use super::string::PauliString;
use super::sum::PauliSum;
use super::vector::{ExactVector, FloatVector};
use crate::error::{Error, Result};

/// Result of applying an integer operator to an integer vector: Gaussian-integer
/// amplitudes split into real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianVector {
    pub re: ExactVector,
    pub im: ExactVector,
}

fn check_dims(op: usize, v: usize) -> Result<()> {
    if op != v {
        return Err(Error::DimensionMismatch { expected: op, found: v });
    }
    Ok(())
}

/// Exact `S v` with Gaussian-integer output. `S` must have integer coefficients.
pub fn apply_sum_gaussian(sum: &PauliSum, v: &ExactVector) -> Result<GaussianVector> {
    check_dims(sum.n(), v.n())?;
    let coeffs = sum.integer_coefficients()?;
    let mut re = ExactVector::zero(v.n())?;
    let mut im = ExactVector::zero(v.n())?;
    for (c, (_, p)) in coeffs.iter().zip(sum.terms()) {
        for (b, a) in v.amplitudes() {
            let (out, phase) = p.apply_unchecked(b);
            let amp = c * a;
            match phase.exp() {
                0 => re.add_to(out, amp),
                1 => im.add_to(out, amp),
                2 => re.add_to(out, -amp),
                _ => im.add_to(out, -amp),
            }
        }
    }
    Ok(GaussianVector { re, im })
}

/// Exact `S v` for integer `S`. Any imaginary amplitude left after all
/// terms are summed is reported as [`Error::ImaginaryResidual`].
pub fn apply_sum_exact(sum: &PauliSum, v: &ExactVector) -> Result<ExactVector> {
    let out = apply_sum_gaussian(sum, v)?;
    if !out.im.is_zero() {
        return Err(Error::ImaginaryResidual {
            support: out.im.support_len(),
        });
    }
    Ok(out.re)
}

/// `<v|S|v> / <v|v>` as an exact rational. Rational coefficients are allowed.
pub fn expectation_exact(sum: &PauliSum, v: &ExactVector) -> Result<BigRational> {
    check_dims(sum.n(), v.n())?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let (scaled, scale) = sum.integer_scaled();
    let sv = apply_sum_gaussian(&scaled, v)?;
    // <v|Sv> for real v; the imaginary part vanishes for Hermitian S.
    debug_assert!(v.inner(&sv.im)?.is_zero());
    let numer = v.inner(&sv.re)?;
    Ok(BigRational::new(numer, scale * v.norm_sq()))
}

/// Float expectation `<v|S|v> / <v|v>`.
pub fn expectation_float(sum: &PauliSum, v: &FloatVector) -> Result<f64> {
    let norm_sq = v.norm_sq();
    if norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let sv = apply_sum_float(sum, v)?;
    Ok(v.inner(&sv)?.re / norm_sq)
}

/// Matrix-free float `S v`.
pub fn apply_sum_float(sum: &PauliSum, v: &FloatVector) -> Result<FloatVector> {
    check_dims(sum.n(), v.n())?;
    if let Some(i) = v
        .amplitudes()
        .iter()
        .position(|a| !a.re.is_finite() || !a.im.is_finite())
    {
        return Err(Error::NonFinite(i));
    }
    let compiled = CompiledSum::new(sum);
    let mut out = FloatVector::zeros(v.n())?;
    compiled.apply_complex(v.amplitudes(), out.amplitudes_mut());
    Ok(out)
}

#[derive(Clone, Debug)]
struct XGroup {
    x_mask: u64,
    // (z_mask, coefficient * i^phase_exp)
    terms: Vec<(u64, Complex64)>,
}

/// Float form of a [`PauliSum`] with terms grouped by X mask, for repeated
/// matrix-free products.
#[derive(Clone, Debug)]
pub struct CompiledSum {
    n: usize,
    groups: Vec<XGroup>,
    real: bool,
}

const PAR_CHUNK: usize = 1 << 12;

impl CompiledSum {
    pub fn new(sum: &PauliSum) -> Self {
        let mut groups: Vec<XGroup> = Vec::new();
        for (c, p) in sum.terms() {
            let coeff = c.to_f64().unwrap_or(f64::NAN) * p_phase(p);
            match groups.iter_mut().find(|g| g.x_mask == p.x_mask()) {
                Some(g) => g.terms.push((p.z_mask(), coeff)),
                None => groups.push(XGroup {
                    x_mask: p.x_mask(),
                    terms: vec![(p.z_mask(), coeff)],
                }),
            }
        }
        Self {
            n: sum.n(),
            groups,
            real: sum.is_real_symmetric(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Distinct X masks; each gives one off-diagonal band.
    pub fn x_masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.groups.iter().map(|g| g.x_mask)
    }

    /// Matrix element `<col ^ x_mask| S |col>` contributed by the group with `x_mask`.
    #[inline]
    fn group_element(group: &XGroup, col: u64) -> Complex64 {
        group
            .terms
            .iter()
            .map(|&(z, c)| {
                if (col & z).count_ones().is_multiple_of(2) {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Nonzero entries of column `col` as `(row, value)`.
    pub fn column(&self, col: u64) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.groups.iter().filter_map(move |g| {
            let v = Self::group_element(g, col);
            (v != Complex64::zero()).then_some((col ^ g.x_mask, v))
        })
    }

    /// `out = S v` over complex amplitudes. Each output entry is an
    /// independent fixed-order sum, so the result does not depend on the
    /// thread count.
    pub fn apply_complex(&self, v: &[Complex64], out: &mut [Complex64]) {
        assert_eq!(v.len(), self.dim());
        assert_eq!(out.len(), self.dim());
        let kernel = |start: usize, chunk: &mut [Complex64]| {
            for (k, o) in chunk.iter_mut().enumerate() {
                let b = (start + k) as u64;
                let mut acc = Complex64::zero();
                for g in &self.groups {
                    let col = b ^ g.x_mask;
                    acc += Self::group_element(g, col) * v[col as usize];
                }
                *o = acc;
            }
        };
        if out.len() < PAR_CHUNK {
            kernel(0, out);
        } else {
            out.par_chunks_mut(PAR_CHUNK)
                .enumerate()
                .for_each(|(i, chunk)| kernel(i * PAR_CHUNK, chunk));
        }
    }

    /// `out = S v` over real amplitudes. Only valid for real-symmetric operators.
    pub fn apply_real(&self, v: &[f64], out: &mut [f64]) {
        assert!(self.real, "apply_real on an operator with complex matrix elements");
        assert_eq!(v.len(), self.dim());
        assert_eq!(out.len(), self.dim());
        let kernel = |start: usize, chunk: &mut [f64]| {
            for (k, o) in chunk.iter_mut().enumerate() {
                let b = (start + k) as u64;
                let mut acc = 0.0;
                for g in &self.groups {
                    let col = b ^ g.x_mask;
                    let mut elem = 0.0;
                    for &(z, c) in &g.terms {
                        if (col & z).count_ones().is_multiple_of(2) {
                            elem += c.re;
                        } else {
                            elem -= c.re;
                        }
                    }
                    acc += elem * v[col as usize];
                }
                *o = acc;
            }
        };
        if out.len() < PAR_CHUNK {
            kernel(0, out);
        } else {
            out.par_chunks_mut(PAR_CHUNK)
                .enumerate()
                .for_each(|(i, chunk)| kernel(i * PAR_CHUNK, chunk));
        }
    }
}

fn p_phase(p: &PauliString) -> Complex64 {
    super::string::Phase::new(p.phase_exp() as u32).to_complex()
}

/// Default qubit guard for [`to_dense`].
pub const DEFAULT_DENSE_GUARD: usize = 14;

#[derive(Clone, Debug)]
pub struct DenseOperator {
    pub matrix: DMatrix<Complex64>,
    /// Every string has an even Y count and every coefficient is real.
    pub real_symmetric: bool,
}

impl DenseOperator {
    pub fn to_real(&self) -> Option<DMatrix<f64>> {
        self.real_symmetric.then(|| self.matrix.map(|c| c.re))
    }
}

/// Explicit `2^n x 2^n` matrix of `S`.
pub fn to_dense(sum: &PauliSum, max_qubits: usize) -> Result<DenseOperator> {
    if sum.n() > max_qubits {
        return Err(Error::GuardExceeded {
            what: "dense matrix qubits",
            n: sum.n(),
            max: max_qubits,
        });
    }
    let compiled = CompiledSum::new(sum);
    let dim = compiled.dim();
    let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
    for col in 0..dim as u64 {
        for (row, v) in compiled.column(col) {
            matrix[(row as usize, col as usize)] += v;
        }
    }
    Ok(DenseOperator {
        matrix,
        real_symmetric: sum.is_real_symmetric(),
    })
}

/// Exact dense matrix for integer operators, as `(re, im)` entries.
pub fn to_dense_exact(sum: &PauliSum) -> Result<Vec<Vec<(BigInt, BigInt)>>> {
    let dim = 1usize << sum.n();
    let mut m = vec![vec![(BigInt::zero(), BigInt::zero()); dim]; dim];
    for col in 0..dim as u64 {
        let out = apply_sum_gaussian(sum, &ExactVector::basis(sum.n(), col)?)?;
        for (row, a) in out.re.amplitudes() {
            m[row as usize][col as usize].0 = a.clone();
        }
        for (row, a) in out.im.amplitudes() {
            m[row as usize][col as usize].1 = a.clone();
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> PauliSum {
        PauliSum::from_letters([(1, "XX"), (1, "YY")]).unwrap()
    }

    fn b3() -> PauliSum {
        PauliSum::from_letters([(1, "ZXX"), (1, "XZX"), (1, "XXZ"), (1, "ZYY"), (1, "YZY"), (1, "YYZ")]).unwrap()
    }

    fn w3() -> ExactVector {
        ExactVector::from_amplitudes(3, [(1, 1.into()), (2, 1.into()), (4, 1.into())]).unwrap()
    }

    #[test]
    fn b3_on_w_is_four_w() {
        let out = apply_sum_exact(&b3(), &w3()).unwrap();
        assert_eq!(out, w3().scaled(&BigInt::from(4)));
        assert_eq!(
            expectation_exact(&b3(), &w3()).unwrap(),
            BigRational::from_integer(4.into())
        );
    }

    #[test]
    fn zero_and_all_zeros_ket() {
        let zero = ExactVector::zero(3).unwrap();
        assert!(apply_sum_exact(&b3(), &zero).unwrap().is_zero());
        let ket000 = ExactVector::basis(3, 0).unwrap();
        assert!(apply_sum_exact(&b3(), &ket000).unwrap().is_zero());
        assert!(expectation_exact(&b3(), &ket000).unwrap().is_zero());
        assert_eq!(expectation_exact(&b3(), &zero), Err(Error::ZeroVector));
    }

    #[test]
    fn imaginary_residual_is_reported() {
        let xy = PauliSum::from_letters([(1, "XY")]).unwrap();
        let v = ExactVector::basis(2, 0).unwrap();
        assert_eq!(apply_sum_exact(&xy, &v), Err(Error::ImaginaryResidual { support: 1 }));
        let g = apply_sum_gaussian(&xy, &v).unwrap();
        // X|0> (x) Y|0> = i|11>
        assert_eq!(g.im.amplitude(0b11), BigInt::from(1));
    }

    #[test]
    fn exact_path_rejects_rational_and_mismatched() {
        let half = PauliSum::from_text("1/2 XX\n").unwrap();
        let v = ExactVector::basis(2, 0).unwrap();
        assert!(matches!(
            apply_sum_exact(&half, &v),
            Err(Error::NonIntegerCoefficient(_))
        ));
        assert_eq!(
            expectation_exact(&half, &ExactVector::basis(2, 1).unwrap()).unwrap(),
            BigRational::zero()
        );
        assert!(matches!(
            apply_sum_exact(&b3(), &v),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn dense_b2_antidiagonal_block() {
        let d = to_dense(&b2(), DEFAULT_DENSE_GUARD).unwrap();
        assert!(d.real_symmetric);
        let m = d.to_real().unwrap();
        let expected = DMatrix::from_row_slice(4, 4, &[0., 0., 0., 0., 0., 0., 2., 0., 0., 2., 0., 0., 0., 0., 0., 0.]);
        assert_eq!(m, expected);
    }

    #[test]
    fn dense_identity_and_guard() {
        let id = PauliSum::from_letters([(1, "III")]).unwrap();
        let d = to_dense(&id, DEFAULT_DENSE_GUARD).unwrap();
        assert_eq!(d.to_real().unwrap(), DMatrix::<f64>::identity(8, 8));
        let big = PauliSum::from_letters([(1, "IIIII")]).unwrap();
        assert!(matches!(to_dense(&big, 4), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn dense_b3_real_symmetric() {
        let d = to_dense(&b3(), DEFAULT_DENSE_GUARD).unwrap();
        assert!(d.real_symmetric);
        let m = d.to_real().unwrap();
        assert_eq!(m.transpose(), m);
        assert!(d.matrix.iter().all(|c| c.im == 0.0));
        let exact = to_dense_exact(&b3()).unwrap();
        for r in 0..8 {
            for c in 0..8 {
                assert_eq!(m[(r, c)], exact[r][c].0.to_f64().unwrap());
                assert!(exact[r][c].1.is_zero());
            }
        }
    }

    #[test]
    fn float_matches_exact_on_w() {
        let w = w3().to_float_normalized().unwrap();
        let out = apply_sum_float(&b3(), &w).unwrap();
        assert!(out.max_abs_diff(&w.scaled(Complex64::new(4.0, 0.0))) < 1e-12);
        assert!((expectation_float(&b3(), &w).unwrap() - 4.0).abs() < 1e-12);
        let empty = PauliSum::new(3);
        assert_eq!(apply_sum_float(&empty, &w).unwrap(), FloatVector::zeros(3).unwrap());
    }

    #[test]
    fn real_and_complex_kernels_agree() {
        let s = b3();
        let c = CompiledSum::new(&s);
        let v: Vec<f64> = (0..8).map(|i| (i as f64).sin()).collect();
        let vc: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let mut out = vec![0.0; 8];
        let mut outc = vec![Complex64::zero(); 8];
        c.apply_real(&v, &mut out);
        c.apply_complex(&vc, &mut outc);
        for (a, b) in out.iter().zip(&outc) {
            assert!((a - b.re).abs() < 1e-14 && b.im.abs() < 1e-14);
        }
    }
}
