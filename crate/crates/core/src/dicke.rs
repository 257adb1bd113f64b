//! Dicke, W and GHZ states.

use num::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{ExactVector, FloatVector, MAX_QUBITS};

/// Largest Dicke support materialized by [`dicke`].
pub const MAX_DICKE_SUPPORT: u128 = 1 << 26;

/// Weight `m` of an `n`-qubit Dicke state, `1 <= m < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DickeLabel {
    n: usize,
    m: usize,
}

impl DickeLabel {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if !(2..=MAX_QUBITS).contains(&n) || m < 1 || m >= n {
            return Err(Error::InvalidDickeLabel { n, m });
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn support_size(&self) -> u128 {
        binomial(self.n as u64, self.m as u64)
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `n`-bit indices with exactly `m` set bits, in increasing order
/// (Gosper's next-bit-permutation).
pub fn fixed_weight_indices(n: usize, m: usize) -> impl Iterator<Item = u64> {
    let first = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let limit = 1u128 << n;
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur as u128 >= limit || m > n {
            next = None;
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.checked_add(c);
            r.map(|r| (((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    })
}

/// Unnormalized `|m,n>`: amplitude 1 on every index of weight `m`.
pub fn dicke(label: DickeLabel) -> Result<ExactVector> {
    if label.support_size() > MAX_DICKE_SUPPORT {
        return Err(Error::GuardExceeded {
            what: "Dicke support size",
            n: label.support_size().min(usize::MAX as u128) as usize,
            max: MAX_DICKE_SUPPORT as usize,
        });
    }
    ExactVector::from_amplitudes(
        label.n,
        fixed_weight_indices(label.n, label.m).map(|b| (b, BigInt::from(1))),
    )
}

/// Normalized `|m,n>` as a dense float vector.
pub fn dicke_float(label: DickeLabel) -> Result<FloatVector> {
    let mut v = FloatVector::zeros(label.n)?;
    let amp = 1.0 / (label.support_size() as f64).sqrt();
    for b in fixed_weight_indices(label.n, label.m) {
        v.amplitudes_mut()[b as usize] = Complex64::new(amp, 0.0);
    }
    Ok(v)
}

/// Unnormalized `n`-qubit W state, `|1,n>`.
pub fn w_state(n: usize) -> Result<ExactVector> {
    dicke(DickeLabel::new(1, n)?)
}

/// `(|0...0> + e^{i pi k / 4} |1...1>) / sqrt(2)`.
pub fn ghz(n: usize, phase_eighths: i64) -> Result<FloatVector> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("GHZ state needs n >= 2, got {n}")));
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (c, s) = match phase_eighths.rem_euclid(8) {
        0 => (1.0, 0.0),
        1 => (r, r),
        2 => (0.0, 1.0),
        3 => (-r, r),
        4 => (-1.0, 0.0),
        5 => (-r, -r),
        6 => (0.0, -1.0),
        _ => (r, -r),
    };
    let mut v = FloatVector::zeros(n)?;
    let last = v.dim() - 1;
    let amps = v.amplitudes_mut();
    amps[0] = Complex64::new(r, 0.0);
    amps[last] = Complex64::new(c * r, s * r);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_ket;

    fn support(v: &ExactVector) -> Vec<u64> {
        v.support().collect()
    }

    #[test]
    fn w3_support() {
        let w = w_state(3).unwrap();
        let expected: Vec<u64> = ["001", "010", "100"].iter().map(|k| parse_ket(k).unwrap().0).collect();
        assert_eq!(support(&w), expected);
        assert_eq!(*w.norm_sq(), BigInt::from(3));
        assert_eq!(w, dicke(DickeLabel::new(1, 3).unwrap()).unwrap());
    }

    #[test]
    fn dicke_2_4() {
        let d = dicke(DickeLabel::new(2, 4).unwrap()).unwrap();
        let expected: Vec<u64> = ["0011", "0101", "0110", "1001", "1010", "1100"]
            .iter()
            .map(|k| parse_ket(k).unwrap().0)
            .collect();
        assert_eq!(support(&d), expected);
        assert_eq!(*d.norm_sq(), BigInt::from(6));
    }

    #[test]
    fn small_w_states() {
        assert_eq!(support(&w_state(2).unwrap()), vec![0b01, 0b10]);
        assert_eq!(w_state(5).unwrap().support_len(), 5);
    }

    #[test]
    fn support_sizes_by_filtering() {
        for n in 2..=12 {
            for m in 1..n {
                let d = dicke(DickeLabel::new(m, n).unwrap()).unwrap();
                let brute: Vec<u64> = (0..1u64 << n).filter(|b| b.count_ones() as usize == m).collect();
                assert_eq!(support(&d), brute, "m={m} n={n}");
                assert_eq!(d.support_len() as u128, binomial(n as u64, m as u64));
                assert_eq!(d.recomputed_norm_sq(), *d.norm_sq());
            }
        }
    }

    #[test]
    fn labels_validated() {
        assert!(DickeLabel::new(0, 3).is_err());
        assert!(DickeLabel::new(3, 3).is_err());
        assert!(DickeLabel::new(1, 1).is_err());
        assert!(w_state(1).is_err());
        assert_eq!(DickeLabel::new(15, 30).unwrap().support_size(), 155_117_520);
        assert!(dicke(DickeLabel::new(15, 30).unwrap()).is_err());
    }

    #[test]
    fn orthogonal_weights() {
        for n in 2..=8 {
            for m in 1..n {
                for k in 1..n {
                    let a = dicke(DickeLabel::new(m, n).unwrap()).unwrap();
                    let b = dicke(DickeLabel::new(k, n).unwrap()).unwrap();
                    let ip = a.inner(&b).unwrap();
                    if m == k {
                        assert_eq!(ip, BigInt::from(binomial(n as u64, m as u64)));
                    } else {
                        assert_eq!(ip, BigInt::from(0));
                    }
                }
            }
        }
    }

    #[test]
    fn ghz_states() {
        let g3 = ghz(3, 0).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(g3.amplitudes()[0], Complex64::new(r, 0.0));
        assert_eq!(g3.amplitudes()[7], Complex64::new(r, 0.0));
        assert!(g3.is_unit(1e-15));
        let g4 = ghz(4, 0).unwrap();
        assert_eq!(g4.amplitudes()[15], Complex64::new(r, 0.0));
        let g4i = ghz(4, 2).unwrap();
        assert_eq!(g4i.amplitudes()[15], Complex64::new(0.0, r));
        assert!(g4i.is_unit(1e-15));
        for k in -9..9 {
            assert!(ghz(5, k).unwrap().is_unit(1e-15));
        }
        assert!(ghz(1, 0).is_err());
    }

    #[test]
    fn dicke_float_is_normalized() {
        let v = dicke_float(DickeLabel::new(3, 7).unwrap()).unwrap();
        assert!(v.is_unit(1e-12));
        let e = dicke(DickeLabel::new(3, 7).unwrap())
            .unwrap()
            .to_float_normalized()
            .unwrap();
        assert!(v.max_abs_diff(&e) < 1e-15);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn dicke_is_permutation_symmetric(
                (n, m, perm) in (2usize..10).prop_flat_map(|n| {
                    (Just(n), 1..n, Just((0..n).collect::<Vec<_>>()).prop_shuffle())
                })
            ) {
                let d = dicke(DickeLabel::new(m, n).unwrap()).unwrap();
                prop_assert_eq!(d.permute(&perm).unwrap(), d);
            }
        }
    }
}
