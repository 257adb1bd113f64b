//! Constructors for the Bell operators: the Dicke-state operator `B_n`, the
//! three-qubit W-state operator, Mermin `M_3`, MABK `M_4`, and operators
//! compiled from bracket notation with a chosen pair of observables.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::notation::CoefficientGroups;
use crate::pauli::{Pauli, PauliString, PauliSum};

/// Single-qubit observable `a X + b Y + c Z` with `a^2 + b^2 + c^2 = 1`.
///
/// Components are exact rationals; decimal input such as `0.6` is read
/// exactly, so axis-aligned and Pythagorean directions stay exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservableSpec {
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

pub const OBSERVABLE_NORM_TOL: f64 = 1e-12;

impl ObservableSpec {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        let norm_sq = &a * &a + &b * &b + &c * &c;
        let dev = (norm_sq - BigRational::one()).abs().to_f64().unwrap_or(f64::INFINITY);
        if dev > OBSERVABLE_NORM_TOL {
            return Err(Error::InvalidObservable(format!(
                "|({a}, {b}, {c})|^2 differs from 1 by {dev:e}"
            )));
        }
        Ok(Self { a, b, c })
    }

    fn axis(a: i64, b: i64, c: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(v.into());
        Self {
            a: r(a),
            b: r(b),
            c: r(c),
        }
    }

    pub fn x() -> Self {
        Self::axis(1, 0, 0)
    }

    pub fn y() -> Self {
        Self::axis(0, 1, 0)
    }

    pub fn z() -> Self {
        Self::axis(0, 0, 1)
    }

    /// From float components, converted exactly from their binary values.
    pub fn from_f64(a: f64, b: f64, c: f64) -> Result<Self> {
        let conv = |v: f64| {
            BigRational::from_float(v).ok_or_else(|| Error::InvalidObservable(format!("non-finite component {v}")))
        };
        Self::new(conv(a)?, conv(b)?, conv(c)?)
    }

    /// Unit vector at angle `theta` in the X-Y plane.
    pub fn in_plane(theta: f64) -> Result<Self> {
        Self::from_f64(theta.cos(), theta.sin(), 0.0)
    }

    /// Weighted Pauli expansion, zero weights omitted.
    pub fn paulis(&self) -> Vec<(BigRational, Pauli)> {
        [(&self.a, Pauli::X), (&self.b, Pauli::Y), (&self.c, Pauli::Z)]
            .into_iter()
            .filter(|(w, _)| !w.is_zero())
            .map(|(w, p)| (w.clone(), p))
            .collect()
    }

    pub fn components(&self) -> (&BigRational, &BigRational, &BigRational) {
        (&self.a, &self.b, &self.c)
    }

    pub fn is_axis_aligned(&self) -> bool {
        self.paulis().len() == 1
    }
}

impl fmt::Display for ObservableSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::x() {
            f.write_str("x")
        } else if *self == Self::y() {
            f.write_str("y")
        } else if *self == Self::z() {
            f.write_str("z")
        } else {
            write!(f, "bloch:{},{},{}", self.a, self.b, self.c)
        }
    }
}

/// Exact value of a decimal (`-0.125`, `1e-3`) or rational (`3/5`) literal.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.contains('/') {
        return crate::pauli::parse_rational(s);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= BigRational::from_integer(num::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num::pow(ten, (-scale) as usize));
    }
    Some(if neg { -value } else { value })
}

impl FromStr for ObservableSpec {
    type Err = Error;

    /// `x`, `y`, `z`, or `bloch:a,b,c`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(Self::x()),
            "y" => Ok(Self::y()),
            "z" => Ok(Self::z()),
            other => {
                let rest = other
                    .strip_prefix("bloch:")
                    .ok_or_else(|| Error::InvalidObservable(format!("unknown observable {s:?}")))?;
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::InvalidObservable(format!("expected 3 components in {s:?}")));
                }
                let comps = parts
                    .iter()
                    .map(|p| parse_decimal(p).ok_or_else(|| Error::InvalidObservable(format!("bad component {p:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                let [a, b, c]: [BigRational; 3] = comps.try_into().expect("three components");
                Self::new(a, b, c)
            }
        }
    }
}

fn pair_string(n: usize, i: usize, j: usize, letter: Pauli) -> Result<PauliString> {
    let paulis: Vec<Pauli> = (0..n)
        .map(|q| if q == i || q == j { letter } else { Pauli::Z })
        .collect();
    PauliString::from_paulis(&paulis)
}

/// `B_n`: for every pair of qubits, `X` on both with `Z` elsewhere, plus the
/// same with `Y`. Pairs in lexicographic order, the X block first.
pub fn dicke_bell(n: usize) -> Result<PauliSum> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dicke_bell needs n >= 2, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut sum = PauliSum::new(n);
    for letter in [Pauli::X, Pauli::Y] {
        for &(i, j) in &pairs {
            sum.add(BigRational::one(), pair_string(n, i, j, letter)?)?;
        }
    }
    Ok(sum)
}

/// The three-qubit W-state operator, written out as its six strings.
pub fn w_bell() -> PauliSum {
    PauliSum::from_letters([(1, "ZXX"), (1, "XZX"), (1, "XXZ"), (1, "ZYY"), (1, "YZY"), (1, "YYZ")])
        .expect("static strings")
}

/// Mermin operator with setting 1 = X and setting 2 = Y.
pub fn mermin3() -> PauliSum {
    PauliSum::from_letters([(1, "XXX"), (-1, "XYY"), (-1, "YXY"), (-1, "YYX")]).expect("static strings")
}

/// Four-party MABK operator with setting 1 = X and setting 2 = Y:
/// `XXXX + sum(XXXY) - sum(XXYY) - sum(XYYY) + YYYY`.
pub fn mabk4() -> PauliSum {
    let mut sum = PauliSum::new(4);
    let weights = [1i64, 1, -1, -1, 1];
    for b in 0u64..16 {
        let ys = b.count_ones() as usize;
        let letters: String = (0..4).map(|q| if b >> (3 - q) & 1 == 1 { 'Y' } else { 'X' }).collect();
        sum.add(
            BigRational::from_integer(weights[ys].into()),
            PauliString::from_letters(&letters).expect("static strings"),
        )
        .expect("4 qubits");
    }
    sum
}

pub fn mermin3_groups() -> CoefficientGroups {
    CoefficientGroups::from_integers(&[&[0, 0], &[0, 0, 0], &[1, 0, -1, 0]]).expect("valid groups")
}

pub fn mabk4_groups() -> CoefficientGroups {
    CoefficientGroups::from_integers(&[&[0, 0], &[0, 0, 0], &[0, 0, 0, 0], &[1, 1, -1, -1, 1]]).expect("valid groups")
}

/// Every assignment of settings to parties: `None` for parties outside the
/// correlator, `Some(0)` / `Some(1)` for settings 1 / 2. Yields `(k, assignment)`
/// with `k` the number of setting-2 parties, for every degree-`d` correlator.
pub(crate) fn setting_assignments(n: usize, d: usize) -> Vec<(usize, Vec<Option<u8>>)> {
    let mut out = Vec::new();
    for parties in 0u64..1 << n {
        if parties.count_ones() as usize != d {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&p| parties >> p & 1 == 1).collect();
        for second in 0u64..1 << d {
            let mut a = vec![None; n];
            for (i, &p) in members.iter().enumerate() {
                a[p] = Some((second >> i & 1) as u8);
            }
            out.push((second.count_ones() as usize, a));
        }
    }
    out
}

/// Substitutes `m1` / `m2` for settings 1 / 2 in the polynomial described by
/// `groups` and expands into Pauli strings (identity on parties outside each
/// correlator).
pub fn compile_pi(groups: &CoefficientGroups, m1: &ObservableSpec, m2: &ObservableSpec) -> Result<PauliSum> {
    let n = groups.parties();
    let obs = [m1.paulis(), m2.paulis()];
    let mut sum = PauliSum::new(n);
    for d in 1..=n {
        let coeffs = groups.degree(d);
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        for (k, assignment) in setting_assignments(n, d) {
            let alpha = &coeffs[k];
            if alpha.is_zero() {
                continue;
            }
            let mut partial: Vec<(BigRational, Vec<Pauli>)> = vec![(alpha.clone(), Vec::with_capacity(n))];
            for setting in &assignment {
                partial = match setting {
                    None => partial
                        .into_iter()
                        .map(|(c, mut ps)| {
                            ps.push(Pauli::I);
                            (c, ps)
                        })
                        .collect(),
                    Some(s) => partial
                        .into_iter()
                        .flat_map(|(c, ps)| {
                            obs[*s as usize].iter().map(move |(w, p)| {
                                let mut ps = ps.clone();
                                ps.push(*p);
                                (&c * w, ps)
                            })
                        })
                        .collect(),
                };
            }
            for (c, ps) in partial {
                sum.add(c, PauliString::from_paulis(&ps)?)?;
            }
        }
    }
    Ok(sum)
}
