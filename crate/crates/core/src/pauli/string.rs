use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest qubit count a [`PauliString`] can address (masks are `u64`).
pub const MAX_QUBITS: usize = 63;

/// A power of `i`: the scalar `i^k` for `k` in `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(exp: u32) -> Self {
        Phase((exp % 4) as u8)
    }

    pub fn exp(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// `+1` or `-1` for real phases.
    pub fn real_sign(self) -> Option<i8> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' => Some(Pauli::I),
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

/// A scaled tensor product of single-qubit Paulis, stored as
/// `i^phase_exp * X^x_mask * Z^z_mask` (Z applied first).
///
/// Qubit 1, the leftmost letter of a ket or a string, is the most
/// significant bit of a basis index: `|001>` is index 1 and the string
/// `ZII` has `z_mask = 0b100`.
///
/// Since `Y = i X Z`, the literal letter product of a string with `y` Y
/// factors has `phase_exp = y mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x_mask: u64,
    z_mask: u64,
    phase_exp: u8,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn new(n: usize, x_mask: u64, z_mask: u64, phase_exp: u8) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyString);
        }
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        let full = full_mask(n);
        if x_mask & !full != 0 || z_mask & !full != 0 {
            return Err(Error::InvalidArgument(format!(
                "masks {x_mask:#b}/{z_mask:#b} exceed {n} qubits"
            )));
        }
        Ok(Self {
            n,
            x_mask,
            z_mask,
            phase_exp: phase_exp % 4,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, 0, 0, 0)
    }

    /// Builds the literal tensor product of `letters` (e.g. `"ZXX"`).
    pub fn from_letters(letters: &str) -> Result<Self> {
        let chars: Vec<char> = letters.chars().collect();
        if chars.is_empty() {
            return Err(Error::EmptyString);
        }
        let n = chars.len();
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        let mut x_mask = 0;
        let mut z_mask = 0;
        let mut y_count = 0u32;
        for (position, &letter) in chars.iter().enumerate() {
            let pauli = Pauli::from_char(letter).ok_or(Error::InvalidLetter { letter, position })?;
            let (x, z) = pauli.bits();
            let bit = 1u64 << (n - 1 - position);
            if x {
                x_mask |= bit;
            }
            if z {
                z_mask |= bit;
            }
            if pauli == Pauli::Y {
                y_count += 1;
            }
        }
        Self::new(n, x_mask, z_mask, (y_count % 4) as u8)
    }

    /// Builds a literal string from per-qubit letters, qubit 1 first.
    pub fn from_paulis(paulis: &[Pauli]) -> Result<Self> {
        let letters: String = paulis.iter().map(|p| p.as_char()).collect();
        Self::from_letters(&letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn y_count(&self) -> u32 {
        (self.x_mask & self.z_mask).count_ones()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> u32 {
        (self.x_mask | self.z_mask).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    /// Letter on qubit `q` (0-based, leftmost first).
    pub fn letter(&self, q: usize) -> Pauli {
        let bit = 1u64 << (self.n - 1 - q);
        match (self.x_mask & bit != 0, self.z_mask & bit != 0) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn letters(&self) -> String {
        (0..self.n).map(|q| self.letter(q).as_char()).collect()
    }

    /// The scalar relating this string to its literal letter product.
    /// Hermitian strings have a real relative phase (`+1` or `-1`).
    pub fn relative_phase(&self) -> Phase {
        Phase::new(self.phase_exp as u32 + 4 - self.y_count() % 4)
    }

    pub fn is_hermitian(&self) -> bool {
        self.relative_phase().is_real()
    }

    /// Overall sign of a Hermitian string relative to its letters.
    pub fn sign(&self) -> Option<i8> {
        self.relative_phase().real_sign()
    }

    /// Same letters with relative phase `+1`.
    pub fn unsigned(&self) -> Self {
        Self {
            phase_exp: (self.y_count() % 4) as u8,
            ..*self
        }
    }

    /// The matrix of a Hermitian string is real iff it has an even number of Y factors.
    pub fn is_real(&self) -> bool {
        self.phase_exp.is_multiple_of(2)
    }

    /// Sends `|b>` to `scalar * |b'>`.
    pub fn apply(&self, b: u64) -> Result<(u64, Phase)> {
        if b > full_mask(self.n) {
            return Err(Error::IndexOutOfRange { index: b, n: self.n });
        }
        Ok(self.apply_unchecked(b))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, b: u64) -> (u64, Phase) {
        let z_sign = ((b & self.z_mask).count_ones() % 2) * 2;
        (b ^ self.x_mask, Phase::new(self.phase_exp as u32 + z_sign))
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &PauliString) -> Result<PauliString> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        // Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1
        let swap = (self.z_mask & other.x_mask).count_ones() % 2 * 2;
        Ok(PauliString {
            n: self.n,
            x_mask: self.x_mask ^ other.x_mask,
            z_mask: self.z_mask ^ other.z_mask,
            phase_exp: ((self.phase_exp as u32 + other.phase_exp as u32 + swap) % 4) as u8,
        })
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let a = (self.x_mask & other.z_mask).count_ones();
        let b = (self.z_mask & other.x_mask).count_ones();
        (a + b).is_multiple_of(2)
    }

    /// Relabels qubits: the factor on qubit `q` moves to qubit `perm[q]`.
    pub fn permute(&self, perm: &[usize]) -> Result<PauliString> {
        check_permutation(perm, self.n)?;
        let mut x_mask = 0;
        let mut z_mask = 0;
        for (q, &target) in perm.iter().enumerate() {
            let from = 1u64 << (self.n - 1 - q);
            let to = 1u64 << (self.n - 1 - target);
            if self.x_mask & from != 0 {
                x_mask |= to;
            }
            if self.z_mask & from != 0 {
                z_mask |= to;
            }
        }
        Ok(PauliString {
            x_mask,
            z_mask,
            ..*self
        })
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Maps basis index `b` through a qubit relabeling (qubit `q` moves to `perm[q]`).
pub(crate) fn permute_index(b: u64, n: usize, perm: &[usize]) -> u64 {
    perm.iter().enumerate().fold(0, |acc, (q, &target)| {
        if b & (1u64 << (n - 1 - q)) != 0 {
            acc | 1u64 << (n - 1 - target)
        } else {
            acc
        }
    })
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.relative_phase().exp() {
            0 => write!(f, "{}", self.letters()),
            _ => write!(f, "({}){}", self.relative_phase(), self.letters()),
        }
    }
}
