use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use sha2::{Digest, Sha256};

use super::string::{check_permutation, PauliString};
use crate::error::{Error, Result};

/// A Hermitian operator `sum_k c_k P_k` with real rational coefficients.
///
/// Strings are stored with relative phase `+1` (the literal letter product);
/// signs live in the coefficients. Repeated strings merge by adding
/// coefficients and terms whose coefficient reaches zero are dropped. Terms
/// keep first-insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliSum {
    n: usize,
    terms: Vec<(BigRational, PauliString)>,
    index: HashMap<(u64, u64), usize>,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigRational, PauliString)>,
    {
        let mut sum = Self::new(n);
        for (c, p) in terms {
            sum.add(c, p)?;
        }
        Ok(sum)
    }

    /// Convenience for integer-weighted literal strings, e.g. `[(1, "XX"), (1, "YY")]`.
    pub fn from_letters<'a, I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, &'a str)>,
    {
        let mut sum: Option<Self> = None;
        for (c, letters) in terms {
            let p = PauliString::from_letters(letters)?;
            let s = sum.get_or_insert_with(|| Self::new(p.n()));
            s.add(BigRational::from_integer(c.into()), p)?;
        }
        sum.ok_or(Error::EmptyString)
    }

    pub fn add(&mut self, coeff: BigRational, string: PauliString) -> Result<()> {
        if string.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: string.n(),
            });
        }
        let sign = string.sign().ok_or(Error::NonHermitian {
            phase_exp: string.phase_exp(),
            y_count: string.y_count(),
        })?;
        if coeff.is_zero() {
            return Ok(());
        }
        let coeff = if sign < 0 { -coeff } else { coeff };
        let key = (string.x_mask(), string.z_mask());
        match self.index.get(&key) {
            Some(&i) => {
                self.terms[i].0 += coeff;
                if self.terms[i].0.is_zero() {
                    self.terms.remove(i);
                    self.reindex();
                }
            }
            None => {
                self.index.insert(key, self.terms.len());
                self.terms.push((coeff, string.unsigned()));
            }
        }
        Ok(())
    }

    fn reindex(&mut self) {
        self.index = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, (_, p))| ((p.x_mask(), p.z_mask()), i))
            .collect();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(BigRational, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, string: &PauliString) -> Option<&BigRational> {
        self.index
            .get(&(string.x_mask(), string.z_mask()))
            .map(|&i| &self.terms[i].0)
    }

    pub fn is_integer(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_integer())
    }

    /// True iff the dense matrix is real symmetric (every string has an even Y count).
    pub fn is_real_symmetric(&self) -> bool {
        self.terms.iter().all(|(_, p)| p.is_real())
    }

    /// Integer-coefficient operator `scale * self` with the smallest positive `scale`.
    pub fn integer_scaled(&self) -> (PauliSum, BigInt) {
        let scale = self.terms.iter().fold(BigInt::one(), |acc, (c, _)| acc.lcm(c.denom()));
        let factor = BigRational::from_integer(scale.clone());
        let mut out = self.clone();
        for (c, _) in &mut out.terms {
            *c = &*c * &factor;
        }
        (out, scale)
    }

    /// Integer coefficients, or the first offending coefficient as an error.
    pub fn integer_coefficients(&self) -> Result<Vec<BigInt>> {
        self.terms
            .iter()
            .map(|(c, _)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegerCoefficient(c.to_string()))
                }
            })
            .collect()
    }

    pub fn max_coefficient_abs(&self) -> f64 {
        self.terms
            .iter()
            .map(|(c, _)| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// Sum of absolute coefficients, an upper bound on the spectral radius.
    pub fn l1_norm(&self) -> f64 {
        self.terms
            .iter()
            .map(|(c, _)| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }

    /// Relabels qubits: qubit `q` of every term moves to `perm[q]`.
    pub fn permute(&self, perm: &[usize]) -> Result<PauliSum> {
        check_permutation(perm, self.n)?;
        let terms = self
            .terms
            .iter()
            .map(|(c, p)| Ok((c.clone(), p.permute(perm)?)))
            .collect::<Result<Vec<_>>>()?;
        PauliSum::from_terms(self.n, terms)
    }

    /// Terms sorted by letters, for order-independent comparison.
    pub fn sorted_terms(&self) -> Vec<(BigRational, String)> {
        let mut v: Vec<_> = self.terms.iter().map(|(c, p)| (c.clone(), p.letters())).collect();
        v.sort_by(|a, b| a.1.cmp(&b.1));
        v
    }

    /// True iff both sums contain the same terms, ignoring order.
    pub fn same_terms(&self, other: &PauliSum) -> bool {
        self.n == other.n && self.sorted_terms() == other.sorted_terms()
    }

    /// One term per line: `<coeff> <letters>\n`, coefficients as `p` or `p/q`.
    /// An empty sum serializes as a single zero-weighted identity line so
    /// that the qubit count survives the roundtrip.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.terms.is_empty() {
            let _ = writeln!(out, "0 {}", "I".repeat(self.n));
            return out;
        }
        for (c, p) in &self.terms {
            let _ = writeln!(out, "{} {}", c, p.letters());
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut sum: Option<Self> = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::OperatorText {
                line: lineno + 1,
                message,
            };
            let mut parts = line.split_whitespace();
            let (Some(coeff), Some(letters), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err("expected `<coeff> <letters>`".into()));
            };
            let coeff = parse_rational(coeff).ok_or_else(|| err(format!("bad coefficient {coeff:?}")))?;
            let p = PauliString::from_letters(letters).map_err(|e| err(e.to_string()))?;
            let s = sum.get_or_insert_with(|| Self::new(p.n()));
            s.add(coeff, p).map_err(|e| err(e.to_string()))?;
        }
        sum.ok_or(Error::OperatorText {
            line: 0,
            message: "no terms".into(),
        })
    }

    /// [`PauliSum::to_text`] with terms sorted by letters: equal operators
    /// give equal text whatever order their terms were added in.
    pub fn canonical_text(&self) -> String {
        let mut sorted = self.clone();
        sorted.terms.sort_by_key(|(_, p)| p.letters());
        sorted.to_text()
    }

    /// Hex SHA-256 of [`PauliSum::canonical_text`].
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }
}

/// Parses `p` or `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
        Some((p, q)) => {
            let p = BigInt::from_str(p).ok()?;
            if q.starts_with(['+', '-']) {
                return None;
            }
            let q = BigInt::from_str(q).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
    }
}
