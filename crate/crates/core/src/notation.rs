//! Bracket notation for permutation-invariant two-setting Bell polynomials.
//!
//! `[a1 a2; a11 a12 a22; ...]`: group `d` (1-based) lists the `d + 1`
//! coefficients of the degree-`d` correlators, indexed by how many of the
//! `d` parties use setting 2. The party count is the number of groups.
//!
//! ```text
//! notation := "[" group (";" group)* "]"
//! group    := entry+
//! entry    := integer | integer "/" positive-integer
//! ```
//! Entries are separated by whitespace or commas. `−` (U+2212) is accepted
//! as a minus sign.

use std::fmt;

use num::{BigRational, Zero};

use crate::error::{Error, Result};
use crate::pauli::parse_rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientGroups {
    groups: Vec<Vec<BigRational>>,
}

impl CoefficientGroups {
    pub fn new(groups: Vec<Vec<BigRational>>) -> Result<Self> {
        if groups.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 parties, found {} group(s)",
                groups.len()
            )));
        }
        for (i, g) in groups.iter().enumerate() {
            if g.len() != i + 2 {
                return Err(Error::Arity {
                    group: i + 1,
                    expected: i + 2,
                    found: g.len(),
                });
            }
        }
        Ok(Self { groups })
    }

    pub fn from_integers(groups: &[&[i64]]) -> Result<Self> {
        Self::new(
            groups
                .iter()
                .map(|g| g.iter().map(|&c| BigRational::from_integer(c.into())).collect())
                .collect(),
        )
    }

    pub fn parties(&self) -> usize {
        self.groups.len()
    }

    /// Coefficients of degree `d` (1-based), indexed by setting-2 count.
    pub fn degree(&self, d: usize) -> &[BigRational] {
        &self.groups[d - 1]
    }

    pub fn groups(&self) -> &[Vec<BigRational>] {
        &self.groups
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_integer(&self) -> bool {
        self.groups.iter().flatten().all(|c| c.is_integer())
    }
}

impl fmt::Display for CoefficientGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, c) in g.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c}")?;
            }
        }
        f.write_str("]")
    }
}

pub fn serialize(groups: &CoefficientGroups) -> String {
    groups.to_string()
}

pub fn parse(text: &str) -> Result<CoefficientGroups> {
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let trimmed_start = text.len() - text.trim_start().len();
    let body = text.trim();
    let inner = body
        .strip_prefix('[')
        .ok_or_else(|| err(trimmed_start, "expected `[`"))?
        .strip_suffix(']')
        .ok_or_else(|| err(trimmed_start + body.len(), "expected closing `]`"))?;
    let mut offset = trimmed_start + 1;
    let mut groups = Vec::new();
    for (gi, group) in inner.split(';').enumerate() {
        if let Some(p) = group.find(['[', ']', ';']) {
            return Err(err(offset + p, "unexpected bracket"));
        }
        let mut entries = Vec::new();
        let mut cursor = 0;
        for token in group.split(|c: char| c.is_whitespace() || c == ',') {
            let pos = offset + cursor;
            cursor += token.len() + 1;
            if token.is_empty() {
                continue;
            }
            let normalized = token.replace('\u{2212}', "-");
            let value =
                parse_rational(&normalized).ok_or_else(|| err(pos, &format!("invalid coefficient {token:?}")))?;
            entries.push(value);
        }
        if entries.is_empty() {
            return Err(err(offset, &format!("group {} is empty", gi + 1)));
        }
        groups.push(entries);
        offset += group.len() + 1;
    }
    CoefficientGroups::new(groups)
}
