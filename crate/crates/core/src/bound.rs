//! Local (deterministic-strategy) maxima of Bell polynomials.
//!
//! A polynomial is a sum of monomials, each a product of dichotomic
//! settings on distinct parties. A deterministic strategy fixes every
//! setting of every party to `+1` or `-1`.
//!
//! Strategy types are ordered lexicographically over a party's setting
//! values with `+1` before `-1`, and assignments lexicographically by party.
//! Ties are broken towards the smallest assignment in that order.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};

use crate::bell::setting_assignments;
use crate::error::{Error, Result};
use crate::notation::CoefficientGroups;
use crate::pauli::{Pauli, PauliSum};

/// Default cap on the number of assignments enumerated by brute force
/// (`8^6 = 4^9`).
pub const DEFAULT_BRUTE_GUARD: u64 = 1 << 18;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Monomial {
    coeff: BigRational,
    /// Setting used by each party, `None` if the party is absent.
    settings: Vec<Option<u8>>,
}

/// A Bell polynomial over `n` parties with `settings` dichotomic settings each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SettingPolynomial {
    n: usize,
    setting_labels: Vec<String>,
    monomials: Vec<Monomial>,
}

impl SettingPolynomial {
    pub fn new(n: usize, setting_labels: Vec<String>) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::TooManyQubits { n, max: 63 });
        }
        if setting_labels.is_empty() || setting_labels.len() > 6 {
            return Err(Error::InvalidArgument(format!(
                "{} settings per party is unsupported",
                setting_labels.len()
            )));
        }
        Ok(Self {
            n,
            setting_labels,
            monomials: Vec::new(),
        })
    }

    /// Adds `coeff * prod_p setting[p]`, merging like monomials.
    pub fn add(&mut self, coeff: BigRational, settings: Vec<Option<u8>>) -> Result<()> {
        if settings.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: settings.len(),
            });
        }
        if settings
            .iter()
            .flatten()
            .any(|&s| s as usize >= self.setting_labels.len())
        {
            return Err(Error::InvalidArgument("setting index out of range".into()));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        match self.monomials.iter().position(|m| m.settings == settings) {
            Some(i) => {
                self.monomials[i].coeff += coeff;
                if self.monomials[i].coeff.is_zero() {
                    self.monomials.remove(i);
                }
            }
            None => self.monomials.push(Monomial { coeff, settings }),
        }
        Ok(())
    }

    /// The two-setting polynomial written in bracket notation.
    pub fn from_groups(groups: &CoefficientGroups) -> Result<Self> {
        let n = groups.parties();
        let mut poly = Self::new(n, vec!["1".into(), "2".into()])?;
        for d in 1..=n {
            let coeffs = groups.degree(d);
            if coeffs.iter().all(Zero::is_zero) {
                continue;
            }
            for (k, settings) in setting_assignments(n, d) {
                poly.add(coeffs[k].clone(), settings)?;
            }
        }
        Ok(poly)
    }

    /// Reads each Pauli letter as an independent dichotomic setting: `X`, `Y`,
    /// `Z` become settings x, y, z (only letters that occur are kept) and `I`
    /// marks an absent party. For `B_n` this gives
    /// `sum_{i<j} (x_i x_j + y_i y_j) prod_{k != i,j} z_k`.
    pub fn from_pauli_sum(sum: &PauliSum) -> Result<Self> {
        let letters = [Pauli::X, Pauli::Y, Pauli::Z];
        let used: Vec<Pauli> = letters
            .into_iter()
            .filter(|l| sum.terms().iter().any(|(_, p)| (0..sum.n()).any(|q| p.letter(q) == *l)))
            .collect();
        let labels = if used.is_empty() {
            vec!["x".to_string()]
        } else {
            used.iter()
                .map(|l| l.as_char().to_ascii_lowercase().to_string())
                .collect()
        };
        let mut poly = Self::new(sum.n(), labels)?;
        for (c, p) in sum.terms() {
            let settings = (0..sum.n())
                .map(|q| match p.letter(q) {
                    Pauli::I => None,
                    l => used.iter().position(|u| *u == l).map(|i| i as u8),
                })
                .collect();
            poly.add(c.clone(), settings)?;
        }
        Ok(poly)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn settings(&self) -> usize {
        self.setting_labels.len()
    }

    pub fn setting_labels(&self) -> &[String] {
        &self.setting_labels
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Strategies per party, `2^settings`.
    pub fn strategies(&self) -> u64 {
        1 << self.settings()
    }

    fn relabeled(&self, perm: &[usize]) -> Vec<(Vec<Option<u8>>, BigRational)> {
        let mut out: Vec<_> = self
            .monomials
            .iter()
            .map(|m| {
                let mut s = vec![None; self.n];
                for (p, &v) in m.settings.iter().enumerate() {
                    s[perm[p]] = v;
                }
                (s, m.coeff.clone())
            })
            .collect();
        out.sort();
        out
    }

    /// Invariance under a transposition and an n-cycle, which generate all
    /// party permutations.
    pub fn is_permutation_invariant(&self) -> bool {
        let n = self.n;
        let identity: Vec<usize> = (0..n).collect();
        let base = self.relabeled(&identity);
        let mut swap = identity.clone();
        if n >= 2 {
            swap.swap(0, 1);
        }
        let cycle: Vec<usize> = (0..n).map(|p| (p + 1) % n).collect();
        self.relabeled(&swap) == base && self.relabeled(&cycle) == base
    }

    fn compiled(&self) -> CompiledPoly {
        let scale = self
            .monomials
            .iter()
            .fold(BigInt::one(), |acc, m| acc.lcm(m.coeff.denom()));
        let k = self.settings();
        let terms = self
            .monomials
            .iter()
            .map(|m| {
                let c = (&m.coeff * BigRational::from_integer(scale.clone())).to_integer();
                let mut masks = vec![0u64; k];
                for (p, s) in m.settings.iter().enumerate() {
                    if let Some(s) = s {
                        masks[*s as usize] |= 1 << p;
                    }
                }
                (c.to_i128().expect("coefficient fits in i128"), masks)
            })
            .collect();
        CompiledPoly { scale, terms }
    }
}

struct CompiledPoly {
    scale: BigInt,
    terms: Vec<(i128, Vec<u64>)>,
}

impl CompiledPoly {
    /// `neg[s]`: parties whose setting `s` is `-1`.
    fn value(&self, neg: &[u64]) -> i128 {
        self.terms
            .iter()
            .map(|(c, masks)| {
                let flips: u32 = masks.iter().zip(neg).map(|(m, n)| (m & n).count_ones()).sum();
                if flips.is_multiple_of(2) {
                    *c
                } else {
                    -*c
                }
            })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundMethod {
    Brute,
    Symmetric,
}

impl BoundMethod {
    pub fn name(self) -> &'static str {
        match self {
            BoundMethod::Brute => "brute",
            BoundMethod::Symmetric => "symmetric",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBound {
    pub n: usize,
    pub value: BigRational,
    /// Per party, the `+1`/`-1` value of each setting.
    pub achieving_assignment: Vec<Vec<i8>>,
    pub method: BoundMethod,
    pub evaluated: u64,
}

fn strategy_values(t: u8, k: usize) -> Vec<i8> {
    // first setting is the most significant bit so that numeric order of
    // types equals lexicographic order of their value lists
    (0..k).map(|s| if t >> (k - 1 - s) & 1 == 1 { -1 } else { 1 }).collect()
}

fn neg_masks(types: &[u8], k: usize) -> Vec<u64> {
    let mut neg = vec![0u64; k];
    for (p, &t) in types.iter().enumerate() {
        for (s, mask) in neg.iter_mut().enumerate() {
            if t >> (k - 1 - s) & 1 == 1 {
                *mask |= 1 << p;
            }
        }
    }
    neg
}

fn finish(
    poly: &SettingPolynomial,
    compiled: &CompiledPoly,
    best: i128,
    types: &[u8],
    method: BoundMethod,
    evaluated: u64,
) -> LocalBound {
    LocalBound {
        n: poly.n,
        value: BigRational::new(best.into(), compiled.scale.clone()),
        achieving_assignment: types.iter().map(|&t| strategy_values(t, poly.settings())).collect(),
        method,
        evaluated,
    }
}

/// Maximum over all `(2^settings)^n` deterministic assignments.
pub fn local_bound_bruteforce(poly: &SettingPolynomial, guard: u64) -> Result<LocalBound> {
    local_bound_filtered(poly, guard, |_| true)
}

/// Brute force restricted to assignments accepted by `keep`.
pub fn local_bound_filtered(poly: &SettingPolynomial, guard: u64, keep: impl Fn(&[u8]) -> bool) -> Result<LocalBound> {
    let k = poly.settings();
    let per_party = poly.strategies();
    let total = per_party
        .checked_pow(poly.n as u32)
        .filter(|&t| t <= guard)
        .ok_or(Error::GuardExceeded {
            what: "brute-force assignments",
            n: per_party.saturating_pow(poly.n as u32).min(usize::MAX as u64) as usize,
            max: guard as usize,
        })?;
    let compiled = poly.compiled();
    let mut types = vec![0u8; poly.n];
    let mut best: Option<(i128, Vec<u8>)> = None;
    let mut evaluated = 0;
    for _ in 0..total {
        if keep(&types) {
            let v = compiled.value(&neg_masks(&types, k));
            evaluated += 1;
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, types.clone()));
            }
        }
        // odometer with party 0 as the most significant digit
        for p in (0..poly.n).rev() {
            types[p] += 1;
            if (types[p] as u64) < per_party {
                break;
            }
            types[p] = 0;
        }
    }
    let (value, types) = best.ok_or_else(|| Error::InvalidArgument("no assignment accepted".into()))?;
    Ok(finish(poly, &compiled, value, &types, BoundMethod::Brute, evaluated))
}

/// Maximum over multisets of strategy types, one sorted representative each.
/// Valid only for permutation-invariant polynomials.
pub fn local_bound_symmetric(poly: &SettingPolynomial) -> Result<LocalBound> {
    if !poly.is_permutation_invariant() {
        return Err(Error::NotPermutationInvariant);
    }
    let k = poly.settings();
    let kinds = poly.strategies() as usize;
    let compiled = poly.compiled();
    let n = poly.n;
    let mut best: Option<(i128, Vec<u8>)> = None;
    let mut evaluated = 0;
    // counts[t] parties of type t; enumerate compositions of n into `kinds` parts
    let mut counts = vec![0usize; kinds];
    counts[kinds - 1] = n;
    loop {
        let types: Vec<u8> = counts
            .iter()
            .enumerate()
            .flat_map(|(t, &c)| std::iter::repeat_n(t as u8, c))
            .collect();
        let v = compiled.value(&neg_masks(&types, k));
        evaluated += 1;
        let better = match &best {
            None => true,
            Some((b, bt)) => v > *b || (v == *b && types < *bt),
        };
        if better {
            best = Some((v, types));
        }
        if !next_composition(&mut counts) {
            break;
        }
    }
    let (value, types) = best.expect("at least one composition");
    Ok(finish(
        poly,
        &compiled,
        value,
        &types,
        BoundMethod::Symmetric,
        evaluated,
    ))
}

/// Steps through all compositions of a fixed total, starting from
/// `[0, ..., 0, total]` and ending at `[total, 0, ..., 0]`.
fn next_composition(c: &mut [usize]) -> bool {
    let k = c.len();
    if k == 1 {
        return false;
    }
    // find the rightmost nonzero entry among c[1..]; move one unit left
    let Some(i) = (1..k).rev().find(|&i| c[i] > 0) else {
        return false;
    };
    let rest = c[i] - 1;
    c[i] = 0;
    c[i - 1] += 1;
    c[k - 1] += rest;
    true
}

/// Number of multisets of `n` parties over `kinds` types, `C(n + kinds - 1, kinds - 1)`.
pub fn composition_count(n: u64, kinds: u64) -> u128 {
    crate::dicke::binomial(n + kinds - 1, kinds - 1)
}

/// Coefficient-weighted monomial counts by degree, for reports.
pub fn degree_profile(poly: &SettingPolynomial) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for m in &poly.monomials {
        *out.entry(m.settings.iter().flatten().count()).or_insert(0) += 1;
    }
    out
}

impl LocalBound {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}
