//! Regular continued fractions and normalization of two-bridge link parameters.
//!
//! A two-bridge link `K(p, q)` is stored with `0 < q < p/2` (after reducing `q`
//! mod `p` and taking the mirror image when needed) together with the regular
//! continued fraction `p/q = [a_1, ..., a_n]` whose entries are all positive and
//! whose last entry is at least 2. With that normalization `a_1 >= 2` holds as
//! well, which is the form the spine construction consumes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if it exists. `m = 1` yields `Some(0)`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 && m != 1 {
        return None;
    }
    let m = i128::from(m);
    Some(old_s.rem_euclid(m) as u64)
}

/// A sequence of positive partial quotients `[a_1, ..., a_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ContinuedFraction {
    entries: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        if let Some(position) = entries.iter().position(|&a| a == 0) {
            return Err(Error::NonPositiveEntry {
                position: position + 1,
                value: 0,
            });
        }
        Ok(Self { entries })
    }

    /// Builds a continued fraction from signed input, rejecting entries `<= 0`.
    pub fn from_signed(entries: &[i64]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        let mut out = Vec::with_capacity(entries.len());
        for (idx, &value) in entries.iter().enumerate() {
            if value <= 0 {
                return Err(Error::NonPositiveEntry {
                    position: idx + 1,
                    value,
                });
            }
            out.push(value as u64);
        }
        Ok(Self { entries: out })
    }

    /// Validates that the fraction is in the form the spine construction needs:
    /// `n >= 2`, `a_1 >= 2` and `a_n >= 2`.
    pub fn canonical(entries: Vec<u64>) -> Result<Self> {
        let cf = Self::new(entries)?;
        cf.ensure_canonical()?;
        Ok(cf)
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `a_i` with 1-based indexing.
    pub fn twist(&self, index: usize) -> u64 {
        self.entries[index - 1]
    }

    pub fn is_canonical(&self) -> bool {
        self.len() >= 2 && self.entries[0] >= 2 && self.entries[self.len() - 1] >= 2
    }

    pub(crate) fn ensure_canonical(&self) -> Result<()> {
        if self.len() < 2 {
            return Err(Error::TooShort(self.len()));
        }
        if !self.is_canonical() {
            return Err(Error::NotCanonical(self.to_string()));
        }
        Ok(())
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// Number of indices with `a_i = 1`.
    pub fn unit_count(&self) -> usize {
        self.entries.iter().filter(|&&a| a == 1).count()
    }

    /// 1-based indices `i` with `a_i = 1`, increasing.
    pub fn unit_indices(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == 1)
            .map(|(idx, _)| idx + 1)
            .collect()
    }

    /// `p/q` in lowest terms.
    pub fn value(&self) -> Result<(u64, u64)> {
        cf_value(self)
    }

    pub fn reversed(&self) -> Self {
        reverse(self)
    }

    /// Folds a trailing `[..., a, 1]` into `[..., a + 1]`. Returns `None` when
    /// nothing was folded.
    pub fn fold_trailing_one(&self) -> Option<Self> {
        let n = self.len();
        if n < 2 || self.entries[n - 1] != 1 {
            return None;
        }
        let mut entries = self.entries[..n - 1].to_vec();
        entries[n - 2] += 1;
        Some(Self { entries })
    }
}

impl TryFrom<Vec<u64>> for ContinuedFraction {
    type Error = Error;

    fn try_from(entries: Vec<u64>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<ContinuedFraction> for Vec<u64> {
    fn from(cf: ContinuedFraction) -> Self {
        cf.entries
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (idx, a) in self.entries.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

fn validate_pair(p: i64, q: i64) -> Result<(u64, u64)> {
    if p < 2 {
        return Err(Error::PTooSmall(p));
    }
    let p_u = p as u64;
    if q <= 0 || q >= p {
        return Err(Error::QOutOfRange { p: p_u, q });
    }
    let g = gcd(p_u, q as u64);
    if g != 1 {
        return Err(Error::NotCoprime { p: p_u, q, gcd: g });
    }
    Ok((p_u, q as u64))
}

/// Regular continued fraction of `p/q` for `0 < q < p`, coprime.
///
/// The Euclidean quotients already end in an entry `>= 2`; the trailing-one
/// fold is applied anyway so the result is the unique canonical expansion.
pub fn cf_expand(p: i64, q: i64) -> Result<ContinuedFraction> {
    let (p, q) = validate_pair(p, q)?;
    let (mut num, mut den) = (p, q);
    let mut entries = Vec::new();
    while den != 0 {
        entries.push(num / den);
        (num, den) = (den, num % den);
    }
    let cf = ContinuedFraction { entries };
    Ok(cf.fold_trailing_one().unwrap_or(cf))
}

/// Evaluates `a_1 + 1/(a_2 + 1/(... + 1/a_n))` as a reduced pair `(p, q)`.
pub fn cf_value(cf: &ContinuedFraction) -> Result<(u64, u64)> {
    let overflow = || Error::Overflow(cf.to_string());
    let mut iter = cf.entries.iter().rev();
    let last = *iter.next().ok_or(Error::EmptyContinuedFraction)?;
    if last == 0 {
        return Err(Error::NonPositiveEntry {
            position: cf.len(),
            value: 0,
        });
    }
    let (mut num, mut den) = (last, 1u64);
    for &a in iter {
        let next = a
            .checked_mul(num)
            .and_then(|v| v.checked_add(den))
            .ok_or_else(overflow)?;
        (num, den) = (next, num);
    }
    Ok((num, den))
}

pub fn reverse(cf: &ContinuedFraction) -> ContinuedFraction {
    let mut entries = cf.entries.clone();
    entries.reverse();
    ContinuedFraction { entries }
}

/// One step applied while normalizing `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum NormalizationStep {
    /// `q` was brought into `(0, p)`.
    ReduceModP { from: i64, to: u64 },
    /// `q` was replaced by `p - q`; the complement is unchanged up to mirror image.
    Mirror { from: u64, to: u64 },
    /// A trailing `1` of a user-supplied fraction was folded into its predecessor.
    Fold { from: ContinuedFraction },
}

impl fmt::Display for NormalizationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ReduceModP { from, to } => write!(f, "reduced q = {from} to {to} mod p"),
            Self::Mirror { .. } => f.write_str("mirror applied"),
            Self::Fold { from } => write!(f, "folded trailing 1 of {from}"),
        }
    }
}

/// A normalized two-bridge link `K(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBridgeLink {
    p: u64,
    q: u64,
    cf: ContinuedFraction,
    trace: Vec<NormalizationStep>,
}

impl TwoBridgeLink {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn cf(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn trace(&self) -> &[NormalizationStep] {
        &self.trace
    }

    /// Length of the canonical continued fraction.
    pub fn n(&self) -> usize {
        self.cf.len()
    }

    /// Link determined by a user-supplied continued fraction. A trailing 1 is
    /// folded and the resulting `p/q` is normalized like any other pair.
    pub fn from_cf(cf: &ContinuedFraction) -> Result<Self> {
        let mut steps = Vec::new();
        let folded = match cf.fold_trailing_one() {
            Some(folded) => {
                steps.push(NormalizationStep::Fold { from: cf.clone() });
                folded
            }
            None => cf.clone(),
        };
        let (p, q) = cf_value(&folded)?;
        let to_i64 = |v: u64| i64::try_from(v).map_err(|_| Error::Overflow(cf.to_string()));
        let mut link = normalize(to_i64(p)?, to_i64(q)?)?;
        steps.append(&mut link.trace);
        link.trace = steps;
        Ok(link)
    }

    /// True iff the link is not a `(2, p)` torus link, i.e. `q ∉ {1, p - 1}`.
    ///
    /// This is the standard two-bridge hyperbolicity criterion; it is not
    /// derived from the spine construction.
    pub fn is_hyperbolic(&self) -> bool {
        is_hyperbolic(self)
    }

    pub fn equivalence_class(&self) -> BTreeSet<u64> {
        equivalence_class(self)
    }

    /// Minimum of the equivalence class.
    pub fn canonical_q(&self) -> u64 {
        self.equivalence_class()
            .into_iter()
            .next()
            .unwrap_or(self.q)
    }
}

impl fmt::Display for TwoBridgeLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{})", self.p, self.q)
    }
}

/// Reduces `q` into `(0, p)`, mirrors it below `p/2` and expands `p/q`.
pub fn normalize(p: i64, q: i64) -> Result<TwoBridgeLink> {
    if p < 2 {
        return Err(Error::PTooSmall(p));
    }
    let p_u = p as u64;
    let reduced = q.rem_euclid(p) as u64;
    if reduced == 0 {
        return Err(Error::QMultipleOfP { p: p_u, q });
    }
    let g = gcd(p_u, reduced);
    if g != 1 {
        return Err(Error::NotCoprime { p: p_u, q, gcd: g });
    }

    let mut trace = Vec::new();
    if reduced as i64 != q {
        trace.push(NormalizationStep::ReduceModP {
            from: q,
            to: reduced,
        });
    }
    let mut q_norm = reduced;
    if 2 * q_norm > p_u {
        trace.push(NormalizationStep::Mirror {
            from: q_norm,
            to: p_u - q_norm,
        });
        q_norm = p_u - q_norm;
    }
    let cf = cf_expand(p, q_norm as i64)?;
    Ok(TwoBridgeLink {
        p: p_u,
        q: q_norm,
        cf,
        trace,
    })
}

pub fn is_hyperbolic(link: &TwoBridgeLink) -> bool {
    link.cf.len() >= 2
}

/// `{q, p - q, q⁻¹, p - q⁻¹}` reduced into `(0, p)`; the links for these
/// values have homeomorphic complements up to mirror image.
pub fn equivalence_class(link: &TwoBridgeLink) -> BTreeSet<u64> {
    let (p, q) = (link.p, link.q);
    let inv = mod_inverse(q, p).expect("normalized links have q coprime to p");
    [q, p - q, inv, p - inv].into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(entries: &[u64]) -> ContinuedFraction {
        ContinuedFraction::new(entries.to_vec()).unwrap()
    }

    /// Oracle: evaluate the nested fraction with explicit rational steps.
    fn nested_value(entries: &[u64]) -> (u64, u64) {
        // value of [a_k..a_n] as num/den, computed right to left
        let mut num = *entries.last().unwrap();
        let mut den = 1;
        for &a in entries[..entries.len() - 1].iter().rev() {
            // a + den/num
            let new_num = a * num + den;
            let new_den = num;
            let g = gcd(new_num, new_den);
            num = new_num / g;
            den = new_den / g;
        }
        (num, den)
    }

    #[test]
    fn expand_examples() {
        assert_eq!(cf_expand(5, 2).unwrap(), cf(&[2, 2]));
        assert_eq!(cf_expand(121, 36).unwrap(), cf(&[3, 2, 1, 3, 3]));
        assert_eq!(cf_expand(8, 3).unwrap(), cf(&[2, 1, 2]));
        assert_eq!(nested_value(&[2, 1, 2]), (8, 3));
        assert_eq!(nested_value(&[3, 2, 1, 3, 3]), (121, 36));
    }

    #[test]
    fn expand_errors_are_distinct() {
        assert_eq!(cf_expand(1, 1), Err(Error::PTooSmall(1)));
        assert_eq!(cf_expand(5, 0), Err(Error::QOutOfRange { p: 5, q: 0 }));
        assert_eq!(cf_expand(5, 7), Err(Error::QOutOfRange { p: 5, q: 7 }));
        assert_eq!(
            cf_expand(6, 4),
            Err(Error::NotCoprime { p: 6, q: 4, gcd: 2 })
        );
    }

    #[test]
    fn value_examples() {
        assert_eq!(cf_value(&cf(&[2, 2])).unwrap(), (5, 2));
        assert_eq!(cf_value(&cf(&[3, 2, 1, 3, 3])).unwrap(), (121, 36));
        assert_eq!(cf_value(&cf(&[2, 1, 1, 2])).unwrap(), (13, 5));
        assert_eq!(nested_value(&[2, 1, 1, 2]), (13, 5));
    }

    #[test]
    fn value_rejects_bad_input() {
        assert_eq!(
            ContinuedFraction::new(vec![]),
            Err(Error::EmptyContinuedFraction)
        );
        assert_eq!(
            ContinuedFraction::from_signed(&[2, -1, 2]),
            Err(Error::NonPositiveEntry {
                position: 2,
                value: -1
            })
        );
        assert!(matches!(
            cf_value(&cf(&[u64::MAX, 2])),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn normalize_examples() {
        let link = normalize(5, 3).unwrap();
        assert_eq!((link.p(), link.q()), (5, 2));
        assert_eq!(link.cf(), &cf(&[2, 2]));
        assert_eq!(
            link.trace(),
            &[NormalizationStep::Mirror { from: 3, to: 2 }]
        );

        let link = normalize(8, 3).unwrap();
        assert_eq!((link.p(), link.q()), (8, 3));
        assert_eq!(link.cf(), &cf(&[2, 1, 2]));
        assert!(link.trace().is_empty());

        let link = normalize(121, 85).unwrap();
        assert_eq!((link.p(), link.q()), (121, 36));
        assert_eq!(link.cf(), &cf(&[3, 2, 1, 3, 3]));
        assert_eq!(
            link.trace(),
            &[NormalizationStep::Mirror { from: 85, to: 36 }]
        );
    }

    #[test]
    fn normalize_reduces_first() {
        let link = normalize(5, -2).unwrap();
        assert_eq!((link.p(), link.q()), (5, 2));
        assert_eq!(
            link.trace(),
            &[
                NormalizationStep::ReduceModP { from: -2, to: 3 },
                NormalizationStep::Mirror { from: 3, to: 2 }
            ]
        );
        assert_eq!(normalize(5, 12).unwrap().q(), 2);
    }

    #[test]
    fn normalize_errors() {
        assert_eq!(normalize(5, 10), Err(Error::QMultipleOfP { p: 5, q: 10 }));
        assert_eq!(
            normalize(9, 6),
            Err(Error::NotCoprime { p: 9, q: 6, gcd: 3 })
        );
        assert_eq!(normalize(1, 1), Err(Error::PTooSmall(1)));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse(&cf(&[3, 2, 1, 3, 3])), cf(&[3, 3, 1, 2, 3]));
        assert_eq!(reverse(&cf(&[2, 1, 2])), cf(&[2, 1, 2]));
        let rev = reverse(&cf_expand(121, 36).unwrap());
        assert_eq!(cf_value(&rev).unwrap(), (121, 37));
        assert_eq!((36 * 37) % 121, 1);
    }

    #[test]
    fn equivalence_class_examples() {
        let set = |v: &[u64]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(
            equivalence_class(&normalize(121, 36).unwrap()),
            set(&[36, 85, 37, 84])
        );
        assert_eq!(equivalence_class(&normalize(5, 2).unwrap()), set(&[2, 3]));
        assert_eq!(equivalence_class(&normalize(2, 1).unwrap()), set(&[1]));
    }

    #[test]
    fn hyperbolicity() {
        assert!(normalize(5, 2).unwrap().is_hyperbolic());
        assert!(!normalize(7, 1).unwrap().is_hyperbolic());
        assert!(!normalize(7, 6).unwrap().is_hyperbolic());
        assert!(normalize(8, 3).unwrap().is_hyperbolic());
        assert!(!normalize(2, 1).unwrap().is_hyperbolic());
    }

    #[test]
    fn from_cf_folds_and_mirrors() {
        let link = TwoBridgeLink::from_cf(&cf(&[2, 1, 1])).unwrap();
        assert_eq!(link.cf(), &cf(&[2, 2]));
        assert_eq!(link.trace().len(), 1);
        assert!(matches!(link.trace()[0], NormalizationStep::Fold { .. }));

        // [1,1,2] = 5/3 mirrors to 5/2
        let link = TwoBridgeLink::from_cf(&cf(&[1, 1, 2])).unwrap();
        assert_eq!((link.p(), link.q()), (5, 2));
    }

    #[test]
    fn mod_inverse_small() {
        assert_eq!(mod_inverse(36, 121), Some(37));
        assert_eq!(mod_inverse(2, 5), Some(3));
        assert_eq!(mod_inverse(1, 2), Some(1));
        assert_eq!(mod_inverse(4, 6), None);
    }

    #[test]
    fn canonical_constructor() {
        assert!(ContinuedFraction::canonical(vec![2, 1, 2]).is_ok());
        assert_eq!(
            ContinuedFraction::canonical(vec![3]),
            Err(Error::TooShort(1))
        );
        assert!(matches!(
            ContinuedFraction::canonical(vec![1, 2]),
            Err(Error::NotCanonical(_))
        ));
    }
}
