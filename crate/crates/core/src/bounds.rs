//! Closed-form complexity bounds for two-bridge link complements.
//!
//! Upper bounds come from counting true vertices of the pillowcase spine
//! (with and without the `a_i = 1` replacements) and from the Sakuma–Weeks
//! canonical triangulation. The lower bound is the hyperbolic volume estimate
//! `vol >= v_3 · max{2, 2n - 2.6667}` divided by `v_3`, which bounds the
//! minimal ideal triangulation and hence the complexity of a hyperbolic link.

use serde::{Deserialize, Serialize};

use crate::cf::{cf_value, normalize, ContinuedFraction, TwoBridgeLink};
use crate::error::{Error, Result};

/// Volume of the regular ideal hyperbolic tetrahedron.
pub const V3: f64 = 1.0149416064096536;

/// Constant in the two-bridge volume estimate, printed as `2.6667...`.
pub const VOLUME_OFFSET: f64 = 2.6667;

/// `Σa_i + 2(n - 3)`: true vertices of the collapsed glued spine.
pub fn lemma1_bound(cf: &ContinuedFraction) -> Result<u64> {
    cf.ensure_canonical()?;
    Ok(cf.sum() + 2 * cf.len() as u64 - 6)
}

/// `Σa_i + 2(n - 3) - #{a_i = 1}`.
pub fn theorem1_bound(cf: &ContinuedFraction) -> Result<u64> {
    Ok(lemma1_bound(cf)? - cf.unit_count() as u64)
}

/// `2Σa_i - 6`, the tetrahedron count of the canonical decomposition.
pub fn sakuma_weeks_bound(cf: &ContinuedFraction) -> Result<u64> {
    cf.ensure_canonical()?;
    Ok(2 * cf.sum() - 6)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBound {
    /// Integer lower bound on the complexity.
    pub complexity: u64,
    /// Lower bound on the hyperbolic volume, `v_3 · max{2, 2n - 2.6667}`.
    pub volume: f64,
}

/// Volume-based lower bound; only defined for hyperbolic links.
///
/// The integer part is `⌈max{2, 2n - 2.6667}⌉`, which is `max{2, 2n - 2}`
/// for every `n >= 1`.
pub fn lower_bound(link: &TwoBridgeLink) -> Result<LowerBound> {
    if !link.is_hyperbolic() {
        return Err(Error::NotHyperbolic {
            p: link.p(),
            q: link.q(),
        });
    }
    let n = link.n() as u64;
    let ratio = f64::max(2.0, 2.0 * n as f64 - VOLUME_OFFSET);
    Ok(LowerBound {
        complexity: u64::max(2, 2 * n - 2),
        volume: V3 * ratio,
    })
}

/// Everything known about `c(S³ \ K(p,q))` from the closed forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub p: u64,
    pub q: u64,
    pub cf: ContinuedFraction,
    pub n: usize,
    pub upper_thm1: u64,
    pub upper_lemma1: u64,
    pub upper_sw: u64,
    pub lower: u64,
    pub lower_volume: f64,
    pub exact: Option<u64>,
    pub hyperbolic: bool,
}

impl BoundReport {
    pub fn min_upper(&self) -> u64 {
        self.upper_thm1.min(self.upper_sw).min(self.upper_lemma1)
    }
}

pub fn complexity_interval(link: &TwoBridgeLink) -> Result<BoundReport> {
    let cf = link.cf();
    cf.ensure_canonical()?;
    let upper_thm1 = theorem1_bound(cf)?;
    let upper_lemma1 = lemma1_bound(cf)?;
    let upper_sw = sakuma_weeks_bound(cf)?;
    let (lower, lower_volume, hyperbolic) = match lower_bound(link) {
        Ok(lb) => (lb.complexity, lb.volume, true),
        Err(Error::NotHyperbolic { .. }) => (0, 0.0, false),
        Err(e) => return Err(e),
    };
    let mut report = BoundReport {
        p: link.p(),
        q: link.q(),
        cf: cf.clone(),
        n: cf.len(),
        upper_thm1,
        upper_lemma1,
        upper_sw,
        lower,
        lower_volume,
        exact: None,
        hyperbolic,
    };
    if hyperbolic && lower == report.min_upper() {
        report.exact = Some(lower);
    }
    Ok(report)
}

/// Upper bound on the complexity of the `d`-fold meridian-cyclic branched cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverBound {
    pub p: u64,
    pub q: u64,
    pub d: u64,
    /// 1 when `p` is odd (a knot), 3 when `p` is even (a two-component link).
    pub r: u64,
    pub value: u64,
}

pub fn cover_bound(link: &TwoBridgeLink, d: u64) -> Result<CoverBound> {
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    let upper = theorem1_bound(link.cf())?;
    let r = if link.p() % 2 == 1 { 1 } else { 3 };
    let value = d
        .checked_mul(upper + r)
        .ok_or_else(|| Error::Overflow(format!("cover bound of degree {d}")))?;
    Ok(CoverBound {
        p: link.p(),
        q: link.q(),
        d,
        r,
        value,
    })
}

/// The link `C(2, 1, ..., 1, 2)` of length `n` and its exact complexity `2n - 2`.
pub fn cor2_family(n: usize) -> Result<(TwoBridgeLink, u64)> {
    if n < 2 {
        return Err(Error::FamilyTooShort(n));
    }
    let mut entries = vec![1; n];
    entries[0] = 2;
    entries[n - 1] = 2;
    let cf = ContinuedFraction::canonical(entries)?;
    let (p, q) = cf_value(&cf)?;
    let as_i64 = |v: u64| i64::try_from(v).map_err(|_| Error::Overflow(cf.to_string()));
    let link = normalize(as_i64(p)?, as_i64(q)?)?;
    Ok((link, 2 * n as u64 - 2))
}

/// `|a_1| + 2Σ|a_i| + |a_n| + n - 4` for the pretzel link `P(a_1, ..., a_n)`.
pub fn pretzel_bound(params: &[i64]) -> Result<u64> {
    let n = params.len();
    if n < 2 {
        return Err(Error::PretzelTooShort(n));
    }
    for (idx, &a) in params.iter().enumerate() {
        let needs_two = idx == 0 || idx == n - 1;
        if a == 0 || (needs_two && a.unsigned_abs() < 2) {
            return Err(Error::PretzelMagnitude {
                position: idx + 1,
                value: a,
            });
        }
    }
    let sum: u64 = params.iter().map(|a| a.unsigned_abs()).sum();
    let first = params[0].unsigned_abs();
    let last = params[n - 1].unsigned_abs();
    Ok(first + 2 * sum + last + n as u64 - 4)
}
