//! Finitely-supported probability mass functions on the integers.
//!
//! A [`DiscretePmf`] is an offset (the smallest support point) plus a weight
//! vector; weight `i` is the mass at `offset + i`. Construction trims zero
//! ends, validates, and renormalizes exactly, so every value of the type
//! sums to one within floating-point rounding.

mod families;
mod json;
mod moments;
mod spec;

pub use families::*;
pub use json::PmfDocument;
pub use moments::MomentProfile;
pub use spec::parse_family;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::csum;

/// Input sums must be within this distance of one unless normalization is requested.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Largest support magnitude accepted; keeps every support point and every
/// pairwise displacement exactly representable as `f64`.
pub const SUPPORT_LIMIT: i64 = 1 << 52;

/// Sums this close to one count as normalized and are not rescaled.
const RESCALE_SLACK: f64 = 4.0 * f64::EPSILON;

/// Provenance attached to a pmf.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PmfMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    /// Sum of the weights as supplied, before renormalization.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_sum: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Truncation>,
}

/// Tail mass discarded when an infinite-support family was materialized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub tau: f64,
    pub excluded_left: f64,
    pub excluded_right: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePmf {
    offset: i64,
    weights: Vec<f64>,
    meta: PmfMeta,
}

/// Build a pmf from an offset and raw weights.
///
/// Zero weights at either end are trimmed (moving the offset). Without
/// `normalize` the weights must already sum to one within
/// [`NORMALIZATION_TOL`]; they are rescaled by their sum in both cases
/// unless that sum is already one up to a few ulps.
pub fn make_pmf(offset: i64, weights: &[f64], normalize: bool) -> Result<DiscretePmf> {
    if weights.is_empty() {
        return Err(Error::EmptyWeights);
    }
    for (index, &w) in weights.iter().enumerate() {
        if !w.is_finite() {
            return Err(Error::NonFiniteWeight { index });
        }
        if w < 0.0 {
            return Err(Error::NegativeWeight { index, value: w });
        }
    }
    let first = weights.iter().position(|&w| w > 0.0).ok_or(Error::ZeroMass)?;
    let last = weights.iter().rposition(|&w| w > 0.0).unwrap();

    let lo = offset as i128 + first as i128;
    let hi = offset as i128 + last as i128;
    let limit = SUPPORT_LIMIT as i128;
    if lo < -limit || hi > limit {
        return Err(Error::SupportOutOfRange { lo, hi });
    }

    let trimmed = &weights[first..=last];
    let sum = csum(trimmed.iter().copied());
    if !sum.is_finite() {
        return Err(Error::NotNormalized { sum });
    }
    if !normalize && (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { sum });
    }
    // rescaling is skipped once the sum is one to within rounding, so that
    // rebuilding a pmf from its own weights is the identity
    let weights: Vec<f64> = if (sum - 1.0).abs() <= RESCALE_SLACK {
        trimmed.to_vec()
    } else {
        trimmed.iter().map(|w| w / sum).collect()
    };
    Ok(DiscretePmf {
        offset: lo as i64,
        weights,
        meta: PmfMeta {
            input_sum: Some(sum),
            ..PmfMeta::default()
        },
    })
}

impl DiscretePmf {
    /// Smallest support point.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn meta(&self) -> &PmfMeta {
        &self.meta
    }

    pub fn with_meta(mut self, meta: PmfMeta) -> Self {
        self.meta = meta;
        self
    }

    /// Number of points in the support interval.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_support(&self) -> i64 {
        self.offset
    }

    pub fn max_support(&self) -> i64 {
        self.offset + self.weights.len() as i64 - 1
    }

    /// Mass at `k`; zero outside the support interval.
    pub fn pmf(&self, k: i64) -> f64 {
        let i = k as i128 - self.offset as i128;
        if i < 0 || i >= self.weights.len() as i128 {
            0.0
        } else {
            self.weights[i as usize]
        }
    }

    /// `(k, p(k))` over the support interval, zeros included.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, f64)> + ExactSizeIterator + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(move |(i, &w)| (self.offset + i as i64, w))
    }

    pub fn has_interior_zero(&self) -> bool {
        self.weights.contains(&0.0)
    }

    pub fn max_pmf(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    /// `true` when every `k` with `p(k) > 0` also has `q(k) > 0`.
    pub fn support_within(&self, other: &DiscretePmf) -> bool {
        self.first_support_violation(other).is_none()
    }

    pub(crate) fn first_support_violation(&self, other: &DiscretePmf) -> Option<i64> {
        self.iter()
            .find(|&(k, p)| p > 0.0 && other.pmf(k) <= 0.0)
            .map(|(k, _)| k)
    }

    pub fn moments(&self) -> MomentProfile {
        MomentProfile::of(self)
    }

    /// `P(X ≤ k)`, a right-continuous step function.
    pub fn cdf(&self, k: i64) -> f64 {
        if k < self.min_support() {
            return 0.0;
        }
        if k >= self.max_support() {
            return 1.0;
        }
        let upto = (k - self.offset) as usize;
        csum(self.weights[..=upto].iter().copied()).min(1.0)
    }

    /// `min{k : cdf(k) ≥ u}` for `u ∈ (0, 1)`.
    pub fn quantile(&self, u: f64) -> Result<i64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::param("u", u, "0 < u < 1"));
        }
        let mut acc = crate::numeric::CompensatedSum::new();
        for (k, w) in self.iter() {
            acc.add(w);
            if acc.value() >= u {
                return Ok(k);
            }
        }
        Ok(self.max_support())
    }

    /// `|E[X]| ≤ tol`.
    pub fn is_centered(&self, tol: f64) -> bool {
        self.mean().abs() <= tol
    }

    pub fn mean(&self) -> f64 {
        // offset + Σ i·p(i) keeps the summands small for far-off supports
        self.offset as f64 + csum(self.weights.iter().enumerate().map(|(i, &w)| i as f64 * w))
    }

    /// Short stable identifier of the support and weights, for reports.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(self.offset.to_le_bytes());
        for w in &self.weights {
            h.update(w.to_bits().to_le_bytes());
        }
        hex::encode(&h.finalize()[..8])
    }
}

/// Free-function form of [`DiscretePmf::cdf`].
pub fn cdf(pmf: &DiscretePmf, k: i64) -> f64 {
    pmf.cdf(k)
}

/// Free-function form of [`DiscretePmf::quantile`].
pub fn quantile(pmf: &DiscretePmf, u: f64) -> Result<i64> {
    pmf.quantile(u)
}

/// Free-function form of [`DiscretePmf::moments`].
pub fn moments(pmf: &DiscretePmf) -> MomentProfile {
    pmf.moments()
}

/// Free-function form of [`DiscretePmf::is_centered`].
pub fn is_centered(pmf: &DiscretePmf, tol: f64) -> bool {
    pmf.is_centered(tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_pmf_trims_and_rescales() {
        let p = make_pmf(0, &[0.0, 2.0, 2.0], true).unwrap();
        assert_eq!(p.offset(), 1);
        assert_eq!(p.weights(), &[0.5, 0.5]);
        assert_eq!(p.meta().input_sum, Some(4.0));

        let b = make_pmf(0, &[0.5, 0.5], false).unwrap();
        assert_eq!((b.min_support(), b.max_support()), (0, 1));

        let five = make_pmf(-1, &[0.1, 0.2, 0.4, 0.2, 0.1], false).unwrap();
        assert_eq!((five.min_support(), five.max_support()), (-1, 3));
        assert!((csum(five.weights().iter().copied()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn make_pmf_rejects_bad_input() {
        assert_eq!(make_pmf(0, &[], true), Err(Error::EmptyWeights));
        assert_eq!(make_pmf(0, &[0.0, 0.0], true), Err(Error::ZeroMass));
        assert!(matches!(
            make_pmf(0, &[0.5, -0.1, 0.6], true),
            Err(Error::NegativeWeight { index: 1, .. })
        ));
        assert!(matches!(
            make_pmf(0, &[0.5, 0.6], false),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            make_pmf(0, &[f64::NAN], true),
            Err(Error::NonFiniteWeight { index: 0 })
        ));
        assert!(matches!(
            make_pmf(i64::MAX - 1, &[1.0], false),
            Err(Error::SupportOutOfRange { .. })
        ));
        // within tolerance is accepted without the flag
        assert!(make_pmf(0, &[0.5, 0.5 + 5e-10], false).is_ok());
    }

    #[test]
    fn quantile_step_boundaries() {
        let b = bernoulli(0.5).unwrap();
        assert_eq!(b.quantile(0.5).unwrap(), 0);
        assert_eq!(b.quantile(0.5 + 1e-12).unwrap(), 1);
        let d = dirac(3);
        for u in [1e-9, 0.3, 0.999_999] {
            assert_eq!(d.quantile(u).unwrap(), 3);
        }
        assert!(b.quantile(0.0).is_err());
        assert!(b.quantile(1.0).is_err());
        assert!(b.quantile(f64::NAN).is_err());
    }

    #[test]
    fn geometric_cdf_closed_form() {
        let g = geometric(0.5, 1e-12).unwrap();
        for k in 0..20 {
            let closed = 1.0 - 0.5f64.powi(k as i32 + 1);
            assert!((g.cdf(k) - closed).abs() <= 1e-9, "k={k}");
        }
        assert_eq!(g.cdf(-1), 0.0);
    }

    #[test]
    fn centering() {
        assert!(discrete_uniform(4).unwrap().is_centered(1e-12));
        assert!(!bernoulli(0.5).unwrap().is_centered(1e-12));
        assert!(symmetric_poisson_unit_variance(1e-12).unwrap().is_centered(1e-9));
    }

    #[test]
    fn pmf_outside_support_is_zero() {
        let p = make_pmf(-2, &[0.25, 0.5, 0.25], false).unwrap();
        assert_eq!(p.pmf(-3), 0.0);
        assert_eq!(p.pmf(-1), 0.5);
        assert_eq!(p.pmf(i64::MAX), 0.0);
        assert_eq!(p.pmf(i64::MIN), 0.0);
    }
}
