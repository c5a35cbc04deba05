use serde::Serialize;

use crate::error::{Error, Result};
use crate::pmf::DiscretePmf;

/// Relative slack allowed by [`q_class_membership`], so that the output of
/// [`q_class_fit`] is always accepted.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Parameters of the class `Q(a, c)` of pmfs with `log(1/q(k)) ≤ a k² + log c`
/// on their support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QClassParams {
    pub a: f64,
    pub c: f64,
}

impl QClassParams {
    pub fn new(a: f64, c: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::param("a", a, "> 0"));
        }
        if !(c >= 1.0 && c.is_finite()) {
            return Err(Error::param("c", c, ">= 1"));
        }
        Ok(QClassParams { a, c })
    }

    /// `(1 + log 4, 2e - 1)`, a class containing the unit-variance symmetric Poisson law.
    pub fn symmetric_poisson() -> Self {
        QClassParams {
            a: 1.0 + 4f64.ln(),
            c: 2.0 * std::f64::consts::E - 1.0,
        }
    }
}

/// Whether every support point satisfies `log(1/q(k)) ≤ a k² + log c`.
pub fn q_class_membership(pmf: &DiscretePmf, params: QClassParams) -> bool {
    let log_c = params.c.ln();
    pmf.iter().filter(|&(_, q)| q > 0.0).all(|(k, q)| {
        let env = params.a * (k as f64) * (k as f64) + log_c;
        -q.ln() - env <= MEMBERSHIP_TOL * env.abs().max(1.0)
    })
}

/// Smallest `c ≥ 1` with `pmf ∈ Q(a, c)`.
pub fn q_class_fit(pmf: &DiscretePmf, a: f64) -> Result<QClassParams> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::param("a", a, "> 0"));
    }
    let log_c = pmf
        .iter()
        .filter(|&(_, q)| q > 0.0)
        .map(|(k, q)| -q.ln() - a * (k as f64) * (k as f64))
        .fold(0.0f64, f64::max);
    Ok(QClassParams { a, c: log_c.exp() })
}

pub(crate) fn require_member(pmf: &DiscretePmf, params: QClassParams) -> Result<()> {
    if q_class_membership(pmf, params) {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!(
            "reference pmf is not in Q({}, {})",
            params.a, params.c
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pmf::{binomial, dirac, discrete_uniform, symmetric_poisson_unit_variance};

    #[test]
    fn symmetric_poisson_is_in_class() {
        let q = symmetric_poisson_unit_variance(1e-12).unwrap();
        assert!(q_class_membership(&q, QClassParams::symmetric_poisson()));
    }

    #[test]
    fn uniform_leaves_class() {
        let params = QClassParams::new(0.5, 3.0).unwrap();
        // (c - 1)/2 = 1, so m = 2 must fail
        assert!(!q_class_membership(&discrete_uniform(2).unwrap(), params));
        for m in [3u64, 10, 40] {
            assert!(!q_class_membership(&discrete_uniform(m).unwrap(), params));
        }
    }

    #[test]
    fn dirac_is_in_every_class() {
        for a in [1e-6, 0.3, 7.0] {
            assert!(q_class_membership(&dirac(0), QClassParams::new(a, 1.0).unwrap()));
        }
    }

    #[test]
    fn fit_then_member() {
        let b = binomial(30, 0.4).unwrap();
        for a in [0.01, 0.5, 2.0] {
            let p = q_class_fit(&b, a).unwrap();
            assert!(p.c >= 1.0);
            assert!(q_class_membership(&b, p));
        }
        assert_eq!(q_class_fit(&dirac(0), 1.0).unwrap().c, 1.0);
        assert!(QClassParams::new(0.0, 2.0).is_err());
        assert!(QClassParams::new(1.0, 0.5).is_err());
    }
}
