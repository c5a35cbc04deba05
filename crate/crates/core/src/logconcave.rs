//! Discrete log-concavity: testing, the `|X|` and `X - Y` transforms, and a
//! seeded generator of random log-concave pmfs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::pmf::{make_pmf, DiscretePmf};

/// Default multiplicative tolerance for [`is_log_concave`].
pub const LC_TOL: f64 = 1e-12;

/// Largest interval length accepted by [`random_log_concave`].
pub const MAX_GENERATED_SIZE: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub k: i64,
    /// `p(k)²`
    pub lhs: f64,
    /// `p(k-1) p(k+1)`
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogConcavityVerdict {
    pub is_log_concave: bool,
    pub first_violation: Option<Violation>,
    pub has_interior_zero: bool,
}

/// Check `p(k)² ≥ (1 - tol) p(k-1) p(k+1)` at every interior point, and that
/// the support has no holes.
pub fn is_log_concave(pmf: &DiscretePmf, tol: f64) -> LogConcavityVerdict {
    let w = pmf.weights();
    let has_interior_zero = pmf.has_interior_zero();
    let first_violation = w.windows(3).enumerate().find_map(|(i, win)| {
        let lhs = win[1] * win[1];
        let rhs = win[0] * win[2];
        (lhs < (1.0 - tol) * rhs).then(|| Violation {
            k: pmf.offset() + i as i64 + 1,
            lhs,
            rhs,
        })
    });
    LogConcavityVerdict {
        is_log_concave: first_violation.is_none() && !has_interior_zero,
        first_violation,
        has_interior_zero,
    }
}

/// Distribution of `|X|`: `q(0) = p(0)` and `q(k) = p(k) + p(-k)` for `k ≥ 1`.
pub fn abs_value_transform(pmf: &DiscretePmf) -> DiscretePmf {
    let reach = pmf.min_support().unsigned_abs().max(pmf.max_support().unsigned_abs()) as usize;
    let mut q = vec![0.0; reach + 1];
    for (k, p) in pmf.iter() {
        q[k.unsigned_abs() as usize] += p;
    }
    make_pmf(0, &q, true).expect("folding preserves total mass")
}

/// Distribution of `X - Y` for independent copies `X`, `Y`.
///
/// Computed for `d ≥ 0` and mirrored, so the result is exactly symmetric.
pub fn difference_pmf(pmf: &DiscretePmf) -> DiscretePmf {
    let w = pmf.weights();
    let n = w.len();
    let mut half = vec![0.0; n];
    for (d, slot) in half.iter_mut().enumerate() {
        // P(X - Y = d) = Σ_i p(i + d) p(i)
        *slot = crate::numeric::csum((0..n - d).map(|i| w[i + d] * w[i]));
    }
    let mut full: Vec<f64> = half[1..].iter().rev().copied().collect();
    full.extend_from_slice(&half);
    make_pmf(-(n as i64 - 1), &full, true).expect("autocorrelation has positive mass")
}

/// Random log-concave pmf on an interval of length `m`.
///
/// Draws a concave log-weight sequence from a start slope uniform in
/// `[-2, 2]` and i.i.d. `Exp(1)` decrements of the slope, then exponentiates
/// and normalizes. With `symmetric`, the sequence is drawn on
/// `{0, ..., ⌊m/2⌋}` with a nonpositive start slope and reflected, which
/// yields a symmetric, centered pmf on `{-⌊m/2⌋, ..., ⌊m/2⌋}`. Points more than
/// `e^-700` below the peak are dropped; by concavity they sit at the ends.
pub fn random_log_concave<R: Rng + ?Sized>(m: usize, symmetric: bool, rng: &mut R) -> Result<DiscretePmf> {
    if m == 0 || m > MAX_GENERATED_SIZE {
        return Err(Error::param("m", m as f64, "1 <= m <= 10000"));
    }
    let len = if symmetric { m / 2 + 1 } else { m };
    let mut slope: f64 = rng.random_range(-2.0..=2.0);
    if symmetric {
        slope = -slope.abs();
    }
    let mut log_w = Vec::with_capacity(len);
    let mut cur = 0.0f64;
    log_w.push(cur);
    for _ in 1..len {
        cur += slope;
        log_w.push(cur);
        let dec: f64 = Exp1.sample(rng);
        slope -= dec;
    }
    let (offset, log_w) = if symmetric {
        let mut full: Vec<f64> = log_w[1..].iter().rev().copied().collect();
        full.extend_from_slice(&log_w);
        (-(len as i64 - 1), full)
    } else {
        (-((m / 2) as i64), log_w)
    };
    let peak = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_w
        .iter()
        .map(|&l| if l - peak < -700.0 { 0.0 } else { (l - peak).exp() })
        .collect();
    make_pmf(offset, &weights, true)
}

/// [`random_log_concave`] driven by a fresh stream seeded with `seed`.
pub fn random_log_concave_seeded(m: usize, symmetric: bool, seed: u64) -> Result<DiscretePmf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_log_concave(m, symmetric, &mut rng)
}

/// Raise a pmf to the power `s ≥ 1` and renormalize. Preserves log-concavity
/// and symmetry while concentrating the mass around the mode.
pub fn temper(pmf: &DiscretePmf, s: f64) -> DiscretePmf {
    let peak = pmf.max_pmf().ln();
    let weights: Vec<f64> = pmf
        .weights()
        .iter()
        .map(|&w| {
            let l = s * (w.ln() - peak);
            if l < -700.0 {
                0.0
            } else {
                l.exp()
            }
        })
        .collect();
    make_pmf(pmf.offset(), &weights, true).expect("the mode keeps weight one")
}

/// Temper a symmetric log-concave pmf until its variance is at most `max_var`.
pub fn temper_to_variance(pmf: &DiscretePmf, max_var: f64) -> DiscretePmf {
    let mut s = 1.0;
    let mut out = pmf.clone();
    for _ in 0..64 {
        if out.moments().variance <= max_var {
            return out;
        }
        s *= 1.5;
        out = temper(pmf, s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pmf::{bernoulli, dirac, geometric};

    #[test]
    fn classic_verdicts() {
        assert!(is_log_concave(&geometric(0.5, 1e-12).unwrap(), LC_TOL).is_log_concave);
        let five = make_pmf(-1, &[0.1, 0.2, 0.4, 0.2, 0.1], false).unwrap();
        assert!(is_log_concave(&five, LC_TOL).is_log_concave);

        let bimodal = make_pmf(0, &[0.4, 0.2, 0.4], false).unwrap();
        let v = is_log_concave(&bimodal, LC_TOL);
        assert!(!v.is_log_concave);
        let viol = v.first_violation.unwrap();
        assert_eq!(viol.k, 1);
        assert!((viol.lhs - 0.04).abs() < 1e-15 && (viol.rhs - 0.16).abs() < 1e-15);
    }

    #[test]
    fn interior_zero_is_not_log_concave() {
        let holey = make_pmf(0, &[0.5, 0.0, 0.5], false).unwrap();
        let v = is_log_concave(&holey, LC_TOL);
        assert!(v.has_interior_zero);
        assert!(!v.is_log_concave);
    }

    #[test]
    fn abs_transform_examples() {
        let sym = make_pmf(-1, &[0.25, 0.5, 0.25], false).unwrap();
        let q = abs_value_transform(&sym);
        assert_eq!((q.offset(), q.weights()), (0, &[0.5, 0.5][..]));

        assert_eq!(abs_value_transform(&dirac(-2)).weights(), dirac(2).weights());
        assert_eq!(abs_value_transform(&dirac(-2)).offset(), 2);

        let five = make_pmf(-1, &[0.1, 0.2, 0.4, 0.2, 0.1], false).unwrap();
        let q = abs_value_transform(&five);
        assert_eq!(q.pmf(1), 0.5);
        assert_eq!(q.pmf(2), 0.2);
        assert_eq!(q.pmf(3), 0.1);
        let v = is_log_concave(&q, LC_TOL);
        assert!(!v.is_log_concave);
        let viol = v.first_violation.unwrap();
        assert_eq!(viol.k, 2);
        assert!((viol.lhs - 0.04).abs() < 1e-15);
        assert!((viol.rhs - 0.05).abs() < 1e-15);
    }

    #[test]
    fn difference_examples() {
        let d = difference_pmf(&bernoulli(0.5).unwrap());
        assert_eq!(d.offset(), -1);
        assert_eq!(d.weights(), &[0.25, 0.5, 0.25]);
        let z = difference_pmf(&dirac(9));
        assert_eq!((z.offset(), z.weights()), (0, &[1.0][..]));
    }

    #[test]
    fn generator_examples() {
        let one = random_log_concave_seeded(1, false, 3).unwrap();
        assert_eq!(one.len(), 1);
        let s = random_log_concave_seeded(5, true, 11).unwrap();
        for k in 0..=2 {
            assert_eq!(s.pmf(k), s.pmf(-k));
        }
        assert!(s.mean().abs() <= 1e-15);
        assert!(random_log_concave_seeded(0, false, 1).is_err());
        assert!(random_log_concave_seeded(10_001, false, 1).is_err());
    }

    #[test]
    fn generator_is_reproducible() {
        let a = random_log_concave_seeded(40, false, 99).unwrap();
        let b = random_log_concave_seeded(40, false, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tempering_reaches_unit_variance() {
        let p = random_log_concave_seeded(61, true, 5).unwrap();
        let t = temper_to_variance(&p, 1.0);
        assert!(t.moments().variance <= 1.0);
        assert!(is_log_concave(&t, LC_TOL).is_log_concave);
    }
}
