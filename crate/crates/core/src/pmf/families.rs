//! Constructors for the standard integer families.
//!
//! Infinite-support families are walked outward from their mode using the
//! ratio `p(k±1)/p(k)` in log space, then cut to the smallest interval whose
//! excluded mass on each side is at most `tau`, and renormalized. Every
//! family here is log-concave, so the ratio is non-increasing away from the
//! mode and the unwalked remainder is bounded by a geometric series.

use crate::error::{Error, Result};
use crate::numeric::{csum, ln_factorial};

use super::{make_pmf, DiscretePmf, PmfMeta, Truncation};

/// Default per-side truncation budget.
pub const DEFAULT_TAU: f64 = 1e-12;

/// Walks longer than this are refused (guards against absurd parameters).
const MAX_WALK: usize = 50_000_000;

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau <= 1e-6 {
        Ok(())
    } else {
        Err(Error::param("tau", tau, "0 < tau <= 1e-6"))
    }
}

fn check_open_unit(name: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::param(name, x, "0 < x < 1"))
    }
}

fn with_meta(pmf: DiscretePmf, family: &str, params: &[(&str, f64)], trunc: Option<Truncation>) -> DiscretePmf {
    let input_sum = pmf.meta().input_sum;
    pmf.with_meta(PmfMeta {
        family: Some(family.to_string()),
        params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        input_sum,
        truncation: trunc,
    })
}

struct Walked {
    offset: i64,
    weights: Vec<f64>,
    excluded_left: f64,
    excluded_right: f64,
}

/// Collect relative weights outward from `mode` in one direction.
///
/// `log_ratio(k)` is `ln p(next)/p(k)` where `next` is the neighbour of `k`
/// away from the mode.
fn walk(mode: i64, step: i64, bound: Option<i64>, log_ratio: &dyn Fn(i64) -> f64, tau: f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut k = mode;
    let mut log_w = 0.0;
    loop {
        if bound == Some(k) {
            break;
        }
        let r = log_ratio(k);
        log_w += r;
        k += step;
        let w = log_w.exp();
        if w.is_nan() || w < f64::MIN_POSITIVE {
            break;
        }
        out.push(w);
        if out.len() > MAX_WALK {
            return Err(Error::param(
                "support",
                out.len() as f64,
                "family too wide to materialize",
            ));
        }
        if tau > 0.0 {
            let rho = r.exp();
            // remaining tail beyond k is at most w·ρ/(1-ρ)
            if rho < 1.0 && w * rho / (1.0 - rho) <= 1e-3 * tau {
                break;
            }
        }
    }
    Ok(out)
}

fn materialize(
    mode: i64,
    lower: Option<i64>,
    upper: Option<i64>,
    up: &dyn Fn(i64) -> f64,
    down: &dyn Fn(i64) -> f64,
    tau: f64,
) -> Result<Walked> {
    let right = walk(mode, 1, upper, up, tau)?;
    let left = walk(mode, -1, lower, down, tau)?;
    let offset = mode - left.len() as i64;
    let mut weights: Vec<f64> = left.into_iter().rev().collect();
    weights.push(1.0);
    weights.extend(right);
    if tau == 0.0 {
        return Ok(Walked {
            offset,
            weights,
            excluded_left: 0.0,
            excluded_right: 0.0,
        });
    }

    let total = csum(weights.iter().copied());
    let budget = tau * (1.0 - 1e-3) * total;
    let mut start = 0;
    let mut cut_left = 0.0;
    while start + 1 < weights.len() && cut_left + weights[start] <= budget {
        cut_left += weights[start];
        start += 1;
    }
    let mut end = weights.len() - 1;
    let mut cut_right = 0.0;
    while end > start && cut_right + weights[end] <= budget {
        cut_right += weights[end];
        end -= 1;
    }
    Ok(Walked {
        offset: offset + start as i64,
        weights: weights[start..=end].to_vec(),
        excluded_left: cut_left / total,
        excluded_right: cut_right / total,
    })
}

fn finish(w: Walked, tau: f64, family: &str, params: &[(&str, f64)]) -> Result<DiscretePmf> {
    let pmf = make_pmf(w.offset, &w.weights, true)?;
    Ok(with_meta(
        pmf,
        family,
        params,
        Some(Truncation {
            tau,
            excluded_left: w.excluded_left,
            excluded_right: w.excluded_right,
        }),
    ))
}

/// Point mass at `k`.
pub fn dirac(k: i64) -> DiscretePmf {
    let pmf = make_pmf(k, &[1.0], false).expect("point mass within support limit");
    with_meta(pmf, "dirac", &[("k", k as f64)], None)
}

pub fn bernoulli(p: f64) -> Result<DiscretePmf> {
    check_open_unit("p", p)?;
    let pmf = make_pmf(0, &[1.0 - p, p], false)?;
    Ok(with_meta(pmf, "bernoulli", &[("p", p)], None))
}

/// Binomial(n, p). Weights that underflow `f64` are dropped from the ends.
pub fn binomial(n: u64, p: f64) -> Result<DiscretePmf> {
    if n == 0 {
        return Err(Error::param("n", 0.0, "n >= 1"));
    }
    check_open_unit("p", p)?;
    if n > (1u64 << 52) {
        return Err(Error::param("n", n as f64, "n <= 2^52"));
    }
    let n_i = n as i64;
    let mode = (((n as f64 + 1.0) * p).floor() as i64).min(n_i);
    let odds = (p / (1.0 - p)).ln();
    let nf = n as f64;
    let up = move |k: i64| ((nf - k as f64) / (k as f64 + 1.0)).ln() + odds;
    let down = move |k: i64| (k as f64 / (nf - k as f64 + 1.0)).ln() - odds;
    let w = materialize(mode, Some(0), Some(n_i), &up, &down, 0.0)?;
    let pmf = make_pmf(w.offset, &w.weights, true)?;
    Ok(with_meta(pmf, "binomial", &[("n", nf), ("p", p)], None))
}

/// Geometric on `{0, 1, ...}` with `p(k) = (1 - r) r^k`, truncated at `tau`.
pub fn geometric(r: f64, tau: f64) -> Result<DiscretePmf> {
    check_open_unit("r", r)?;
    check_tau(tau)?;
    let lr = r.ln();
    let w = materialize(0, Some(0), None, &|_| lr, &|_| -lr, tau)?;
    finish(w, tau, "geometric", &[("r", r)])
}

/// Poisson(λ), truncated at `tau` on each side.
pub fn poisson(lambda: f64, tau: f64) -> Result<DiscretePmf> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::param("lambda", lambda, "lambda > 0"));
    }
    check_tau(tau)?;
    let ll = lambda.ln();
    let mode = lambda.floor() as i64;
    let w = materialize(
        mode,
        Some(0),
        None,
        &|k| ll - (k as f64 + 1.0).ln(),
        &|k| (k as f64).ln() - ll,
        tau,
    )?;
    finish(w, tau, "poisson", &[("lambda", lambda)])
}

/// Poisson(λ) materialized on at least `[0, upto]`, with the usual `tau`
/// truncation elsewhere. Used where a reference measure has to cover a given
/// support.
pub fn poisson_covering(lambda: f64, tau: f64, upto: i64) -> Result<DiscretePmf> {
    let base = poisson(lambda, tau)?;
    if upto <= base.max_support() {
        return Ok(base);
    }
    let ll = lambda.ln();
    let mut log_w: Vec<f64> = Vec::with_capacity(upto as usize + 1);
    for k in 0..=upto {
        log_w.push(k as f64 * ll - lambda - ln_factorial(k as u64));
    }
    let weights: Vec<f64> = log_w
        .iter()
        .map(|&l| {
            let w = l.exp();
            if w >= f64::MIN_POSITIVE {
                w
            } else {
                0.0
            }
        })
        .collect();
    let pmf = make_pmf(0, &weights, true)?;
    let trunc = base.meta().truncation.map(|t| Truncation {
        excluded_right: 0.0,
        ..t
    });
    Ok(with_meta(pmf, "poisson", &[("lambda", lambda)], trunc))
}

/// Solve `2e^λ/(2e^λ - 1) · λ(1 + λ) = 1` by bisection on `[1/4, 1]`.
pub fn symmetric_poisson_unit_variance_lambda() -> f64 {
    let g = |l: f64| 2.0 * l.exp() / (2.0 * l.exp() - 1.0) * l * (1.0 + l) - 1.0;
    let (mut lo, mut hi) = (0.25, 1.0);
    debug_assert!(g(lo) < 0.0 && g(hi) > 0.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    assert!((0.25..=1.0).contains(&lambda));
    lambda
}

/// Symmetric Poisson `q(k) ∝ λ^{|k|}/|k|!` with λ chosen for unit variance.
pub fn symmetric_poisson_unit_variance(tau: f64) -> Result<DiscretePmf> {
    check_tau(tau)?;
    let lambda = symmetric_poisson_unit_variance_lambda();
    let ll = lambda.ln();
    let away = move |k: i64| ll - (k.unsigned_abs() as f64 + 1.0).ln();
    let w = materialize(0, None, None, &away, &away, tau)?;
    finish(w, tau, "symmetric_poisson", &[("lambda", lambda)])
}

/// Uniform on `{-m, ..., m}`.
pub fn discrete_uniform(m: u64) -> Result<DiscretePmf> {
    if m > (1u64 << 40) {
        return Err(Error::param("m", m as f64, "m <= 2^40"));
    }
    let n = 2 * m as usize + 1;
    let pmf = make_pmf(-(m as i64), &vec![1.0 / n as f64; n], true)?;
    Ok(with_meta(pmf, "discrete_uniform", &[("m", m as f64)], None))
}

/// `q(k) ∝ exp(-λ k²)`, truncated at `tau`.
pub fn discretized_gaussian(lambda: f64, tau: f64) -> Result<DiscretePmf> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::param("lambda", lambda, "lambda > 0"));
    }
    check_tau(tau)?;
    let away = move |k: i64| {
        let a = k.unsigned_abs() as f64;
        -lambda * (2.0 * a + 1.0)
    };
    let w = materialize(0, None, None, &away, &away, tau)?;
    finish(w, tau, "discretized_gaussian", &[("lambda", lambda)])
}

/// `q(k) ∝ ρ^{|k|}` with `ρ = 2 - √3`, the root of `2ρ/(1-ρ)² = 1`, giving unit variance.
pub fn symmetric_geometric_unit_variance(tau: f64) -> Result<DiscretePmf> {
    check_tau(tau)?;
    let rho = 2.0 - 3f64.sqrt();
    let lr = rho.ln();
    let w = materialize(0, None, None, &|_| lr, &|_| lr, tau)?;
    finish(w, tau, "symmetric_geometric", &[("rho", rho)])
}
