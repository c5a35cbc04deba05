//! Exact distances between finitely-supported integer pmfs.
//!
//! | Function | Quantity | Method |
//! |---|---|---|
//! | [`tv_sum`] | `Σ_k |p(k) - q(k)|` | compensated sum over both support intervals |
//! | [`wasserstein`] | `W_p` | monotone quantile coupling |
//! | [`levy_prokhorov`] | `d_LP` | lattice closed form `tv_sum / 2` |
//! | [`bounded_lipschitz`] | `d_BL` | dynamic program over integer vertices |
//! | [`f_divergence`], [`kl`], [`chi2`] | `Σ ν f(μ/ν)` | term-by-term |
//! | [`kyfan`] | Ky-Fan distance of a coupling | jump scan |

mod coupling;
mod divergence;
mod lipschitz;

pub use coupling::{kyfan, maximal_coupling, CouplingPmf};
pub use divergence::{chi2, f_divergence, kl, ChiSquared, FGenerator, FnGenerator, KullbackLeibler, TotalVariation};
pub use lipschitz::{bounded_lipschitz, LipschitzWitness};

use crate::error::{Error, Result};
use crate::numeric::{csum, CompensatedSum};
use crate::pmf::DiscretePmf;

/// Smallest interval containing both supports.
pub(crate) fn joint_hull(mu: &DiscretePmf, nu: &DiscretePmf) -> (i64, i64) {
    (
        mu.min_support().min(nu.min_support()),
        mu.max_support().max(nu.max_support()),
    )
}

/// Sorted union of the two support intervals (without the gap between them).
pub(crate) fn union_points(mu: &DiscretePmf, nu: &DiscretePmf) -> Vec<i64> {
    let mut pts: Vec<i64> = (mu.min_support()..=mu.max_support())
        .chain(nu.min_support()..=nu.max_support())
        .collect();
    pts.sort_unstable();
    pts.dedup();
    pts
}

/// Total variation in the sum convention, `Σ_k |p(k) - q(k)| ∈ [0, 2]`.
pub fn tv_sum(mu: &DiscretePmf, nu: &DiscretePmf) -> f64 {
    csum(union_points(mu, nu).into_iter().map(|k| (mu.pmf(k) - nu.pmf(k)).abs())).min(2.0)
}

/// `W_p(μ, ν)` for real `p ≥ 1`.
///
/// On the line the comonotone (quantile) coupling is optimal. The two cdfs
/// are merged into breakpoints `0 = u₀ < … < u_M = 1`; both quantile
/// functions are constant on each `(u_i, u_{i+1}]`, so
/// `W_p^p = Σ_i |F_μ⁻¹ - F_ν⁻¹|^p (u_{i+1} - u_i)`.
pub fn wasserstein(order: f64, mu: &DiscretePmf, nu: &DiscretePmf) -> Result<f64> {
    Ok(wasserstein_pow(order, mu, nu)?.powf(1.0 / order))
}

/// `W_p^p(μ, ν)`, the optimal transport cost without the final root.
pub fn wasserstein_pow(order: f64, mu: &DiscretePmf, nu: &DiscretePmf) -> Result<f64> {
    if !(order >= 1.0 && order.is_finite()) {
        return Err(Error::param("p", order, "p >= 1"));
    }
    let a: Vec<(i64, f64)> = mu.iter().filter(|&(_, w)| w > 0.0).collect();
    let b: Vec<(i64, f64)> = nu.iter().filter(|&(_, w)| w > 0.0).collect();
    let (mut i, mut j) = (0usize, 0usize);
    let mut fa = CompensatedSum::new();
    let mut fb = CompensatedSum::new();
    fa.add(a[0].1);
    fb.add(b[0].1);
    let mut level = 0.0f64;
    let mut cost = CompensatedSum::new();
    loop {
        let last_a = i + 1 == a.len();
        let last_b = j + 1 == b.len();
        let ca = if last_a { 1.0 } else { fa.value().min(1.0) };
        let cb = if last_b { 1.0 } else { fb.value().min(1.0) };
        let next = ca.min(cb);
        let d = (a[i].0 - b[j].0).unsigned_abs() as f64;
        if next > level && d > 0.0 {
            cost.add(d.powf(order) * (next - level));
        }
        level = level.max(next);
        if last_a && last_b {
            break;
        }
        let adv_a = !last_a && ca <= next;
        let adv_b = !last_b && cb <= next;
        if adv_a {
            i += 1;
            fa.add(a[i].1);
        }
        if adv_b {
            j += 1;
            fb.add(b[j].1);
        }
        if !adv_a && !adv_b {
            // one side is exhausted at level 1; advance the other
            if last_a {
                j += 1;
                fb.add(b[j].1);
            } else {
                i += 1;
                fa.add(a[i].1);
            }
        }
    }
    let value = cost.value().max(0.0);
    debug_assert!(order != 1.0 || (value - w1_cdf(mu, nu)).abs() <= 1e-9 * value.max(1.0));
    Ok(value)
}

/// `W_1` by the cdf formula `Σ_k |F_μ(k) - F_ν(k)|`.
pub fn w1_cdf(mu: &DiscretePmf, nu: &DiscretePmf) -> f64 {
    let pts = union_points(mu, nu);
    let mut fa = CompensatedSum::new();
    let mut fb = CompensatedSum::new();
    let mut acc = CompensatedSum::new();
    for pair in pts.windows(2) {
        let (k, next) = (pair[0], pair[1]);
        fa.add(mu.pmf(k));
        fb.add(nu.pmf(k));
        // |F - G| is constant on [k, next)
        acc.add((fa.value() - fb.value()).abs() * (next - k) as f64);
    }
    acc.value()
}

/// Lévy-Prokhorov distance on the integer lattice.
///
/// For `ε ∈ (0, 1]` the open enlargement `A^ε = {x : d(x, A) < ε}` meets ℤ
/// exactly in `A ∩ ℤ`, since distinct integers are at distance at least one.
/// The defining condition then reads `sup_A (μ(A) - ν(A)) ≤ ε`, whose
/// infimum over `ε` is `sup_A (μ(A) - ν(A)) = tv_sum / 2 ≤ 1`. Larger bands
/// `ε > 1` cannot do better, so `d_LP = tv_sum / 2`.
pub fn levy_prokhorov(mu: &DiscretePmf, nu: &DiscretePmf) -> f64 {
    (0.5 * tv_sum(mu, nu)).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pmf::{bernoulli, binomial, dirac, make_pmf, poisson};

    #[test]
    fn tv_examples() {
        assert_eq!(tv_sum(&dirac(0), &dirac(1)), 2.0);
        assert_eq!(tv_sum(&bernoulli(0.5).unwrap(), &bernoulli(0.25).unwrap()), 0.5);
        let b = binomial(9, 0.4).unwrap();
        assert_eq!(tv_sum(&b, &b), 0.0);
        // far-apart supports do not walk the gap
        assert_eq!(tv_sum(&dirac(-(1 << 50)), &dirac(1 << 50)), 2.0);
    }

    #[test]
    fn wasserstein_examples() {
        for p in [1.0, 1.5, 2.0, 3.0] {
            for m in [1i64, 2, 7, 40] {
                let w = wasserstein(p, &dirac(0), &dirac(m)).unwrap();
                assert!((w - m as f64).abs() < 1e-12, "p={p} m={m}: {w}");
            }
        }
        let w = wasserstein(1.0, &bernoulli(0.5).unwrap(), &bernoulli(0.25).unwrap()).unwrap();
        assert!((w - 0.25).abs() < 1e-15);
        let b = poisson(3.0, 1e-12).unwrap();
        assert_eq!(wasserstein(2.0, &b, &b).unwrap(), 0.0);
        assert!(wasserstein(0.5, &b, &b).is_err());
        assert!(wasserstein(f64::NAN, &b, &b).is_err());
    }

    #[test]
    fn w1_two_routes_agree() {
        let a = binomial(20, 0.3).unwrap();
        let b = poisson(6.0, 1e-12).unwrap();
        let q = wasserstein(1.0, &a, &b).unwrap();
        let c = w1_cdf(&a, &b);
        assert!((q - c).abs() < 1e-12, "{q} vs {c}");
        // mean shift is a lower bound for W1
        assert!(q >= (a.mean() - b.mean()).abs() - 1e-12);
        assert_eq!(w1_cdf(&dirac(0), &dirac(1 << 40)), (1u64 << 40) as f64);
        let spread = make_pmf(-5, &[0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5], false).unwrap();
        assert!((w1_cdf(&spread, &dirac(0)) - 5.0).abs() < 1e-12);
        assert!((wasserstein(1.0, &spread, &dirac(0)).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn levy_prokhorov_examples() {
        assert_eq!(levy_prokhorov(&dirac(0), &dirac(4)), 1.0);
        assert_eq!(
            levy_prokhorov(&bernoulli(0.5).unwrap(), &bernoulli(0.25).unwrap()),
            0.25
        );
        let b = binomial(5, 0.5).unwrap();
        assert_eq!(levy_prokhorov(&b, &b), 0.0);
    }
}
