use crate::error::{Error, Result};
use crate::numeric::csum;
use crate::pmf::DiscretePmf;

/// A convex generator `f` with `f(1) = 0`.
pub trait FGenerator: Sync {
    fn name(&self) -> &str;
    fn eval(&self, x: f64) -> f64;
    /// `lim_{x→0⁺} f(x)`
    fn at_zero(&self) -> f64;
}

/// `f(x) = x log x`
#[derive(Debug, Clone, Copy, Default)]
pub struct KullbackLeibler;

/// `f(x) = (x - 1)²`
#[derive(Debug, Clone, Copy, Default)]
pub struct ChiSquared;

/// `f(x) = |x - 1|`, recovering `tv_sum`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TotalVariation;

impl FGenerator for KullbackLeibler {
    fn name(&self) -> &str {
        "kl"
    }
    fn eval(&self, x: f64) -> f64 {
        if x == 0.0 {
            0.0
        } else {
            x * x.ln()
        }
    }
    fn at_zero(&self) -> f64 {
        0.0
    }
}

impl FGenerator for ChiSquared {
    fn name(&self) -> &str {
        "chi2"
    }
    fn eval(&self, x: f64) -> f64 {
        (x - 1.0) * (x - 1.0)
    }
    fn at_zero(&self) -> f64 {
        1.0
    }
}

impl FGenerator for TotalVariation {
    fn name(&self) -> &str {
        "tv"
    }
    fn eval(&self, x: f64) -> f64 {
        (x - 1.0).abs()
    }
    fn at_zero(&self) -> f64 {
        1.0
    }
}

/// Generator from a closure and its declared limit at zero.
pub struct FnGenerator<F> {
    pub name: String,
    pub f: F,
    pub at_zero: f64,
}

impl<F: Fn(f64) -> f64 + Sync> FGenerator for FnGenerator<F> {
    fn name(&self) -> &str {
        &self.name
    }
    fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }
    fn at_zero(&self) -> f64 {
        self.at_zero
    }
}

fn check_support(mu: &DiscretePmf, nu: &DiscretePmf) -> Result<()> {
    match mu.first_support_violation(nu) {
        Some(k) => Err(Error::SupportViolation { k }),
        None => Ok(()),
    }
}

/// `d_f(μ‖ν) = Σ_k ν(k) f(μ(k)/ν(k))`.
///
/// Points with `ν(k) > 0 = μ(k)` contribute `ν(k) f(0⁺)`; points outside
/// both supports contribute nothing. `μ(k) > 0 = ν(k)` is reported as
/// [`Error::SupportViolation`].
pub fn f_divergence(f: &dyn FGenerator, mu: &DiscretePmf, nu: &DiscretePmf) -> Result<f64> {
    check_support(mu, nu)?;
    let terms = nu.iter().filter(|&(_, q)| q > 0.0).map(|(k, q)| {
        let p = mu.pmf(k);
        if p == 0.0 {
            q * f.at_zero()
        } else {
            q * f.eval(p / q)
        }
    });
    Ok(csum(terms))
}

/// Kullback-Leibler divergence `Σ μ log(μ/ν)`.
pub fn kl(mu: &DiscretePmf, nu: &DiscretePmf) -> Result<f64> {
    check_support(mu, nu)?;
    let terms = mu
        .iter()
        .filter(|&(_, p)| p > 0.0)
        .map(|(k, p)| p * (p / nu.pmf(k)).ln());
    Ok(csum(terms).max(0.0))
}

/// χ²-divergence `Σ (μ - ν)²/ν`.
pub fn chi2(mu: &DiscretePmf, nu: &DiscretePmf) -> Result<f64> {
    check_support(mu, nu)?;
    let terms = nu.iter().filter(|&(_, q)| q > 0.0).map(|(k, q)| {
        let d = mu.pmf(k) - q;
        d * d / q
    });
    Ok(csum(terms).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::tv_sum;
    use crate::pmf::{bernoulli, binomial, dirac, discrete_uniform, poisson};

    #[test]
    fn bernoulli_pair() {
        let (a, b) = (bernoulli(0.5).unwrap(), bernoulli(0.25).unwrap());
        let expected = 0.5 * 2f64.ln() + 0.5 * (2.0f64 / 3.0).ln();
        assert!((kl(&a, &b).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.14384).abs() < 1e-5);
        assert!((chi2(&a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((f_divergence(&KullbackLeibler, &a, &b).unwrap() - expected).abs() < 1e-15);
        assert!((f_divergence(&ChiSquared, &a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn dirac_against_uniform() {
        for m in [1u64, 5, 50] {
            let u = discrete_uniform(m).unwrap();
            let n = (2 * m + 1) as f64;
            assert!((kl(&dirac(0), &u).unwrap() - n.ln()).abs() <= 1e-14);
            assert!((chi2(&dirac(0), &u).unwrap() - 2.0 * m as f64).abs() <= 1e-12);
        }
    }

    #[test]
    fn self_divergence_is_zero() {
        let b = binomial(8, 0.35).unwrap();
        assert_eq!(kl(&b, &b).unwrap(), 0.0);
        assert_eq!(chi2(&b, &b).unwrap(), 0.0);
        assert_eq!(f_divergence(&TotalVariation, &b, &b).unwrap(), 0.0);
    }

    #[test]
    fn tv_generator_recovers_tv_sum() {
        let a = binomial(6, 0.5).unwrap();
        let b = poisson(3.0, 1e-12).unwrap();
        let d = f_divergence(&TotalVariation, &a, &b).unwrap();
        assert!((d - tv_sum(&a, &b)).abs() < 1e-12);
    }

    #[test]
    fn support_violation_is_distinguished() {
        let err = kl(&dirac(1), &dirac(0)).unwrap_err();
        assert_eq!(err, Error::SupportViolation { k: 1 });
        assert!(chi2(&bernoulli(0.5).unwrap(), &dirac(0)).is_err());
        // the reverse direction is fine: ν may have extra support
        assert!(kl(&dirac(0), &bernoulli(0.5).unwrap()).is_ok());
    }

    #[test]
    fn closure_generator() {
        let hellinger = FnGenerator {
            name: "hellinger".into(),
            f: |x: f64| (x.sqrt() - 1.0).powi(2),
            at_zero: 1.0,
        };
        let b = binomial(4, 0.5).unwrap();
        assert!(f_divergence(&hellinger, &b, &b).unwrap().abs() < 1e-15);
        let d = f_divergence(&hellinger, &dirac(0), &bernoulli(0.5).unwrap()).unwrap();
        // 0.5 (√2 - 1)² + 0.5
        assert!((d - (0.5 * (2f64.sqrt() - 1.0).powi(2) + 0.5)).abs() < 1e-15);
    }
}
