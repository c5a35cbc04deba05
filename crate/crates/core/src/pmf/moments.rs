use crate::numeric::csum;

use super::DiscretePmf;

/// Summary statistics of one pmf, computed by exact finite sums.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentProfile {
    pub mean: f64,
    pub variance: f64,
    /// `E|X - EX|`
    pub mean_abs_dev: f64,
    /// Shannon entropy in nats, with `0·log 0 = 0`.
    pub entropy: f64,
    pub max_pmf: f64,
    // (|k - mean|, p(k)) for every support point with p(k) > 0
    deviations: Vec<(f64, f64)>,
}

impl MomentProfile {
    pub(crate) fn of(pmf: &DiscretePmf) -> Self {
        let mean = pmf.mean();
        let deviations: Vec<(f64, f64)> = pmf
            .iter()
            .filter(|&(_, p)| p > 0.0)
            .map(|(k, p)| ((k as f64 - mean).abs(), p))
            .collect();
        let variance = csum(deviations.iter().map(|&(d, p)| p * d * d)).max(0.0);
        let mean_abs_dev = csum(deviations.iter().map(|&(d, p)| p * d)).max(0.0);
        let entropy = csum(deviations.iter().map(|&(_, p)| -p * p.ln())).max(0.0);
        MomentProfile {
            mean,
            variance,
            mean_abs_dev,
            entropy,
            max_pmf: pmf.max_pmf(),
            deviations,
        }
    }

    /// `E|X - EX|^β` for real `β ≥ 1`.
    pub fn abs_moment(&self, beta: f64) -> f64 {
        csum(self.deviations.iter().map(|&(d, p)| p * d.powf(beta)))
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

impl DiscretePmf {
    /// `E|X|^β` about the origin (not the mean).
    pub fn abs_raw_moment(&self, beta: f64) -> f64 {
        csum(self.iter().map(|(k, p)| p * (k as f64).abs().powf(beta)))
    }

    /// `E[log² p(X)]`
    pub fn log_squared_moment(&self) -> f64 {
        csum(self.iter().filter(|&(_, p)| p > 0.0).map(|(_, p)| p * p.ln() * p.ln()))
    }

    /// `P(|X - center| ≥ t)`
    pub fn tail_from(&self, center: f64, t: f64) -> f64 {
        csum(
            self.iter()
                .filter(|&(k, _)| (k as f64 - center).abs() >= t)
                .map(|(_, p)| p),
        )
    }

    /// `P(|X| > s)`, strict inequality.
    pub fn strict_abs_tail(&self, s: f64) -> f64 {
        csum(self.iter().filter(|&(k, _)| (k as f64).abs() > s).map(|(_, p)| p))
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn bernoulli_half() {
        let m = bernoulli(0.5).unwrap().moments();
        assert_eq!(m.mean, 0.5);
        assert_eq!(m.variance, 0.25);
        assert_eq!(m.max_pmf, 0.5);
        assert!((m.entropy - 2f64.ln()).abs() < 1e-15);
        assert_eq!(m.mean_abs_dev, 0.5);
    }

    #[test]
    fn dirac_is_degenerate() {
        let m = dirac(7).moments();
        assert_eq!(m.mean, 7.0);
        assert_eq!(m.variance, 0.0);
        assert_eq!(m.entropy, 0.0);
        assert_eq!(m.max_pmf, 1.0);
        assert_eq!(m.abs_moment(3.5), 0.0);
    }

    #[test]
    fn uniform_three_points() {
        let m = discrete_uniform(1).unwrap().moments();
        assert!(m.mean.abs() < 1e-15);
        assert!((m.variance - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.entropy - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn abs_moment_one_and_two() {
        let p = binomial(12, 0.3).unwrap();
        let m = p.moments();
        assert!((m.abs_moment(1.0) - m.mean_abs_dev).abs() <= 1e-12);
        assert!((m.abs_moment(2.0) - m.variance).abs() <= 1e-9 * m.variance);
        assert!((m.mean - 3.6).abs() < 1e-12);
        assert!((m.variance - 2.52).abs() < 1e-12);
    }

    #[test]
    fn truncated_geometric_mean() {
        for r in [0.2, 0.5, 0.9] {
            let m = geometric(r, 1e-12).unwrap().moments();
            assert!((m.mean - r / (1.0 - r)).abs() < 1e-6, "r={r}: {}", m.mean);
        }
    }
}
