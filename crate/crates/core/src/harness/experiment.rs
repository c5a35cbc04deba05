use std::fmt::Write as _;

use crate::distances::{bounded_lipschitz, chi2, kl, levy_prokhorov, tv_sum, wasserstein};
use crate::error::{Error, Result};
use crate::pmf::{binomial, poisson_covering, DEFAULT_TAU};

pub const EXPERIMENT_NAME: &str = "binomial-poisson";

/// CSV header, in column order.
pub const COLUMNS: [&str; 9] = ["name", "n", "tv", "lp", "bl", "w1", "w2", "kl", "chi2"];

/// Distances between `binomial(n, λ/n)` and `Poisson(λ)`. Divergences are
/// `None` when the binomial charges a point the truncated Poisson does not.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub n: u64,
    pub tv: f64,
    pub lp: f64,
    pub bl: f64,
    pub w1: f64,
    pub w2: f64,
    pub kl: Option<f64>,
    pub chi2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    StrictlyDecreasing,
    NotMonotone,
    /// Fewer than two defined values.
    Undetermined,
}

impl Trend {
    fn of(values: &[Option<f64>]) -> Trend {
        let defined: Vec<f64> = values.iter().flatten().copied().collect();
        if defined.len() < 2 || defined.len() < values.len() {
            Trend::Undetermined
        } else if defined.windows(2).all(|w| w[1] < w[0]) {
            Trend::StrictlyDecreasing
        } else {
            Trend::NotMonotone
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Trend::StrictlyDecreasing => "decreasing",
            Trend::NotMonotone => "not-monotone",
            Trend::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentTable {
    pub lambda: f64,
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentTable {
    /// Trend of each metric column in `n` order, keyed by column name.
    pub fn trends(&self) -> Vec<(&'static str, Trend)> {
        let col = |f: fn(&ExperimentRow) -> Option<f64>| Trend::of(&self.rows.iter().map(f).collect::<Vec<_>>());
        vec![
            ("tv", col(|r| Some(r.tv))),
            ("lp", col(|r| Some(r.lp))),
            ("bl", col(|r| Some(r.bl))),
            ("w1", col(|r| Some(r.w1))),
            ("w2", col(|r| Some(r.w2))),
            ("kl", col(|r| r.kl)),
            ("chi2", col(|r| r.chi2)),
        ]
    }

    /// Rows in [`COLUMNS`] order, followed by one `trend` row.
    pub fn to_csv(&self) -> String {
        let cell = |x: Option<f64>| x.map_or_else(|| "support_violation".to_string(), |v| v.to_string());
        let mut s = COLUMNS.join(",");
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{EXPERIMENT_NAME},{},{},{},{},{},{},{},{}",
                r.n,
                r.tv,
                r.lp,
                r.bl,
                r.w1,
                r.w2,
                cell(r.kl),
                cell(r.chi2)
            );
        }
        let trends: Vec<&str> = self.trends().iter().map(|(_, t)| t.as_str()).collect();
        let _ = writeln!(s, "trend,,{}", trends.join(","));
        s
    }
}

/// Run the law-of-small-numbers sweep for each `n` in `ns`.
///
/// Requires `λ > 0` and every `n > λ`, so that `λ/n < 1`. The Poisson side
/// is materialized on at least `{0, …, n}` to cover the binomial support.
pub fn binomial_poisson(lambda: f64, ns: &[u64]) -> Result<ExperimentTable> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::param("lambda", lambda, "lambda > 0"));
    }
    if ns.is_empty() {
        return Err(Error::Config("experiment needs at least one n".into()));
    }
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        if (n as f64) <= lambda {
            return Err(Error::param("n", n as f64, "n > lambda"));
        }
        let b = binomial(n, lambda / n as f64)?;
        let p = poisson_covering(lambda, DEFAULT_TAU, n.min(i64::MAX as u64) as i64)?;
        rows.push(ExperimentRow {
            n,
            tv: tv_sum(&b, &p),
            lp: levy_prokhorov(&b, &p),
            bl: bounded_lipschitz(&b, &p).0,
            w1: wasserstein(1.0, &b, &p)?,
            w2: wasserstein(2.0, &b, &p)?,
            kl: kl(&b, &p).ok(),
            chi2: chi2(&b, &p).ok(),
        });
    }
    Ok(ExperimentTable { lambda, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decreasing_in_n() {
        let t = binomial_poisson(1.0, &[2, 4, 8, 16, 32]).unwrap();
        for (name, trend) in t.trends() {
            if ["tv", "w1", "kl"].contains(&name) {
                assert_eq!(trend, Trend::StrictlyDecreasing, "{name}");
            }
        }
        let csv = t.to_csv();
        assert!(csv.starts_with("name,n,tv,lp,bl,w1,w2,kl,chi2\n"));
        assert_eq!(csv.lines().count(), 7);
        assert!(csv.lines().last().unwrap().starts_with("trend,,decreasing"));
    }

    #[test]
    fn rejects_degenerate_n() {
        assert!(binomial_poisson(1.0, &[1]).is_err());
        assert!(binomial_poisson(2.0, &[4, 2]).is_err());
        assert!(binomial_poisson(0.0, &[4]).is_err());
        assert!(binomial_poisson(1.0, &[]).is_err());
    }

    #[test]
    fn trend_classification() {
        assert_eq!(Trend::of(&[Some(3.0), Some(2.0)]), Trend::StrictlyDecreasing);
        assert_eq!(Trend::of(&[Some(3.0), Some(3.0)]), Trend::NotMonotone);
        assert_eq!(Trend::of(&[Some(3.0), None]), Trend::Undetermined);
    }
}
