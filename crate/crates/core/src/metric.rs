//! Metric names as accepted on the command line: `tv`, `lp`, `bl`, `w:<p>`,
//! `kl` and `chi2`, comma separated.

use std::fmt;
use std::str::FromStr;

use crate::distances::{bounded_lipschitz, chi2, kl, levy_prokhorov, tv_sum, wasserstein};
use crate::error::{Error, Result};
use crate::pmf::DiscretePmf;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    TotalVariation,
    LevyProkhorov,
    BoundedLipschitz,
    Wasserstein(f64),
    KullbackLeibler,
    ChiSquared,
}

impl Metric {
    pub fn evaluate(&self, mu: &DiscretePmf, nu: &DiscretePmf) -> Result<f64> {
        match *self {
            Metric::TotalVariation => Ok(tv_sum(mu, nu)),
            Metric::LevyProkhorov => Ok(levy_prokhorov(mu, nu)),
            Metric::BoundedLipschitz => Ok(bounded_lipschitz(mu, nu).0),
            Metric::Wasserstein(p) => wasserstein(p, mu, nu),
            Metric::KullbackLeibler => kl(mu, nu),
            Metric::ChiSquared => chi2(mu, nu),
        }
    }

    /// Divergences are asymmetric and need `supp μ ⊆ supp ν`.
    pub fn is_divergence(&self) -> bool {
        matches!(self, Metric::KullbackLeibler | Metric::ChiSquared)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::TotalVariation => f.write_str("tv"),
            Metric::LevyProkhorov => f.write_str("lp"),
            Metric::BoundedLipschitz => f.write_str("bl"),
            Metric::Wasserstein(p) => write!(f, "w:{p}"),
            Metric::KullbackLeibler => f.write_str("kl"),
            Metric::ChiSquared => f.write_str("chi2"),
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "tv" => return Ok(Metric::TotalVariation),
            "lp" => return Ok(Metric::LevyProkhorov),
            "bl" => return Ok(Metric::BoundedLipschitz),
            "kl" => return Ok(Metric::KullbackLeibler),
            "chi2" => return Ok(Metric::ChiSquared),
            _ => {}
        }
        let Some(order) = s.strip_prefix("w:") else {
            return Err(Error::Metric(format!("unknown metric {s:?}")));
        };
        let p: f64 = order
            .trim()
            .parse()
            .map_err(|_| Error::Metric(format!("bad Wasserstein order {order:?}")))?;
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::Metric(format!(
                "Wasserstein order must be a finite number >= 1, got {p}"
            )));
        }
        Ok(Metric::Wasserstein(p))
    }
}

/// Parse a comma-separated metric list such as `"tv,lp,w:2"`.
pub fn parse_metric_list(s: &str) -> Result<Vec<Metric>> {
    if s.trim().is_empty() {
        return Err(Error::Metric("empty metric list".into()));
    }
    s.split(',').map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_metric() {
        let m = parse_metric_list("tv,lp,bl,w:1,w:2.5,kl,chi2").unwrap();
        assert_eq!(
            m,
            vec![
                Metric::TotalVariation,
                Metric::LevyProkhorov,
                Metric::BoundedLipschitz,
                Metric::Wasserstein(1.0),
                Metric::Wasserstein(2.5),
                Metric::KullbackLeibler,
                Metric::ChiSquared,
            ]
        );
        assert_eq!(parse_metric_list(" tv , w: 3 ").unwrap().len(), 2);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "tv,", "hellinger", "w:", "w:0.5", "w:nan", "w:inf", "w:x", "W:2"] {
            assert!(matches!(parse_metric_list(bad), Err(Error::Metric(_))), "{bad:?}");
        }
    }

    #[test]
    fn display_round_trips() {
        for m in parse_metric_list("tv,lp,bl,w:1.5,kl,chi2").unwrap() {
            assert_eq!(m.to_string().parse::<Metric>().unwrap(), m);
        }
    }
}
