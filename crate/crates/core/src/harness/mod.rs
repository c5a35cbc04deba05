//! Seeded verification campaigns and the convergence experiment.
//!
//! A campaign draws every trial from its own ChaCha8 stream, keyed by the
//! master seed, the suite and the trial index. Trials run on a rayon pool of
//! configurable width and their records are sorted before reporting, so the
//! report body does not depend on scheduling.

mod experiment;
mod report;
mod trials;

pub use experiment::{binomial_poisson, ExperimentRow, ExperimentTable, Trend, COLUMNS, EXPERIMENT_NAME};
pub use report::{Report, StatementSummary, TrialError};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::SLACK_TOL;
use crate::error::{Error, Result};
use crate::logconcave::MAX_GENERATED_SIZE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemmas,
    Theorems,
    Relations,
    Oracles,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 4] = [Suite::Lemmas, Suite::Theorems, Suite::Relations, Suite::Oracles];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::PARTS.to_vec(),
            s => vec![s],
        }
    }

    fn tag(self) -> u64 {
        match self {
            Suite::Lemmas => 1,
            Suite::Theorems => 2,
            Suite::Relations => 3,
            Suite::Oracles => 4,
            Suite::All => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Theorems => "theorems",
            Suite::Relations => "relations",
            Suite::Oracles => "oracles",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "theorems" => Ok(Suite::Theorems),
            "relations" => Ok(Suite::Relations),
            "oracles" => Ok(Suite::Oracles),
            "all" => Ok(Suite::All),
            _ => Err(Error::Config(format!(
                "unknown suite {s:?} (expected lemmas, theorems, relations, oracles or all)"
            ))),
        }
    }
}

/// Everything that determines a campaign's report body.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub suite: Suite,
    pub trials: u32,
    pub seed: u64,
    /// Interval lengths of generated pmfs are drawn from `min_size..=max_size`.
    /// Oracle trials use their own, smaller limits.
    pub min_size: usize,
    pub max_size: usize,
    /// Relative slack tolerance for inequality records.
    pub slack_tol: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            suite: Suite::All,
            trials: 200,
            seed: 42,
            min_size: 1,
            max_size: 32,
            slack_tol: SLACK_TOL,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.min_size == 0 || self.min_size > self.max_size || self.max_size > MAX_GENERATED_SIZE {
            return Err(Error::Config(format!(
                "size range {}..={} must satisfy 1 <= min <= max <= {MAX_GENERATED_SIZE}",
                self.min_size, self.max_size
            )));
        }
        if !(self.slack_tol >= 0.0 && self.slack_tol.is_finite()) {
            return Err(Error::Config(format!(
                "slack tolerance {} must be finite and >= 0",
                self.slack_tol
            )));
        }
        Ok(())
    }
}

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the stream for one trial of one suite.
pub fn trial_seed(master: u64, suite: Suite, trial: u32) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ suite.tag()) ^ trial as u64)
}

/// Run a campaign on a pool of `workers` threads (`0` lets rayon choose).
pub fn run_campaign(config: &CampaignConfig, workers: usize) -> Result<Report> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    let start = Instant::now();
    let ctx = trials::Context::new(config)?;
    let jobs: Vec<(Suite, u32)> = config
        .suite
        .parts()
        .into_iter()
        .flat_map(|s| (0..config.trials).map(move |t| (s, t)))
        .collect();
    let outcomes: Vec<trials::Outcome> = pool.install(|| {
        jobs.par_iter()
            .map(|&(suite, t)| ctx.run(suite, t, trial_seed(config.seed, suite, t)))
            .collect()
    });
    let mut report = Report::assemble(config.clone(), outcomes);
    report.workers = pool.current_num_threads();
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::Lemmas,
            Suite::Theorems,
            Suite::Relations,
            Suite::Oracles,
            Suite::All,
        ] {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(CampaignConfig::default().validate().is_ok());
        let bad = [
            CampaignConfig {
                trials: 0,
                ..Default::default()
            },
            CampaignConfig {
                min_size: 0,
                ..Default::default()
            },
            CampaignConfig {
                min_size: 9,
                max_size: 3,
                ..Default::default()
            },
            CampaignConfig {
                max_size: MAX_GENERATED_SIZE + 1,
                ..Default::default()
            },
            CampaignConfig {
                slack_tol: -1.0,
                ..Default::default()
            },
        ];
        for c in bad {
            assert!(matches!(c.validate(), Err(Error::Config(_))));
        }
    }

    #[test]
    fn trial_seeds_differ() {
        let a = trial_seed(42, Suite::Lemmas, 0);
        assert_ne!(a, trial_seed(42, Suite::Lemmas, 1));
        assert_ne!(a, trial_seed(42, Suite::Theorems, 0));
        assert_ne!(a, trial_seed(43, Suite::Lemmas, 0));
        assert_eq!(a, trial_seed(42, Suite::Lemmas, 0));
    }

    #[test]
    fn small_campaign_passes_and_is_deterministic() {
        let config = CampaignConfig {
            trials: 3,
            max_size: 12,
            ..Default::default()
        };
        let one = run_campaign(&config, 1).unwrap();
        let two = run_campaign(&config, 4).unwrap();
        assert!(one.passed(), "{:?}", one.failure_lines());
        assert_eq!(one.body_json(), two.body_json());
    }
}
