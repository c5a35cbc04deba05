use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lcdist::bounds::SLACK_TOL;
use lcdist::harness::{binomial_poisson, run_campaign, CampaignConfig, Suite};
use lcdist::metric::parse_metric_list;
use lcdist::pmf::parse_family;
use lcdist::{DiscretePmf, Error};

/// Distances between discrete distributions and seeded checks of the
/// log-concave inequality suite.
#[derive(Parser)]
#[command(name = "lcdist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate distances between two pmfs.
    ///
    /// Each pmf is a JSON file `{"offset": k, "probs": [...]}` or a family
    /// spec such as `poisson:2`, `binomial:10,0.3` or `random-sym:12`.
    Dist {
        mu: String,
        nu: String,
        /// Comma-separated list of tv, lp, bl, w:<p>, kl, chi2.
        #[arg(long, default_value = "tv,lp,bl,w:1,w:2,kl,chi2")]
        metrics: String,
        /// Seed for random family specs.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Write the pmf described by a family spec as JSON.
    Gen {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded verification campaign. Exits 1 if any check fails.
    Verify {
        /// lemmas, theorems, relations, oracles or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 200)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the JSON report here; written whether or not checks pass.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Relative slack tolerance for inequality records.
        #[arg(long, default_value_t = SLACK_TOL)]
        tol: f64,
        /// Worker threads (0 picks the number of cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        #[arg(long, default_value_t = 32)]
        max_size: usize,
    },
    /// Binomial(n, λ/n) against Poisson(λ) for a list of n, as CSV.
    Experiment {
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Comma-separated list of n.
        #[arg(long, default_value = "2,4,8,16,32")]
        n: String,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn load(arg: &str, seed: u64) -> Result<DiscretePmf, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
        return DiscretePmf::from_json_bytes(&bytes).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{arg}: {m}")),
            other => other,
        });
    }
    parse_family(arg, seed).map_err(|e| match e {
        Error::FamilySpec(m) => Error::FamilySpec(format!("{arg:?} is neither a file nor a family spec ({m})")),
        other => other,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dist(mu: &str, nu: &str, metrics: &str, seed: u64, as_json: bool) -> Result<u8, Error> {
    let metrics = parse_metric_list(metrics)?;
    let mu = load(mu, seed)?;
    let nu = load(nu, seed)?;
    let mut rows = Vec::with_capacity(metrics.len());
    for m in &metrics {
        match m.evaluate(&mu, &nu) {
            Ok(v) => rows.push((m.to_string(), v, None)),
            // Infinite divergence is a result, not a failure.
            Err(e @ Error::SupportViolation { .. }) => rows.push((m.to_string(), f64::INFINITY, Some(e.to_string()))),
            Err(e) => return Err(e),
        }
    }
    if as_json {
        let results: Vec<Value> = rows
            .iter()
            .map(|(name, v, note)| match note {
                Some(n) => json!({"metric": name, "value": num(*v), "note": n}),
                None => json!({"metric": name, "value": num(*v)}),
            })
            .collect();
        let doc = json!({"mu": mu.fingerprint(), "nu": nu.fingerprint(), "results": results});
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        for (name, v, note) in &rows {
            match note {
                Some(n) => println!("{name:<8} {v}  ({n})"),
                None => println!("{name:<8} {v}"),
            }
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: &str,
    trials: u32,
    seed: u64,
    out: Option<&Path>,
    tol: f64,
    jobs: usize,
    min_size: usize,
    max_size: usize,
) -> Result<u8, Error> {
    let config = CampaignConfig {
        suite: suite.parse::<Suite>()?,
        trials,
        seed,
        min_size,
        max_size,
        slack_tol: tol,
    };
    let report = run_campaign(&config, jobs)?;
    if let Some(p) = out {
        std::fs::write(p, report.to_json()).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    for (name, s) in report.statement_summary() {
        println!(
            "{name:<32} {:>7} records  {:>4} failed  min slack {:e}",
            s.count, s.failures, s.extreme
        );
    }
    for (name, s) in report.oracle_summary() {
        println!(
            "{name:<32} {:>7} records  {:>4} failed  max gap {:e}",
            s.count, s.failures, s.extreme
        );
    }
    for line in report.failure_lines().iter().take(20) {
        println!("{line}");
    }
    println!(
        "{}: {} failures, {} workers, {:.2}s",
        if report.passed() { "PASS" } else { "FAIL" },
        report.failures(),
        report.workers,
        report.wall_time_seconds
    );
    Ok(report.exit_code() as u8)
}

fn experiment(lambda: f64, ns: &str, out: Option<&Path>) -> Result<u8, Error> {
    let ns: Vec<u64> = ns
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad n {s:?} in --n")))
        })
        .collect::<Result<_, _>>()?;
    let table = binomial_poisson(lambda, &ns)?;
    emit(out, &table.to_csv())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dist {
            mu,
            nu,
            metrics,
            seed,
            json,
        } => dist(&mu, &nu, &metrics, seed, json),
        Command::Gen { spec, seed, out } => {
            parse_family(&spec, seed).and_then(|pmf| emit(out.as_deref(), &(pmf.to_json() + "\n")).map(|_| 0))
        }
        Command::Verify {
            suite,
            trials,
            seed,
            out,
            tol,
            jobs,
            min_size,
            max_size,
        } => verify(&suite, trials, seed, out.as_deref(), tol, jobs, min_size, max_size),
        Command::Experiment { lambda, n, out } => experiment(lambda, &n, out.as_deref()),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
