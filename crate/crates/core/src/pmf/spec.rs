//! Compact textual pmf specifications such as `poisson:2` or `binomial:10,0.3`.
//!
//! | spec                  | pmf                                           |
//! |-----------------------|-----------------------------------------------|
//! | `dirac:k`             | point mass at `k`                             |
//! | `bernoulli:p`         | Bernoulli(p)                                  |
//! | `binomial:n,p`        | Binomial(n, p), `n <= 10^9`                   |
//! | `geometric:r`         | `(1-r) r^k` on `k >= 0`, `r <= 0.9999`        |
//! | `poisson:λ`           | Poisson(λ), `λ <= 10^9`                       |
//! | `uniform:m`           | uniform on `{-m, ..., m}`, `m <= 10^6`        |
//! | `gaussian:λ`          | `∝ exp(-λk²)`, `λ >= 10^-8`                   |
//! | `sym-poisson`         | unit-variance symmetric Poisson               |
//! | `sym-geometric`       | unit-variance symmetric geometric             |
//! | `random:m`            | random log-concave pmf on `m` points          |
//! | `random-sym:m`        | random symmetric log-concave pmf              |
//!
//! Truncated families use [`DEFAULT_TAU`]. Random families draw from a
//! ChaCha8 stream seeded with the caller's seed.

use super::families::*;
use super::DiscretePmf;
use crate::error::{Error, Result};
use crate::logconcave::{random_log_concave_seeded, MAX_GENERATED_SIZE};

const MAX_BINOMIAL_N: u64 = 1_000_000_000;
const MAX_POISSON_LAMBDA: f64 = 1e9;
const MAX_GEOMETRIC_R: f64 = 0.9999;
const MAX_UNIFORM_M: u64 = 1_000_000;
const MIN_GAUSSIAN_LAMBDA: f64 = 1e-8;

fn spec_err(msg: impl Into<String>) -> Error {
    Error::FamilySpec(msg.into())
}

fn float(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| spec_err(format!("{what}: expected a number, got {s:?}")))?;
    if !v.is_finite() {
        return Err(spec_err(format!("{what}: {s:?} is not finite")));
    }
    Ok(v)
}

fn int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| spec_err(format!("{what}: expected an integer, got {s:?}")))
}

fn args<'a>(family: &str, rest: Option<&'a str>, n: usize) -> Result<Vec<&'a str>> {
    let got: Vec<&str> = match rest {
        None => Vec::new(),
        Some(r) => r.split(',').collect(),
    };
    if got.len() != n {
        return Err(spec_err(format!("{family} takes {n} argument(s), got {}", got.len())));
    }
    Ok(got)
}

/// Build the pmf described by `spec`. `seed` is used only by random families.
pub fn parse_family(spec: &str, seed: u64) -> Result<DiscretePmf> {
    let spec = spec.trim();
    let (family, rest) = match spec.split_once(':') {
        Some((f, r)) => (f.trim(), Some(r)),
        None => (spec, None),
    };
    let family = family.to_ascii_lowercase();
    match family.as_str() {
        "dirac" => {
            let a = args(&family, rest, 1)?;
            Ok(dirac(int(a[0], "k")?))
        }
        "bernoulli" => {
            let a = args(&family, rest, 1)?;
            bernoulli(float(a[0], "p")?)
        }
        "binomial" => {
            let a = args(&family, rest, 2)?;
            let n: u64 = int(a[0], "n")?;
            if n > MAX_BINOMIAL_N {
                return Err(Error::param("n", n as f64, "n <= 1e9"));
            }
            binomial(n, float(a[1], "p")?)
        }
        "geometric" => {
            let a = args(&family, rest, 1)?;
            let r = float(a[0], "r")?;
            if r > MAX_GEOMETRIC_R {
                return Err(Error::param("r", r, "r <= 0.9999"));
            }
            geometric(r, DEFAULT_TAU)
        }
        "poisson" => {
            let a = args(&family, rest, 1)?;
            let lambda = float(a[0], "lambda")?;
            if lambda > MAX_POISSON_LAMBDA {
                return Err(Error::param("lambda", lambda, "lambda <= 1e9"));
            }
            poisson(lambda, DEFAULT_TAU)
        }
        "uniform" => {
            let a = args(&family, rest, 1)?;
            let m: u64 = int(a[0], "m")?;
            if m > MAX_UNIFORM_M {
                return Err(Error::param("m", m as f64, "m <= 1e6"));
            }
            discrete_uniform(m)
        }
        "gaussian" => {
            let a = args(&family, rest, 1)?;
            let lambda = float(a[0], "lambda")?;
            if lambda < MIN_GAUSSIAN_LAMBDA {
                return Err(Error::param("lambda", lambda, "lambda >= 1e-8"));
            }
            discretized_gaussian(lambda, DEFAULT_TAU)
        }
        "sym-poisson" => {
            args(&family, rest.filter(|r| !r.is_empty()), 0)?;
            symmetric_poisson_unit_variance(DEFAULT_TAU)
        }
        "sym-geometric" => {
            args(&family, rest.filter(|r| !r.is_empty()), 0)?;
            symmetric_geometric_unit_variance(DEFAULT_TAU)
        }
        "random" | "random-sym" => {
            let a = args(&family, rest, 1)?;
            let m: usize = int(a[0], "m")?;
            if m == 0 || m > MAX_GENERATED_SIZE {
                return Err(Error::param("m", m as f64, "1 <= m <= 10000"));
            }
            random_log_concave_seeded(m, family == "random-sym", seed)
        }
        _ => Err(spec_err(format!("unknown family {family:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_family() {
        for s in [
            "dirac:-3",
            "bernoulli:0.25",
            "binomial:10,0.3",
            "geometric:0.5",
            "poisson:2",
            "uniform:4",
            "gaussian:0.5",
            "sym-poisson",
            "sym-geometric:",
            "random:12",
            "random-sym:12",
            " Poisson : 2 ",
        ] {
            assert!(parse_family(s, 7).is_ok(), "{s}");
        }
        assert_eq!(parse_family("dirac:-3", 0).unwrap(), dirac(-3));
        assert_eq!(parse_family("binomial:10, 0.3", 0).unwrap(), binomial(10, 0.3).unwrap());
    }

    #[test]
    fn random_families_follow_the_seed() {
        assert_eq!(
            parse_family("random:20", 5).unwrap(),
            parse_family("random:20", 5).unwrap()
        );
        assert_ne!(
            parse_family("random:20", 5).unwrap(),
            parse_family("random:20", 6).unwrap()
        );
    }

    #[test]
    fn rejects_bad_specs() {
        for s in [
            "",
            "cauchy:1",
            "dirac",
            "dirac:1,2",
            "dirac:x",
            "bernoulli:1.5",
            "bernoulli:nan",
            "binomial:10",
            "binomial:2000000000,0.5",
            "geometric:0.99999",
            "poisson:inf",
            "poisson:-1",
            "uniform:9999999",
            "gaussian:0",
            "sym-poisson:1",
            "random:0",
            "random-sym:100000",
        ] {
            assert!(parse_family(s, 1).is_err(), "{s}");
        }
    }
}
