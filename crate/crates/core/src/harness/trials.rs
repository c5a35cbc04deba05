use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CampaignConfig, Suite};
use crate::bounds::{self, default_r_grid, BoundCheckRecord, QClassParams};
use crate::distances::{
    bounded_lipschitz, f_divergence, kyfan, levy_prokhorov, maximal_coupling, tv_sum, w1_cdf, wasserstein, ChiSquared,
    FGenerator, KullbackLeibler,
};
use crate::error::{Error, Result};
use crate::logconcave::{random_log_concave, temper_to_variance};
use crate::oracles::{
    bl_bruteforce, fdiv_bruteforce, lp_bruteforce, ot_bruteforce, OracleReport, BL_MAX_POINTS, LP_MAX_POINTS,
};
use crate::pmf::{make_pmf, symmetric_poisson_unit_variance, DiscretePmf, DEFAULT_TAU};

pub(crate) const BETAS: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 5.0];
pub(crate) const T_GRID: [f64; 7] = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0];
pub(crate) const WP_PAIRS: [(f64, f64); 3] = [(1.0, 2.0), (1.0, 3.0), (2.0, 4.0)];
pub(crate) const OT_ORDERS: [f64; 4] = [1.0, 1.5, 2.0, 3.0];

/// Largest support length per side for the transport oracle.
const OT_MAX_SUPPORT: usize = 12;
/// Joint hull bound for the bounded-Lipschitz oracle trials.
const BL_HULL: usize = 10;

pub(crate) const TOL_WASSERSTEIN: f64 = 1e-9;
pub(crate) const TOL_PROKHOROV: f64 = 1e-12;
pub(crate) const TOL_FDIV: f64 = 1e-12;

/// Result of one trial.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub bounds: Vec<BoundCheckRecord>,
    pub oracles: Vec<OracleReport>,
    pub errors: Vec<super::TrialError>,
}

/// Read-only state shared by all trials.
pub(crate) struct Context {
    slack_tol: f64,
    min_size: usize,
    max_size: usize,
    reference: DiscretePmf,
    params: QClassParams,
}

impl Context {
    pub fn new(config: &CampaignConfig) -> Result<Self> {
        let reference = symmetric_poisson_unit_variance(DEFAULT_TAU)?;
        let params = QClassParams::symmetric_poisson();
        bounds::q_class_membership(&reference, params)
            .then_some(())
            .ok_or_else(|| Error::Hypothesis("reference measure is outside its class".into()))?;
        Ok(Context {
            slack_tol: config.slack_tol,
            min_size: config.min_size,
            max_size: config.max_size,
            reference,
            params,
        })
    }

    pub fn run(&self, suite: Suite, trial: u32, seed: u64) -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Outcome::default();
        let result = match suite {
            Suite::Lemmas => self.lemmas(&mut rng, &mut out),
            Suite::Theorems => self.theorems(&mut rng, &mut out),
            Suite::Relations => self.relations(&mut rng, &mut out),
            Suite::Oracles => self.oracles(&mut rng, &mut out),
            Suite::All => unreachable!("campaigns are split into parts"),
        };
        if let Err(e) = result {
            out.errors.push(super::TrialError {
                suite,
                trial,
                message: e.to_string(),
            });
        }
        if self.slack_tol != bounds::SLACK_TOL {
            for r in &mut out.bounds {
                r.rejudge(self.slack_tol);
            }
        }
        out
    }

    fn size(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.random_range(self.min_size..=self.max_size)
    }

    fn lemmas(&self, rng: &mut ChaCha8Rng, out: &mut Outcome) -> Result<()> {
        let m = self.size(rng);
        let pmf = random_log_concave(m, false, rng)?;
        let sd = pmf.moments().std_dev();
        let t_rand = rng.random_range(0.0..=4.0 * sd + 2.0);
        let b = &mut out.bounds;
        for beta in BETAS {
            b.extend(bounds::check_moment_lemma(&pmf, beta)?);
        }
        for t in T_GRID.into_iter().chain([t_rand]) {
            b.extend(bounds::check_concentration(&pmf, t)?);
            b.push(bounds::check_noncentered_tail(&pmf, t)?);
        }
        b.extend(bounds::check_maximum_bound(&pmf)?);
        b.push(bounds::check_entropy_bound(&pmf));
        b.push(bounds::check_log_squared_bound(&pmf)?);

        let unit = temper_to_variance(&pmf, 1.0);
        for (i, beta) in BETAS.into_iter().enumerate() {
            let recs = bounds::check_iso_remark(&unit, beta, T_GRID[i])?;
            // the three parameter-free records are kept once
            b.extend(recs.into_iter().filter(|r| {
                i == 0
                    || r.statement == bounds::statement::ISO_MOMENT
                    || r.statement == bounds::statement::ISO_CONCENTRATION
            }));
        }

        let sym = random_log_concave(m, true, rng)?;
        b.push(bounds::check_symmetric_abs(&sym)?);
        Ok(())
    }

    fn theorems(&self, rng: &mut ChaCha8Rng, out: &mut Outcome) -> Result<()> {
        let b = &mut out.bounds;
        let (m1, m2) = (self.size(rng), self.size(rng));
        let x = random_log_concave(m1, true, rng)?;
        let y = random_log_concave(m2, true, rng)?;
        let xu = temper_to_variance(&x, 1.0);
        let yu = temper_to_variance(&y, 1.0);
        for (mu, nu) in [(&x, &y), (&xu, &yu)] {
            b.extend(bounds::theorem_w1_rhs(mu, nu)?);
            for (p, q) in WP_PAIRS {
                b.extend(bounds::theorem_wp_rhs(p, q, mu, nu)?);
            }
        }

        // μ must live inside the truncated reference support
        let reach = self.reference.max_support() as usize;
        let m = self.size(rng).min(2 * reach + 1);
        let mu = temper_to_variance(&random_log_concave(m, true, rng)?, 1.0);
        let nu = &self.reference;
        b.extend(bounds::theorem_kl_rhs(&mu, nu, self.params)?);
        b.push(bounds::theorem_chi2_rhs(&mu, nu, self.params)?);
        let grid = default_r_grid(self.params, mu.moments().variance);
        b.push(bounds::check_fdiv(&KullbackLeibler, &mu, nu, self.params, &grid)?);
        b.push(bounds::check_fdiv(&ChiSquared, &mu, nu, self.params, &grid)?);
        Ok(())
    }

    fn relations(&self, rng: &mut ChaCha8Rng, out: &mut Outcome) -> Result<()> {
        let (m1, m2) = (self.size(rng), self.size(rng));
        let mu = if rng.random_bool(0.5) {
            random_log_concave(m1, false, rng)?
        } else {
            random_pmf(rng, m1, 0, 0.2)?
        };
        let nu = if rng.random_bool(0.5) {
            // a reference whose support covers μ, so the divergence relations apply
            let len = m1.max(m2);
            let slack = (len - mu.len()) as i64;
            let start = mu.min_support() - rng.random_range(0..=slack);
            random_pmf(rng, len, start, 0.0)?
        } else {
            let shift = rng.random_range(-3i64..=3);
            let raw = random_log_concave(m2, false, rng)?;
            make_pmf(raw.offset() + shift, raw.weights(), true)?
        };
        out.bounds.extend(bounds::known_relations_suite(&mu, &nu));
        Ok(())
    }

    fn oracles(&self, rng: &mut ChaCha8Rng, out: &mut Outcome) -> Result<()> {
        let o = &mut out.oracles;

        // optimal transport: each support at most 12 points
        let (la, oa) = (rng.random_range(1..=OT_MAX_SUPPORT), rng.random_range(-4..=4));
        let (lb, ob) = (rng.random_range(1..=OT_MAX_SUPPORT), rng.random_range(-4..=4));
        let a = random_pmf(rng, la, oa, 0.2)?;
        let b = random_pmf(rng, lb, ob, 0.2)?;
        let fp = pair_fingerprint(&a, &b);
        for p in OT_ORDERS {
            o.push(OracleReport::compare(
                format!("wasserstein:{p}"),
                fp.clone(),
                wasserstein(p, &a, &b)?,
                ot_bruteforce(p, &a, &b)?,
                TOL_WASSERSTEIN,
            ));
        }
        o.push(OracleReport::compare(
            "w1_cdf",
            fp.clone(),
            wasserstein(1.0, &a, &b)?,
            w1_cdf(&a, &b),
            TOL_WASSERSTEIN,
        ));

        // Lévy-Prokhorov: joint hull at most 16 points
        let (a, b) = hull_pair(rng, LP_MAX_POINTS)?;
        let fp = pair_fingerprint(&a, &b);
        let lp = levy_prokhorov(&a, &b);
        o.push(OracleReport::compare(
            "levy_prokhorov",
            fp.clone(),
            lp,
            lp_bruteforce(&a, &b)?,
            TOL_PROKHOROV,
        ));
        o.push(OracleReport::compare(
            "levy_prokhorov.half_tv",
            fp.clone(),
            lp,
            tv_sum(&a, &b) / 2.0,
            TOL_PROKHOROV,
        ));
        o.push(OracleReport::compare(
            "kyfan.maximal_coupling",
            fp,
            kyfan(&maximal_coupling(&a, &b)),
            lp,
            TOL_PROKHOROV,
        ));

        // bounded-Lipschitz: joint hull at most 10 points, exact agreement
        let (a, b) = hull_pair(rng, BL_HULL.min(BL_MAX_POINTS))?;
        o.push(OracleReport::compare(
            "bounded_lipschitz",
            pair_fingerprint(&a, &b),
            bounded_lipschitz(&a, &b).0,
            bl_bruteforce(&a, &b)?,
            0.0,
        ));

        // f-divergences: ν has full support on an interval containing supp μ
        let len = rng.random_range(1..=OT_MAX_SUPPORT);
        let nu = random_pmf_floor(rng, len, 0, 0.05)?;
        let mu = random_pmf(rng, len, 0, 0.3)?;
        let fp = pair_fingerprint(&mu, &nu);
        let gens: [&dyn FGenerator; 2] = [&KullbackLeibler, &ChiSquared];
        for f in gens {
            let oracle = fdiv_bruteforce(f, &mu, &nu)?;
            o.push(OracleReport::compare(
                format!("f_divergence:{}", f.name()),
                fp.clone(),
                f_divergence(f, &mu, &nu)?,
                oracle,
                TOL_FDIV * oracle.abs().max(1.0),
            ));
        }
        Ok(())
    }
}

fn pair_fingerprint(a: &DiscretePmf, b: &DiscretePmf) -> String {
    format!("{}:{}", a.fingerprint(), b.fingerprint())
}

/// Uniform random weights on `len` points starting at `offset`; each point is
/// zeroed with probability `zero_prob`. The first point always keeps mass.
pub(crate) fn random_pmf<R: Rng + ?Sized>(rng: &mut R, len: usize, offset: i64, zero_prob: f64) -> Result<DiscretePmf> {
    let mut w: Vec<f64> = (0..len)
        .map(|_| {
            if rng.random_bool(zero_prob) {
                0.0
            } else {
                rng.random::<f64>()
            }
        })
        .collect();
    if w[0] == 0.0 {
        w[0] = 0.5;
    }
    make_pmf(offset, &w, true)
}

/// Random weights bounded below by `floor` before normalization.
fn random_pmf_floor<R: Rng + ?Sized>(rng: &mut R, len: usize, offset: i64, floor: f64) -> Result<DiscretePmf> {
    let w: Vec<f64> = (0..len).map(|_| rng.random_range(floor..=1.0)).collect();
    make_pmf(offset, &w, true)
}

/// Two random pmfs whose joint hull has at most `hull` points.
fn hull_pair<R: Rng + ?Sized>(rng: &mut R, hull: usize) -> Result<(DiscretePmf, DiscretePmf)> {
    let draw = |rng: &mut R| {
        let len = rng.random_range(1..=hull);
        let offset = rng.random_range(0..=(hull - len) as i64);
        random_pmf(rng, len, offset, 0.2)
    };
    Ok((draw(rng)?, draw(rng)?))
}
