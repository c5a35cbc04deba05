use std::f64::consts::{E, PI, SQRT_2};

use super::lemmas::UNIT_VARIANCE;
use super::qclass::require_member;
use super::{
    require_centered, require_log_concave, require_support_within, statement as st, BoundCheckRecord, QClassParams,
};
use crate::distances::{chi2, f_divergence, kl, levy_prokhorov, tv_sum, wasserstein_pow, FGenerator};
use crate::error::{Error, Result};
use crate::numeric::{csum, gamma};
use crate::pmf::DiscretePmf;

/// First absolute moments up to this bound qualify for the universal variants.
const UNIT_ABS_MOMENT: f64 = 1.0 + 1e-12;

/// Number of points in [`default_r_grid`].
pub const R_GRID_POINTS: usize = 64;

fn centered_pair(mu: &DiscretePmf, nu: &DiscretePmf) -> Result<(f64, f64)> {
    require_log_concave(mu, "mu")?;
    require_log_concave(nu, "nu")?;
    require_centered(mu, "mu")?;
    require_centered(nu, "nu")?;
    Ok((mu.abs_raw_moment(1.0), nu.abs_raw_moment(1.0)))
}

/// `W1 ≤ 4 d M log(4e S / (M d))` with `d = d_LP`, `S = E|X| + E|Y| + 1` and
/// `M = 2 max(E|X|, E|Y|) + 1`, for centered log-concave `μ, ν`. When both
/// first absolute moments are at most one, a second record checks
/// `W1 ≤ 12 d log(4e / d)`.
pub fn theorem_w1_rhs(mu: &DiscretePmf, nu: &DiscretePmf) -> Result<Vec<BoundCheckRecord>> {
    let (ex, ey) = centered_pair(mu, nu)?;
    let d = levy_prokhorov(mu, nu);
    let w1 = wasserstein_pow(1.0, mu, nu)?;
    let s = ex + ey + 1.0;
    let m = 2.0 * ex.max(ey) + 1.0;
    let rhs = if d == 0.0 {
        0.0
    } else {
        4.0 * d * m * (4.0 * E * s / (m * d)).ln()
    };
    let mut out = vec![BoundCheckRecord::new(st::W1, w1, rhs)
        .param("d_lp", d)
        .param("abs_mean_mu", ex)
        .param("abs_mean_nu", ey)
        .inputs(&[mu, nu])];
    if ex <= UNIT_ABS_MOMENT && ey <= UNIT_ABS_MOMENT {
        let rhs = if d == 0.0 { 0.0 } else { 12.0 * d * (4.0 * E / d).ln() };
        out.push(
            BoundCheckRecord::new(st::W1_UNIVERSAL, w1, rhs)
                .param("d_lp", d)
                .inputs(&[mu, nu]),
        );
    }
    Ok(out)
}

/// `W_q^q ≤ 2 W_p^p + W_p^p log^{q-p}(K / W_p^p) 8^{q-p} M^{q-p}` with
/// `K = 2^q S^q √Γ(2q+1)` and `S`, `M` as in [`theorem_w1_rhs`].
///
/// Also records the side condition `W_p^p ≤ K` that makes the logarithm
/// nonnegative, and the universal form
/// `24^{q-p} W_p^p log^{q-p}(6^q √Γ(2q+1) / W_p^p) + 2 W_p^p` when both first
/// absolute moments are at most one.
pub fn theorem_wp_rhs(p: f64, q: f64, mu: &DiscretePmf, nu: &DiscretePmf) -> Result<Vec<BoundCheckRecord>> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::param("p", p, ">= 1"));
    }
    if !(q >= p && q.is_finite()) {
        return Err(Error::param("q", q, ">= p"));
    }
    let (ex, ey) = centered_pair(mu, nu)?;
    let wpp = wasserstein_pow(p, mu, nu)?;
    let wqq = wasserstein_pow(q, mu, nu)?;
    let s = ex + ey + 1.0;
    let m = 2.0 * ex.max(ey) + 1.0;
    let root_gamma = gamma(2.0 * q + 1.0).sqrt();
    let k = 2f64.powf(q) * s.powf(q) * root_gamma;
    let e = q - p;
    let rhs = if wpp == 0.0 {
        0.0
    } else {
        2.0 * wpp + wpp * (k / wpp).ln().powf(e) * 8f64.powf(e) * m.powf(e)
    };
    let ins = [mu, nu];
    let mut out = vec![
        BoundCheckRecord::new(st::WP, wqq, rhs)
            .param("p", p)
            .param("q", q)
            .inputs(&ins),
        BoundCheckRecord::new(st::WP_SIDE, wpp, k)
            .param("p", p)
            .param("q", q)
            .inputs(&ins),
    ];
    if ex <= UNIT_ABS_MOMENT && ey <= UNIT_ABS_MOMENT {
        let rhs = if wpp == 0.0 {
            0.0
        } else {
            24f64.powf(e) * wpp * (6f64.powf(q) * root_gamma / wpp).ln().powf(e) + 2.0 * wpp
        };
        out.push(
            BoundCheckRecord::new(st::WP_UNIVERSAL, wqq, rhs)
                .param("p", p)
                .param("q", q)
                .inputs(&ins),
        );
    }
    Ok(out)
}

/// 64 logarithmically spaced points from `c` to `c · e^{36a(1 + var)}`.
pub fn default_r_grid(params: QClassParams, var: f64) -> Vec<f64> {
    let span = 36.0 * params.a * (1.0 + var);
    (0..R_GRID_POINTS)
        .map(|i| params.c * (span * i as f64 / (R_GRID_POINTS - 1) as f64).exp())
        .collect()
}

/// Value and minimizing `R` of the f-divergence bound over `grid`.
fn fdiv_bound_argmin(
    f: &dyn FGenerator,
    mu: &DiscretePmf,
    nu: &DiscretePmf,
    params: QClassParams,
    grid: &[f64],
) -> Result<(f64, f64)> {
    require_member(nu, params)?;
    require_support_within(mu, nu)?;
    if let Some(&r) = grid.iter().find(|&&r| r.is_nan() || r < params.c) {
        return Err(Error::param("R", r, ">= c"));
    }
    let d = tv_sum(mu, nu);
    // E[(f(W)/W)² 1{W > 1}], W = p(Y)/q(Y), Y ~ μ
    let second = csum(mu.iter().filter(|&(_, p)| p > 0.0).filter_map(|(k, p)| {
        let w = p / nu.pmf(k);
        (w > 1.0).then(|| {
            let g = f.eval(w) / w;
            p * g * g
        })
    }));
    let f0 = f.at_zero().max(0.0);
    let mut best = (f64::INFINITY, f64::NAN);
    for &r in grid {
        // f(R)/(R - 1) is undefined at R = 1
        if r <= 1.0 {
            continue;
        }
        let radius = ((r / params.c).ln() / params.a).sqrt();
        let tail = mu.strict_abs_tail(radius);
        let v = (f0 + f.eval(r) / (r - 1.0)) * d + (second * tail).sqrt();
        if v < best.0 {
            best = (v, r);
        }
    }
    Ok(best)
}

/// Infimum over `grid` of
/// `(max(f(0), 0) + f(R)/(R-1)) d_TV + √(E[(f(W)/W)² 1{W>1}] P(|Y| > √(log(R/c)/a)))`
/// with `Y ~ μ`, `W = p(Y)/q(Y)` and `d_TV = tv_sum`.
///
/// Requires `ν ∈ Q(a, c)`, `supp μ ⊆ supp ν` and every grid point `≥ c`.
/// Grid points `R ≤ 1` are skipped; an empty effective grid gives `+∞`.
pub fn fdiv_tv_bound(
    f: &dyn FGenerator,
    mu: &DiscretePmf,
    nu: &DiscretePmf,
    params: QClassParams,
    grid: &[f64],
) -> Result<f64> {
    Ok(fdiv_bound_argmin(f, mu, nu, params, grid)?.0)
}

/// `d_f(μ‖ν) ≤` [`fdiv_tv_bound`] as a record.
pub fn check_fdiv(
    f: &dyn FGenerator,
    mu: &DiscretePmf,
    nu: &DiscretePmf,
    params: QClassParams,
    grid: &[f64],
) -> Result<BoundCheckRecord> {
    let (bound, r) = fdiv_bound_argmin(f, mu, nu, params, grid)?;
    let lhs = f_divergence(f, mu, nu)?;
    Ok(BoundCheckRecord::new(st::FDIV, lhs, bound)
        .param("a", params.a)
        .param("c", params.c)
        .param("R", r)
        .inputs(&[mu, nu]))
}

/// `D(μ‖ν) ≤ d (32a(2√V + 1)² log²(√2(A + B)/d) + 2 log c + 1)` with
/// `d = tv_sum`, `V = Var(μ)`, `A = log c + 10a + 41aV` and
/// `B = 5/2 + (1 + 12V)^{1/4} log(2πe(V + 1/12))`.
///
/// Requires `μ` log-concave, `ν ∈ Q(a, c)` with `c ≥ 2` and
/// `supp μ ⊆ supp ν`. For centered `μ` with `V ≤ 1` a second record checks
/// `D ≤ d (288a log²(√2(9 + log c + 51a)/d) + 2 log c + 1)`.
pub fn theorem_kl_rhs(mu: &DiscretePmf, nu: &DiscretePmf, params: QClassParams) -> Result<Vec<BoundCheckRecord>> {
    if params.c < 2.0 {
        return Err(Error::param("c", params.c, ">= 2"));
    }
    require_log_concave(mu, "mu")?;
    require_member(nu, params)?;
    require_support_within(mu, nu)?;
    let QClassParams { a, c } = params;
    let lhs = kl(mu, nu)?;
    let d = tv_sum(mu, nu);
    let m = mu.moments();
    let v = m.variance;
    let big_a = c.ln() + 10.0 * a + 41.0 * a * v;
    let big_b = 2.5 + (1.0 + 12.0 * v).powf(0.25) * (2.0 * PI * E * (v + 1.0 / 12.0)).ln();
    let rhs = if d == 0.0 {
        0.0
    } else {
        let l = (SQRT_2 * (big_a + big_b) / d).ln();
        d * (32.0 * a * (2.0 * v.sqrt() + 1.0).powi(2) * l * l + 2.0 * c.ln() + 1.0)
    };
    let ins = [mu, nu];
    let mut out = vec![BoundCheckRecord::new(st::KL, lhs, rhs)
        .param("a", a)
        .param("c", c)
        .param("tv", d)
        .param("var_mu", v)
        .inputs(&ins)];
    if m.mean.abs() <= super::CENTER_TOL && v <= UNIT_VARIANCE {
        let rhs = if d == 0.0 {
            0.0
        } else {
            let l = (SQRT_2 * (9.0 + c.ln() + 51.0 * a) / d).ln();
            d * (288.0 * a * l * l + 2.0 * c.ln() + 1.0)
        };
        out.push(
            BoundCheckRecord::new(st::KL_UNIVERSAL, lhs, rhs)
                .param("a", a)
                .param("c", c)
                .param("tv", d)
                .inputs(&ins),
        );
    }
    Ok(out)
}

/// `χ²(μ‖ν) ≤ c(d + √d) + c √(E e^{2aY²}) √2 exp(-(1/12) √((1/a) log(1 + 1/√d)))`
/// with `d = tv_sum` and `Y ~ μ`.
///
/// Requires `μ` centered, log-concave with `Var ≤ 1`, `ν ∈ Q(a, c)` and
/// `supp μ ⊆ supp ν`.
pub fn theorem_chi2_rhs(mu: &DiscretePmf, nu: &DiscretePmf, params: QClassParams) -> Result<BoundCheckRecord> {
    require_log_concave(mu, "mu")?;
    require_centered(mu, "mu")?;
    let v = mu.moments().variance;
    if v > UNIT_VARIANCE {
        return Err(Error::Hypothesis(format!("variance of mu is {v} > 1")));
    }
    require_member(nu, params)?;
    require_support_within(mu, nu)?;
    let QClassParams { a, c } = params;
    let lhs = chi2(mu, nu)?;
    let d = tv_sum(mu, nu);
    let mgf = csum(mu.iter().map(|(k, p)| p * (2.0 * a * (k as f64) * (k as f64)).exp()));
    let rhs = if d == 0.0 {
        0.0
    } else {
        let decay = (-(1.0 / 12.0) * ((1.0 / a) * (1.0 + 1.0 / d.sqrt()).ln()).sqrt()).exp();
        c * (d + d.sqrt()) + c * mgf.sqrt() * SQRT_2 * decay
    };
    Ok(BoundCheckRecord::new(st::CHI2, lhs, rhs)
        .param("a", a)
        .param("c", c)
        .param("tv", d)
        .param("exp_moment", mgf)
        .inputs(&[mu, nu]))
}
