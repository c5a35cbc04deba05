use super::{require_log_concave, statement as st, BoundCheckRecord};
use crate::error::{Error, Result};
use crate::logconcave::abs_value_transform;
use crate::numeric::{csum, gamma};
use crate::pmf::DiscretePmf;

/// Variance ceiling (with round-off allowance) for the isotropic remark and
/// the unit-variance theorem variants.
pub const UNIT_VARIANCE: f64 = 1.0 + 1e-12;

fn check_beta(beta: f64) -> Result<()> {
    if beta >= 1.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::param("beta", beta, ">= 1"))
    }
}

fn check_t(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::param("t", t, ">= 0"))
    }
}

/// `|X|` is log-concave whenever `X` is symmetric and log-concave.
///
/// The record compares the worst ratio `q(k-1) q(k+1) / q(k)²` of the law of
/// `|X|` against `1`.
pub fn check_symmetric_abs(pmf: &DiscretePmf) -> Result<BoundCheckRecord> {
    require_log_concave(pmf, "pmf")?;
    let symmetric = pmf.min_support() == -pmf.max_support()
        && pmf
            .iter()
            .all(|(k, p)| (p - pmf.pmf(-k)).abs() <= 1e-12 * p.max(pmf.pmf(-k)));
    if !symmetric {
        return Err(Error::Hypothesis("pmf is not symmetric about 0".into()));
    }
    let q = abs_value_transform(pmf);
    let worst = q
        .weights()
        .windows(3)
        .map(|w| w[0] * w[2] / (w[1] * w[1]))
        .fold(0.0f64, f64::max);
    Ok(BoundCheckRecord::new(st::SYM, worst, 1.0).inputs(&[pmf]))
}

/// `E[|X - EX|^β]^{1/β} ≤ Γ(β+1)^{1/β} (2 E|X - EX| + 1)`, plus the variant
/// `E[X^β]^{1/β} ≤ Γ(β+1)^{1/β} (E[X] + 1)` when the support is in `ℕ`.
pub fn check_moment_lemma(pmf: &DiscretePmf, beta: f64) -> Result<Vec<BoundCheckRecord>> {
    check_beta(beta)?;
    require_log_concave(pmf, "pmf")?;
    let m = pmf.moments();
    let g = gamma(beta + 1.0).powf(1.0 / beta);
    let lhs = m.abs_moment(beta).powf(1.0 / beta);
    let rhs = g * (2.0 * m.mean_abs_dev + 1.0);
    let mut out = vec![BoundCheckRecord::new(st::MOMENT, lhs, rhs)
        .param("beta", beta)
        .inputs(&[pmf])];
    if pmf.min_support() >= 0 {
        let lhs = pmf.abs_raw_moment(beta).powf(1.0 / beta);
        let rhs = g * (m.mean + 1.0);
        out.push(
            BoundCheckRecord::new(st::MOMENT_NAT, lhs, rhs)
                .param("beta", beta)
                .inputs(&[pmf]),
        );
    }
    Ok(out)
}

/// `P(|X - EX| ≥ t) ≤ 2 exp(-t / (2(2E|X - EX| + 1)))`, together with the
/// intermediate bound `E exp(λ|X - EX|) ≤ 2` at `λ = 1/(2(2E|X - EX| + 1))`.
pub fn check_concentration(pmf: &DiscretePmf, t: f64) -> Result<Vec<BoundCheckRecord>> {
    check_t(t)?;
    require_log_concave(pmf, "pmf")?;
    let m = pmf.moments();
    let scale = 2.0 * (2.0 * m.mean_abs_dev + 1.0);
    let tail = pmf.tail_from(m.mean, t);
    let lambda = 1.0 / scale;
    let mgf = csum(pmf.iter().map(|(k, p)| p * (lambda * (k as f64 - m.mean).abs()).exp()));
    Ok(vec![
        BoundCheckRecord::new(st::CONCENTRATION, tail, 2.0 * (-t / scale).exp())
            .param("t", t)
            .inputs(&[pmf]),
        BoundCheckRecord::new(st::CONCENTRATION_MGF, mgf, 2.0)
            .param("lambda", lambda)
            .inputs(&[pmf]),
    ])
}

/// `P(|X| ≥ t) ≤ 2 exp(-t / (2(2E|X - EX| + 1))) exp(|EX| / (2(2E|X - EX| + 1)))`.
pub fn check_noncentered_tail(pmf: &DiscretePmf, t: f64) -> Result<BoundCheckRecord> {
    check_t(t)?;
    require_log_concave(pmf, "pmf")?;
    let m = pmf.moments();
    let scale = 2.0 * (2.0 * m.mean_abs_dev + 1.0);
    let lhs = pmf.tail_from(0.0, t);
    let rhs = 2.0 * (-t / scale).exp() * (m.mean.abs() / scale).exp();
    Ok(BoundCheckRecord::new(st::NONCENTERED_TAIL, lhs, rhs)
        .param("t", t)
        .inputs(&[pmf]))
}

/// `√(1 + Var) ≤ 1/‖p‖∞ ≤ √(1 + 12 Var)` as two records.
pub fn check_maximum_bound(pmf: &DiscretePmf) -> Result<Vec<BoundCheckRecord>> {
    require_log_concave(pmf, "pmf")?;
    let m = pmf.moments();
    let inv = 1.0 / m.max_pmf;
    Ok(vec![
        BoundCheckRecord::new(st::MAXIMUM_LOWER, (1.0 + m.variance).sqrt(), inv).inputs(&[pmf]),
        BoundCheckRecord::new(st::MAXIMUM_UPPER, inv, (1.0 + 12.0 * m.variance).sqrt()).inputs(&[pmf]),
    ])
}

/// `H(X) ≤ ½ log(2πe(Var + 1/12))` for any integer pmf.
pub fn check_entropy_bound(pmf: &DiscretePmf) -> BoundCheckRecord {
    let m = pmf.moments();
    let rhs = 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * (m.variance + 1.0 / 12.0)).ln();
    BoundCheckRecord::new(st::ENTROPY, m.entropy, rhs).inputs(&[pmf])
}

/// `E[log² p(X)] ≤ 4(4e⁻² + 1 + H²/‖p‖∞)`.
pub fn check_log_squared_bound(pmf: &DiscretePmf) -> Result<BoundCheckRecord> {
    require_log_concave(pmf, "pmf")?;
    let m = pmf.moments();
    let rhs = 4.0 * (4.0 * (-2.0f64).exp() + 1.0 + m.entropy * m.entropy / m.max_pmf);
    Ok(BoundCheckRecord::new(st::LOG_SQUARED, pmf.log_squared_moment(), rhs).inputs(&[pmf]))
}

/// The five unit-variance consequences: moment bound `3Γ(β+1)^{1/β}`, tail
/// `2e^{-t/6}`, `1/‖p‖∞ ≤ √13`, `H ≤ 3/2` and `E[log² p(X)] ≤ 39`.
pub fn check_iso_remark(pmf: &DiscretePmf, beta: f64, t: f64) -> Result<Vec<BoundCheckRecord>> {
    check_beta(beta)?;
    check_t(t)?;
    require_log_concave(pmf, "pmf")?;
    let m = pmf.moments();
    if m.variance > UNIT_VARIANCE {
        return Err(Error::Hypothesis(format!("variance {} exceeds 1", m.variance)));
    }
    let ins = [pmf];
    Ok(vec![
        BoundCheckRecord::new(
            st::ISO_MOMENT,
            m.abs_moment(beta).powf(1.0 / beta),
            3.0 * gamma(beta + 1.0).powf(1.0 / beta),
        )
        .param("beta", beta)
        .inputs(&ins),
        BoundCheckRecord::new(st::ISO_CONCENTRATION, pmf.tail_from(m.mean, t), 2.0 * (-t / 6.0).exp())
            .param("t", t)
            .inputs(&ins),
        BoundCheckRecord::new(st::ISO_INFINITY, 1.0 / m.max_pmf, 13f64.sqrt()).inputs(&ins),
        BoundCheckRecord::new(st::ISO_ENTROPY, m.entropy, 1.5).inputs(&ins),
        BoundCheckRecord::new(st::ISO_VARENT, pmf.log_squared_moment(), 39.0).inputs(&ins),
    ])
}
