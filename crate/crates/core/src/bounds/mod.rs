//! Right-hand sides of the comparison inequalities for discrete log-concave
//! distributions, evaluated on concrete pmfs.
//!
//! Every check returns one [`BoundCheckRecord`] per inequality. Hypotheses
//! (log-concavity, centering, class membership, support inclusion) are
//! validated up front and reported as [`Error::Hypothesis`]; a passing record
//! therefore certifies both the hypotheses and the conclusion.
//!
//! The formulas are transcribed literally with every constant kept, so a
//! failure points at the statement as written rather than at a simplification.
//! When the distance on the right-hand side vanishes (`d_LP`, `W_p` or the
//! total variation is zero) the right-hand side is defined as `0`, the limit of
//! `x log(K/x)` as `x → 0⁺`.

mod lemmas;
mod qclass;
mod relations;
mod theorems;

pub use lemmas::*;
pub use qclass::*;
pub use relations::*;
pub use theorems::*;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::logconcave::{is_log_concave, LC_TOL};
use crate::pmf::DiscretePmf;

/// Relative slack tolerance: a record passes when `rhs - lhs ≥ -SLACK_TOL · max(1, |rhs|)`.
pub const SLACK_TOL: f64 = 1e-9;

/// `|E[X]|` below this counts as centered.
pub const CENTER_TOL: f64 = 1e-9;

/// Statement identifiers used in records and reports.
pub mod statement {
    pub const SYM: &str = "lemma.sym";
    pub const MOMENT: &str = "lemma.moment";
    pub const MOMENT_NAT: &str = "lemma.moment.nat";
    pub const CONCENTRATION: &str = "lemma.concentration";
    pub const CONCENTRATION_MGF: &str = "lemma.concentration.mgf";
    pub const NONCENTERED_TAIL: &str = "remark.noncentered_tail";
    pub const MAXIMUM_LOWER: &str = "lemma.maximum.lower";
    pub const MAXIMUM_UPPER: &str = "lemma.maximum.upper";
    pub const ENTROPY: &str = "lemma.entropy";
    pub const LOG_SQUARED: &str = "lemma.log_squared";
    pub const ISO_MOMENT: &str = "remark.iso.moment";
    pub const ISO_CONCENTRATION: &str = "remark.iso.concentration";
    pub const ISO_INFINITY: &str = "remark.iso.infinity";
    pub const ISO_ENTROPY: &str = "remark.iso.entropy";
    pub const ISO_VARENT: &str = "remark.iso.varent";
    pub const W1: &str = "theorem.w1";
    pub const W1_UNIVERSAL: &str = "theorem.w1.universal";
    pub const WP: &str = "theorem.wp";
    pub const WP_UNIVERSAL: &str = "theorem.wp.universal";
    pub const WP_SIDE: &str = "theorem.wp.side_condition";
    pub const FDIV: &str = "lemma.fdiv";
    pub const KL: &str = "theorem.kl";
    pub const KL_UNIVERSAL: &str = "theorem.kl.universal";
    pub const CHI2: &str = "theorem.chi2";
    pub const REL_DUDLEY_LOWER: &str = "relation.dudley.lower";
    pub const REL_DUDLEY_UPPER: &str = "relation.dudley.upper";
    pub const REL_LP_TV: &str = "relation.lp_le_tv";
    pub const REL_HALF_TV_W1: &str = "relation.half_tv_le_w1";
    pub const REL_TV_W1_LITERAL: &str = "relation.tv_le_w1.literal";
    pub const REL_WP_MONOTONE: &str = "relation.wp_monotone";
    pub const REL_PINSKER: &str = "relation.pinsker";
    pub const REL_KL_CHI2: &str = "relation.kl_le_log1p_chi2";
}

/// One evaluated inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheckRecord {
    pub statement: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    pub params: BTreeMap<String, f64>,
    pub inputs: Vec<String>,
}

impl BoundCheckRecord {
    pub fn new(statement: &str, lhs: f64, rhs: f64) -> Self {
        let mut r = BoundCheckRecord {
            statement: statement.to_string(),
            lhs,
            rhs,
            slack: rhs - lhs,
            pass: false,
            params: BTreeMap::new(),
            inputs: Vec::new(),
        };
        r.rejudge(SLACK_TOL);
        r
    }

    /// Recompute `pass` with a different relative tolerance.
    pub fn rejudge(&mut self, tol: f64) {
        let slack = self.rhs - self.lhs;
        self.slack = slack;
        self.pass = if self.rhs == f64::INFINITY {
            !self.lhs.is_nan() && self.lhs != f64::INFINITY
        } else {
            slack >= -tol * self.rhs.abs().max(1.0)
        };
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn inputs(mut self, pmfs: &[&DiscretePmf]) -> Self {
        self.inputs = pmfs.iter().map(|p| p.fingerprint()).collect();
        self
    }
}

pub(crate) fn require_log_concave(pmf: &DiscretePmf, what: &str) -> Result<()> {
    let v = is_log_concave(pmf, LC_TOL);
    if v.is_log_concave {
        Ok(())
    } else {
        Err(Error::Hypothesis(match v.first_violation {
            Some(viol) => format!(
                "{what} is not log-concave: p({k})² = {} < p({}) p({}) = {}",
                viol.lhs,
                viol.k - 1,
                viol.k + 1,
                viol.rhs,
                k = viol.k
            ),
            None => format!("{what} has an interior zero"),
        }))
    }
}

pub(crate) fn require_centered(pmf: &DiscretePmf, what: &str) -> Result<()> {
    let mean = pmf.mean();
    if mean.abs() <= CENTER_TOL {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{what} is not centered (mean {mean})")))
    }
}

pub(crate) fn require_support_within(mu: &DiscretePmf, nu: &DiscretePmf) -> Result<()> {
    match mu.first_support_violation(nu) {
        None => Ok(()),
        Some(k) => Err(Error::SupportViolation { k }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rule() {
        assert!(BoundCheckRecord::new("x", 1.0, 1.0).pass);
        assert!(BoundCheckRecord::new("x", 1.0 + 5e-10, 1.0).pass);
        assert!(!BoundCheckRecord::new("x", 1.0 + 2e-9, 1.0).pass);
        // relative to |rhs| when it exceeds one
        assert!(BoundCheckRecord::new("x", 1000.0 + 5e-7, 1000.0).pass);
        assert!(!BoundCheckRecord::new("x", 1000.0 + 2e-6, 1000.0).pass);
        assert!(BoundCheckRecord::new("x", 3.0, f64::INFINITY).pass);
        assert!(!BoundCheckRecord::new("x", f64::NAN, 1.0).pass);
        let r = BoundCheckRecord::new("x", 2.0, 1.0);
        assert_eq!(r.slack, -1.0);
    }
}
