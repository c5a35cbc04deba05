use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numeric::csum;
use crate::pmf::DiscretePmf;

/// Joint pmf on pairs of integers with prescribed marginals.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingPmf {
    pairs: BTreeMap<(i64, i64), f64>,
    left: DiscretePmf,
    right: DiscretePmf,
}

const MARGINAL_TOL: f64 = 1e-9;

impl CouplingPmf {
    /// Validate `pairs` against the marginals `left` and `right`.
    pub fn new(pairs: BTreeMap<(i64, i64), f64>, left: DiscretePmf, right: DiscretePmf) -> Result<Self> {
        let mut rows: BTreeMap<i64, f64> = BTreeMap::new();
        let mut cols: BTreeMap<i64, f64> = BTreeMap::new();
        for (&(j, k), &p) in &pairs {
            if !(p >= 0.0 && p.is_finite()) {
                return Err(Error::Hypothesis(format!("coupling mass at ({j}, {k}) is {p}")));
            }
            *rows.entry(j).or_default() += p;
            *cols.entry(k).or_default() += p;
        }
        let total = csum(pairs.values().copied());
        if (total - 1.0).abs() > MARGINAL_TOL {
            return Err(Error::Hypothesis(format!("coupling mass sums to {total}")));
        }
        let check = |sums: &BTreeMap<i64, f64>, m: &DiscretePmf, side: &str| -> Result<()> {
            for (k, p) in m.iter() {
                let s = sums.get(&k).copied().unwrap_or(0.0);
                if (s - p).abs() > MARGINAL_TOL {
                    return Err(Error::Hypothesis(format!("{side} marginal at {k}: {s} vs {p}")));
                }
            }
            for (&k, &s) in sums {
                if s > MARGINAL_TOL && m.pmf(k) == 0.0 {
                    return Err(Error::Hypothesis(format!(
                        "{side} marginal has mass {s} off support at {k}"
                    )));
                }
            }
            Ok(())
        };
        check(&rows, &left, "left")?;
        check(&cols, &right, "right")?;
        Ok(CouplingPmf { pairs, left, right })
    }

    /// Product coupling.
    pub fn independent(left: &DiscretePmf, right: &DiscretePmf) -> Self {
        let mut pairs = BTreeMap::new();
        for (j, p) in left.iter().filter(|&(_, p)| p > 0.0) {
            for (k, q) in right.iter().filter(|&(_, q)| q > 0.0) {
                pairs.insert((j, k), p * q);
            }
        }
        CouplingPmf {
            pairs,
            left: left.clone(),
            right: right.clone(),
        }
    }

    /// `X = Y` almost surely.
    pub fn diagonal(pmf: &DiscretePmf) -> Self {
        let pairs = pmf.iter().filter(|&(_, p)| p > 0.0).map(|(k, p)| ((k, k), p)).collect();
        CouplingPmf {
            pairs,
            left: pmf.clone(),
            right: pmf.clone(),
        }
    }

    pub fn pairs(&self) -> &BTreeMap<(i64, i64), f64> {
        &self.pairs
    }

    pub fn left(&self) -> &DiscretePmf {
        &self.left
    }

    pub fn right(&self) -> &DiscretePmf {
        &self.right
    }

    /// `P(X ≠ Y)`
    pub fn prob_unequal(&self) -> f64 {
        csum(self.pairs.iter().filter(|(&(j, k), _)| j != k).map(|(_, &p)| p))
    }

    /// `E|X - Y|^p`
    pub fn expected_cost(&self, order: f64) -> f64 {
        csum(
            self.pairs
                .iter()
                .map(|(&(j, k), &p)| p * ((j - k).unsigned_abs() as f64).powf(order)),
        )
    }
}

/// Coupling that puts `min(p(k), q(k))` on the diagonal and couples the
/// residual masses comonotonically. Attains `P(X ≠ Y) = tv_sum / 2`.
pub fn maximal_coupling(mu: &DiscretePmf, nu: &DiscretePmf) -> CouplingPmf {
    let pts = super::union_points(mu, nu);
    let mut pairs: BTreeMap<(i64, i64), f64> = BTreeMap::new();
    let mut excess_mu = Vec::new();
    let mut excess_nu = Vec::new();
    for k in pts {
        let (p, q) = (mu.pmf(k), nu.pmf(k));
        let common = p.min(q);
        if common > 0.0 {
            pairs.insert((k, k), common);
        }
        if p > q {
            excess_mu.push((k, p - q));
        } else if q > p {
            excess_nu.push((k, q - p));
        }
    }
    // north-west corner on the two residual lists
    let (mut i, mut j) = (0, 0);
    while i < excess_mu.len() && j < excess_nu.len() {
        let (a, ra) = excess_mu[i];
        let (b, rb) = excess_nu[j];
        let m = ra.min(rb);
        if m > 0.0 {
            *pairs.entry((a, b)).or_default() += m;
        }
        excess_mu[i].1 -= m;
        excess_nu[j].1 -= m;
        if excess_mu[i].1 <= 0.0 {
            i += 1;
        }
        if excess_nu[j].1 <= 0.0 {
            j += 1;
        }
    }
    CouplingPmf {
        pairs,
        left: mu.clone(),
        right: nu.clone(),
    }
}

/// Ky-Fan distance `inf{ε > 0 : P(|X - Y| > ε) < ε}` of a coupled pair.
///
/// `G(ε) = P(|X - Y| > ε)` is a right-continuous step function, constant on
/// `[d_i, d_{i+1})` between consecutive distinct displacements. On each such
/// interval the feasible set is `(G, d_{i+1}) ∩ [d_i, d_{i+1})`, whose
/// infimum is `max(d_i, G)` when nonempty.
pub fn kyfan(coupling: &CouplingPmf) -> f64 {
    let mut by_distance: BTreeMap<u64, f64> = BTreeMap::new();
    for (&(j, k), &p) in &coupling.pairs {
        if p > 0.0 {
            *by_distance.entry((j - k).unsigned_abs()).or_default() += p;
        }
    }
    let mut breaks: Vec<f64> = vec![0.0];
    breaks.extend(by_distance.keys().filter(|&&d| d > 0).map(|&d| d as f64));
    // tail[i] = P(|X - Y| > breaks[i])
    let masses: Vec<f64> = by_distance.iter().filter(|(&d, _)| d > 0).map(|(_, &p)| p).collect();
    let mut best = f64::INFINITY;
    for (i, &start) in breaks.iter().enumerate() {
        let g = csum(masses[i..].iter().copied()).max(0.0);
        let end = breaks.get(i + 1).copied().unwrap_or(f64::INFINITY);
        let cand = start.max(g);
        if cand < end {
            best = best.min(cand);
        }
    }
    best
}
