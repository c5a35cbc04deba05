//! Slow reference computations, written against the definitions.
//!
//! None of these call into [`crate::distances`]; they only read pmf
//! masses. Each one certifies a fast path on small instances.

use serde::Serialize;

use crate::distances::FGenerator;
use crate::error::{Error, Result};
use crate::pmf::DiscretePmf;

pub const OT_MAX_CELLS: usize = 400;
pub const LP_MAX_POINTS: usize = 16;
pub const BL_MAX_POINTS: usize = 12;

/// One fast-path versus oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub oracle: String,
    pub fingerprint: String,
    pub fast: f64,
    pub oracle_value: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl OracleReport {
    /// Compare `fast` against `oracle_value`; passes when the absolute gap is within `tolerance`.
    pub fn compare(
        oracle: impl Into<String>,
        fingerprint: String,
        fast: f64,
        oracle_value: f64,
        tolerance: f64,
    ) -> Self {
        let abs_gap = (fast - oracle_value).abs();
        let rel_gap = abs_gap / oracle_value.abs().max(f64::MIN_POSITIVE);
        OracleReport {
            oracle: oracle.into(),
            fingerprint,
            fast,
            oracle_value,
            abs_gap,
            rel_gap: if abs_gap == 0.0 { 0.0 } else { rel_gap },
            tolerance,
            pass: abs_gap <= tolerance,
        }
    }
}

fn positive_points(p: &DiscretePmf) -> Vec<(i64, f64)> {
    p.iter().filter(|&(_, w)| w > 0.0).collect()
}

/// `W_p` by minimizing `Σ π(j,k)|j - k|^p` over the transportation polytope.
///
/// Transportation simplex: north-west corner start, MODI potentials, and
/// Bland's smallest-index rule for both entering and leaving cells so
/// degenerate pivots cannot cycle.
pub fn ot_bruteforce(order: f64, mu: &DiscretePmf, nu: &DiscretePmf) -> Result<f64> {
    if !(order >= 1.0 && order.is_finite()) {
        return Err(Error::param("p", order, "p >= 1"));
    }
    let src = positive_points(mu);
    let dst = positive_points(nu);
    let cells = src.len() * dst.len();
    if cells > OT_MAX_CELLS {
        return Err(Error::InstanceTooLarge {
            oracle: "ot_bruteforce",
            size: cells,
            limit: OT_MAX_CELLS,
        });
    }
    let cost: Vec<Vec<f64>> = src
        .iter()
        .map(|&(x, _)| dst.iter().map(|&(y, _)| ((x - y).abs() as f64).powf(order)).collect())
        .collect();
    let supply: Vec<f64> = src.iter().map(|&(_, w)| w).collect();
    let demand: Vec<f64> = dst.iter().map(|&(_, w)| w).collect();
    let plan = TransportSimplex::solve(&supply, &demand, &cost);
    let mut total = 0.0;
    for (i, row) in plan.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            total += x * cost[i][j];
        }
    }
    Ok(total.max(0.0).powf(1.0 / order))
}

struct TransportSimplex {
    m: usize,
    n: usize,
    x: Vec<Vec<f64>>,
    basic: Vec<Vec<bool>>,
}

impl TransportSimplex {
    fn solve(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let (m, n) = (supply.len(), demand.len());
        let mut t = TransportSimplex {
            m,
            n,
            x: vec![vec![0.0; n]; m],
            basic: vec![vec![false; n]; m],
        };
        t.north_west(supply, demand);
        let scale = cost.iter().flatten().fold(1.0f64, |a, &c| a.max(c));
        let eps = 1e-12 * scale;
        for _ in 0..1_000_000 {
            let (u, v) = t.potentials(cost);
            let entering = (0..m)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| !t.basic[i][j] && cost[i][j] - u[i] - v[j] < -eps);
            match entering {
                Some((i, j)) => t.pivot(i, j),
                None => break,
            }
        }
        t.x
    }

    fn north_west(&mut self, supply: &[f64], demand: &[f64]) {
        let (mut a, mut b) = (supply.to_vec(), demand.to_vec());
        let (mut i, mut j) = (0, 0);
        loop {
            let last_row = i + 1 == self.m;
            let last_col = j + 1 == self.n;
            let q = if last_row && last_col {
                a[i].max(b[j])
            } else if last_row {
                b[j]
            } else if last_col {
                a[i]
            } else {
                a[i].min(b[j])
            };
            self.x[i][j] = q;
            self.basic[i][j] = true;
            a[i] -= q;
            b[j] -= q;
            if last_row && last_col {
                break;
            }
            if last_row {
                j += 1;
            } else if last_col || a[i] <= b[j] {
                i += 1;
            } else {
                j += 1;
            }
        }
    }

    /// Row potentials `u`, column potentials `v` with `u_i + v_j = c_ij` on basic cells.
    fn potentials(&self, cost: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
        let mut u = vec![f64::NAN; self.m];
        let mut v = vec![f64::NAN; self.n];
        u[0] = 0.0;
        let mut stack = vec![(true, 0usize)];
        while let Some((is_row, idx)) = stack.pop() {
            if is_row {
                for j in 0..self.n {
                    if self.basic[idx][j] && v[j].is_nan() {
                        v[j] = cost[idx][j] - u[idx];
                        stack.push((false, j));
                    }
                }
            } else {
                for i in 0..self.m {
                    if self.basic[i][idx] && u[i].is_nan() {
                        u[i] = cost[i][idx] - v[idx];
                        stack.push((true, i));
                    }
                }
            }
        }
        (u, v)
    }

    /// Path of basic cells from row node `i` to column node `j` in the basis tree.
    fn tree_path(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        // nodes: rows 0..m, columns m..m+n
        let total = self.m + self.n;
        let mut parent: Vec<Option<usize>> = vec![None; total];
        let mut seen = vec![false; total];
        let mut queue = std::collections::VecDeque::from([i]);
        seen[i] = true;
        while let Some(node) = queue.pop_front() {
            if node == self.m + j {
                break;
            }
            let neighbours: Vec<usize> = if node < self.m {
                (0..self.n)
                    .filter(|&c| self.basic[node][c])
                    .map(|c| self.m + c)
                    .collect()
            } else {
                let c = node - self.m;
                (0..self.m).filter(|&r| self.basic[r][c]).collect()
            };
            for nb in neighbours {
                if !seen[nb] {
                    seen[nb] = true;
                    parent[nb] = Some(node);
                    queue.push_back(nb);
                }
            }
        }
        let mut path = Vec::new();
        let mut node = self.m + j;
        while let Some(p) = parent[node] {
            let cell = if p < self.m {
                (p, node - self.m)
            } else {
                (node, p - self.m)
            };
            path.push(cell);
            node = p;
        }
        path.reverse();
        path
    }

    fn pivot(&mut self, i: usize, j: usize) {
        let path = self.tree_path(i, j);
        // path edges alternate -, +, -, ... starting at row i and ending at column j
        let minus: Vec<(usize, usize)> = path.iter().step_by(2).copied().collect();
        let plus: Vec<(usize, usize)> = path.iter().skip(1).step_by(2).copied().collect();
        let theta = minus.iter().map(|&(r, c)| self.x[r][c]).fold(f64::INFINITY, f64::min);
        let leaving = *minus
            .iter()
            .filter(|&&(r, c)| self.x[r][c] == theta)
            .min_by_key(|&&(r, c)| r * self.n + c)
            .expect("cycle has a decreasing cell");
        for &(r, c) in &minus {
            self.x[r][c] = (self.x[r][c] - theta).max(0.0);
        }
        for &(r, c) in &plus {
            self.x[r][c] += theta;
        }
        self.x[i][j] = theta;
        self.basic[i][j] = true;
        self.basic[leaving.0][leaving.1] = false;
        self.x[leaving.0][leaving.1] = 0.0;
    }
}

/// Lévy-Prokhorov distance by enumerating every subset `A` of the joint hull.
///
/// For `ε ∈ (r, r+1]` the integer points of `A^ε` are `A` dilated by `r`.
/// With `f(r) = max_A (μ(A) - ν(A ⊕ r))`, the band contributes
/// `max(r, f(r))` when `f(r) ≤ r + 1`; the distance is the minimum over bands.
pub fn lp_bruteforce(mu: &DiscretePmf, nu: &DiscretePmf) -> Result<f64> {
    let lo = mu.min_support().min(nu.min_support());
    let hi = mu.max_support().max(nu.max_support());
    let n = (hi - lo + 1) as usize;
    if n > LP_MAX_POINTS {
        return Err(Error::InstanceTooLarge {
            oracle: "lp_bruteforce",
            size: n,
            limit: LP_MAX_POINTS,
        });
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let subsets = 1usize << n;
    let mut mass_mu = vec![0.0f64; subsets];
    let mut mass_nu = vec![0.0f64; subsets];
    for mask in 1..subsets {
        let bit = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let k = lo + bit as i64;
        mass_mu[mask] = mass_mu[rest] + mu.pmf(k);
        mass_nu[mask] = mass_nu[rest] + nu.pmf(k);
    }
    // grown[mask] = mask dilated by the current band index r
    let mut grown: Vec<u32> = (0..subsets as u32).collect();
    let mut best = f64::INFINITY;
    for r in 0..=n {
        let mut f = f64::NEG_INFINITY;
        for (mask, g) in grown.iter_mut().enumerate() {
            f = f.max(mass_mu[mask] - mass_nu[*g as usize]);
            *g = (*g | (*g << 1) | (*g >> 1)) & full;
        }
        let r = r as f64;
        if f <= r + 1.0 {
            best = best.min(r.max(f));
        }
    }
    Ok(best)
}

/// Bounded-Lipschitz distance by enumerating every `g ∈ {-1, 0, 1}^n` with
/// unit steps over the joint hull: all vertices of the feasible polytope.
pub fn bl_bruteforce(mu: &DiscretePmf, nu: &DiscretePmf) -> Result<f64> {
    let lo = mu.min_support().min(nu.min_support());
    let hi = mu.max_support().max(nu.max_support());
    let n = (hi - lo + 1) as usize;
    if n > BL_MAX_POINTS {
        return Err(Error::InstanceTooLarge {
            oracle: "bl_bruteforce",
            size: n,
            limit: BL_MAX_POINTS,
        });
    }
    let mut g = vec![0.0f64; n];
    let mut best = f64::NEG_INFINITY;
    enumerate_vertices(0, &mut g, &mut |g: &[f64]| {
        let mut obj = 0.0;
        for (i, &gi) in g.iter().enumerate() {
            let k = lo + i as i64;
            obj += gi * (mu.pmf(k) - nu.pmf(k));
        }
        best = best.max(obj);
    });
    Ok(best)
}

fn enumerate_vertices(i: usize, g: &mut Vec<f64>, visit: &mut dyn FnMut(&[f64])) {
    if i == g.len() {
        visit(g);
        return;
    }
    for v in [-1.0, 0.0, 1.0] {
        if i > 0 && (v - g[i - 1]).abs() > 1.0 {
            continue;
        }
        g[i] = v;
        enumerate_vertices(i + 1, g, visit);
    }
}

/// `Σ ν f(μ/ν)` re-summed in order of increasing term magnitude.
pub fn fdiv_bruteforce(f: &dyn FGenerator, mu: &DiscretePmf, nu: &DiscretePmf) -> Result<f64> {
    let mut terms = Vec::new();
    for (k, p) in mu.iter() {
        if p > 0.0 && nu.pmf(k) == 0.0 {
            return Err(Error::SupportViolation { k });
        }
    }
    for (k, q) in nu.iter() {
        if q == 0.0 {
            continue;
        }
        let p = mu.pmf(k);
        terms.push(if p == 0.0 { q * f.at_zero() } else { q * f.eval(p / q) });
    }
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    Ok(terms.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::{ChiSquared, KullbackLeibler, TotalVariation};
    use crate::pmf::{bernoulli, binomial, dirac, discrete_uniform, make_pmf};

    #[test]
    fn ot_examples() {
        let (a, b) = (bernoulli(0.5).unwrap(), bernoulli(0.25).unwrap());
        assert!((ot_bruteforce(1.0, &a, &b).unwrap() - 0.25).abs() < 1e-15);
        assert!((ot_bruteforce(2.0, &dirac(0), &dirac(3)).unwrap() - 3.0).abs() < 1e-15);
        let c = binomial(30, 0.5).unwrap();
        assert!(matches!(
            ot_bruteforce(1.0, &c, &c),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn ot_handles_degenerate_start() {
        // equal partial sums make the north-west corner degenerate
        let a = make_pmf(0, &[0.25, 0.25, 0.25, 0.25], false).unwrap();
        let b = make_pmf(2, &[0.5, 0.5], false).unwrap();
        // sort-and-match: 0→2, 1→2, 2→3, 3→3 gives (2 + 1 + 1 + 0)/4
        assert!((ot_bruteforce(1.0, &a, &b).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lp_examples() {
        assert_eq!(lp_bruteforce(&dirac(0), &dirac(5)).unwrap(), 1.0);
        let (a, b) = (bernoulli(0.5).unwrap(), bernoulli(0.25).unwrap());
        assert!((lp_bruteforce(&a, &b).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(lp_bruteforce(&a, &a).unwrap(), 0.0);
        assert!(lp_bruteforce(&dirac(0), &dirac(16)).is_err());
    }

    #[test]
    fn bl_examples() {
        assert_eq!(bl_bruteforce(&dirac(0), &dirac(2)).unwrap(), 2.0);
        assert_eq!(bl_bruteforce(&dirac(0), &dirac(1)).unwrap(), 1.0);
        let b = binomial(5, 0.4).unwrap();
        assert_eq!(bl_bruteforce(&b, &b).unwrap(), 0.0);
    }

    #[test]
    fn fdiv_examples() {
        let (a, b) = (bernoulli(0.5).unwrap(), bernoulli(0.25).unwrap());
        let kl = 0.5 * 2f64.ln() + 0.5 * (2.0f64 / 3.0).ln();
        assert!((fdiv_bruteforce(&KullbackLeibler, &a, &b).unwrap() - kl).abs() < 1e-12);
        let u = discrete_uniform(3).unwrap();
        assert!((fdiv_bruteforce(&ChiSquared, &dirac(0), &u).unwrap() - 6.0).abs() < 1e-12);
        assert!((fdiv_bruteforce(&TotalVariation, &a, &b).unwrap() - 0.5).abs() < 1e-12);
        assert!(fdiv_bruteforce(&KullbackLeibler, &dirac(3), &a).is_err());
    }
}
