use crate::pmf::DiscretePmf;

/// An optimal test function for the bounded-Lipschitz supremum.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzWitness {
    /// First point of the joint hull; `values[i]` is `g(start + i)`.
    pub start: i64,
    pub values: Vec<f64>,
    /// `Σ g(k) (p(k) - q(k))`
    pub objective: f64,
}

/// Bounded-Lipschitz distance and an optimal `g`.
///
/// Maximizes `Σ_k g(k)(p(k) - q(k))` over `|g| ≤ 1`, `|g(k+1) - g(k)| ≤ 1`
/// on the joint hull. At a vertex of that polytope every maximal run of tight
/// difference constraints is anchored at a tight box constraint, so vertex
/// values lie in `{-1, 0, 1}`. A three-state dynamic program over the hull
/// then finds the optimum exactly in linear time. The objective is symmetric
/// under `g → -g`, so the signed maximum is the supremum of the absolute
/// difference.
pub fn bounded_lipschitz(mu: &DiscretePmf, nu: &DiscretePmf) -> (f64, LipschitzWitness) {
    const STATES: [f64; 3] = [-1.0, 0.0, 1.0];
    let (lo, hi) = super::joint_hull(mu, nu);
    let n = (hi - lo + 1) as usize;

    // best[s] = max prefix objective with g(k) = STATES[s]; back[k][s] = predecessor state
    let mut best = [0.0f64; 3];
    let mut back: Vec<[u8; 3]> = Vec::with_capacity(n);
    for i in 0..n {
        let k = lo + i as i64;
        let d = mu.pmf(k) - nu.pmf(k);
        let mut next = [0.0f64; 3];
        let mut from = [0u8; 3];
        for s in 0..3usize {
            let (prev, arg) = if i == 0 {
                (0.0, s as u8)
            } else {
                let lo_s = s.saturating_sub(1);
                let hi_s = (s + 1).min(2);
                let mut arg = lo_s;
                for t in lo_s..=hi_s {
                    if best[t] > best[arg] {
                        arg = t;
                    }
                }
                (best[arg], arg as u8)
            };
            next[s] = prev + STATES[s] * d;
            from[s] = arg;
        }
        best = next;
        back.push(from);
    }

    let mut state = 0;
    for s in 1..3 {
        if best[s] > best[state] {
            state = s;
        }
    }
    let objective = best[state];
    let mut values = vec![0.0; n];
    for i in (0..n).rev() {
        values[i] = STATES[state];
        state = back[i][state] as usize;
    }
    let value = objective.max(0.0);
    (
        value,
        LipschitzWitness {
            start: lo,
            values,
            objective,
        },
    )
}
