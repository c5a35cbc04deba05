//! # lcdist
//!
//! Exact statistical distances between finitely-supported probability mass
//! functions on the integers, together with evaluators for the comparison
//! inequalities that hold for discrete log-concave distributions.
//!
//! ## Layout
//!
//! | Module | Contents |
//! |---|---|
//! | [`pmf`] | [`DiscretePmf`], family constructors, moments, cdf/quantile, JSON |
//! | [`logconcave`] | log-concavity test, `|X|` and `X - Y` transforms, random generator |
//! | [`distances`] | total variation, Wasserstein, Lévy-Prokhorov, bounded-Lipschitz, f-divergences, couplings |
//! | [`oracles`] | slow reference computations that certify the fast paths |
//! | [`bounds`] | lemma and theorem right-hand sides, checked on concrete inputs |
//! | [`harness`] | seeded verification campaigns, reports, convergence experiment |
//!
//! ## Conventions
//!
//! - Total variation is the *sum* convention `Σ|p(k) - q(k)|`, valued in `[0, 2]`.
//!   Half of it is the minimal miscoupling probability and equals the
//!   Lévy-Prokhorov distance on the lattice.
//! - `0 · log 0 = 0` throughout.
//! - Infinite-support families are truncated at a per-side tail budget and
//!   renormalized.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod distances;
pub mod error;
pub mod harness;
pub mod logconcave;
pub mod metric;
pub mod numeric;
pub mod oracles;
pub mod pmf;

pub use error::{Error, Result};
pub use pmf::{DiscretePmf, MomentProfile};
