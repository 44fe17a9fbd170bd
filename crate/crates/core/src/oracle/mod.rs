//! Independent verification oracles.
//!
//! Everything here re-derives answers by a different route than the main
//! algorithm: spanning-arborescence enumeration for stability, exhaustive
//! simple-path search for shrink weights, pairwise reachability for sink
//! components, and floating-point stationary distributions at concrete ε.
//! The implementations favour obviousness over speed and refuse inputs
//! beyond a small size cap.

mod arborescence;
mod numeric;
mod reference;

pub use arborescence::{max_arborescence_weight, young_stable_states};
pub use numeric::{
    empirical_stability, stationary_distribution, Classification, EmpiricalReport,
    MonomialSpec, NumericChain, MIN_EPSILON,
};
pub use reference::{simple_path_max, simple_path_max_capped, sink_sccs_reference};

use thiserror::Error;

/// Default vertex-count cap for the exhaustive oracles.
pub const BRUTE_FORCE_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("graph has {size} vertices, exceeding the brute-force cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("chain is not irreducible under its nonzero arcs")]
    NotIrreducible,
    #[error("outgoing probabilities of state {state:?} sum to {sum}, exceeding 1")]
    RowNotStochastic { state: String, sum: f64 },
    #[error("epsilon {epsilon} is outside the well-conditioned range [1e-5, 1]")]
    EpsilonOutOfRange { epsilon: f64 },
    #[error("stationary solve residual {residual:e} exceeds the 1e-12 bound")]
    NumericalInstability { residual: f64 },
}
