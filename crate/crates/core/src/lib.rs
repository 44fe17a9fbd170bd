//! Stochastic stability of infinitesimally perturbed finite Markov chains.
//!
//! A perturbation assigns each ordered pair of distinct states a transition
//! weight depending on a parameter ε → 0 (here: monomial classes `ε^α`).
//! A state is stochastically stable when its stationary weight stays bounded
//! away from zero as ε → 0. This crate decides stability in cubic time by
//! alternating two graph transformations, *outgoing scaling* (divide all
//! weights by their maximum) and *shrinking* (contract the essential classes
//! reachable at the current time scale), until no arcs remain. Deleted
//! states are reported with the time scale at which they vanish.
//!
//! All graph algebra is generic over an [ordered-division
//! semiring](semiring::OrderedDivisionSemiring); independent brute-force and
//! floating-point oracles live in [`oracle`].

pub mod cli;
pub mod graph;
pub mod hub;
pub mod oracle;
pub mod semiring;
pub mod transforms;

pub use graph::{PerturbationGraph, StateSet};
pub use semiring::{MonomialClass, OrderedDivisionSemiring};
