//! Floating-point verification at concrete values of ε.
//!
//! The abstract algorithm never evaluates a transition probability; this
//! module does, by solving for stationary distributions over a decreasing
//! sweep of ε and classifying each state's weight sequence. The
//! classification is explicitly empirical: finitely many ε cannot prove a
//! liminf, so a monotone-decay guard separates "heading to zero" from
//! "small but bounded", and everything else is reported inconclusive.

use super::reference::{reachability, sink_sccs_reference};
use super::OracleError;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeMap;

/// Smallest ε the dense solver accepts; below this, conditioning can push
/// the stationary solve past the promised residual bound.
pub const MIN_EPSILON: f64 = 1e-5;

const RESIDUAL_BOUND: f64 = 1e-12;

/// A concrete transition weight `ε ↦ c · ε^α` with positive coefficient and
/// nonnegative exponent. The abstraction keeps only `α`; the coefficient
/// matters solely for numerical verification.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialSpec {
    coeff: BigRational,
    alpha: BigRational,
}

impl MonomialSpec {
    /// # Panics
    /// Panics unless `coeff > 0` and `alpha ≥ 0`.
    pub fn new(coeff: BigRational, alpha: BigRational) -> Self {
        assert!(coeff.is_positive(), "coefficient must be positive");
        assert!(!alpha.is_negative(), "exponent must be nonnegative");
        MonomialSpec { coeff, alpha }
    }

    /// `ε ↦ ε^α`, the unit-coefficient weight.
    pub fn unit(alpha: BigRational) -> Self {
        MonomialSpec::new(BigRational::from_integer(1.into()), alpha)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn eval(&self, epsilon: f64) -> f64 {
        let c = self.coeff.to_f64().expect("coefficient out of f64 range");
        let a = self.alpha.to_f64().expect("exponent out of f64 range");
        if a == 0.0 {
            c
        } else {
            c * epsilon.powf(a)
        }
    }
}

/// A finite Markov chain at one concrete ε: off-diagonal transition weights
/// by state index, with each state's self-loop implicitly absorbing the
/// remainder `1 − Σ`.
#[derive(Clone, Debug)]
pub struct NumericChain {
    states: Vec<String>,
    arcs: BTreeMap<(usize, usize), MonomialSpec>,
    epsilon: f64,
}

impl NumericChain {
    /// # Panics
    /// Panics on unknown state names or `from == to`.
    pub fn new<I>(states: Vec<String>, arcs: I, epsilon: f64) -> Self
    where
        I: IntoIterator<Item = ((String, String), MonomialSpec)>,
    {
        let index: BTreeMap<&str, usize> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let arcs = arcs
            .into_iter()
            .map(|((from, to), spec)| {
                let i = *index.get(from.as_str()).expect("unknown source state");
                let j = *index.get(to.as_str()).expect("unknown target state");
                assert!(i != j, "self-loops are implicit remainders");
                ((i, j), spec)
            })
            .collect();
        NumericChain {
            states,
            arcs,
            epsilon,
        }
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The dense row-stochastic transition matrix at this chain's ε.
    fn transition_matrix(&self) -> Result<Vec<Vec<f64>>, OracleError> {
        let n = self.states.len();
        let mut p = vec![vec![0.0; n]; n];
        for (&(i, j), spec) in &self.arcs {
            p[i][j] = spec.eval(self.epsilon);
        }
        for (i, row) in p.iter_mut().enumerate() {
            let sum: f64 = row.iter().sum();
            if sum > 1.0 + 1e-12 {
                return Err(OracleError::RowNotStochastic {
                    state: self.states[i].clone(),
                    sum,
                });
            }
            row[i] = (1.0 - sum).max(0.0);
        }
        Ok(p)
    }
}

/// The unique stationary distribution of an irreducible chain, by dense
/// Gaussian elimination with partial pivoting on `Pᵀ − I` with one row
/// replaced by the normalization Σμ = 1. The result is verified against
/// `‖μP − μ‖∞ ≤ 1e−12` before being returned.
pub fn stationary_distribution(chain: &NumericChain) -> Result<Vec<f64>, OracleError> {
    let eps = chain.epsilon;
    if !(MIN_EPSILON..=1.0).contains(&eps) {
        return Err(OracleError::EpsilonOutOfRange { epsilon: eps });
    }
    let n = chain.states.len();
    assert!(n >= 1, "chain needs at least one state");
    let p = chain.transition_matrix()?;

    let positive: Vec<(usize, usize)> = chain
        .arcs
        .iter()
        .filter(|(_, spec)| spec.eval(eps) > 0.0)
        .map(|(&(i, j), _)| (i, j))
        .collect();
    let reach = reachability(n, &positive);
    let irreducible = (0..n).all(|i| (0..n).all(|j| i == j || (reach[i][j] && reach[j][i])));
    if !irreducible {
        return Err(OracleError::NotIrreducible);
    }

    // (Pᵀ − I) μ = 0 with the last equation replaced by Σμ = 1.
    let mut a = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = p[j][i] - if i == j { 1.0 } else { 0.0 };
        }
    }
    a[n - 1] = vec![1.0; n];
    b[n - 1] = 1.0;
    let mu = solve_dense(a, b).ok_or(OracleError::NumericalInstability {
        residual: f64::INFINITY,
    })?;

    let mut residual: f64 = (mu.iter().sum::<f64>() - 1.0).abs();
    for j in 0..n {
        let flow: f64 = (0..n).map(|i| mu[i] * p[i][j]).sum();
        residual = residual.max((flow - mu[j]).abs());
    }
    if residual > RESIDUAL_BOUND {
        return Err(OracleError::NumericalInstability { residual });
    }
    Ok(mu)
}

fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .expect("matrix entries are finite")
        })?;
        if a[pivot][col] == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for k in col..n {
                    let delta = factor * a[col][k];
                    a[row][k] -= delta;
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    EmpiricallyStable,
    EmpiricallyVanishing,
    Inconclusive,
}

/// Result of an ε-sweep: per-state classification and the underlying
/// stationary weights, one value per requested ε.
#[derive(Clone, Debug)]
pub struct EmpiricalReport {
    pub epsilons: Vec<f64>,
    pub classifications: BTreeMap<String, Classification>,
    pub sweeps: BTreeMap<String, Vec<f64>>,
}

/// Classifies every state by its stationary weight over a decreasing
/// ε-sweep: stable if the weight never drops below `threshold`, vanishing
/// if it decays monotonically to below `threshold`, inconclusive otherwise.
///
/// A reducible chain is first split into the sink components of its
/// positive-arc digraph; each component has its own stationary distribution,
/// and any mixture of them is stationary for the whole chain, so a state is
/// stable exactly when it is stable within its component. States outside
/// every sink component have stationary weight zero.
pub fn empirical_stability(
    states: &[String],
    spec: &BTreeMap<(String, String), MonomialSpec>,
    epsilons: &[f64],
    threshold: f64,
) -> Result<EmpiricalReport, OracleError> {
    assert!(threshold > 0.0, "threshold must be positive");
    assert!(!epsilons.is_empty(), "need at least one epsilon");
    for pair in epsilons.windows(2) {
        assert!(pair[1] < pair[0], "epsilons must be strictly decreasing");
    }
    for &eps in epsilons {
        if !(MIN_EPSILON..=1.0).contains(&eps) {
            return Err(OracleError::EpsilonOutOfRange { epsilon: eps });
        }
    }

    let index: BTreeMap<&str, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let arcs: Vec<(usize, usize)> = spec
        .keys()
        .map(|(from, to)| {
            let i = *index.get(from.as_str()).expect("unknown source state");
            let j = *index.get(to.as_str()).expect("unknown target state");
            assert!(i != j, "self-loops are implicit remainders");
            (i, j)
        })
        .collect();

    let mut sweeps: BTreeMap<String, Vec<f64>> =
        states.iter().map(|s| (s.clone(), vec![0.0; epsilons.len()])).collect();

    for component in sink_sccs_reference(states.len(), &arcs) {
        let comp_states: Vec<String> =
            component.iter().map(|&v| states[v].clone()).collect();
        let comp_arcs: Vec<((String, String), MonomialSpec)> = spec
            .iter()
            .filter(|((from, to), _)| {
                component.contains(&index[from.as_str()])
                    && component.contains(&index[to.as_str()])
            })
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        for (e, &eps) in epsilons.iter().enumerate() {
            let chain = NumericChain::new(comp_states.clone(), comp_arcs.iter().cloned(), eps);
            let mu = stationary_distribution(&chain)?;
            for (s, &m) in comp_states.iter().zip(mu.iter()) {
                sweeps.get_mut(s).expect("state known")[e] = m;
            }
        }
    }

    let classifications = sweeps
        .iter()
        .map(|(s, values)| (s.clone(), classify(values, threshold)))
        .collect();
    Ok(EmpiricalReport {
        epsilons: epsilons.to_vec(),
        classifications,
        sweeps,
    })
}

fn classify(values: &[f64], threshold: f64) -> Classification {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min >= threshold {
        return Classification::EmpiricallyStable;
    }
    let first = values[0];
    let last = *values.last().expect("non-empty sweep");
    let non_increasing = values
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + 1e-9) + 1e-15);
    // A genuine decay shrinks substantially over the sweep; a sequence that
    // merely sits below the threshold stays inconclusive.
    let decaying = last == 0.0 || last <= 0.5 * first;
    if non_increasing && decaying && last < threshold {
        Classification::EmpiricallyVanishing
    } else {
        Classification::Inconclusive
    }
}
