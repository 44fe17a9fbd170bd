//! The main analysis loop.
//!
//! Starting from the perturbation graph, alternate outgoing scaling and
//! shrinking. Each round divides by the greatest off-diagonal weight `M_d`,
//! keeps the sink components of the weight-one arcs, and drops everything
//! else; the dropped vertices vanish at the time scale given by the formal
//! inverse of the product `M_1 … M_d`. When no arcs remain, the surviving
//! states are exactly the stochastically stable ones.

use std::fmt;

use thiserror::Error;

use crate::graph::{EssentialStructure, PerturbationGraph, StateSet};
use crate::semiring::{MonomialClass, OrderedDivisionSemiring};
use crate::transforms::{outgoing_scale, shrink_with, ScalingResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum HubError {
    #[error("stability analysis needs at least one state")]
    EmptyGraph,
    #[error("depth {depth} is out of range: the trace has {available} scaling levels")]
    DepthOutOfRange { depth: usize, available: usize },
}

/// One round of the analysis, as recorded in the trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRecord<W> {
    /// 1-based recursion depth.
    pub depth: usize,
    /// The greatest off-diagonal weight before scaling (`M_d`); zero only on
    /// the terminal level, where the graph has no arcs left.
    pub divisor: W,
    /// The graph after dividing every weight by the divisor.
    pub scaled: PerturbationGraph<W>,
    /// The weight-one arcs of the scaled graph.
    pub essential_arcs: Vec<(StateSet, StateSet)>,
    /// Sink components of the essential graph: the groups that survive this
    /// round.
    pub essential_classes: Vec<Vec<StateSet>>,
    /// Vertices outside every essential class; they vanish at this depth.
    pub transient: Vec<StateSet>,
    /// The graph handed to the next round.
    pub shrunken: PerturbationGraph<W>,
}

/// Full record of the analysis, one entry per round. The last level is the
/// terminal one (zero divisor); every earlier level strictly decreased the
/// vertex count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HubTrace<W> {
    pub levels: Vec<LevelRecord<W>>,
}

impl<W: OrderedDivisionSemiring> HubTrace<W> {
    /// Number of levels with a non-zero divisor: the valid depths for
    /// [`time_scale_of`].
    pub fn scaling_levels(&self) -> usize {
        self.levels.iter().filter(|l| !l.divisor.is_zero()).count()
    }
}

/// The formal inverse of the product of scaling divisors up to some depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TimeScale<W> {
    /// Carriers that can express the inverse collapse it to one element; the
    /// monomial class yields the exponent `-(α_1 + … + α_d)`.
    Inverse(W),
    /// Carriers without inverses keep the ordered divisors verbatim.
    Divisors(Vec<W>),
}

impl<W: OrderedDivisionSemiring> TimeScale<W> {
    fn of_divisors(divisors: Vec<W>) -> Self {
        match W::inverse_product(&divisors) {
            Some(inverse) => TimeScale::Inverse(inverse),
            None => TimeScale::Divisors(divisors),
        }
    }
}

impl fmt::Display for TimeScale<MonomialClass> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Unlike plain weights, time scales always show the exponent,
            // so a unit scale reads "eps^0" rather than "1".
            TimeScale::Inverse(MonomialClass::Exp(alpha)) => write!(f, "eps^{alpha}"),
            TimeScale::Inverse(MonomialClass::Zero) => write!(f, "0"),
            TimeScale::Divisors(ms) => {
                write!(f, "(")?;
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, ")^-1")
            }
        }
    }
}

/// A vertex (possibly merged from several states) that vanished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishedEntry<W> {
    pub states: StateSet,
    pub depth: usize,
    pub time_scale: TimeScale<W>,
}

/// The answer: which original states are stochastically stable, and when
/// everything else vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport<W> {
    /// Stable state names, sorted.
    pub stable: Vec<String>,
    /// Vanished vertices in the order they were deleted, keeping the
    /// grouping from earlier merges.
    pub vanished: Vec<VanishedEntry<W>>,
}

impl<W> StabilityReport<W> {
    /// Every vanished state name, flattened and sorted.
    pub fn vanished_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .vanished
            .iter()
            .flat_map(|e| e.states.names().iter().cloned())
            .collect();
        names.sort();
        names
    }

    pub fn is_stable(&self, name: &str) -> bool {
        self.stable.iter().any(|s| s == name)
    }
}

/// Runs the full analysis and returns the report together with the
/// per-level trace.
pub fn hub<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
) -> Result<(StabilityReport<W>, HubTrace<W>), HubError> {
    let (report, trace) = run(p, true)?;
    Ok((report, trace.expect("trace was recorded")))
}

/// [`hub`] without the trace: same report, but no per-level graph
/// snapshots, so memory stays linear in the input.
pub fn stable_states<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
) -> Result<StabilityReport<W>, HubError> {
    Ok(run(p, false)?.0)
}

/// Time scale at which the transients of level `depth` vanish: the formal
/// inverse of `M_1 … M_depth`.
pub fn time_scale_of<W: OrderedDivisionSemiring>(
    trace: &HubTrace<W>,
    depth: usize,
) -> Result<TimeScale<W>, HubError> {
    let available = trace.scaling_levels();
    if depth < 1 || depth > available {
        return Err(HubError::DepthOutOfRange { depth, available });
    }
    let divisors: Vec<W> = trace.levels[..depth]
        .iter()
        .map(|l| l.divisor.clone())
        .collect();
    Ok(TimeScale::of_divisors(divisors))
}

fn run<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
    record: bool,
) -> Result<(StabilityReport<W>, Option<HubTrace<W>>), HubError> {
    if p.vertex_count() == 0 {
        return Err(HubError::EmptyGraph);
    }
    let mut current = p.clone();
    let mut depth = 0usize;
    let mut divisors: Vec<W> = Vec::new();
    let mut vanished: Vec<VanishedEntry<W>> = Vec::new();
    let mut levels: Vec<LevelRecord<W>> = Vec::new();

    loop {
        depth += 1;
        let ScalingResult { divisor, scaled } = outgoing_scale(&current);
        let terminal = divisor.is_zero();
        if !terminal {
            divisors.push(divisor.clone());
        }
        let structure = EssentialStructure::of(&scaled);
        let shrunken = shrink_with(&scaled, &structure);

        for &t in &structure.transient {
            vanished.push(VanishedEntry {
                states: scaled.vertex(t).clone(),
                depth,
                time_scale: TimeScale::of_divisors(divisors.clone()),
            });
        }

        let survivors: Option<Vec<String>> = terminal.then(|| {
            let mut names: Vec<String> = scaled
                .vertices()
                .iter()
                .flat_map(|s| s.names().iter().cloned())
                .collect();
            names.sort();
            names
        });

        if record {
            levels.push(LevelRecord {
                depth,
                divisor,
                essential_arcs: structure
                    .arcs
                    .iter()
                    .map(|&(i, j)| (scaled.vertex(i).clone(), scaled.vertex(j).clone()))
                    .collect(),
                essential_classes: structure
                    .classes
                    .iter()
                    .map(|c| c.iter().map(|&v| scaled.vertex(v).clone()).collect())
                    .collect(),
                transient: structure
                    .transient
                    .iter()
                    .map(|&v| scaled.vertex(v).clone())
                    .collect(),
                shrunken: shrunken.clone(),
                scaled,
            });
        }

        if let Some(stable) = survivors {
            let report = StabilityReport { stable, vanished };
            let trace = record.then(|| HubTrace { levels });
            return Ok((report, trace));
        }

        // A weight-one arc always forces a merge or a transient, so the
        // loop makes progress.
        assert!(
            shrunken.vertex_count() < current.vertex_count(),
            "shrinking must remove at least one vertex"
        );
        current = shrunken;
    }
}
