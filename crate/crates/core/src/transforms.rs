//! The three transformations driving the stability recursion.
//!
//! *Outgoing scaling* divides every off-diagonal weight by the greatest one,
//! rescaling time so that the fastest transitions become non-vanishing.
//! *Essential collapse* merges one essential class into a single vertex.
//! *Shrinking* replaces the whole graph by its essential classes, connected
//! by the best simple paths through the transient vertices. Scaling and
//! shrinking alternate in the main loop; collapse exists because shrinking
//! must commute with it, which is what makes the recursion sound, and that
//! identity is property-tested against this implementation.

use crate::graph::{
    semiring_dijkstra, EssentialStructure, PerturbationGraph, StateSet,
};
use crate::semiring::OrderedDivisionSemiring;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("the vertex set is not an essential class (sink component of the essential graph)")]
    InvalidClass,
}

/// Outcome of outgoing scaling: the divisor `M` (the previous `le`-greatest
/// off-diagonal weight) and the rescaled graph. When `divisor` is not zero,
/// the greatest weight of `scaled` is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingResult<W> {
    pub divisor: W,
    pub scaled: PerturbationGraph<W>,
}

/// Divides every off-diagonal weight by the `le`-greatest one. A zero
/// divisor means the graph has no arcs at all; it is returned unchanged and
/// callers treat that as the recursion's base case.
///
/// # Panics
/// Panics on a graph with no vertices.
pub fn outgoing_scale<W: OrderedDivisionSemiring>(p: &PerturbationGraph<W>) -> ScalingResult<W> {
    assert!(p.vertex_count() >= 1, "scaling needs at least one vertex");
    let divisor = p.max_off_diagonal();
    let mut scaled = p.clone();
    if !divisor.is_zero() {
        for (i, j) in p.off_diagonal_pairs() {
            scaled.set_weight(i, j, p.weight(i, j).div(&divisor));
        }
    }
    ScalingResult { divisor, scaled }
}

/// Merges the essential class `class` (vertex indices into `p`) into one
/// vertex carrying the union of its state sets; boundary weights become the
/// `le`-maxima over the members, everything else is untouched.
pub fn essential_collapse<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
    class: &[usize],
) -> Result<PerturbationGraph<W>, TransformError> {
    let mut sorted = class.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let structure = EssentialStructure::of(p);
    if !structure.classes.contains(&sorted) {
        return Err(TransformError::InvalidClass);
    }

    let outside: Vec<usize> = (0..p.vertex_count())
        .filter(|v| sorted.binary_search(v).is_err())
        .collect();
    let merged = StateSet::union(sorted.iter().map(|&v| p.vertex(v)));
    let mut vertices: Vec<StateSet> = outside.iter().map(|&v| p.vertex(v).clone()).collect();
    vertices.push(merged.clone());
    let mut out = PerturbationGraph::new(vertices);
    let mi = out.index_of(&merged).expect("merged vertex present");

    for &v in &outside {
        let nv = out.index_of(p.vertex(v)).expect("outside vertex present");
        for &w in &outside {
            if v != w {
                let nw = out.index_of(p.vertex(w)).expect("outside vertex present");
                out.set_weight(nv, nw, p.weight(v, w).clone());
            }
        }
        let mut into_class = W::zero();
        let mut out_of_class = W::zero();
        for &x in &sorted {
            into_class = into_class.semiring_max(p.weight(v, x));
            out_of_class = out_of_class.semiring_max(p.weight(x, v));
        }
        out.set_weight(nv, mi, into_class);
        out.set_weight(mi, nv, out_of_class);
    }
    Ok(out)
}

/// Replaces the graph by its essential classes. The weight from one class
/// to another is the `le`-greatest product over simple paths that start in
/// the first, end in the second, and pass only through transient vertices.
///
/// Computed in two stages: the best direct arcs between classes, then the
/// longer routes by running the max-product search from every transient
/// vertex on a copy whose essential rows are zeroed, combining each first
/// arc into the transient set with the best continuation.
pub fn shrink<W: OrderedDivisionSemiring>(p: &PerturbationGraph<W>) -> PerturbationGraph<W> {
    shrink_with(p, &EssentialStructure::of(p))
}

/// [`shrink`] with a precomputed essential structure of `p`.
pub fn shrink_with<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
    structure: &EssentialStructure,
) -> PerturbationGraph<W> {
    assert!(p.vertex_count() >= 1, "shrinking needs at least one vertex");
    let classes = &structure.classes;
    let k = classes.len();
    let merged: Vec<StateSet> = classes
        .iter()
        .map(|c| StateSet::union(c.iter().map(|&v| p.vertex(v))))
        .collect();
    let mut out = PerturbationGraph::new(merged.clone());
    let out_idx: Vec<usize> = merged
        .iter()
        .map(|m| out.index_of(m).expect("class vertex present"))
        .collect();

    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let mut best = W::zero();
            for &x in &classes[a] {
                for &y in &classes[b] {
                    best = best.semiring_max(p.weight(x, y));
                }
            }
            out.set_weight(out_idx[a], out_idx[b], best);
        }
    }

    if structure.transient.is_empty() || k < 2 {
        return out;
    }

    // Arcs must not continue out of essential vertices mid-path.
    let mut restricted = p.clone();
    for class in classes {
        for &x in class {
            for j in 0..p.vertex_count() {
                if j != x {
                    restricted.set_weight(x, j, W::zero());
                }
            }
        }
    }

    for &y in &structure.transient {
        let dist = semiring_dijkstra(&restricted, y);
        for a in 0..k {
            for b in 0..k {
                if a == b {
                    continue;
                }
                let mut via = out.weight(out_idx[a], out_idx[b]).clone();
                for &xa in &classes[a] {
                    let first = p.weight(xa, y);
                    if first.is_zero() {
                        continue;
                    }
                    for &xb in &classes[b] {
                        via = via.semiring_max(&first.mul(&dist[xb]));
                    }
                }
                out.set_weight(out_idx[a], out_idx[b], via);
            }
        }
    }
    out
}
