//! Stability by exhaustive spanning-arborescence enumeration.
//!
//! For a strongly connected weighted digraph, a state is stable exactly when
//! it maximizes β, the greatest weight of a spanning tree of the complete
//! digraph directed towards it (absent arcs weigh zero). This re-derives
//! stability with no scaling, shrinking, or recursion, so it makes a good
//! independent check of the main algorithm.

use super::reference::reachability;
use super::OracleError;
use crate::graph::{PerturbationGraph, StateSet};
use crate::semiring::OrderedDivisionSemiring;

/// β for one root: the `le`-greatest product of arc weights over all parent
/// assignments in which every non-root vertex has exactly one outgoing tree
/// arc and following tree arcs always reaches the root.
///
/// Enumerates parent assignments recursively, pruning cycles and partial
/// products that can no longer beat the incumbent (weights never exceed one,
/// so products only shrink). Zero when the root is unreachable.
pub fn max_arborescence_weight<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
    root: usize,
    cap: usize,
) -> Result<W, OracleError> {
    let n = p.vertex_count();
    if n > cap {
        return Err(OracleError::TooLarge { size: n, cap });
    }
    assert!(root < n, "root out of range");
    let non_root: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let mut parent = vec![usize::MAX; n];
    let mut best = W::zero();
    assign(p, root, &non_root, 0, &W::one(), &mut parent, &mut best);
    Ok(best)
}

fn assign<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
    root: usize,
    non_root: &[usize],
    position: usize,
    product: &W,
    parent: &mut [usize],
    best: &mut W,
) {
    let Some(&v) = non_root.get(position) else {
        if !product.le(best) {
            *best = product.clone();
        }
        return;
    };
    for candidate in 0..parent.len() {
        if candidate == v {
            continue;
        }
        let w = p.weight(v, candidate);
        if w.is_zero() {
            continue;
        }
        // Following assigned parents from the candidate must not return to
        // v; a cycle's last-assigned member always sees the full loop.
        let mut cursor = candidate;
        let mut cyclic = false;
        while cursor != root && parent[cursor] != usize::MAX {
            cursor = parent[cursor];
            if cursor == v {
                cyclic = true;
                break;
            }
        }
        if cyclic {
            continue;
        }
        let q = product.mul(w);
        // Remaining arcs only shrink the product; prune dominated branches.
        if q.le(best) {
            continue;
        }
        parent[v] = candidate;
        assign(p, root, non_root, position + 1, &q, parent, best);
        parent[v] = usize::MAX;
    }
}

/// The states maximizing β: exactly the stable states of a strongly
/// connected perturbation graph.
pub fn young_stable_states<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
    cap: usize,
) -> Result<Vec<StateSet>, OracleError> {
    let n = p.vertex_count();
    if n > cap {
        return Err(OracleError::TooLarge { size: n, cap });
    }
    let arcs: Vec<(usize, usize)> = p
        .off_diagonal_pairs()
        .filter(|&(i, j)| !p.weight(i, j).is_zero())
        .collect();
    let reach = reachability(n, &arcs);
    let connected = (0..n).all(|i| (0..n).all(|j| i == j || (reach[i][j] && reach[j][i])));
    if !connected {
        return Err(OracleError::NotIrreducible);
    }
    let betas: Vec<W> = (0..n)
        .map(|v| max_arborescence_weight(p, v, cap))
        .collect::<Result<_, _>>()?;
    Ok((0..n)
        .filter(|&v| betas.iter().all(|b| b.le(&betas[v])))
        .map(|v| p.vertex(v).clone())
        .collect())
}
