//! Exhaustive references: simple-path maxima and reachability-based sink
//! components.

use super::{OracleError, BRUTE_FORCE_CAP};
use crate::graph::PerturbationGraph;
use crate::semiring::OrderedDivisionSemiring;

/// Pairwise reachability (one or more arcs) by iterated expansion.
pub(crate) fn reachability(num_vertices: usize, arcs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; num_vertices]; num_vertices];
    for &(u, v) in arcs {
        reach[u][v] = true;
    }
    for k in 0..num_vertices {
        for i in 0..num_vertices {
            if reach[i][k] {
                for j in 0..num_vertices {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

/// Sink strongly connected components computed the slow way: group mutually
/// reachable vertices, then drop every group with an arc leaving it. The
/// reference for the one-pass Tarjan variant.
pub fn sink_sccs_reference(num_vertices: usize, arcs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let reach = reachability(num_vertices, arcs);
    let mut component = vec![usize::MAX; num_vertices];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for v in 0..num_vertices {
        if component[v] != usize::MAX {
            continue;
        }
        let id = components.len();
        let members: Vec<usize> = (0..num_vertices)
            .filter(|&w| w == v || (reach[v][w] && reach[w][v]))
            .collect();
        for &w in &members {
            component[w] = id;
        }
        components.push(members);
    }
    let mut sinks: Vec<Vec<usize>> = components
        .into_iter()
        .filter(|members| {
            members.iter().all(|&u| {
                (0..num_vertices).all(|w| component[w] == component[u] || !reach[u][w])
            })
        })
        .collect();
    sinks.sort();
    sinks
}

/// The `le`-greatest product of arc weights over simple paths that start in
/// `from_class`, end in `to_class`, and have all interior vertices in
/// `transient`. Zero when no such path exists. Exhaustive depth-first
/// enumeration; the reference for the shrinking transformation.
pub fn simple_path_max<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
    from_class: &[usize],
    to_class: &[usize],
    transient: &[usize],
    cap: usize,
) -> Result<W, OracleError> {
    let n = p.vertex_count();
    if n > cap {
        return Err(OracleError::TooLarge { size: n, cap });
    }
    let mut is_target = vec![false; n];
    for &v in to_class {
        is_target[v] = true;
    }
    let mut is_interior = vec![false; n];
    for &v in transient {
        is_interior[v] = true;
    }

    let mut best = W::zero();
    let mut visited = vec![false; n];
    for &start in from_class {
        visited[start] = true;
        extend(p, start, &W::one(), &is_target, &is_interior, &mut visited, &mut best);
        visited[start] = false;
    }
    Ok(best)
}

fn extend<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
    at: usize,
    product: &W,
    is_target: &[bool],
    is_interior: &[bool],
    visited: &mut [bool],
    best: &mut W,
) {
    for next in 0..p.vertex_count() {
        if next == at || visited[next] {
            continue;
        }
        let w = p.weight(at, next);
        if w.is_zero() {
            continue;
        }
        let q = product.mul(w);
        if is_target[next] {
            if !q.le(best) {
                *best = q.clone();
            }
        }
        if is_interior[next] {
            visited[next] = true;
            extend(p, next, &q, is_target, is_interior, visited, best);
            visited[next] = false;
        }
    }
}

/// [`simple_path_max`] with the default size cap.
pub fn simple_path_max_capped<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
    from_class: &[usize],
    to_class: &[usize],
    transient: &[usize],
) -> Result<W, OracleError> {
    simple_path_max(p, from_class, to_class, transient, BRUTE_FORCE_CAP)
}
