//! Single-source greatest-product distances over a semiring.

use super::PerturbationGraph;
use crate::semiring::OrderedDivisionSemiring;

/// For every vertex, the `le`-greatest product of arc weights over directed
/// paths from `source` (the empty path gives `distance[source] = one`).
///
/// Requires every weight `le` one: products then never increase along a
/// path, so the greedy argument applies — the unsettled vertex with the
/// greatest tentative distance cannot be improved by routing through a
/// vertex with a smaller one, and simple paths suffice. Callers restrict the
/// admissible interior vertices by zeroing the outgoing rows of all others.
///
/// Ties in the extraction order go to the canonically smallest vertex;
/// since `le` is total, the result itself is tie-independent. Runs in
/// O(n²).
pub fn semiring_dijkstra<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
    source: usize,
) -> Vec<W> {
    let n = p.vertex_count();
    assert!(source < n, "source out of range");
    let mut dist = vec![W::zero(); n];
    let mut settled = vec![false; n];
    dist[source] = W::one();

    loop {
        let mut u = None;
        for v in 0..n {
            if settled[v] || dist[v].is_zero() {
                continue;
            }
            match u {
                None => u = Some(v),
                Some(best) => {
                    if !dist[v].le(&dist[best]) {
                        u = Some(v);
                    }
                }
            }
        }
        let Some(u) = u else { break };
        settled[u] = true;
        for v in 0..n {
            if v == u || settled[v] {
                continue;
            }
            let cand = dist[u].mul(p.weight(u, v));
            if !cand.le(&dist[v]) {
                dist[v] = cand;
            }
        }
    }
    dist
}
