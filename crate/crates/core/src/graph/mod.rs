//! Weighted digraphs over a semiring, essential graphs, sink strongly
//! connected components, and max-product shortest paths.

mod dijkstra;
mod scc;

pub use dijkstra::semiring_dijkstra;
pub use scc::sink_sccs;

use crate::semiring::OrderedDivisionSemiring;
use std::fmt;

/// A merged vertex: the set of original state names it stands for.
///
/// Names are kept sorted and duplicate-free, so equality and ordering are
/// structural; the derived `Ord` is the canonical vertex order used for all
/// deterministic output.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet(Vec<String>);

impl StateSet {
    pub fn singleton(name: impl Into<String>) -> Self {
        StateSet(vec![name.into()])
    }

    /// # Panics
    /// Panics if `names` is empty.
    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(!v.is_empty(), "a StateSet holds at least one state");
        v.sort();
        v.dedup();
        StateSet(v)
    }

    /// Disjoint union of several vertices into one merged vertex.
    pub fn union<'a, I: IntoIterator<Item = &'a StateSet>>(sets: I) -> Self {
        StateSet::from_names(
            sets.into_iter()
                .flat_map(|s| s.names().iter().map(String::as_str)),
        )
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.binary_search_by(|n| n.as_str().cmp(name)).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

/// A finite weighted digraph without self-loops: vertices are disjoint
/// [`StateSet`]s in canonical order, and every ordered pair of distinct
/// vertices carries a semiring weight (`zero` meaning "no arc").
///
/// Diagonal weights are not stored at all; stability is invariant under
/// self-loop changes, and making them unrepresentable removes the question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationGraph<W> {
    vertices: Vec<StateSet>,
    // Row-major with the diagonal slot skipped: n*(n-1) entries.
    weights: Vec<W>,
}

impl<W: OrderedDivisionSemiring> PerturbationGraph<W> {
    /// Graph with the given vertices and all weights zero.
    ///
    /// # Panics
    /// Panics if the vertices are not pairwise disjoint.
    pub fn new(mut vertices: Vec<StateSet>) -> Self {
        vertices.sort();
        let mut all: Vec<&str> = vertices
            .iter()
            .flat_map(|s| s.names().iter().map(String::as_str))
            .collect();
        all.sort_unstable();
        assert!(
            all.windows(2).all(|w| w[0] != w[1]),
            "graph vertices must be pairwise disjoint state sets"
        );
        let n = vertices.len();
        let weights = vec![W::zero(); n * n.saturating_sub(1)];
        PerturbationGraph { vertices, weights }
    }

    /// Graph on singleton vertices with the given named arcs.
    ///
    /// # Panics
    /// Panics on unknown names or `from == to`; callers validate input.
    pub fn from_singletons(states: &[&str], arcs: &[(&str, &str, W)]) -> Self {
        let mut g = PerturbationGraph::new(
            states.iter().map(|s| StateSet::singleton(*s)).collect(),
        );
        for (from, to, w) in arcs {
            let i = g.vertex_containing(from).expect("unknown source state");
            let j = g.vertex_containing(to).expect("unknown target state");
            assert!(i != j, "self-loops are not representable");
            g.set_weight(i, j, w.clone());
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[StateSet] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &StateSet {
        &self.vertices[i]
    }

    pub fn index_of(&self, set: &StateSet) -> Option<usize> {
        self.vertices.binary_search(set).ok()
    }

    /// The vertex whose state set contains `name`.
    pub fn vertex_containing(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|s| s.contains(name))
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        assert!(i != j, "diagonal weights do not exist");
        i * (self.vertices.len() - 1) + if j > i { j - 1 } else { j }
    }

    pub fn weight(&self, i: usize, j: usize) -> &W {
        &self.weights[self.slot(i, j)]
    }

    pub fn set_weight(&mut self, i: usize, j: usize, w: W) {
        let s = self.slot(i, j);
        self.weights[s] = w;
    }

    /// All ordered pairs of distinct vertex indices, row-major.
    pub fn off_diagonal_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.vertices.len();
        (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
    }

    /// The `le`-greatest off-diagonal weight; `zero` when none exists.
    pub fn max_off_diagonal(&self) -> W {
        let mut m = W::zero();
        for w in &self.weights {
            if m.le(w) {
                m = w.clone();
            }
        }
        m
    }

    /// Weight between the vertices containing the two names, for tests and
    /// reporting on graphs whose vertices may have merged.
    pub fn weight_between(&self, from: &str, to: &str) -> Option<&W> {
        let i = self.vertex_containing(from)?;
        let j = self.vertex_containing(to)?;
        (i != j).then(|| self.weight(i, j))
    }
}

/// Arcs of the essential graph: ordered pairs of distinct vertices whose
/// weight equals the semiring one. These carry non-vanishing probability at
/// the current time scale.
pub fn essential_graph<W: OrderedDivisionSemiring>(
    p: &PerturbationGraph<W>,
) -> Vec<(usize, usize)> {
    p.off_diagonal_pairs()
        .filter(|&(i, j)| p.weight(i, j).is_one())
        .collect()
}

/// The essential graph of a perturbation graph together with its sink
/// strongly connected components (the essential classes) and the leftover
/// transient vertices. All indices refer to the graph's vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialStructure {
    pub arcs: Vec<(usize, usize)>,
    pub classes: Vec<Vec<usize>>,
    pub transient: Vec<usize>,
}

impl EssentialStructure {
    pub fn of<W: OrderedDivisionSemiring>(p: &PerturbationGraph<W>) -> Self {
        let arcs = essential_graph(p);
        let classes = sink_sccs(p.vertex_count(), &arcs);
        let mut essential = vec![false; p.vertex_count()];
        for class in &classes {
            for &v in class {
                essential[v] = true;
            }
        }
        let transient = (0..p.vertex_count()).filter(|&v| !essential[v]).collect();
        EssentialStructure {
            arcs,
            classes,
            transient,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::MonomialClass;

    fn exp(n: i64) -> MonomialClass {
        MonomialClass::exp(n)
    }

    #[test]
    fn state_sets_canonicalize() {
        let s = StateSet::from_names(["b", "a", "b"]);
        assert_eq!(s.names(), ["a", "b"]);
        assert_eq!(s.to_string(), "a,b");
        assert!(s.contains("a") && !s.contains("c"));
        let u = StateSet::union([&s, &StateSet::singleton("c")]);
        assert_eq!(u.names(), ["a", "b", "c"]);
        assert!(StateSet::singleton("a") < StateSet::singleton("b"));
    }

    #[test]
    fn weights_are_off_diagonal_only() {
        let mut g: PerturbationGraph<MonomialClass> =
            PerturbationGraph::new(vec![StateSet::singleton("x"), StateSet::singleton("y")]);
        assert_eq!(*g.weight(0, 1), MonomialClass::Zero);
        g.set_weight(0, 1, exp(3));
        g.set_weight(1, 0, exp(2));
        assert_eq!(*g.weight(0, 1), exp(3));
        assert_eq!(*g.weight(1, 0), exp(2));
        assert_eq!(g.max_off_diagonal(), exp(2));
    }

    #[test]
    #[should_panic(expected = "diagonal weights do not exist")]
    fn diagonal_access_panics() {
        let g: PerturbationGraph<MonomialClass> =
            PerturbationGraph::new(vec![StateSet::singleton("x"), StateSet::singleton("y")]);
        g.weight(1, 1);
    }

    #[test]
    #[should_panic(expected = "pairwise disjoint")]
    fn overlapping_vertices_panic() {
        let _: PerturbationGraph<MonomialClass> = PerturbationGraph::new(vec![
            StateSet::from_names(["a", "b"]),
            StateSet::singleton("b"),
        ]);
    }

    #[test]
    fn essential_graph_needs_weight_one() {
        // Two two-state basins, before scaling: no weight is one.
        let g = PerturbationGraph::from_singletons(
            &["x", "y", "z", "t"],
            &[
                ("x", "y", exp(3)),
                ("y", "x", exp(2)),
                ("z", "t", exp(9)),
                ("t", "z", exp(6)),
            ],
        );
        assert_eq!(essential_graph(&g), vec![]);

        // After dividing by the maximum, exactly y -> x has weight one.
        let g = PerturbationGraph::from_singletons(
            &["x", "y", "z", "t"],
            &[
                ("x", "y", exp(1)),
                ("y", "x", exp(0)),
                ("z", "t", exp(7)),
                ("t", "z", exp(4)),
            ],
        );
        let y = g.vertex_containing("y").unwrap();
        let x = g.vertex_containing("x").unwrap();
        assert_eq!(essential_graph(&g), vec![(y, x)]);

        let empty = PerturbationGraph::<MonomialClass>::from_singletons(&["a", "b"], &[]);
        assert_eq!(essential_graph(&empty), vec![]);
    }

    #[test]
    fn essential_structure_splits_classes_and_transients() {
        // x -> z and y -> t essential: z and t are sink classes, x and y transient.
        let g = PerturbationGraph::from_singletons(
            &["x", "y", "z", "t"],
            &[
                ("z", "x", exp(1)),
                ("x", "z", exp(0)),
                ("x", "y", exp(1)),
                ("y", "t", exp(0)),
                ("y", "x", exp(2)),
                ("t", "y", exp(1)),
            ],
        );
        let s = EssentialStructure::of(&g);
        let idx = |n: &str| g.vertex_containing(n).unwrap();
        assert_eq!(s.arcs.len(), 2);
        assert!(s.arcs.contains(&(idx("x"), idx("z"))));
        assert!(s.arcs.contains(&(idx("y"), idx("t"))));
        let mut classes = s.classes.clone();
        classes.sort();
        let mut expected = vec![vec![idx("z")], vec![idx("t")]];
        expected.sort();
        assert_eq!(classes, expected);
        let mut transient = vertex_names(&g, &s.transient);
        transient.sort();
        assert_eq!(transient, ["x", "y"]);
    }

    fn vertex_names<W>(g: &PerturbationGraph<W>, ids: &[usize]) -> Vec<String>
    where
        W: OrderedDivisionSemiring,
    {
        ids.iter().map(|&i| g.vertex(i).to_string()).collect()
    }
}
