//! Sink strongly connected components in a single Tarjan pass.
//!
//! Standard Tarjan emits components in reverse topological order, so by the
//! time a component's root is popped, every arc leaving the component points
//! into an already-popped component. One extra boolean per vertex exploits
//! this: `sink` starts true, is and-ed with each tree child's flag, and is
//! cleared outright when an arc reaches a vertex that is done but no longer
//! on the stack. A component is emitted only if its root still holds
//! `sink = true`; the root's flag is then cleared so that its own DFS parent
//! sees "reaches a finished component". Runs in O(|V| + |A|).

struct SinkScc {
    adj: Vec<Vec<usize>>,
    index: Vec<Option<usize>>,
    lowlink: Vec<usize>,
    on_stack: Vec<bool>,
    sink: Vec<bool>,
    stack: Vec<usize>,
    next_index: usize,
    out: Vec<Vec<usize>>,
}

impl SinkScc {
    fn connect(&mut self, v: usize) {
        self.index[v] = Some(self.next_index);
        self.lowlink[v] = self.next_index;
        self.next_index += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        self.sink[v] = true;

        for k in 0..self.adj[v].len() {
            let w = self.adj[v][k];
            match self.index[w] {
                None => {
                    self.connect(w);
                    self.lowlink[v] = self.lowlink[v].min(self.lowlink[w]);
                    self.sink[v] &= self.sink[w];
                }
                Some(wi) if self.on_stack[w] => {
                    // w belongs to the same still-open component.
                    self.lowlink[v] = self.lowlink[v].min(wi);
                }
                Some(_) => {
                    // Arc into a component already emitted or discarded.
                    self.sink[v] = false;
                }
            }
        }

        if self.lowlink[v] == self.index[v].unwrap() {
            let emit = self.sink[v];
            self.sink[v] = false;
            let mut component = Vec::new();
            loop {
                let w = self.stack.pop().unwrap();
                self.on_stack[w] = false;
                component.push(w);
                if w == v {
                    break;
                }
            }
            if emit {
                self.out.push(component);
            }
        }
    }
}

/// The strongly connected components without outgoing arcs, as ascending
/// index lists ordered by smallest member. Vertices are `0..num_vertices`;
/// self-loops are allowed and irrelevant.
pub fn sink_sccs(num_vertices: usize, arcs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); num_vertices];
    for &(u, v) in arcs {
        assert!(
            u < num_vertices && v < num_vertices,
            "arc endpoint out of range"
        );
        adj[u].push(v);
    }
    let mut t = SinkScc {
        adj,
        index: vec![None; num_vertices],
        lowlink: vec![0; num_vertices],
        on_stack: vec![false; num_vertices],
        sink: vec![false; num_vertices],
        stack: Vec::new(),
        next_index: 0,
        out: Vec::new(),
    };
    for v in 0..num_vertices {
        if t.index[v].is_none() {
            t.connect(v);
        }
    }
    let mut out = t.out;
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}
