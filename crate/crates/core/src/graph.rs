//! Directed graphs, DAG validation and structural queries.
//!
//! Vertex ids are 1-based at every public boundary; storage is 0-based.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::{Add, Deref, Mul};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Weighted directed edge between 1-based vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge<W> {
    pub from: usize,
    pub to: usize,
    pub weight: W,
}

impl<W> Edge<W> {
    pub fn new(from: usize, to: usize, weight: W) -> Self {
        Edge { from, to, weight }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.from, self.to)
    }
}

/// A signal with one value per vertex; index `i` holds the value at vertex `i + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GraphSignal<T>(Vec<T>);

impl<T> GraphSignal<T> {
    pub fn new(values: Vec<T>) -> Self {
        GraphSignal(values)
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    /// Checks the length against a vertex count.
    pub fn expect_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: self.0.len(),
            });
        }
        Ok(())
    }
}

impl<T: Clone + Zero> GraphSignal<T> {
    pub fn zeros(n: usize) -> Self {
        GraphSignal(vec![T::zero(); n])
    }

    /// Unit impulse at the 1-based vertex `v`.
    pub fn delta(n: usize, v: usize) -> Self
    where
        T: One,
    {
        let mut values = vec![T::zero(); n];
        values[v - 1] = T::one();
        GraphSignal(values)
    }
}

impl<T> Deref for GraphSignal<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> From<Vec<T>> for GraphSignal<T> {
    fn from(v: Vec<T>) -> Self {
        GraphSignal(v)
    }
}

/// General directed graph. Self-loops and cycles are allowed here; [`Dag`]
/// adds the acyclicity invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct Digraph<W = f64> {
    n: usize,
    edges: Vec<Edge<W>>,
    offsets: Vec<usize>,
    in_degree: Vec<usize>,
}

impl<W: Clone + Zero> Digraph<W> {
    /// Builds a graph on vertices `1..=n`. Rejects out-of-range ids,
    /// duplicate edges and zero weights.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge<W>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut edges: Vec<Edge<W>> = edges.into_iter().collect();
        for e in &edges {
            for v in [e.from, e.to] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if e.weight.is_zero() {
                return Err(Error::ZeroWeight(e.from, e.to));
            }
        }
        edges.sort_by_key(Edge::endpoints);
        if let Some(w) = edges
            .windows(2)
            .find(|w| w[0].endpoints() == w[1].endpoints())
        {
            return Err(Error::DuplicateEdge(w[0].from, w[0].to));
        }
        let mut offsets = vec![0; n + 1];
        let mut in_degree = vec![0; n];
        for e in &edges {
            offsets[e.from] += 1;
            in_degree[e.to - 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        Ok(Digraph {
            n,
            edges,
            offsets,
            in_degree,
        })
    }

    /// Same vertex set plus the given extra edges.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = Edge<W>>) -> Result<Self> {
        Digraph::new(self.n, self.edges.iter().cloned().chain(extra))
    }

    /// Relabels vertices; `map[old - 1]` is the new id of `old`.
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        Digraph::new(
            self.n,
            self.edges
                .iter()
                .map(|e| Edge::new(map[e.from - 1], map[e.to - 1], e.weight.clone())),
        )
    }

    /// Dense adjacency matrix; entry `(u, v)` holds the weight of edge `u -> v`,
    /// so row `u` lists the successors of `u`.
    pub fn adjacency_matrix(&self) -> Matrix<W> {
        let mut a = Matrix::zeros(self.n, self.n);
        for e in &self.edges {
            a[(e.from - 1, e.to - 1)] = e.weight.clone();
        }
        a
    }
}

impl<W> Digraph<W> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(from, to)`.
    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    /// Outgoing edges of the 1-based vertex `v`, sorted by target.
    pub fn out_edges(&self, v: usize) -> &[Edge<W>] {
        &self.edges[self.offsets[v - 1]..self.offsets[v]]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.offsets[v] - self.offsets[v - 1]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_degree[v - 1]
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&W> {
        let out = self.out_edges(u);
        out.binary_search_by_key(&v, |e| e.to)
            .ok()
            .map(|i| &out[i].weight)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    /// Vertices with in-degree 0, ascending.
    pub fn sources(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.in_degree(v) == 0).collect()
    }

    /// Vertices with out-degree 0, ascending.
    pub fn sinks(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.out_degree(v) == 0).collect()
    }

    /// Backward shift `y = A x`.
    pub fn shift<T>(&self, x: &[T]) -> Result<GraphSignal<T>>
    where
        W: Clone,
        T: Clone + Zero + Add<Output = T> + Mul<Output = T> + From<W>,
    {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok(GraphSignal(self.shift_unchecked(x)))
    }

    pub(crate) fn shift_unchecked<T>(&self, x: &[T]) -> Vec<T>
    where
        W: Clone,
        T: Clone + Zero + Add<Output = T> + Mul<Output = T> + From<W>,
    {
        (1..=self.n)
            .map(|u| {
                self.out_edges(u).iter().fold(T::zero(), |acc, e| {
                    acc + T::from(e.weight.clone()) * x[e.to - 1].clone()
                })
            })
            .collect()
    }
}

/// Validated directed acyclic graph: no self-loops, no duplicate edges,
/// nonzero weights, and a topological order exists.
#[derive(Clone, Debug, PartialEq)]
pub struct Dag<W = f64> {
    graph: Digraph<W>,
    topo: Vec<usize>,
    unique_order: bool,
}

impl<W: Clone + Zero> Dag<W> {
    /// Builds a DAG from `(u, v, weight)` triples with 1-based ids.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, W)>,
    ) -> Result<Self> {
        let edges = edges.into_iter().map(|(u, v, w)| Edge::new(u, v, w));
        Dag::from_digraph(Digraph::new(n, edges)?)
    }

    /// Unit-weight DAG from `(u, v)` pairs.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self>
    where
        W: One,
    {
        Dag::from_edges(n, edges.iter().map(|&(u, v)| (u, v, W::one())))
    }

    pub fn from_digraph(graph: Digraph<W>) -> Result<Self> {
        if let Some(e) = graph.edges().iter().find(|e| e.from == e.to) {
            return Err(Error::SelfLoop(e.from));
        }
        let (topo, unique_order) = topological_order(&graph)?;
        Ok(Dag {
            graph,
            topo,
            unique_order,
        })
    }

    /// Relabels the vertices; `map[old - 1]` is the new id of `old`.
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        Dag::from_digraph(self.graph.relabel(map)?)
    }

    /// Relabels a connected DAG along its Hamiltonian path so that the
    /// adjacency matrix is upper triangular with a nonzero super-diagonal.
    /// Returns the relabeled graph and the old-to-new map (`map[old - 1] = new`).
    pub fn renumber_by_hamiltonian(&self) -> Result<(Dag<W>, Vec<usize>)> {
        let path = self.hamiltonian_path().ok_or(Error::NotConnected)?;
        let mut map = vec![0; self.n()];
        for (pos, &v) in path.iter().enumerate() {
            map[v - 1] = pos + 1;
        }
        Ok((self.relabel(&map)?, map))
    }
}

impl<W> Dag<W> {
    pub fn as_digraph(&self) -> &Digraph<W> {
        &self.graph
    }

    pub fn into_digraph(self) -> Digraph<W> {
        self.graph
    }

    /// Topological order with lowest-id tie-breaking.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Smallest `m` with `A^m = 0`: one more than the number of edges on the
    /// longest directed path.
    pub fn nilpotency_index(&self) -> usize {
        let mut longest = vec![0usize; self.n()];
        let mut best = 0;
        for &u in self.topo.iter().rev() {
            let l = self
                .graph
                .out_edges(u)
                .iter()
                .map(|e| longest[e.to - 1] + 1)
                .max()
                .unwrap_or(0);
            longest[u - 1] = l;
            best = best.max(l);
        }
        best + 1
    }

    /// The unique Hamiltonian path, if one exists. A DAG has one exactly when
    /// its topological order is unique, and then the path is that order.
    pub fn hamiltonian_path(&self) -> Option<Vec<usize>> {
        let joined = self
            .topo
            .windows(2)
            .all(|w| self.graph.has_edge(w[0], w[1]));
        debug_assert_eq!(joined, self.unique_order);
        joined.then(|| self.topo.clone())
    }

    /// Every vertex pair is ordered by reachability.
    pub fn is_connected(&self) -> bool {
        self.unique_order
    }
}

impl<W> Deref for Dag<W> {
    type Target = Digraph<W>;
    fn deref(&self) -> &Digraph<W> {
        &self.graph
    }
}

impl<W> AsRef<Digraph<W>> for Dag<W> {
    fn as_ref(&self) -> &Digraph<W> {
        &self.graph
    }
}

impl<W> AsRef<Digraph<W>> for Digraph<W> {
    fn as_ref(&self) -> &Digraph<W> {
        self
    }
}

/// Kahn's algorithm with a min-heap; also reports whether the order is unique.
fn topological_order<W>(g: &Digraph<W>) -> Result<(Vec<usize>, bool)> {
    let n = g.n();
    let mut indeg: Vec<usize> = (1..=n).map(|v| g.in_degree(v)).collect();
    let mut ready: BinaryHeap<Reverse<usize>> = (1..=n)
        .filter(|&v| indeg[v - 1] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut unique = true;
    while let Some(Reverse(u)) = ready.pop() {
        if !ready.is_empty() {
            unique = false;
        }
        order.push(u);
        for e in g.out_edges(u) {
            indeg[e.to - 1] -= 1;
            if indeg[e.to - 1] == 0 {
                ready.push(Reverse(e.to));
            }
        }
    }
    if order.len() < n {
        return Err(Error::CycleDetected(cycle_witness(g, &indeg)));
    }
    Ok((order, unique))
}

/// Every vertex left over by Kahn's algorithm has a leftover predecessor, so
/// walking predecessors must revisit a vertex.
fn cycle_witness<W>(g: &Digraph<W>, indeg: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut pred = vec![0usize; n + 1];
    for e in g.edges() {
        if indeg[e.from - 1] > 0 && indeg[e.to - 1] > 0 {
            pred[e.to] = e.from;
        }
    }
    let start = (1..=n)
        .find(|&v| indeg[v - 1] > 0)
        .expect("leftover vertex");
    let mut seen = vec![usize::MAX; n + 1];
    let mut walk = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = walk.len();
        walk.push(v);
        v = pred[v];
    }
    let mut cycle = walk.split_off(seen[v]);
    cycle.reverse();
    // rotate so the smallest id leads
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| *v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    cycle.rotate_left(min_pos);
    cycle
}
