//! Connectivity completion, cycle closure and graph zero-padding.
//!
//! A connected DAG has a unique Hamiltonian path from its single source to its
//! single sink. Closing that path with a return edge gives a graph whose
//! adjacency matrix is invertible and almost always diagonalizable. Replacing
//! the return edge (and every edge added for connectivity) by a path of `M`
//! fresh vertices carrying zero signal keeps the output of any filter of order
//! at most `M` unchanged on the original vertices: values shifted past the sink
//! are held in the padding path and never wrap back within `M` shifts.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Dag, Digraph, Edge, GraphSignal};

/// Result of completing a DAG to a connected DAG.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<W> {
    /// The input graph plus the surviving added edges.
    pub dag: Dag<W>,
    /// Added edges that lie on the Hamiltonian path, in insertion order.
    pub added: Vec<(usize, usize)>,
    /// Number of source-removal passes performed.
    pub iterations: usize,
}

/// Makes a DAG connected by linking sources.
///
/// Repeatedly lists the sources of a shrinking working copy. When there are
/// several they are chained in ascending id order (in both the working copy and
/// the output), after which the first of them is the only source; the lone
/// source is then removed. Each pass removes one vertex. Finally every added
/// edge not on the Hamiltonian path of the result is dropped.
pub fn connect_dag<W: Clone + Zero + One>(dag: &Dag<W>) -> Result<Connection<W>> {
    let n = dag.n();
    let mut indeg: Vec<usize> = (1..=n).map(|v| dag.in_degree(v)).collect();
    let mut alive = vec![true; n + 1];
    let mut extra_out: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut added = Vec::new();
    let mut iterations = 0;
    let mut remaining = n;

    while remaining > 0 {
        iterations += 1;
        let sources: Vec<usize> = (1..=n).filter(|&v| alive[v] && indeg[v - 1] == 0).collect();
        if sources.is_empty() {
            return Err(Error::Internal("working copy has no source".into()));
        }
        for pair in sources.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            extra_out[a].push(b);
            indeg[b - 1] += 1;
            added.push((a, b));
        }
        let s = sources[0];
        alive[s] = false;
        remaining -= 1;
        for &t in dag.out_edges(s).iter().map(|e| &e.to).chain(&extra_out[s]) {
            indeg[t - 1] -= 1;
        }
    }

    let candidate = dag.with_edges(added.iter().map(|&(u, v)| Edge::new(u, v, W::one())))?;
    let candidate = Dag::from_digraph(candidate)?;
    let path = candidate
        .hamiltonian_path()
        .ok_or_else(|| Error::Internal("connected completion has no Hamiltonian path".into()))?;
    let mut on_path = vec![0usize; n + 1];
    for w in path.windows(2) {
        on_path[w[0]] = w[1];
    }
    added.retain(|&(u, v)| on_path[u] == v);
    let connected =
        Dag::from_digraph(dag.with_edges(added.iter().map(|&(u, v)| Edge::new(u, v, W::one())))?)?;
    Ok(Connection {
        dag: connected,
        added,
        iterations,
    })
}

/// Options for cycle closure and zero-padding.
#[derive(Clone, Debug, PartialEq)]
pub struct PadOptions<W> {
    /// Weight of the first edge of the return path (the sink's outgoing edge).
    pub return_weight: W,
    /// Relabel vertices along the Hamiltonian path before padding, so that the
    /// original block becomes upper triangular with a nonzero super-diagonal.
    pub renumber: bool,
}

impl<W: One> Default for PadOptions<W> {
    fn default() -> Self {
        PadOptions {
            return_weight: W::one(),
            renumber: false,
        }
    }
}

impl<W> PadOptions<W> {
    pub fn with_weight(return_weight: W) -> Self {
        PadOptions {
            return_weight,
            renumber: false,
        }
    }

    pub fn renumbered(mut self) -> Self {
        self.renumber = true;
        self
    }
}

/// A DAG augmented with connectivity paths and a zero-padded return path.
///
/// The graph holds exactly one directed cycle, through the return path. For a
/// single-vertex input closed with `M = 0` that cycle is the self-loop `(1, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PaddedDag<W = f64> {
    pub(crate) graph: Digraph<W>,
    pub(crate) original_n: usize,
    pub(crate) added_vertices: Vec<usize>,
    pub(crate) connectivity: Vec<Edge<W>>,
    pub(crate) return_path: Vec<Edge<W>>,
    pub(crate) original_map: Vec<usize>,
}

impl<W> PaddedDag<W> {
    pub fn graph(&self) -> &Digraph<W> {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn original_n(&self) -> usize {
        self.original_n
    }

    pub fn added_vertices(&self) -> &[usize] {
        &self.added_vertices
    }

    /// Edges added to establish connectivity (including those through padding
    /// vertices), in insertion order.
    pub fn connectivity_edges(&self) -> &[Edge<W>] {
        &self.connectivity
    }

    /// Return path edges from the sink to the source, in path order.
    pub fn return_path(&self) -> &[Edge<W>] {
        &self.return_path
    }

    /// `original_map[v - 1]` is the id in [`Self::graph`] of original vertex `v`.
    pub fn original_map(&self) -> &[usize] {
        &self.original_map
    }

    /// Number K of connectivity edges added before padding; each became a
    /// path as long as the return path.
    pub fn connectivity_count(&self) -> usize {
        self.connectivity.len() / self.return_path.len()
    }

    /// Embeds an original signal, zero on every added vertex.
    pub fn pad_signal<T: Clone + Zero>(&self, x: &[T]) -> Result<GraphSignal<T>> {
        GraphSignal::new(x.to_vec()).expect_len(self.original_n)?;
        let mut out = vec![T::zero(); self.n()];
        for (v, &id) in self.original_map.iter().enumerate() {
            out[id - 1] = x[v].clone();
        }
        Ok(GraphSignal::new(out))
    }

    /// Values at the original vertices, in original order.
    pub fn restrict_signal<T: Clone>(&self, y: &[T]) -> Result<GraphSignal<T>> {
        if y.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: y.len(),
            });
        }
        Ok(GraphSignal::new(
            self.original_map
                .iter()
                .map(|&id| y[id - 1].clone())
                .collect(),
        ))
    }
}

impl<W: Clone + Zero> PaddedDag<W> {
    /// The padded graph with the first return-path edge removed; acyclic.
    pub fn without_return_edge(&self) -> Result<Dag<W>> {
        let first = self.return_path[0].endpoints();
        let g = Digraph::new(
            self.n(),
            self.graph
                .edges()
                .iter()
                .filter(|e| e.endpoints() != first)
                .cloned(),
        )?;
        Dag::from_digraph(g)
    }
}

/// Adds the single return edge sink -> source to a connected DAG.
pub fn close_cycle<W: Clone + Zero + One>(dag: &Dag<W>, weight: W) -> Result<PaddedDag<W>> {
    zero_pad_connected(dag, 0, &PadOptions::with_weight(weight))
}

/// Pads a connected DAG with a return path sink -> n+1 -> ... -> n+M -> source.
///
/// With unit weights and a renumbered input the adjacency matrix has the block
/// form `[[A, C], [D, J]]`: `C` has a single one at (sink, first pad vertex),
/// `D` a single one at (last pad vertex, source), and `J` is the M x M shift.
pub fn zero_pad_connected<W: Clone + Zero + One>(
    dag: &Dag<W>,
    m: usize,
    opts: &PadOptions<W>,
) -> Result<PaddedDag<W>> {
    if !dag.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = dag.n();
    let (base, map) = if opts.renumber {
        dag.renumber_by_hamiltonian()?
    } else {
        (dag.clone(), (1..=n).collect())
    };
    let path = base.hamiltonian_path().ok_or(Error::NotConnected)?;
    let (source, sink) = (path[0], path[n - 1]);
    let mut builder = PadBuilder::new(n, opts.return_weight.clone());
    builder.return_path(sink, source, m);
    builder.finish(base.into_digraph(), n, map)
}

/// Zero-pads an arbitrary DAG.
///
/// Completes it with [`connect_dag`], replaces each of the K added edges by a
/// path through `M` fresh vertices, then appends a return path of `M` vertices.
/// The result has `N + (K + 1) M` vertices. Fresh ids are assigned to the
/// connectivity paths first, in insertion order, then to the return path.
pub fn zero_pad_general<W: Clone + Zero + One>(
    dag: &Dag<W>,
    m: usize,
    opts: &PadOptions<W>,
) -> Result<PaddedDag<W>> {
    let n = dag.n();
    let conn = connect_dag(dag)?;
    let (completed, map) = if opts.renumber {
        conn.dag.renumber_by_hamiltonian()?
    } else {
        (conn.dag.clone(), (1..=n).collect::<Vec<_>>())
    };
    let path = completed
        .hamiltonian_path()
        .ok_or_else(|| Error::Internal("connected completion has no Hamiltonian path".into()))?;
    let (source, sink) = (path[0], path[n - 1]);
    let original = dag.as_digraph().relabel(&map)?;

    let mut builder = PadBuilder::new(n, opts.return_weight.clone());
    for &(u, v) in &conn.added {
        builder.connectivity_path(map[u - 1], map[v - 1], m);
    }
    builder.return_path(sink, source, m);
    builder.finish(original, n, map)
}

struct PadBuilder<W> {
    next_id: usize,
    return_weight: W,
    added_vertices: Vec<usize>,
    connectivity: Vec<Edge<W>>,
    return_path: Vec<Edge<W>>,
}

impl<W: Clone + Zero + One> PadBuilder<W> {
    fn new(n: usize, return_weight: W) -> Self {
        PadBuilder {
            next_id: n + 1,
            return_weight,
            added_vertices: Vec::new(),
            connectivity: Vec::new(),
            return_path: Vec::new(),
        }
    }

    fn path(&mut self, from: usize, to: usize, m: usize, first_weight: W) -> Vec<Edge<W>> {
        let mut hops = vec![from];
        for _ in 0..m {
            hops.push(self.next_id);
            self.added_vertices.push(self.next_id);
            self.next_id += 1;
        }
        hops.push(to);
        hops.windows(2)
            .enumerate()
            .map(|(i, w)| {
                let weight = if i == 0 {
                    first_weight.clone()
                } else {
                    W::one()
                };
                Edge::new(w[0], w[1], weight)
            })
            .collect()
    }

    fn connectivity_path(&mut self, from: usize, to: usize, m: usize) {
        let edges = self.path(from, to, m, W::one());
        self.connectivity.extend(edges);
    }

    fn return_path(&mut self, sink: usize, source: usize, m: usize) {
        let w = self.return_weight.clone();
        self.return_path = self.path(sink, source, m, w);
    }

    fn finish(self, base: Digraph<W>, original_n: usize, map: Vec<usize>) -> Result<PaddedDag<W>> {
        let total = self.next_id - 1;
        let edges = base
            .edges()
            .iter()
            .cloned()
            .chain(self.connectivity.iter().cloned())
            .chain(self.return_path.iter().cloned());
        let graph = Digraph::new(total, edges)?;
        Ok(PaddedDag {
            graph,
            original_n,
            added_vertices: self.added_vertices,
            connectivity: self.connectivity,
            return_path: self.return_path,
            original_map: map,
        })
    }
}
