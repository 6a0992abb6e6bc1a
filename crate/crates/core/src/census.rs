//! Exhaustive census of connected DAGs and exact eigenvalue-distinctness
//! classification after closing the Hamiltonian path.
//!
//! A connected DAG numbered along its Hamiltonian path has an upper-triangular
//! adjacency matrix with ones on the super-diagonal; the `n(n-3)/2 + 1` entries
//! strictly above the super-diagonal are free. Graph number `mask` sets entry
//! `b` of those (row-major) when bit `b` is set. Different masks give
//! non-isomorphic graphs, so no isomorphism filtering is needed.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{charpoly_berkowitz, charpoly_hessenberg, rational_is_square_free};
use crate::graph::Dag;
use crate::matrix::Matrix;
use crate::scalar::ModP;

/// Largest `n` accepted by default.
pub const DEFAULT_MAX_N: usize = 9;

/// Number of free entries above the super-diagonal.
pub fn free_entry_count(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        (n - 1) * (n - 2) / 2
    }
}

/// `2^(n(n-3)/2 + 1)` connected DAGs on `n >= 2` vertices.
pub fn connected_dag_count(n: usize) -> u64 {
    1u64 << free_entry_count(n)
}

fn free_entries(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
        .collect()
}

fn check_budget(n: usize, max_n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "census needs n >= 2, got {n}"
        )));
    }
    if n > max_n {
        return Err(Error::TooLarge { n, max_n });
    }
    Ok(())
}

/// The connected DAG with the given mask; vertices already in Hamiltonian order.
pub fn connected_dag_from_mask<W: Clone + Zero + One>(n: usize, mask: u64) -> Dag<W> {
    let chain = (1..n).map(|v| (v, v + 1, W::one()));
    let extra = free_entries(n)
        .into_iter()
        .enumerate()
        .filter(move |&(b, _)| mask >> b & 1 == 1)
        .map(|(_, (i, j))| (i + 1, j + 1, W::one()));
    Dag::from_edges(n, chain.chain(extra)).expect("canonical form is a valid DAG")
}

/// All connected DAGs on `n` vertices in mask order.
pub fn enumerate_connected_dags<W: Clone + Zero + One>(
    n: usize,
    max_n: usize,
) -> Result<impl ExactSizeIterator<Item = Dag<W>>> {
    check_budget(n, max_n)?;
    Ok((0..connected_dag_count(n) as usize)
        .map(move |mask| connected_dag_from_mask(n, mask as u64)))
}

/// Integer adjacency of the closed graph: the canonical DAG plus a return path
/// `n -> n+1 -> ... -> n+zp -> 1`, scaled by the weight's denominator so that
/// unit edges become `denom` and the first return edge becomes `numer`.
pub fn closed_matrix(n: usize, mask: u64, zp: usize, weight: Rational64) -> Matrix<i64> {
    let size = n + zp;
    let unit = *weight.denom();
    let mut a = Matrix::zeros(size, size);
    for i in 0..n - 1 {
        a[(i, i + 1)] = unit;
    }
    for (b, (i, j)) in free_entries(n).into_iter().enumerate() {
        if mask >> b & 1 == 1 {
            a[(i, j)] = unit;
        }
    }
    let mut hops: Vec<usize> = vec![n - 1];
    hops.extend(n..size);
    hops.push(0);
    for (k, w) in hops.windows(2).enumerate() {
        a[(w[0], w[1])] = if k == 0 { *weight.numer() } else { unit };
    }
    a
}

/// Exact distinctness of a small integer matrix: modular certificate, then
/// rational Euclid when the certificate does not apply.
pub fn classify(a: &Matrix<i64>) -> bool {
    let modular = charpoly_hessenberg(&a.map(|&v| ModP::from_i64(v)));
    if modular.is_square_free() {
        return true;
    }
    classify_rational(a)
}

/// Big-integer characteristic polynomial and rational gcd only.
pub fn classify_rational(a: &Matrix<i64>) -> bool {
    rational_is_square_free(&charpoly_berkowitz(&a.map(|&v| BigInt::from(v))))
}

/// Census parameters.
#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub max_n: usize,
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
    /// Record the masks of graphs with a repeated eigenvalue.
    pub collect_failures: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            max_n: DEFAULT_MAX_N,
            workers: None,
            collect_failures: false,
        }
    }
}

impl CensusConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }
}

/// One row of the census table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub zp: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub weight: Rational64,
    pub total: u64,
    pub distinct: u64,
    pub repeated: u64,
}

fn ser_ratio<S: serde::Serializer>(w: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

impl CensusRow {
    pub fn repeated_pct(&self) -> f64 {
        100.0 * self.repeated as f64 / self.total as f64
    }

    pub const CSV_HEADER: &'static str = "n,zp,weight,total,distinct,repeated,repeated_pct";

    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.2}",
            self.n,
            self.zp,
            self.weight,
            self.total,
            self.distinct,
            self.repeated,
            self.repeated_pct()
        )
    }
}

impl fmt::Display for CensusRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} zp={} w={}: total {}, distinct {}, repeated {} ({:.2}%)",
            self.n,
            self.zp,
            self.weight,
            self.total,
            self.distinct,
            self.repeated,
            self.repeated_pct()
        )
    }
}

/// Census row plus the masks that failed, ascending (when requested).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusOutcome {
    pub row: CensusRow,
    pub failures: Vec<u64>,
}

/// Breakdown of which closure first yields distinct eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionRow {
    pub n: usize,
    pub total: u64,
    /// Distinct with the single return edge.
    pub resolved_by_edge: u64,
    /// Repeated with the return edge, distinct with one padding vertex.
    pub resolved_by_1zp: u64,
    /// Repeated in both configurations.
    pub unresolved: u64,
    /// Distinct with the return edge but repeated with one padding vertex.
    pub lost_by_1zp: u64,
}

#[derive(Default)]
struct Tally {
    distinct: u64,
    repeated: u64,
    failures: Vec<u64>,
}

#[derive(Default, Clone, Copy)]
struct UnionTally {
    edge: u64,
    one_zp: u64,
    unresolved: u64,
    lost: u64,
}

fn chunks(total: u64, workers: usize) -> Vec<Range<u64>> {
    let pieces = (workers as u64 * 16).clamp(1, total.max(1));
    let step = total.div_ceil(pieces);
    (0..pieces)
        .map(|i| (i * step).min(total)..((i + 1) * step).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

fn run_in_pool<R: Send>(workers: Option<usize>, job: impl FnOnce() -> R + Send) -> Result<R> {
    match workers {
        None => Ok(job()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

/// Classifies every connected DAG on `n` vertices after adding a return path
/// with `zp` padding vertices whose first edge has the given weight.
pub fn census(
    n: usize,
    zp: usize,
    weight: Rational64,
    cfg: &CensusConfig,
) -> Result<CensusOutcome> {
    check_budget(n, cfg.max_n)?;
    if weight.is_zero() {
        return Err(Error::InvalidArgument(
            "return-edge weight must be nonzero".into(),
        ));
    }
    let total = connected_dag_count(n);
    let workers = cfg.workers.unwrap_or_else(rayon::current_num_threads);
    let collect = cfg.collect_failures;
    let tallies: Vec<Tally> = run_in_pool(cfg.workers, || {
        chunks(total, workers)
            .into_par_iter()
            .map(|range| {
                let mut t = Tally::default();
                for mask in range {
                    if classify(&closed_matrix(n, mask, zp, weight)) {
                        t.distinct += 1;
                    } else {
                        t.repeated += 1;
                        if collect {
                            t.failures.push(mask);
                        }
                    }
                }
                t
            })
            .collect()
    })?;
    let mut row = CensusRow {
        n,
        zp,
        weight,
        total,
        distinct: 0,
        repeated: 0,
    };
    let mut failures = Vec::new();
    for t in tallies {
        row.distinct += t.distinct;
        row.repeated += t.repeated;
        failures.extend(t.failures);
    }
    Ok(CensusOutcome { row, failures })
}

/// Census with a weighted return edge and no padding vertices.
pub fn weighted_census(n: usize, weight: Rational64, cfg: &CensusConfig) -> Result<CensusOutcome> {
    census(n, 0, weight, cfg)
}

/// Compares the return-edge closure against one padding vertex, graph by graph.
pub fn census_union(n: usize, cfg: &CensusConfig) -> Result<UnionRow> {
    check_budget(n, cfg.max_n)?;
    let total = connected_dag_count(n);
    let workers = cfg.workers.unwrap_or_else(rayon::current_num_threads);
    let one = Rational64::one();
    let tally = run_in_pool(cfg.workers, || {
        chunks(total, workers)
            .into_par_iter()
            .map(|range| {
                let mut t = UnionTally::default();
                for mask in range {
                    let edge = classify(&closed_matrix(n, mask, 0, one));
                    let padded = classify(&closed_matrix(n, mask, 1, one));
                    match (edge, padded) {
                        (true, true) => t.edge += 1,
                        (true, false) => {
                            t.edge += 1;
                            t.lost += 1;
                        }
                        (false, true) => t.one_zp += 1,
                        (false, false) => t.unresolved += 1,
                    }
                }
                t
            })
            .reduce(UnionTally::default, |a, b| UnionTally {
                edge: a.edge + b.edge,
                one_zp: a.one_zp + b.one_zp,
                unresolved: a.unresolved + b.unresolved,
                lost: a.lost + b.lost,
            })
    })?;
    Ok(UnionRow {
        n,
        total,
        resolved_by_edge: tally.edge,
        resolved_by_1zp: tally.one_zp,
        unresolved: tally.unresolved,
        lost_by_1zp: tally.lost,
    })
}
