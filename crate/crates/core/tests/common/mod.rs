#![allow(dead_code)]

use dagzp::{Dag, Edge};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// DAG with edges `(1,2),(1,3),(1,7),(2,3),(2,5),(2,6),(3,4),(4,5),(5,6),(5,8),(6,7),(7,8)`.
pub fn worked_example() -> Dag<f64> {
    Dag::unweighted(
        8,
        &[
            (1, 2),
            (1, 3),
            (1, 7),
            (2, 3),
            (2, 5),
            (2, 6),
            (3, 4),
            (4, 5),
            (5, 6),
            (5, 8),
            (6, 7),
            (7, 8),
        ],
    )
    .unwrap()
}

/// The worked example without `(2,3)` and `(5,6)`; not connected.
pub fn disconnected_example() -> Dag<f64> {
    Dag::unweighted(
        8,
        &[
            (1, 2),
            (1, 3),
            (1, 7),
            (2, 5),
            (2, 6),
            (3, 4),
            (4, 5),
            (5, 8),
            (6, 7),
            (7, 8),
        ],
    )
    .unwrap()
}

pub fn twenty_vertex_example() -> Dag<f64> {
    dagzp::io::parse_dag(include_str!("../data/dag20.txt")).unwrap()
}

/// Random DAG on `n` vertices under a random relabelling; every forward pair
/// of a hidden order is an edge with probability `p`.
pub fn random_dag(rng: &mut impl Rng, n: usize, p: f64) -> Dag<f64> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((perm[i], perm[j], 1.0));
            }
        }
    }
    Dag::from_edges(n, edges).unwrap()
}

/// Random connected DAG: a path along a hidden order plus random forward edges,
/// under a random relabelling.
pub fn random_connected_dag(rng: &mut impl Rng, n: usize) -> Dag<f64> {
    let p: f64 = rng.gen_range(0.0..0.7);
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || rng.gen_bool(p) {
                edges.push((perm[i], perm[j], 1.0));
            }
        }
    }
    Dag::from_edges(n, edges).unwrap()
}

pub fn random_signal(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Dense `y = sum_s h_s A^s x` with `A[u][v]` for edge `u -> v` and
/// `(A x)[u] = sum_v A[u][v] x[v]`.
pub fn dense_filter(n: usize, edges: &[Edge<f64>], h: &[f64], x: &[f64]) -> Vec<f64> {
    let mut a = vec![vec![0.0; n]; n];
    for e in edges {
        a[e.from - 1][e.to - 1] = e.weight;
    }
    let mut y: Vec<f64> = x.iter().map(|v| h[0] * v).collect();
    let mut cur = x.to_vec();
    for hs in &h[1..] {
        cur = (0..n)
            .map(|i| (0..n).map(|j| a[i][j] * cur[j]).sum())
            .collect();
        for (yi, ci) in y.iter_mut().zip(&cur) {
            *yi += hs * ci;
        }
    }
    y
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
