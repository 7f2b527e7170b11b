//! Seeded random instances for the theorem suite and soundness fuzzing.

use std::collections::HashSet;
use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::magnetic::{Gauge, MagneticPotential};

pub use rand::SeedableRng;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random labelled tree from a random Prüfer sequence.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 1);
    if n <= 2 {
        let pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
        return Graph::from_edge_list(n, &pairs).expect("valid tree");
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut pairs = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        pairs.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    pairs.push((rest[0], rest[1]));
    Graph::from_edge_list(n, &pairs).expect("valid tree")
}

/// Random tree plus each remaining pair independently with probability `p`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let tree = random_tree(rng, n);
    let mut pairs = tree.edges().to_vec();
    let present: HashSet<(usize, usize)> = pairs.iter().copied().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !present.contains(&(u, v)) && rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    pairs.shuffle(rng);
    Graph::from_edge_list(n, &pairs).expect("valid graph")
}

/// Erdős–Rényi `G(n, p)`; may be disconnected.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &pairs).expect("valid graph")
}

/// A graph with a planted Hamiltonian cycle through a random vertex order,
/// plus extra edges with probability `p`. Returns the planted vertex order.
pub fn planted_hamiltonian<R: Rng>(rng: &mut R, n: usize, p: f64) -> (Graph, Vec<usize>) {
    assert!(n >= 3);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let present: HashSet<(usize, usize)> =
        pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for u in 0..n {
        for v in u + 1..n {
            if !present.contains(&(u, v)) && rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    pairs.shuffle(rng);
    (
        Graph::from_edge_list(n, &pairs).expect("valid graph"),
        order,
    )
}

pub fn random_potential<R: Rng>(rng: &mut R, m: usize) -> MagneticPotential {
    MagneticPotential::new((0..m).map(|_| rng.gen_range(0.0..TAU)).collect())
}

pub fn random_gauge<R: Rng>(rng: &mut R, n: usize) -> Gauge {
    Gauge::new((0..n).map(|_| rng.gen_range(0.0..TAU)).collect())
}
