//! Randomized numerical verification of the spectral inequalities that the
//! certificates rest on.
//!
//! Instances are drawn from a seeded generator: random trees, random
//! connected graphs with random potentials, and graphs with a planted
//! Hamiltonian cycle. Non-strict inequalities get a slack of `DELTA_CERT`;
//! strict ones must clear `DELTA_CERT`. Each failing instance is recorded as a
//! one-line dump that reproduces it.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::combinatorics::maximum_matching;
use crate::dml::{cycle_spectrum_closed_form, spectrum, Spectrum};
use crate::graph::{EdgeId, Graph};
use crate::magnetic::{flux, MagneticGraph, MagneticPotential};
use crate::preorder::{check_deletion_chain, spectrally_less};
use crate::random::{
    planted_hamiltonian, random_connected_graph, random_potential, random_tree, rng,
};
use crate::{Result, DELTA_CERT, EPS_SPEC};

pub const TREE_BOUNDS: &str = "tree_matching_bounds";
pub const MATCHABLE_TREE_MIDDLE: &str = "matchable_tree_middle_eigenvalue";
pub const MATCHABLE_TREE_GAP: &str = "matchable_tree_strict_gap";
pub const UNMATCHABLE_TREE_STRICT: &str = "unmatchable_tree_strict_bounds";
pub const TREE_INTEGER_SIMPLE: &str = "tree_integer_eigenvalues_simple";
pub const EDGE_DELETION: &str = "edge_deletion_interlacing";
pub const SPANNING_TREE_CHAIN: &str = "spanning_tree_deletion_chain";
pub const GRAPH_MATCHING_BOUNDS: &str = "graph_matching_bounds";
pub const GRAPH_MATCHING_STRICT: &str = "graph_matching_strict_bounds";
pub const HAMILTONIAN_CHAIN: &str = "hamiltonian_cycle_chain";
pub const HAMILTONIAN_CYCLE_CLOSED_FORM: &str = "hamiltonian_cycle_closed_form";
pub const HAMILTONIAN_BOUNDS: &str = "hamiltonian_eigenvalue_bounds";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremTally {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    pub counterexamples: Vec<String>,
}

impl TheoremTally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failed: 0,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, dump: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.counterexamples.len() < 5 {
                self.counterexamples.push(dump());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub seed: u64,
    pub trials: usize,
    pub tallies: Vec<TheoremTally>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.tallies.iter().all(|t| t.failed == 0)
    }

    pub fn tally(&self, name: &str) -> Option<&TheoremTally> {
        self.tallies.iter().find(|t| t.name == name)
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} trials {}", self.seed, self.trials)?;
        for t in &self.tallies {
            let status = if t.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status} {:<36} {:>6} checked {:>4} failed",
                t.name, t.checked, t.failed
            )?;
            for c in &t.counterexamples {
                writeln!(f, "    {c}")?;
            }
        }
        Ok(())
    }
}

fn at<'a>(tallies: &'a mut [TheoremTally], name: &str) -> &'a mut TheoremTally {
    tallies
        .iter_mut()
        .find(|t| t.name == name)
        .expect("known tally")
}

fn le(a: f64, b: f64) -> bool {
    a <= b + DELTA_CERT
}

fn lt(a: f64, b: f64) -> bool {
    a < b - DELTA_CERT
}

fn dump(graph: &Graph, potential: Option<&MagneticPotential>, spectrum: &Spectrum) -> String {
    match potential {
        Some(p) => format!(
            "{graph} potential={:?} spectrum={:?}",
            p.values(),
            spectrum.values()
        ),
        None => format!("{graph} spectrum={:?}", spectrum.values()),
    }
}

/// Runs `trials` random trees, `trials` random connected graphs with 8
/// potentials each, and `trials / 2` planted-Hamiltonian graphs.
pub fn verify_theorem_suite(seed: u64, trials: usize) -> Result<TheoremReport> {
    let mut rng = rng(seed);
    let mut tallies: Vec<TheoremTally> = [
        TREE_BOUNDS,
        MATCHABLE_TREE_MIDDLE,
        MATCHABLE_TREE_GAP,
        UNMATCHABLE_TREE_STRICT,
        TREE_INTEGER_SIMPLE,
        EDGE_DELETION,
        SPANNING_TREE_CHAIN,
        GRAPH_MATCHING_BOUNDS,
        GRAPH_MATCHING_STRICT,
        HAMILTONIAN_CHAIN,
        HAMILTONIAN_CYCLE_CLOSED_FORM,
        HAMILTONIAN_BOUNDS,
    ]
    .into_iter()
    .map(TheoremTally::new)
    .collect();

    for _ in 0..trials {
        let n = rng.gen_range(2..=14);
        let tree = random_tree(&mut rng, n);
        check_tree(&tree, &mut tallies)?;
    }

    for _ in 0..trials {
        let n = rng.gen_range(4..=12);
        let p = rng.gen_range(0.05..0.5);
        let graph = random_connected_graph(&mut rng, n, p);
        for _ in 0..8 {
            let potential = random_potential(&mut rng, graph.edge_count());
            let e = EdgeId(rng.gen_range(0..graph.edge_count()));
            check_connected(&graph, potential, e, &mut tallies)?;
        }
    }

    for _ in 0..trials / 2 {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(0.0..0.4);
        let (graph, order) = planted_hamiltonian(&mut rng, n, p);
        for _ in 0..4 {
            let potential = random_potential(&mut rng, graph.edge_count());
            check_hamiltonian(&graph, &order, potential, &mut tallies)?;
        }
    }

    Ok(TheoremReport {
        seed,
        trials,
        tallies,
    })
}

fn check_tree(tree: &Graph, tallies: &mut [TheoremTally]) -> Result<()> {
    let n = tree.vertex_count();
    let mu = maximum_matching(tree).len();
    let s = spectrum(&MagneticGraph::zero(tree.clone()))?;
    let d = || dump(tree, None, &s);

    at(tallies, TREE_BOUNDS).record(
        le(s.lambda(mu + 1), 2.0) && le(2.0, s.lambda(n - mu + 1)),
        d,
    );

    if 2 * mu == n {
        at(tallies, MATCHABLE_TREE_MIDDLE).record((s.lambda(n / 2 + 1) - 2.0).abs() <= EPS_SPEC, d);
        let below = lt(s.lambda(n / 2), 2.0);
        let above = s.get(n as i64 / 2 + 2).is_none_or(|v| lt(2.0, v));
        at(tallies, MATCHABLE_TREE_GAP).record(below && above, d);
    } else {
        at(tallies, UNMATCHABLE_TREE_STRICT).record(
            lt(s.lambda(mu + 1), 2.0) && lt(2.0, s.lambda(n - mu + 1)),
            d,
        );
    }

    // Integer eigenvalues above 1 are simple on trees.
    let simple = s.values().iter().all(|&x| {
        let r = x.round();
        if r < 2.0 || (x - r).abs() > EPS_SPEC {
            return true;
        }
        s.values()
            .iter()
            .filter(|&&y| (y - r).abs() <= EPS_SPEC)
            .count()
            == 1
    });
    at(tallies, TREE_INTEGER_SIMPLE).record(simple, d);
    Ok(())
}

fn check_connected(
    graph: &Graph,
    potential: MagneticPotential,
    e: EdgeId,
    tallies: &mut [TheoremTally],
) -> Result<()> {
    let n = graph.vertex_count() as i64;
    let m = graph.edge_count() as i64;
    let mg = MagneticGraph::new(graph.clone(), potential.clone())?;
    let s = spectrum(&mg)?;
    let d = || dump(graph, Some(&potential), &s);

    at(tallies, EDGE_DELETION).record(check_deletion_chain(&mg, &[e])?.holds(), d);

    let matching = maximum_matching(graph);
    let mu = matching.len() as i64;
    let tree = graph.spanning_tree_containing_matching(matching.edges())?;
    let tree_graph = mg.delete_edges(tree.chords())?;
    let same_mu = maximum_matching(tree_graph.graph()).len() as i64 == mu;
    at(tallies, SPANNING_TREE_CHAIN).record(
        same_mu && check_deletion_chain(&mg, tree.chords())?.holds(),
        d,
    );

    let lower = s.get(mu + n - m).is_none_or(|v| le(v, 2.0));
    let upper = le(2.0, s.get(n - mu + 1).expect("n - μ + 1 is in range"));
    at(tallies, GRAPH_MATCHING_BOUNDS).record(lower && upper, d);

    let strict = if n > 2 * mu {
        s.get(mu + n - m).is_none_or(|v| lt(v, 2.0)) && lt(2.0, s.lambda((n - mu + 1) as usize))
    } else {
        s.get(3 * n / 2 - m - 1).is_none_or(|v| lt(v, 2.0))
            && s.get(n / 2 + 2).is_none_or(|v| lt(2.0, v))
    };
    at(tallies, GRAPH_MATCHING_STRICT).record(strict, d);
    Ok(())
}

fn check_hamiltonian(
    graph: &Graph,
    order: &[usize],
    potential: MagneticPotential,
    tallies: &mut [TheoremTally],
) -> Result<()> {
    let n = graph.vertex_count();
    let mg = MagneticGraph::new(graph.clone(), potential.clone())?;
    let s = spectrum(&mg)?;
    let d = || dump(graph, Some(&potential), &s);

    let cycle_edges: Vec<EdgeId> = (0..n)
        .map(|i| {
            graph
                .edge_between(order[i], order[(i + 1) % n])
                .expect("planted edge")
        })
        .collect();
    let extra: Vec<EdgeId> = graph
        .edge_ids()
        .filter(|e| !cycle_edges.contains(e))
        .collect();
    let cycle = mg.delete_edges(&extra)?;
    let cs = spectrum(&cycle)?;
    let lower = spectrally_less(&cs, &s, 0)?;
    let upper = spectrally_less(&s, &cs, extra.len().min(n))?;
    at(tallies, HAMILTONIAN_CHAIN).record(lower.holds && upper.holds, d);

    let walk: Vec<_> = (0..n)
        .map(|i| {
            let e = graph
                .edge_between(order[i], order[(i + 1) % n])
                .expect("planted edge");
            crate::graph::Arc {
                edge: e,
                tail: order[i],
                head: order[(i + 1) % n],
            }
        })
        .collect();
    let phi = flux(&potential, &walk)?;
    let closed = cycle_spectrum_closed_form(n, phi)?;
    at(tallies, HAMILTONIAN_CYCLE_CLOSED_FORM).record(closed.approx_eq(&cs, EPS_SPEC), d);

    if n > 3 {
        let ok = if n.is_multiple_of(2) {
            le(2.0, s.lambda(n / 2 + 1)) && lt(2.0, s.lambda(n / 2 + 2))
        } else {
            lt(2.0, s.lambda(n.div_ceil(2) + 1))
        };
        at(tallies, HAMILTONIAN_BOUNDS).record(ok, d);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_reproducible() {
        let a = verify_theorem_suite(3, 20).unwrap();
        assert!(a.all_passed(), "{a}");
        assert!(a.tallies.iter().all(|t| t.checked > 0), "{a}");
        let b = verify_theorem_suite(3, 20).unwrap();
        assert_eq!(a, b);
    }
}
