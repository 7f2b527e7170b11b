//! Exact combinatorial oracles: maximum matching and Hamiltonian cycle search.
//!
//! Both are exponential in the worst case. They are ground truth for the
//! spectral certificates at small sizes, not scalable algorithms.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{EdgeId, Graph};
use crate::{Error, Result};

/// A set of pairwise vertex-disjoint edges, sorted by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    edges: Vec<EdgeId>,
}

impl Matching {
    pub fn new(graph: &Graph, mut edges: Vec<EdgeId>) -> Result<Self> {
        if !graph.is_matching(&edges)? {
            return Err(Error::NotAMatching);
        }
        edges.sort_unstable();
        Ok(Self { edges })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_perfect(&self, graph: &Graph) -> bool {
        2 * self.edges.len() == graph.vertex_count()
    }
}

/// A maximum-cardinality matching by branch and bound.
///
/// Branches on an uncovered vertex of minimum residual degree: match it to
/// each available neighbor, or leave it uncovered. A vertex with a single
/// available neighbor is always matched to it. The bound is the smaller of
/// half the number of coverable vertices and twice a greedy maximal matching
/// (a vertex cover) on the residual graph.
pub fn maximum_matching(graph: &Graph) -> Matching {
    let n = graph.vertex_count();
    let adjacency: Vec<Vec<(usize, EdgeId)>> = (0..n).map(|v| graph.sorted_neighbors(v)).collect();
    let mut search = MatchingSearch {
        adjacency: &adjacency,
        alive: vec![true; n],
        current: Vec::new(),
        best: Vec::new(),
        target: n / 2,
    };
    search.best = search.greedy(true);
    search.branch();
    let mut edges = search.best;
    edges.sort_unstable();
    Matching { edges }
}

pub fn matching_number(graph: &Graph) -> usize {
    maximum_matching(graph).len()
}

pub fn is_matchable(graph: &Graph) -> bool {
    maximum_matching(graph).is_perfect(graph)
}

struct MatchingSearch<'a> {
    adjacency: &'a [Vec<(usize, EdgeId)>],
    alive: Vec<bool>,
    current: Vec<EdgeId>,
    best: Vec<EdgeId>,
    target: usize,
}

impl MatchingSearch<'_> {
    fn residual_degree(&self, v: usize) -> usize {
        self.adjacency[v]
            .iter()
            .filter(|(w, _)| self.alive[*w])
            .count()
    }

    /// Greedy maximal matching on the residual graph, lowest degree first.
    /// Touches no state.
    fn greedy(&self, by_degree: bool) -> Vec<EdgeId> {
        let n = self.adjacency.len();
        let mut alive = self.alive.clone();
        let mut order: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        if by_degree {
            order.sort_by_key(|&v| (self.residual_degree(v), v));
        }
        let mut out = Vec::new();
        for v in order {
            if !alive[v] {
                continue;
            }
            if let Some(&(w, e)) = self.adjacency[v].iter().find(|(w, _)| alive[*w]) {
                alive[v] = false;
                alive[w] = false;
                out.push(e);
            }
        }
        out
    }

    fn upper_bound(&self) -> usize {
        let coverable = (0..self.alive.len())
            .filter(|&v| self.alive[v] && self.residual_degree(v) > 0)
            .count();
        (coverable / 2).min(2 * self.greedy(false).len())
    }

    fn branch(&mut self) {
        if self.best.len() == self.target {
            return;
        }
        if self.current.len() + self.upper_bound() <= self.best.len() {
            return;
        }
        let pick = (0..self.alive.len())
            .filter(|&v| self.alive[v])
            .map(|v| (self.residual_degree(v), v))
            .filter(|&(d, _)| d > 0)
            .min();
        let Some((degree, v)) = pick else {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        };
        let options: Vec<(usize, EdgeId)> = self.adjacency[v]
            .iter()
            .copied()
            .filter(|(w, _)| self.alive[*w])
            .collect();
        self.alive[v] = false;
        for (w, e) in options {
            self.alive[w] = false;
            self.current.push(e);
            self.branch();
            self.current.pop();
            self.alive[w] = true;
            if self.best.len() == self.target {
                break;
            }
        }
        if degree > 1 && self.best.len() < self.target {
            self.branch();
        }
        self.alive[v] = true;
    }
}

/// Vertex order of a Hamiltonian cycle; the closing edge runs from the last
/// vertex back to the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonianCycle {
    vertices: Vec<usize>,
}

impl HamiltonianCycle {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Checks the cycle against `graph` from scratch.
    pub fn is_valid_for(&self, graph: &Graph) -> bool {
        let n = graph.vertex_count();
        if n < 3 || self.vertices.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in &self.vertices {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        (0..n).all(|i| graph.has_edge(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Edge ids of the cycle in traversal order.
    pub fn edges(&self, graph: &Graph) -> Vec<EdgeId> {
        let n = self.vertices.len();
        (0..n)
            .filter_map(|i| graph.edge_between(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }
}

/// Limits for [`find_hamiltonian_cycle_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HamiltonSearch {
    /// Graphs up to this order are searched without a node budget.
    pub exact_limit: usize,
    /// Search-node budget for larger graphs.
    pub node_budget: u64,
}

impl Default for HamiltonSearch {
    fn default() -> Self {
        Self {
            exact_limit: 20,
            node_budget: 5_000_000,
        }
    }
}

/// Exhaustive backtracking search with the default limits.
pub fn find_hamiltonian_cycle(graph: &Graph) -> Result<Option<HamiltonianCycle>> {
    find_hamiltonian_cycle_with(graph, HamiltonSearch::default())
}

/// `Ok(None)` means the search was exhaustive and no cycle exists. When a
/// graph above `exact_limit` runs out of budget the result is
/// [`Error::TooLarge`], never `None`.
pub fn find_hamiltonian_cycle_with(
    graph: &Graph,
    limits: HamiltonSearch,
) -> Result<Option<HamiltonianCycle>> {
    let n = graph.vertex_count();
    if n < 3 || !graph.is_connected() || (0..n).any(|v| graph.degree(v) < 2) {
        return Ok(None);
    }
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            graph
                .sorted_neighbors(v)
                .into_iter()
                .map(|(w, _)| w)
                .collect()
        })
        .collect();
    let mut search = HamiltonSearchState {
        adjacency,
        visited: vec![false; n],
        path: vec![0],
        nodes: 0,
        budget: (n > limits.exact_limit).then_some(limits.node_budget),
    };
    search.visited[0] = true;
    match search.extend() {
        Ok(true) => Ok(Some(HamiltonianCycle {
            vertices: search.path,
        })),
        Ok(false) => Ok(None),
        Err(()) => Err(Error::TooLarge { n }),
    }
}

struct HamiltonSearchState {
    adjacency: Vec<Vec<usize>>,
    visited: Vec<bool>,
    path: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
}

impl HamiltonSearchState {
    /// `Err(())` when the node budget is exhausted.
    fn extend(&mut self) -> std::result::Result<bool, ()> {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Err(());
        }
        let n = self.adjacency.len();
        let end = *self.path.last().unwrap();
        if self.path.len() == n {
            return Ok(self.adjacency[end].contains(&0));
        }
        if !self.feasible(end) {
            return Ok(false);
        }
        for i in 0..self.adjacency[end].len() {
            let next = self.adjacency[end][i];
            if self.visited[next] {
                continue;
            }
            self.visited[next] = true;
            self.path.push(next);
            if self.extend()? {
                return Ok(true);
            }
            self.path.pop();
            self.visited[next] = false;
        }
        Ok(false)
    }

    /// Degree and connectivity pruning for the current partial path.
    fn feasible(&self, end: usize) -> bool {
        let n = self.adjacency.len();
        let open = |w: usize| !self.visited[w] || w == end || w == 0;
        let mut remaining = 0;
        for w in 0..n {
            if self.visited[w] {
                continue;
            }
            remaining += 1;
            // Every unvisited vertex needs two usable neighbors on the final cycle.
            if self.adjacency[w]
                .iter()
                .filter(|&&x| open(x) && x != w)
                .count()
                < 2
            {
                return false;
            }
        }
        if remaining == 0 {
            return true;
        }
        if !self.adjacency[0].iter().any(|&x| !self.visited[x]) {
            return false;
        }
        // Unvisited vertices must all be reachable from the path end through unvisited vertices.
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([end]);
        seen[end] = true;
        let mut reached = 0;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if !self.visited[y] && !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        reached == remaining
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_cycle() -> Graph {
        Graph::from_edge_list(6, &[(0, 4), (4, 5), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn three_cycle() -> Graph {
        Graph::from_edge_list(
            6,
            &[
                (4, 5),
                (1, 4),
                (1, 2),
                (1, 3),
                (2, 5),
                (3, 5),
                (0, 5),
                (0, 2),
            ],
        )
        .unwrap()
    }

    /// Largest matching by enumerating all edge subsets.
    fn brute_force_matching_number(g: &Graph) -> usize {
        let m = g.edge_count();
        (0u32..1 << m)
            .filter_map(|mask| {
                let edges: Vec<EdgeId> =
                    (0..m).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect();
                g.is_matching(&edges).unwrap().then_some(edges.len())
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn matching_examples() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(matching_number(&k2), 1);
        assert!(is_matchable(&k2));

        let g = one_cycle();
        assert_eq!(brute_force_matching_number(&g), 2);
        let m = maximum_matching(&g);
        assert_eq!(m.len(), 2);
        assert!(!m.is_perfect(&g));
        assert!(g.is_matching(m.edges()).unwrap());

        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(matching_number(&c6), 3);
        assert!(is_matchable(&c6));

        assert_eq!(matching_number(&three_cycle()), 3);
        assert_eq!(matching_number(&Graph::empty(4).unwrap()), 0);
        assert_eq!(matching_number(&Graph::complete(7).unwrap()), 3);
    }

    #[test]
    fn matching_agrees_with_enumeration_on_small_graphs() {
        // Every graph on 5 labelled vertices.
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..1 << pairs.len() {
            let chosen: Vec<_> = (0..pairs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            let g = Graph::from_edge_list(5, &chosen).unwrap();
            assert_eq!(matching_number(&g), brute_force_matching_number(&g), "{g}");
        }
    }

    #[test]
    fn hamiltonian_examples() {
        let c6 = Graph::cycle(6).unwrap();
        let cyc = find_hamiltonian_cycle(&c6).unwrap().unwrap();
        assert!(cyc.is_valid_for(&c6));
        assert_eq!(cyc.edges(&c6).len(), 6);

        assert_eq!(find_hamiltonian_cycle(&one_cycle()).unwrap(), None);
        assert_eq!(find_hamiltonian_cycle(&three_cycle()).unwrap(), None);

        let k4 = Graph::complete(4).unwrap();
        let cyc = find_hamiltonian_cycle(&k4).unwrap().unwrap();
        assert!(cyc.is_valid_for(&k4));

        assert_eq!(
            find_hamiltonian_cycle(&Graph::path(2).unwrap()).unwrap(),
            None
        );
    }

    #[test]
    fn petersen_is_not_hamiltonian() {
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        let g = Graph::from_edge_list(10, &edges).unwrap();
        assert_eq!(find_hamiltonian_cycle(&g).unwrap(), None);
        assert!(is_matchable(&g));
    }

    #[test]
    fn budget_exhaustion_is_reported_not_hidden() {
        // Two K_11 sharing one cut vertex: no Hamiltonian cycle, and the
        // pruning rules do not see it immediately.
        let mut edges = Vec::new();
        for u in 0..11 {
            for v in u + 1..11 {
                edges.push((u, v));
            }
        }
        for u in 10..21 {
            for v in u + 1..21 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edge_list(21, &edges).unwrap();
        let tight = HamiltonSearch {
            exact_limit: 20,
            node_budget: 10,
        };
        assert_eq!(
            find_hamiltonian_cycle_with(&g, tight),
            Err(Error::TooLarge { n: 21 })
        );

        let k21 = Graph::complete(21).unwrap();
        let small = HamiltonSearch {
            exact_limit: 20,
            node_budget: 100,
        };
        let found = find_hamiltonian_cycle_with(&k21, small).unwrap().unwrap();
        assert!(found.is_valid_for(&k21));
    }

    #[test]
    fn cycle_validation_rejects_bad_sequences() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(!HamiltonianCycle {
            vertices: vec![0, 2, 1, 3]
        }
        .is_valid_for(&c4));
        assert!(!HamiltonianCycle {
            vertices: vec![0, 1, 2]
        }
        .is_valid_for(&c4));
        assert!(HamiltonianCycle {
            vertices: vec![0, 1, 2, 3]
        }
        .is_valid_for(&c4));
    }
}
