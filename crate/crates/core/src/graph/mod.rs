//! Finite simple undirected graphs with a reference orientation per edge.
//!
//! Every edge is stored as a pair `(u, v)` with `u < v`; the arc `u -> v` is the
//! reference arc and `v -> u` its reverse. Potentials elsewhere in the crate are
//! stored relative to this orientation.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

mod tree;

pub use tree::SpanningTreeDecomposition;

/// Index of an edge in [`Graph::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// One traversal direction of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub edge: EdgeId,
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    /// True when the arc runs along the reference orientation `(min, max)`.
    pub fn is_reference(&self) -> bool {
        self.tail < self.head
    }

    /// `+1` along the reference orientation, `-1` against it.
    pub fn sign(&self) -> f64 {
        if self.is_reference() {
            1.0
        } else {
            -1.0
        }
    }

    pub fn reversed(&self) -> Arc {
        Arc {
            edge: self.edge,
            tail: self.head,
            head: self.tail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    ///
    /// Pairs are canonicalized to `(min, max)`; the input order of edges is
    /// kept, so `EdgeId(i)` is the i-th pair given.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = HashSet::with_capacity(pairs.len());
        let mut edges = Vec::with_capacity(pairs.len());
        let mut incidence = vec![Vec::new(); n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
            edges.push((u, v));
            incidence[u].push(EdgeId(i));
            incidence[v].push(EdgeId(i));
        }
        Ok(Graph {
            n,
            edges,
            incidence,
        })
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Graph> {
        Graph::from_edge_list(n, &[])
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Graph> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &pairs)
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`. The closing edge is `(0, n-1)`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::CycleTooSmall(n));
        }
        let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        pairs.push((0, n - 1));
        Graph::from_edge_list(n, &pairs)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        Graph::from_edge_list(n, &pairs)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical `(min, max)` pairs in edge-id order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(usize, usize)> {
        self.edges.get(e.0).copied().ok_or(Error::BadEdgeId(e.0))
    }

    /// Reference arc of an edge.
    pub fn arc(&self, e: EdgeId) -> Result<Arc> {
        let (tail, head) = self.endpoints(e)?;
        Ok(Arc {
            edge: e,
            tail,
            head,
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges incident to `v`, in edge-id order.
    pub fn incident_edges(&self, v: usize) -> &[EdgeId] {
        &self.incidence[v]
    }

    /// Neighbors of `v` with the connecting edge, in edge-id order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, EdgeId)> + '_ {
        self.incidence[v].iter().map(move |&e| {
            let (a, b) = self.edges[e.0];
            (if a == v { b } else { a }, e)
        })
    }

    /// Neighbors of `v` sorted by vertex index.
    pub fn sorted_neighbors(&self, v: usize) -> Vec<(usize, EdgeId)> {
        let mut out: Vec<_> = self.neighbors(v).collect();
        out.sort_unstable();
        out
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let key = (u.min(v), u.max(v));
        self.incidence[u]
            .iter()
            .copied()
            .find(|e| self.edges[e.0] == key)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// Component label per vertex, labels assigned in order of the smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for (y, _) in self.neighbors(x) {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.component_count() == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].unwrap();
                for (y, _) in self.neighbors(x) {
                    match side[y] {
                        None => {
                            side[y] = Some(!sx);
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// `G - e`: same vertices, remaining edges re-enumerated in their original order.
    pub fn delete_edge(&self, e: EdgeId) -> Result<Graph> {
        self.delete_edges(&[e])
    }

    /// Deletes a set of edges at once. Duplicated ids are an error.
    pub fn delete_edges(&self, removed: &[EdgeId]) -> Result<Graph> {
        let keep = self.keep_mask(removed)?;
        let pairs: Vec<_> = self
            .edges
            .iter()
            .zip(&keep)
            .filter_map(|(&p, &k)| k.then_some(p))
            .collect();
        Graph::from_edge_list(self.n, &pairs)
    }

    /// `keep[i]` is false for every edge in `removed`.
    pub(crate) fn keep_mask(&self, removed: &[EdgeId]) -> Result<Vec<bool>> {
        let mut keep = vec![true; self.edges.len()];
        for &e in removed {
            match keep.get_mut(e.0) {
                Some(slot) if *slot => *slot = false,
                Some(_) => return Err(Error::InvalidArgument(format!("edge {e} deleted twice"))),
                None => return Err(Error::BadEdgeId(e.0)),
            }
        }
        Ok(keep)
    }

    /// Deterministic BFS spanning tree rooted at vertex 0.
    pub fn spanning_tree(&self) -> Result<SpanningTreeDecomposition> {
        SpanningTreeDecomposition::bfs(self)
    }

    /// Spanning tree whose edge set contains the matching `matching`.
    pub fn spanning_tree_containing_matching(
        &self,
        matching: &[EdgeId],
    ) -> Result<SpanningTreeDecomposition> {
        SpanningTreeDecomposition::containing(self, matching)
    }

    /// Checks that `edges` are valid ids and pairwise vertex-disjoint.
    pub fn is_matching(&self, edges: &[EdgeId]) -> Result<bool> {
        let mut used = vec![false; self.n];
        let mut ids = HashSet::new();
        for &e in edges {
            let (u, v) = self.endpoints(e)?;
            if !ids.insert(e) || used[u] || used[v] {
                return Ok(false);
            }
            used[u] = true;
            used[v] = true;
        }
        Ok(true)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} edges=[", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({u},{v})")?;
        }
        write!(f, "]")
    }
}
