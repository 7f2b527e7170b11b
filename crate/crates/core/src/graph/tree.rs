use std::collections::VecDeque;

use super::{Arc, EdgeId, Graph};
use crate::{Error, Result};

/// A spanning tree together with its chords and their fundamental cycles.
///
/// The tree is rooted at vertex 0. Each fundamental cycle starts with its chord
/// traversed along the reference orientation and returns through the tree.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTreeDecomposition {
    tree_edges: Vec<EdgeId>,
    chords: Vec<EdgeId>,
    fundamental_cycles: Vec<Vec<Arc>>,
    in_tree: Vec<bool>,
    parent: Vec<Option<(usize, EdgeId)>>,
    depth: Vec<usize>,
}

impl SpanningTreeDecomposition {
    /// BFS from vertex 0, neighbors visited in ascending vertex order.
    pub(super) fn bfs(graph: &Graph) -> Result<Self> {
        let n = graph.vertex_count();
        let mut in_tree = vec![false; graph.edge_count()];
        let mut visited = vec![false; n];
        visited[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (y, e) in graph.sorted_neighbors(x) {
                if !visited[y] {
                    visited[y] = true;
                    in_tree[e.0] = true;
                    queue.push_back(y);
                }
            }
        }
        if visited.iter().any(|v| !v) {
            return Err(Error::Disconnected);
        }
        Ok(Self::from_tree_mask(graph, in_tree))
    }

    /// Kruskal-style: matching edges first, then the rest in edge-id order.
    pub(super) fn containing(graph: &Graph, matching: &[EdgeId]) -> Result<Self> {
        if !graph.is_matching(matching)? {
            return Err(Error::NotAMatching);
        }
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut sets = DisjointSets::new(graph.vertex_count());
        let mut in_tree = vec![false; graph.edge_count()];
        for e in matching.iter().copied().chain(graph.edge_ids()) {
            let (u, v) = graph.edges()[e.0];
            if sets.union(u, v) {
                in_tree[e.0] = true;
            }
        }
        Ok(Self::from_tree_mask(graph, in_tree))
    }

    fn from_tree_mask(graph: &Graph, in_tree: Vec<bool>) -> Self {
        let n = graph.vertex_count();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut visited = vec![false; n];
        visited[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (y, e) in graph.sorted_neighbors(x) {
                if in_tree[e.0] && !visited[y] {
                    visited[y] = true;
                    parent[y] = Some((x, e));
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let (tree_edges, chords): (Vec<EdgeId>, Vec<EdgeId>) =
            graph.edge_ids().partition(|e| in_tree[e.0]);
        let mut out = SpanningTreeDecomposition {
            tree_edges,
            chords,
            fundamental_cycles: Vec::new(),
            in_tree,
            parent,
            depth,
        };
        out.fundamental_cycles = out
            .chords
            .iter()
            .map(|&c| {
                let (u, v) = graph.edges()[c.0];
                let mut walk = vec![Arc {
                    edge: c,
                    tail: u,
                    head: v,
                }];
                walk.extend(out.tree_path(v, u));
                walk
            })
            .collect();
        out
    }

    pub fn tree_edges(&self) -> &[EdgeId] {
        &self.tree_edges
    }

    /// Chords in ascending edge-id order.
    pub fn chords(&self) -> &[EdgeId] {
        &self.chords
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn edge_count(&self) -> usize {
        self.in_tree.len()
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.in_tree.get(e.0).copied().unwrap_or(false)
    }

    pub fn chord_position(&self, chord: EdgeId) -> Option<usize> {
        self.chords.iter().position(|&c| c == chord)
    }

    /// The closed walk made of `chord` and the tree path between its endpoints.
    pub fn fundamental_cycle(&self, chord: EdgeId) -> Result<&[Arc]> {
        self.chord_position(chord)
            .map(|i| self.fundamental_cycles[i].as_slice())
            .ok_or(Error::NotAChord(chord.0))
    }

    pub fn fundamental_cycles(&self) -> &[Vec<Arc>] {
        &self.fundamental_cycles
    }

    /// Arcs of the unique tree path from `from` to `to`.
    pub fn tree_path(&self, from: usize, to: usize) -> Vec<Arc> {
        let mut up = Vec::new();
        let mut down = Vec::new();
        let (mut a, mut b) = (from, to);
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (p, e) = self.parent[a].expect("non-root vertex has a parent");
                up.push(Arc {
                    edge: e,
                    tail: a,
                    head: p,
                });
                a = p;
            } else {
                let (p, e) = self.parent[b].expect("non-root vertex has a parent");
                down.push(Arc {
                    edge: e,
                    tail: p,
                    head: b,
                });
                b = p;
            }
        }
        up.extend(down.into_iter().rev());
        up
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
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

    fn cycle_vertices(walk: &[Arc]) -> Vec<usize> {
        walk.iter().map(|a| a.tail).collect()
    }

    fn assert_valid(graph: &Graph, d: &SpanningTreeDecomposition) {
        let tree = graph
            .delete_edges(d.chords())
            .expect("chords are valid edge ids");
        assert!(tree.is_tree());
        assert_eq!(d.tree_edges().len() + d.chords().len(), graph.edge_count());
        for (&c, walk) in d.chords().iter().zip(d.fundamental_cycles()) {
            assert_eq!(walk.iter().filter(|a| a.edge == c).count(), 1);
            assert!(walk[1..].iter().all(|a| d.is_tree_edge(a.edge)));
            for pair in walk.windows(2) {
                assert_eq!(pair[0].head, pair[1].tail);
            }
            assert_eq!(walk.last().unwrap().head, walk[0].tail);
            let mut verts = cycle_vertices(walk);
            verts.sort_unstable();
            verts.dedup();
            assert_eq!(verts.len(), walk.len(), "fundamental cycle must be simple");
            for a in walk {
                assert_eq!(
                    graph.edges()[a.edge.0],
                    (a.tail.min(a.head), a.tail.max(a.head))
                );
            }
        }
    }

    #[test]
    fn tree_has_no_chords() {
        let t = Graph::path(5).unwrap();
        let d = t.spanning_tree().unwrap();
        assert!(d.chords().is_empty());
        assert_valid(&t, &d);
    }

    #[test]
    fn one_cycle_single_chord_is_the_four_cycle() {
        let g = one_cycle();
        let d = g.spanning_tree().unwrap();
        assert_eq!(d.chord_count(), 1);
        assert_valid(&g, &d);
        let walk = d.fundamental_cycle(d.chords()[0]).unwrap();
        let mut verts = cycle_vertices(walk);
        verts.sort_unstable();
        assert_eq!(verts, vec![1, 2, 3, 4]);
        assert_eq!(
            d.fundamental_cycle(d.tree_edges()[0]),
            Err(Error::NotAChord(d.tree_edges()[0].0))
        );
    }

    #[test]
    fn three_cycle_three_chords() {
        let g = three_cycle();
        let d = g.spanning_tree().unwrap();
        assert_eq!(d.chord_count(), 3);
        assert_valid(&g, &d);
    }

    #[test]
    fn cycle_and_triangle() {
        let c6 = Graph::cycle(6).unwrap();
        let d = c6.spanning_tree().unwrap();
        assert_eq!(d.chord_count(), 1);
        assert_eq!(d.fundamental_cycle(d.chords()[0]).unwrap().len(), 6);
        // Tree forced to be the path by putting the closing edge last.
        let tri = Graph::cycle(3).unwrap();
        let d = tri.spanning_tree().unwrap();
        assert_eq!(d.fundamental_cycles()[0].len(), 3);
        assert_valid(&tri, &d);
    }

    #[test]
    fn matching_tree_k2() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let d = k2.spanning_tree_containing_matching(&[EdgeId(0)]).unwrap();
        assert_eq!(d.tree_edges(), &[EdgeId(0)]);
    }

    #[test]
    fn matching_tree_c4_is_a_path_through_both_edges() {
        let c4 = Graph::cycle(4).unwrap();
        // (0,1) and (2,3) are opposite.
        let m = [EdgeId(0), EdgeId(2)];
        let d = c4.spanning_tree_containing_matching(&m).unwrap();
        assert!(m.iter().all(|&e| d.is_tree_edge(e)));
        let tree = c4.delete_edges(d.chords()).unwrap();
        assert!(tree.is_tree());
        assert_eq!(tree.max_degree(), 2);
        assert_valid(&c4, &d);
    }

    #[test]
    fn matching_tree_errors() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(
            c4.spanning_tree_containing_matching(&[EdgeId(0), EdgeId(1)]),
            Err(Error::NotAMatching)
        );
        assert_eq!(
            c4.spanning_tree_containing_matching(&[EdgeId(9)]),
            Err(Error::BadEdgeId(9))
        );
        let two = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            two.spanning_tree_containing_matching(&[EdgeId(0)]),
            Err(Error::Disconnected)
        );
    }
}
