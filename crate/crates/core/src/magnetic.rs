//! Magnetic potentials as angle-valued 1-cochains.
//!
//! A potential stores one angle per edge, read on the reference arc `(min, max)`;
//! the reverse arc carries the negated angle. Two potentials are gauge
//! equivalent when they differ by the coboundary of a vertex function, which
//! happens exactly when their fluxes around every cycle agree. The chord
//! fluxes of a fixed spanning tree give a canonical representative.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::graph::{Arc, EdgeId, Graph, SpanningTreeDecomposition};
use crate::{Error, Result, EPS_ANG};

/// Reduces an angle to `[0, 2π)`. Values within [`EPS_ANG`] below `2π` snap to 0.
pub fn normalize_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if TAU - r < EPS_ANG {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

pub fn angles_close(a: f64, b: f64) -> bool {
    angle_distance(a, b) < EPS_ANG
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MagneticPotential {
    values: Vec<f64>,
}

impl MagneticPotential {
    /// Values are taken on reference arcs and normalized to `[0, 2π)`.
    pub fn new(values: Vec<f64>) -> Self {
        Self {
            values: values.into_iter().map(normalize_angle).collect(),
        }
    }

    pub fn zero(m: usize) -> Self {
        Self {
            values: vec![0.0; m],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn edge_value(&self, e: EdgeId) -> f64 {
        self.values[e.0]
    }

    /// Value on an arc: the stored angle, negated for reverse arcs.
    pub fn arc_value(&self, arc: &Arc) -> f64 {
        self.values[arc.edge.0] * arc.sign()
    }

    /// Values on the edges kept by `keep`, in order.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Self {
        Self {
            values: self
                .values
                .iter()
                .zip(keep)
                .filter_map(|(&v, &k)| k.then_some(v))
                .collect(),
        }
    }
}

/// The potential that is `t` on every reference arc.
pub fn constant_potential(graph: &Graph, t: f64) -> MagneticPotential {
    MagneticPotential::new(vec![t; graph.edge_count()])
}

/// A vertex function with values in `R/2πZ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gauge {
    values: Vec<f64>,
}

impl Gauge {
    pub fn new(values: Vec<f64>) -> Self {
        Self {
            values: values.into_iter().map(normalize_angle).collect(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `(δξ)` on the reference arc `u -> v` is `ξ(v) - ξ(u)`.
pub fn coboundary(graph: &Graph, gauge: &Gauge) -> Result<MagneticPotential> {
    check_len(graph.vertex_count(), gauge.values.len())?;
    Ok(MagneticPotential::new(
        graph
            .edges()
            .iter()
            .map(|&(u, v)| gauge.values[v] - gauge.values[u])
            .collect(),
    ))
}

/// `α + δξ`.
pub fn gauge_transform(
    graph: &Graph,
    potential: &MagneticPotential,
    gauge: &Gauge,
) -> Result<MagneticPotential> {
    check_len(graph.edge_count(), potential.len())?;
    let delta = coboundary(graph, gauge)?;
    Ok(MagneticPotential::new(
        potential
            .values
            .iter()
            .zip(&delta.values)
            .map(|(a, d)| a + d)
            .collect(),
    ))
}

/// Sum of arc values around a closed walk, reduced to `[0, 2π)`.
pub fn flux(potential: &MagneticPotential, walk: &[Arc]) -> Result<f64> {
    if let (Some(first), Some(last)) = (walk.first(), walk.last()) {
        let chained = walk.windows(2).all(|w| w[0].head == w[1].tail);
        if !chained || last.head != first.tail {
            return Err(Error::NotClosed);
        }
    }
    if let Some(bad) = walk.iter().find(|a| a.edge.0 >= potential.len()) {
        return Err(Error::BadEdgeId(bad.edge.0));
    }
    Ok(normalize_angle(
        walk.iter().map(|a| potential.arc_value(a)).sum(),
    ))
}

/// Gauge-invariant coordinates of a potential: one flux per chord of a fixed
/// spanning tree, listed in the order of `chords`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluxVector {
    pub chords: Vec<EdgeId>,
    pub fluxes: Vec<f64>,
}

impl FluxVector {
    /// Builds a flux vector for the chords of `tree`.
    pub fn new(tree: &SpanningTreeDecomposition, fluxes: Vec<f64>) -> Result<Self> {
        check_len(tree.chord_count(), fluxes.len())?;
        Ok(Self {
            chords: tree.chords().to_vec(),
            fluxes: fluxes.into_iter().map(normalize_angle).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.fluxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fluxes.is_empty()
    }

    /// True iff every component agrees modulo 2π within [`EPS_ANG`].
    pub fn approx_eq(&self, other: &FluxVector) -> bool {
        self.chords == other.chords
            && self
                .fluxes
                .iter()
                .zip(&other.fluxes)
                .all(|(&a, &b)| angles_close(a, b))
    }

    /// True when every flux vanishes, i.e. the potential is gauge-trivial.
    pub fn is_trivial(&self) -> bool {
        self.fluxes.iter().all(|&f| angles_close(f, 0.0))
    }
}

/// A graph carrying a magnetic potential.
#[derive(Debug, Clone, PartialEq)]
pub struct MagneticGraph {
    graph: Graph,
    potential: MagneticPotential,
}

impl MagneticGraph {
    pub fn new(graph: Graph, potential: MagneticPotential) -> Result<Self> {
        check_len(graph.edge_count(), potential.len())?;
        Ok(Self { graph, potential })
    }

    pub fn zero(graph: Graph) -> Self {
        let potential = MagneticPotential::zero(graph.edge_count());
        Self { graph, potential }
    }

    pub fn constant(graph: Graph, t: f64) -> Self {
        let potential = constant_potential(&graph, t);
        Self { graph, potential }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn potential(&self) -> &MagneticPotential {
        &self.potential
    }

    pub fn gauge_transform(&self, gauge: &Gauge) -> Result<Self> {
        let potential = gauge_transform(&self.graph, &self.potential, gauge)?;
        Ok(Self {
            graph: self.graph.clone(),
            potential,
        })
    }

    /// `G - e` carrying the restriction of the potential.
    pub fn delete_edge(&self, e: EdgeId) -> Result<Self> {
        self.delete_edges(&[e])
    }

    pub fn delete_edges(&self, removed: &[EdgeId]) -> Result<Self> {
        let keep = self.graph.keep_mask(removed)?;
        Ok(Self {
            graph: self.graph.delete_edges(removed)?,
            potential: self.potential.restrict(&keep),
        })
    }

    /// Flux through the fundamental cycle of each chord of `tree`.
    pub fn chord_fluxes(&self, tree: &SpanningTreeDecomposition) -> Result<FluxVector> {
        check_len(self.graph.edge_count(), tree.edge_count())?;
        let fluxes = tree
            .fundamental_cycles()
            .iter()
            .map(|walk| flux(&self.potential, walk))
            .collect::<Result<Vec<_>>>()?;
        FluxVector::new(tree, fluxes)
    }
}

/// Chord fluxes with respect to the deterministic BFS spanning tree.
pub fn chord_fluxes(mg: &MagneticGraph) -> Result<FluxVector> {
    let tree = mg.graph().spanning_tree()?;
    mg.chord_fluxes(&tree)
}

/// Zero on tree edges, the prescribed flux on each chord.
pub fn potential_from_chord_fluxes(
    graph: &Graph,
    tree: &SpanningTreeDecomposition,
    fluxes: &FluxVector,
) -> Result<MagneticPotential> {
    check_len(graph.edge_count(), tree.edge_count())?;
    check_len(tree.chord_count(), fluxes.len())?;
    if fluxes.chords != tree.chords() {
        return Err(Error::InvalidArgument(
            "flux vector belongs to a different spanning tree".into(),
        ));
    }
    let mut values = vec![0.0; graph.edge_count()];
    for (&c, &f) in fluxes.chords.iter().zip(&fluxes.fluxes) {
        // The fundamental cycle runs along the chord's reference arc, so the
        // chord value is the flux itself.
        values[c.0] = f;
    }
    Ok(MagneticPotential::new(values))
}

/// True iff both potentials have the same flux through every cycle.
pub fn is_gauge_equivalent(a: &MagneticGraph, b: &MagneticGraph) -> Result<bool> {
    if a.graph != b.graph {
        return Err(Error::GraphMismatch);
    }
    let tree = a.graph.spanning_tree()?;
    Ok(a.chord_fluxes(&tree)?.approx_eq(&b.chord_fluxes(&tree)?))
}

/// A gauge `ξ` with `α + δξ` vanishing on every tree edge.
pub fn tree_gauge(
    graph: &Graph,
    tree: &SpanningTreeDecomposition,
    potential: &MagneticPotential,
) -> Result<Gauge> {
    check_len(graph.edge_count(), potential.len())?;
    let n = graph.vertex_count();
    let mut xi = vec![0.0; n];
    // Vertices reached along the tree from the root; ξ(head) = ξ(tail) - α(tail -> head).
    let mut stack = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for (y, e) in graph.neighbors(x) {
            if tree.is_tree_edge(e) && !seen[y] {
                seen[y] = true;
                let arc = Arc {
                    edge: e,
                    tail: x,
                    head: y,
                };
                xi[y] = xi[x] - potential.arc_value(&arc);
                stack.push(y);
            }
        }
    }
    Ok(Gauge::new(xi))
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, found })
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    fn one_cycle() -> Graph {
        Graph::from_edge_list(6, &[(0, 4), (4, 5), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_angle(-PI), PI);
        assert_eq!(normalize_angle(TAU), 0.0);
        assert_eq!(normalize_angle(TAU - 1e-12), 0.0);
        assert!((normalize_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!(angles_close(1e-12, TAU - 1e-12));
    }

    #[test]
    fn constant_potentials() {
        let g = one_cycle();
        assert!(constant_potential(&g, 0.0)
            .values()
            .iter()
            .all(|&v| v == 0.0));
        let pi = constant_potential(&g, PI);
        assert!(pi.values().iter().all(|&v| v == PI));
        // Reverse arc carries -π ≡ π.
        let rev = g.arc(EdgeId(0)).unwrap().reversed();
        assert!(angles_close(pi.arc_value(&rev), PI));
    }

    #[test]
    fn constant_potential_flux_on_c6_depends_on_orientation() {
        let c6 = Graph::cycle(6).unwrap();
        let alpha = constant_potential(&c6, FRAC_PI_2);
        let tree = c6.spanning_tree().unwrap();
        let walk = tree.fundamental_cycle(tree.chords()[0]).unwrap();
        // Five arcs run 0->1->...->5 along the reference orientation; the closing
        // arc 5->0 runs against it. Net flux (6 - 2)·t ≡ 0 at t = π/2.
        let net: f64 = walk.iter().map(|a| a.sign()).sum();
        assert_eq!(net.abs(), 4.0);
        assert!(angles_close(flux(&alpha, walk).unwrap(), 0.0));
        // Summing t over every arc of a consistently oriented hexagon gives 6t ≡ π.
        assert!(angles_close(6.0 * FRAC_PI_2, PI));
    }

    #[test]
    fn coboundary_examples() {
        let g = one_cycle();
        let zero = coboundary(&g, &Gauge::new(vec![1.3; 6])).unwrap();
        assert!(zero.values().iter().all(|&v| angles_close(v, 0.0)));

        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let d = coboundary(&k2, &Gauge::new(vec![0.0, 0.7])).unwrap();
        assert!(angles_close(d.values()[0], 0.7));

        assert_eq!(
            coboundary(&k2, &Gauge::new(vec![0.0])),
            Err(Error::SizeMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn coboundary_has_zero_flux() {
        let g = Graph::complete(5).unwrap();
        let xi = Gauge::new(vec![0.1, 2.0, 4.4, 5.9, 3.3]);
        let d = coboundary(&g, &xi).unwrap();
        let tree = g.spanning_tree().unwrap();
        for walk in tree.fundamental_cycles() {
            assert!(angles_close(flux(&d, walk).unwrap(), 0.0));
        }
    }

    #[test]
    fn flux_examples() {
        let g = one_cycle();
        let tree = g.spanning_tree().unwrap();
        let walk = tree.fundamental_cycle(tree.chords()[0]).unwrap();
        assert_eq!(flux(&MagneticPotential::zero(6), walk).unwrap(), 0.0);

        let mut values = vec![0.0; 6];
        values[g.edge_between(2, 4).unwrap().0] = PI;
        let alpha = MagneticPotential::new(values);
        assert!(angles_close(flux(&alpha, walk).unwrap(), PI));

        let alpha = MagneticPotential::new(vec![0.3, 0.0, 1.1, 0.4, 0.9, 2.2]);
        let forward = flux(&alpha, walk).unwrap();
        let reversed: Vec<Arc> = walk.iter().rev().map(Arc::reversed).collect();
        assert!(angles_close(flux(&alpha, &reversed).unwrap(), -forward));

        assert_eq!(flux(&alpha, &walk[..2]), Err(Error::NotClosed));
    }

    #[test]
    fn gauge_transform_identity_and_tree_reduction() {
        let g = one_cycle();
        let alpha = MagneticPotential::new(vec![0.3, 0.0, 1.1, 0.4, 0.9, 2.2]);
        let same = gauge_transform(&g, &alpha, &Gauge::new(vec![0.0; 6])).unwrap();
        assert_eq!(same, alpha);

        let t = Graph::path(5).unwrap();
        let beta = MagneticPotential::new(vec![1.0, 2.0, 3.0, 4.0]);
        let tree = t.spanning_tree().unwrap();
        let xi = tree_gauge(&t, &tree, &beta).unwrap();
        let reduced = gauge_transform(&t, &beta, &xi).unwrap();
        assert!(reduced.values().iter().all(|&v| angles_close(v, 0.0)));
        let a = MagneticGraph::new(t.clone(), beta).unwrap();
        let b = MagneticGraph::zero(t);
        assert!(is_gauge_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn chord_flux_examples() {
        let t = Graph::path(4).unwrap();
        let mg = MagneticGraph::constant(t, 1.0);
        assert!(chord_fluxes(&mg).unwrap().is_empty());

        let g = one_cycle();
        let mut values = vec![0.0; 6];
        values[g.edge_between(2, 4).unwrap().0] = PI;
        let mg = MagneticGraph::new(g.clone(), MagneticPotential::new(values)).unwrap();
        let f = chord_fluxes(&mg).unwrap();
        assert_eq!(f.len(), 1);
        assert!(angles_close(f.fluxes[0], PI));

        let tree = g.spanning_tree().unwrap();
        let back = potential_from_chord_fluxes(&g, &tree, &f).unwrap();
        let chord = tree.chords()[0];
        for e in g.edge_ids() {
            let expected = if e == chord { PI } else { 0.0 };
            assert!(angles_close(back.edge_value(e), expected));
        }
        assert!(is_gauge_equivalent(&mg, &MagneticGraph::new(g, back).unwrap()).unwrap());
    }

    #[test]
    fn three_cycle_constant_fluxes_are_signed_sums() {
        let g = Graph::from_edge_list(
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
        .unwrap();
        let t = 0.37;
        let mg = MagneticGraph::constant(g.clone(), t);
        let tree = g.spanning_tree().unwrap();
        let f = mg.chord_fluxes(&tree).unwrap();
        assert_eq!(f.len(), 3);
        for (walk, &phi) in tree.fundamental_cycles().iter().zip(&f.fluxes) {
            let signed: f64 = walk.iter().map(|a| a.sign() * t).sum();
            assert!(angles_close(phi, signed));
        }
    }

    #[test]
    fn zero_flux_vector_gives_zero_potential() {
        let g = Graph::complete(4).unwrap();
        let tree = g.spanning_tree().unwrap();
        let f = FluxVector::new(&tree, vec![0.0; 3]).unwrap();
        let p = potential_from_chord_fluxes(&g, &tree, &f).unwrap();
        assert!(p.values().iter().all(|&v| v == 0.0));
        assert!(FluxVector::new(&tree, vec![0.0; 2]).is_err());
    }

    #[test]
    fn gauge_equivalence_errors() {
        let a = MagneticGraph::zero(Graph::cycle(4).unwrap());
        let b = MagneticGraph::zero(Graph::path(4).unwrap());
        assert_eq!(is_gauge_equivalent(&a, &b), Err(Error::GraphMismatch));
        assert!(MagneticGraph::new(Graph::cycle(4).unwrap(), MagneticPotential::zero(3)).is_err());
    }

    #[test]
    fn restriction_follows_deletion() {
        let g = one_cycle();
        let mg = MagneticGraph::new(
            g,
            MagneticPotential::new(vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6]),
        )
        .unwrap();
        let smaller = mg.delete_edge(EdgeId(2)).unwrap();
        assert_eq!(smaller.graph().edge_count(), 5);
        let expected = [0.1, 0.2, 0.4, 0.5, 0.6];
        for (got, want) in smaller.potential().values().iter().zip(expected) {
            assert!((got - want).abs() < 1e-15);
        }
    }
}
