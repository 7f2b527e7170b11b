//! The discrete magnetic Laplacian and its spectrum.
//!
//! For a magnetic graph the operator acts on vertex functions as
//! `(Δφ)(v) = deg(v) φ(v) - Σ e^{iα(v→w)} φ(w)`, summing over arcs leaving `v`.
//! As a matrix the diagonal holds degrees and the entry in row `u`, column `v`
//! is `-e^{iα}` for the arc `u -> v`. The spectrum is computed by a dense
//! Hermitian eigensolver and every result is checked against its residual.

use std::f64::consts::TAU;

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::magnetic::MagneticGraph;
use crate::{Error, Result, EPS_EIG};

pub type Complex64 = Complex<f64>;

/// Dense Hermitian matrix. Only [`build_dml`] constructs one, and it writes
/// each off-diagonal pair as exact conjugates.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: DMatrix<Complex64>,
}

impl HermitianMatrix {
    pub fn dimension(&self) -> usize {
        self.inner.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm()
    }
}

pub fn build_dml(mg: &MagneticGraph) -> HermitianMatrix {
    let graph = mg.graph();
    let n = graph.vertex_count();
    let mut inner = DMatrix::<Complex64>::zeros(n, n);
    for v in 0..n {
        inner[(v, v)] = Complex::new(graph.degree(v) as f64, 0.0);
    }
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let entry = -Complex::from_polar(1.0, mg.potential().values()[e]);
        inner[(u, v)] = entry;
        inner[(v, u)] = entry.conj();
    }
    HermitianMatrix { inner }
}

/// Eigenvalues in ascending order, repeated by multiplicity.
///
/// Indexing through [`Spectrum::lambda`] is 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    /// Sorts the given values ascending.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self {
            eigenvalues: values,
        }
    }

    /// `λ_k`, for `1 <= k <= n`.
    ///
    /// Panics when `k` is out of range.
    pub fn lambda(&self, k: usize) -> f64 {
        assert!(
            (1..=self.eigenvalues.len()).contains(&k),
            "eigenvalue index {k} outside 1..={}",
            self.eigenvalues.len()
        );
        self.eigenvalues[k - 1]
    }

    /// `λ_k` if `1 <= k <= n`. Takes a signed index so callers can pass
    /// expressions like `μ + n - m` that may drop below 1.
    pub fn get(&self, k: i64) -> Option<f64> {
        if k < 1 {
            return None;
        }
        self.eigenvalues.get(k as usize - 1).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Largest elementwise deviation; `None` when lengths differ.
    pub fn max_abs_diff(&self, other: &Spectrum) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.max_abs_diff(other).is_some_and(|d| d <= tol)
    }
}

/// Eigenvalues with unit eigenvectors stored column-wise in the same order.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

const MAX_SWEEPS: usize = 10_000;

/// Full eigendecomposition, sorted ascending.
pub fn eigenpairs(h: &HermitianMatrix) -> Result<EigenPairs> {
    let n = h.dimension();
    let eig = nalgebra::SymmetricEigen::try_new(h.inner.clone(), f64::EPSILON, MAX_SWEEPS)
        .ok_or_else(|| Error::EigenSolverFailure(format!("no convergence for n = {n}")))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(EigenPairs { values, vectors })
}

/// Residual self-check of an eigendecomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// `max_k ‖H v_k - λ_k v_k‖₂`.
    pub max_residual: f64,
    /// `max |V^H V - I|` entrywise.
    pub orthogonality_defect: f64,
    /// `EPS_EIG · ‖H‖₂`, with the norm bounded from below (see [`verify_eigenpairs`]).
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks eigenpairs against `H`.
///
/// The operator norm is taken as the larger of `max |λ_k|` and `‖H‖_F / √n`,
/// both lower bounds for `‖H‖₂`, so the tolerance never exceeds
/// `EPS_EIG · ‖H‖₂`. A zero matrix uses norm 1.
pub fn verify_eigenpairs(h: &HermitianMatrix, pairs: &EigenPairs) -> ResidualReport {
    let n = h.dimension();
    let a = &h.inner;
    let v = &pairs.vectors;
    let mut max_residual: f64 = 0.0;
    if v.nrows() != n || v.ncols() != pairs.values.len() {
        return ResidualReport {
            max_residual: f64::INFINITY,
            orthogonality_defect: f64::INFINITY,
            tolerance: 0.0,
            pass: false,
        };
    }
    for (k, &lambda) in pairs.values.iter().enumerate() {
        let col = v.column(k);
        let r = a * col - col * Complex::new(lambda, 0.0);
        max_residual = max_residual.max(r.norm());
    }
    let gram = v.adjoint() * v;
    let mut orthogonality_defect: f64 = 0.0;
    for i in 0..gram.nrows() {
        for j in 0..gram.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            orthogonality_defect = orthogonality_defect.max((gram[(i, j)] - target).norm());
        }
    }
    let eig_norm = pairs.values.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let frob_bound = if n > 0 {
        h.frobenius_norm() / (n as f64).sqrt()
    } else {
        0.0
    };
    let mut norm = eig_norm.max(frob_bound);
    if norm == 0.0 {
        norm = 1.0;
    }
    let tolerance = EPS_EIG * norm;
    ResidualReport {
        max_residual,
        orthogonality_defect,
        tolerance,
        pass: max_residual <= tolerance && orthogonality_defect <= tolerance,
    }
}

/// Spectrum of the magnetic Laplacian, validated by its residual check.
pub fn spectrum(mg: &MagneticGraph) -> Result<Spectrum> {
    let h = build_dml(mg);
    let pairs = eigenpairs(&h)?;
    let report = verify_eigenpairs(&h, &pairs);
    if !report.pass {
        return Err(Error::EigenSolverFailure(format!(
            "residual {:.3e} / orthogonality {:.3e} above {:.3e}",
            report.max_residual, report.orthogonality_defect, report.tolerance
        )));
    }
    Ok(Spectrum {
        eigenvalues: pairs.values,
    })
}

/// Spectrum of the cycle `C_n` carrying total flux `flux`:
/// `2 - 2 cos((2πk + Φ)/n)` for `k = 0..n`, sorted.
pub fn cycle_spectrum_closed_form(n: usize, flux: f64) -> Result<Spectrum> {
    if n < 3 {
        return Err(Error::CycleTooSmall(n));
    }
    let nf = n as f64;
    Ok(Spectrum::from_values(
        (0..n)
            .map(|k| 2.0 - 2.0 * ((TAU * k as f64 + flux) / nf).cos())
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::graph::Graph;
    use crate::magnetic::{MagneticGraph, MagneticPotential};
    use crate::EPS_SPEC;

    fn k2(t: f64) -> MagneticGraph {
        MagneticGraph::new(
            Graph::from_edge_list(2, &[(0, 1)]).unwrap(),
            MagneticPotential::new(vec![t]),
        )
        .unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn k2_matrix() {
        let h = build_dml(&k2(0.0));
        assert_eq!(h.entry(0, 0), Complex::new(1.0, 0.0));
        assert_eq!(h.entry(0, 1), Complex::new(-1.0, 0.0));
        assert_eq!(h.entry(1, 0), Complex::new(-1.0, 0.0));

        let t = 0.8;
        let h = build_dml(&k2(t));
        assert!(close(h.entry(0, 1), -Complex::from_polar(1.0, t)));
        assert!(close(h.entry(1, 0), -Complex::from_polar(1.0, -t)));
        assert_eq!(h.entry(1, 0), h.entry(0, 1).conj());
    }

    #[test]
    fn constant_pi_is_signless_laplacian() {
        let g = Graph::complete(4).unwrap();
        let h = build_dml(&MagneticGraph::constant(g.clone(), PI));
        for u in 0..4 {
            for v in 0..4 {
                let expected = if u == v {
                    g.degree(u) as f64
                } else if g.has_edge(u, v) {
                    1.0
                } else {
                    0.0
                };
                assert!(close(h.entry(u, v), Complex::new(expected, 0.0)));
            }
        }
    }

    #[test]
    fn hermitian_by_construction() {
        let g = Graph::complete(5).unwrap();
        let p = MagneticPotential::new((0..10).map(|i| 0.37 * i as f64).collect());
        let h = build_dml(&MagneticGraph::new(g, p).unwrap());
        for u in 0..5 {
            assert_eq!(h.entry(u, u).im, 0.0);
            for v in 0..5 {
                assert_eq!(h.entry(v, u), h.entry(u, v).conj());
            }
        }
    }

    #[test]
    fn k2_eigenpairs_exact() {
        let h = build_dml(&k2(0.0));
        let s = 0.5f64.sqrt();
        let exact = EigenPairs {
            values: vec![0.0, 2.0],
            vectors: DMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex::new(s, 0.0),
                    Complex::new(s, 0.0),
                    Complex::new(s, 0.0),
                    Complex::new(-s, 0.0),
                ],
            ),
        };
        let report = verify_eigenpairs(&h, &exact);
        assert!(report.max_residual < 1e-15);
        assert!(report.pass);
    }

    #[test]
    fn perturbed_eigenvector_fails() {
        let g =
            Graph::from_edge_list(6, &[(0, 4), (4, 5), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        let h = build_dml(&MagneticGraph::zero(g));
        let mut pairs = eigenpairs(&h).unwrap();
        assert!(verify_eigenpairs(&h, &pairs).pass);
        pairs.vectors[(0, 2)] += Complex::new(1e-6, 0.0);
        assert!(!verify_eigenpairs(&h, &pairs).pass);
    }

    #[test]
    fn closed_form_examples() {
        let s = cycle_spectrum_closed_form(6, 0.0).unwrap();
        let expected = Spectrum::from_values(vec![0.0, 1.0, 1.0, 3.0, 3.0, 4.0]);
        assert!(s.approx_eq(&expected, 1e-12));

        let r3 = 3f64.sqrt();
        let s = cycle_spectrum_closed_form(6, PI).unwrap();
        let expected =
            Spectrum::from_values(vec![2.0 - r3, 2.0 - r3, 2.0, 2.0, 2.0 + r3, 2.0 + r3]);
        assert!(s.approx_eq(&expected, 1e-12));

        let s = cycle_spectrum_closed_form(3, 0.0).unwrap();
        assert!(s.approx_eq(&Spectrum::from_values(vec![0.0, 3.0, 3.0]), 1e-12));

        assert_eq!(
            cycle_spectrum_closed_form(2, 0.0),
            Err(Error::CycleTooSmall(2))
        );
    }

    #[test]
    fn c6_flux_pi_numeric_matches_closed_form() {
        let c6 = Graph::cycle(6).unwrap();
        let mut values = vec![0.0; 6];
        values[0] = PI;
        let mg = MagneticGraph::new(c6, MagneticPotential::new(values)).unwrap();
        let numeric = spectrum(&mg).unwrap();
        let closed = cycle_spectrum_closed_form(6, PI).unwrap();
        assert!(numeric.approx_eq(&closed, EPS_SPEC));
    }

    #[test]
    fn one_based_indexing() {
        let s = Spectrum::from_values(vec![3.0, 1.0, 2.0]);
        assert_eq!(s.lambda(1), 1.0);
        assert_eq!(s.lambda(3), 3.0);
        assert_eq!(s.get(0), None);
        assert_eq!(s.get(-2), None);
        assert_eq!(s.get(4), None);
    }

    #[test]
    fn empty_graph_spectrum_is_zero() {
        let g = Graph::empty(3).unwrap();
        let s = spectrum(&MagneticGraph::zero(g)).unwrap();
        assert_eq!(s.values(), &[0.0, 0.0, 0.0]);
    }
}
