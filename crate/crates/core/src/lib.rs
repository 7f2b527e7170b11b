//! Spectra of the discrete magnetic Laplacian on finite simple graphs.
//!
//! The crate builds the magnetic Laplacian of a graph carrying an angle-valued
//! potential on its edges, compares spectra through the shifted spectral
//! preorder, and searches the space of potentials for eigenvalue inequalities
//! that rule out perfect matchings or Hamiltonian cycles. Every obstruction it
//! reports can be re-checked from the stored witness potential, and at small
//! sizes it is cross-checked against exact combinatorial search.
//!
//! Module map:
//!
//! - [`graph`]: simple graphs, edge deletion, spanning trees and fundamental cycles.
//! - [`magnetic`]: potentials, gauges, fluxes and the chord-flux normal form.
//! - [`dml`]: the Hermitian operator, its spectrum and the closed-form cycle spectrum.
//! - [`preorder`]: the shifted spectral preorder and interlacing checks.
//! - [`combinatorics`]: exact maximum matching and Hamiltonian cycle search.
//! - [`certificates`]: flux sweeps, obstruction certificates and the randomized theorem suite.
//! - [`io`] and [`cli`]: graph files, CSV output and the `maglap` command surface.

pub mod certificates;
pub mod cli;
pub mod combinatorics;
pub mod dml;
mod error;
pub mod graph;
pub mod io;
pub mod magnetic;
pub mod preorder;
pub mod random;

pub use error::{Error, Result};

/// Relative residual allowed for an eigenpair, scaled by the operator norm.
pub const EPS_EIG: f64 = 1e-10;
/// Absolute tolerance when two spectra are compared elementwise.
pub const EPS_SPEC: f64 = 1e-8;
/// Clearance every strict certificate inequality must exceed.
pub const DELTA_CERT: f64 = 1e-6;
/// Tolerance for equality of angles modulo 2π.
pub const EPS_ANG: f64 = 1e-9;
