//! Spectra over families of potentials.
//!
//! Three families are supported: a constant angle `t` on every reference arc,
//! a single chord of the BFS spanning tree carrying `t` with zero elsewhere,
//! and the full torus of chord fluxes. Points are evaluated in parallel and
//! returned in grid order.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use crate::dml::{spectrum, Spectrum};
use crate::graph::{EdgeId, Graph, SpanningTreeDecomposition};
use crate::magnetic::{
    constant_potential, potential_from_chord_fluxes, FluxVector, MagneticGraph, MagneticPotential,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    Constant,
    SingleChord,
    ChordTorus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    /// `[t]` for one-parameter families, one flux per chord on the torus.
    pub parameters: Vec<f64>,
    pub potential: MagneticPotential,
    pub spectrum: Spectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub family: SweepFamily,
    /// The swept chords (single-chord: one; torus: all; constant: none).
    pub chords: Vec<EdgeId>,
    /// Per-axis grid `2πj/N`.
    pub grid: Vec<f64>,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    /// Number of parameter columns per point.
    pub fn dimension(&self) -> usize {
        self.points.first().map_or(0, |p| p.parameters.len())
    }
}

/// `2πj/N` for `j = 0..N`.
pub fn uniform_grid(grid_size: usize) -> Result<Vec<f64>> {
    if grid_size < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid size must be at least 2, got {grid_size}"
        )));
    }
    Ok((0..grid_size)
        .map(|j| TAU * j as f64 / grid_size as f64)
        .collect())
}

fn evaluate(graph: &Graph, inputs: Vec<(Vec<f64>, MagneticPotential)>) -> Result<Vec<SweepPoint>> {
    inputs
        .into_par_iter()
        .map(|(parameters, potential)| {
            let mg = MagneticGraph::new(graph.clone(), potential.clone())?;
            Ok(SweepPoint {
                parameters,
                potential,
                spectrum: spectrum(&mg)?,
            })
        })
        .collect()
}

pub fn sweep_constant_potential(graph: &Graph, grid_size: usize) -> Result<SweepResult> {
    let grid = uniform_grid(grid_size)?;
    let inputs = grid
        .iter()
        .map(|&t| (vec![t], constant_potential(graph, t)))
        .collect();
    Ok(SweepResult {
        family: SweepFamily::Constant,
        chords: Vec::new(),
        points: evaluate(graph, inputs)?,
        grid,
    })
}

/// Sweeps the flux through one chord of the BFS spanning tree; all other
/// edges carry zero.
pub fn sweep_single_chord(graph: &Graph, chord: EdgeId, grid_size: usize) -> Result<SweepResult> {
    let tree = graph.spanning_tree()?;
    sweep_single_chord_of(graph, &tree, chord, grid_size)
}

pub(crate) fn sweep_single_chord_of(
    graph: &Graph,
    tree: &SpanningTreeDecomposition,
    chord: EdgeId,
    grid_size: usize,
) -> Result<SweepResult> {
    let position = tree
        .chord_position(chord)
        .ok_or(Error::NotAChord(chord.0))?;
    let grid = uniform_grid(grid_size)?;
    let inputs = grid
        .iter()
        .map(|&t| {
            let mut fluxes = vec![0.0; tree.chord_count()];
            fluxes[position] = t;
            let f = FluxVector::new(tree, fluxes)?;
            Ok((vec![t], potential_from_chord_fluxes(graph, tree, &f)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        family: SweepFamily::SingleChord,
        chords: vec![chord],
        points: evaluate(graph, inputs)?,
        grid,
    })
}

/// Product grid over all chord fluxes of the BFS spanning tree.
///
/// A tree yields the single zero-potential point.
pub fn sweep_chord_fluxes(graph: &Graph, grid_size: usize, budget: usize) -> Result<SweepResult> {
    let tree = graph.spanning_tree()?;
    let grid = uniform_grid(grid_size)?;
    let c = tree.chord_count();
    let points = (grid_size as u128)
        .checked_pow(c as u32)
        .unwrap_or(u128::MAX);
    if points > budget as u128 {
        return Err(Error::BudgetExceeded { points, budget });
    }
    let mut inputs = Vec::with_capacity(points as usize);
    let mut digits = vec![0usize; c];
    loop {
        let fluxes: Vec<f64> = digits.iter().map(|&j| grid[j]).collect();
        let f = FluxVector::new(&tree, fluxes.clone())?;
        inputs.push((fluxes, potential_from_chord_fluxes(graph, &tree, &f)?));
        // Odometer increment, last chord fastest.
        let mut axis = c;
        loop {
            if axis == 0 {
                return Ok(SweepResult {
                    family: SweepFamily::ChordTorus,
                    chords: tree.chords().to_vec(),
                    points: evaluate(graph, inputs)?,
                    grid,
                });
            }
            axis -= 1;
            digits[axis] += 1;
            if digits[axis] < grid_size {
                break;
            }
            digits[axis] = 0;
        }
    }
}
