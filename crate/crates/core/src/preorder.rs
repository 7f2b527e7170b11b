//! Shifted spectral preorder and edge-deletion interlacing.
//!
//! `A ≼_r B` holds when `λ_k(A) <= λ_{k+r}(B)` for every `1 <= k <= n - r`.
//! Deleting an edge `e` from a magnetic graph `G` (keeping the potential on the
//! remaining edges) gives `G - e ≼ G ≼_1 G - e`; deleting `r` edges gives
//! `G' ≼ G ≼_r G'`.

use serde::Serialize;

use crate::dml::{spectrum, Spectrum};
use crate::graph::EdgeId;
use crate::magnetic::MagneticGraph;
use crate::{Error, Result, DELTA_CERT};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PreorderVerdict {
    pub holds: bool,
    /// First (1-based) `k` with `λ_k(A) > λ_{k+r}(B) + DELTA_CERT`.
    pub failing_index: Option<usize>,
    /// `min_k λ_{k+r}(B) - λ_k(A)`; `+∞` when no index is compared.
    pub margin: f64,
}

/// Decides `A ≼_r B`, allowing each inequality a slack of [`DELTA_CERT`].
pub fn spectrally_less(a: &Spectrum, b: &Spectrum, r: usize) -> Result<PreorderVerdict> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: b.len(),
        });
    }
    if r > n {
        return Err(Error::BadShift { r, n });
    }
    let mut margin = f64::INFINITY;
    let mut failing_index = None;
    for k in 1..=n - r {
        let gap = b.lambda(k + r) - a.lambda(k);
        margin = margin.min(gap);
        if failing_index.is_none() && gap < -DELTA_CERT {
            failing_index = Some(k);
        }
    }
    Ok(PreorderVerdict {
        holds: failing_index.is_none(),
        failing_index,
        margin,
    })
}

/// Both halves of an interlacing chain `G' ≼ G ≼_r G'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterlacingVerdict {
    /// `G' ≼ G`.
    pub lower: PreorderVerdict,
    /// `G ≼_r G'`.
    pub upper: PreorderVerdict,
}

impl InterlacingVerdict {
    pub fn holds(&self) -> bool {
        self.lower.holds && self.upper.holds
    }
}

/// Checks `G - e ≼ G ≼_1 G - e` numerically.
pub fn check_deletion_interlacing(mg: &MagneticGraph, e: EdgeId) -> Result<InterlacingVerdict> {
    check_deletion_chain(mg, &[e])
}

/// Checks `G' ≼ G ≼_r G'` where `G'` drops the `r` given edges.
pub fn check_deletion_chain(mg: &MagneticGraph, removed: &[EdgeId]) -> Result<InterlacingVerdict> {
    let smaller = mg.delete_edges(removed)?;
    let full = spectrum(mg)?;
    let reduced = spectrum(&smaller)?;
    // Any shift of at least n compares nothing.
    let r = removed.len().min(full.len());
    Ok(InterlacingVerdict {
        lower: spectrally_less(&reduced, &full, 0)?,
        upper: spectrally_less(&full, &reduced, r)?,
    })
}
