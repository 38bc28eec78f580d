//! The one-parameter family `H₄(α; τ)` at fixed cone angle.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{holonomy_length, lifted_h4_length};
use crate::error::{GeometryError, Result};
use crate::holonomy::{build_h4, relation_residual};
use crate::spherical_trig::{solve_quadrangle, symmetric_tau, tau_interval};

/// Rows closer than this to an end of the `τ` interval are flagged.
pub const NEAR_DEGENERATE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub tau: f64,
    pub ell2: f64,
    pub psi: f64,
    pub phi: f64,
    pub b1: f64,
    pub b2: f64,
    /// Relation residual of the holonomy.
    pub residual: f64,
    /// `δ(H)` unfolded by continuation.
    pub delta_h: f64,
    /// `δ(H)` as read off the traces, in [0, π].
    pub delta_h_folded: f64,
    /// Largest gap between `(b₁, b₂, φ)` and the common perpendiculars
    /// of the generator axes.
    pub perpendicular_gap: f64,
    pub near_degenerate: bool,
}

/// Interior `τ` grid with `n` points that contains `τ*`: ⌊(n−1)/2⌋ points
/// evenly spaced below it and the rest evenly spaced above it.
pub fn sweep_grid(alpha: f64, n: usize) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(GeometryError::InvalidArgument(format!(
            "a sweep needs at least 3 samples, got {n}"
        )));
    }
    let star = symmetric_tau(alpha)?;
    let (lo, hi) = tau_interval(alpha);
    let left = (n - 1) / 2;
    let right = n - 1 - left;
    let mut grid = Vec::with_capacity(n);
    grid.extend((1..=left).map(|k| lo + (star - lo) * k as f64 / (left + 1) as f64));
    grid.push(star);
    grid.extend((1..=right).map(|k| star + (hi - star) * k as f64 / (right + 1) as f64));
    Ok(grid)
}

fn sweep_row(alpha: f64, tau: f64) -> Result<SweepRow> {
    let q = solve_quadrangle(alpha, tau)?;
    let rep = build_h4(alpha, tau)?;
    let expected = |i: usize, j: usize| match (i, j) {
        (0, 1) | (2, 3) => q.b1,
        (0, 3) | (1, 2) => q.b2,
        _ => q.phi,
    };
    let perpendicular_gap = rep
        .axis_perpendiculars()?
        .into_iter()
        .map(|(i, j, d)| (d - expected(i, j)).abs())
        .fold(0.0, f64::max);
    let (lo, hi) = tau_interval(alpha);
    Ok(SweepRow {
        tau,
        ell2: q.ell2,
        psi: q.psi,
        phi: q.phi,
        b1: q.b1,
        b2: q.b2,
        residual: relation_residual(&rep),
        delta_h: lifted_h4_length(alpha, tau)?,
        delta_h_folded: holonomy_length(&rep),
        perpendicular_gap,
        near_degenerate: (tau - lo).min(hi - tau) < NEAR_DEGENERATE,
    })
}

/// Evaluate the quadrangle, the holonomy and its invariants on
/// [`sweep_grid`]. Rows come back sorted by `τ`.
pub fn flexibility_sweep(alpha: f64, n_samples: usize) -> Result<Vec<SweepRow>> {
    sweep_at(alpha, &sweep_grid(alpha, n_samples)?)
}

/// Same as [`flexibility_sweep`] on caller-chosen `τ` values.
pub fn sweep_at(alpha: f64, taus: &[f64]) -> Result<Vec<SweepRow>> {
    let mut rows: Vec<SweepRow> = taus
        .par_iter()
        .map(|&t| sweep_row(alpha, t))
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| a.tau.total_cmp(&b.tau));
    Ok(rows)
}

/// Smallest L∞ distance between the `(b₁, b₂, φ)` triples of two rows.
pub fn min_pairwise_gap(rows: &[SweepRow]) -> f64 {
    let mut gap = f64::INFINITY;
    for (i, r) in rows.iter().enumerate() {
        for s in &rows[i + 1..] {
            let d = (r.b1 - s.b1)
                .abs()
                .max((r.b2 - s.b2).abs())
                .max((r.phi - s.phi).abs());
            gap = gap.min(d);
        }
    }
    gap
}
