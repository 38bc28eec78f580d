//! Exhaustive root scan of the `H₃` relation residuals.
//!
//! The box `φ ∈ [0, π]`, `ψ ∈ [0, 2π]`, `θ ∈ [0, π]` is cut into
//! `resolution³` cells. A cell is a candidate when every residual changes
//! sign (or vanishes) across its corners; candidates are refined by
//! Gauss–Newton and the converged points are deduplicated and classified.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix5x3, Vector3, Vector5};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check_h3;
use crate::error::Result;
use crate::numeric::{angle_diff, wrap_tau};
use crate::spherical_trig::TriangleTrig;

/// Refined points with `max |Rₖ|` below this are accepted.
pub const ACCEPT_TOL: f64 = 1e-8;
/// Solutions closer than this (L∞, `ψ` mod 2π) are merged.
pub const DEDUP_RADIUS: f64 = 1e-6;
/// `sin φ` or `sin θ` below this means coincident or antipodal axes.
pub const DEGENERATE_TOL: f64 = 1e-6;

const MAX_ITER: usize = 60;
const FD_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionClass {
    /// `ψ = α/2`, the triangle itself.
    Geometric,
    /// `ψ = α/2 ± π`, the mirror branch.
    Branch,
    /// An axis collides with the generic fibre or its antipode
    /// (`sin φ = 0` or `sin θ = 0`); the image is abelian.
    Degenerate,
    /// Anything else. Rigidity predicts none.
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigiditySolution {
    pub phi: f64,
    pub psi: f64,
    pub theta: f64,
    pub max_residual: f64,
    pub class: SolutionClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RigidityScan {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub resolution: usize,
    /// Cells where every residual brackets zero.
    pub candidates: usize,
    pub solutions: Vec<RigiditySolution>,
}

impl RigidityScan {
    pub fn of_class(&self, class: SolutionClass) -> Vec<RigiditySolution> {
        self.solutions
            .iter()
            .copied()
            .filter(|s| s.class == class)
            .collect()
    }

    pub fn geometric(&self) -> Vec<RigiditySolution> {
        self.of_class(SolutionClass::Geometric)
    }
}

struct Residuals {
    trig: TriangleTrig,
}

impl Residuals {
    fn eval(&self, x: &Vector3<f64>) -> Vector5<f64> {
        let (sphi, cphi) = x[0].sin_cos();
        let (spsi, cpsi) = x[1].sin_cos();
        let (sth, cth) = x[2].sin_cos();
        Vector5::from(self.trig.residuals(sphi, cphi, spsi, cpsi, sth, cth))
    }

    fn jacobian(&self, x: &Vector3<f64>) -> Matrix5x3<f64> {
        let mut j = Matrix5x3::zeros();
        for k in 0..3 {
            let mut xp = *x;
            let mut xm = *x;
            xp[k] += FD_STEP;
            xm[k] -= FD_STEP;
            let col = (self.eval(&xp) - self.eval(&xm)) / (2.0 * FD_STEP);
            j.set_column(k, &col);
        }
        j
    }

    /// Gauss–Newton with a least-squares step; returns the final point and
    /// its max-norm residual.
    fn refine(&self, mut x: Vector3<f64>) -> (Vector3<f64>, f64) {
        let mut r = self.eval(&x);
        for _ in 0..MAX_ITER {
            if r.amax() < 1e-14 {
                break;
            }
            let svd = self.jacobian(&x).svd(true, true);
            let Ok(step) = svd.solve(&r, 1e-12) else {
                break;
            };
            let next = x - step;
            let rn = self.eval(&next);
            if rn.amax() >= r.amax() && step.amax() < 1e-15 {
                break;
            }
            x = next;
            r = rn;
        }
        (x, r.amax())
    }
}

fn classify(alpha: f64, phi: f64, psi: f64, theta: f64) -> SolutionClass {
    if phi.sin().abs() < DEGENERATE_TOL || theta.sin().abs() < DEGENERATE_TOL {
        SolutionClass::Degenerate
    } else if angle_diff(psi, 0.5 * alpha).abs() < DEDUP_RADIUS {
        SolutionClass::Geometric
    } else if angle_diff(psi, 0.5 * alpha + PI).abs() < DEDUP_RADIUS {
        SolutionClass::Branch
    } else {
        SolutionClass::Other
    }
}

/// Candidate cells `(i, j, k)` of the φ-slab `i`.
fn slab_candidates(trig: &TriangleTrig, n: usize, i: usize) -> Vec<(usize, usize, usize)> {
    let m = n + 1;
    let phis = [PI * i as f64 / n as f64, PI * (i + 1) as f64 / n as f64];
    let sc: Vec<(f64, f64)> = (0..m)
        .map(|j| (TAU * j as f64 / n as f64).sin_cos())
        .collect();
    let st: Vec<(f64, f64)> = (0..m)
        .map(|k| (PI * k as f64 / n as f64).sin_cos())
        .collect();
    let layers: Vec<Vec<[f64; 5]>> = phis
        .iter()
        .map(|phi| {
            let (sphi, cphi) = phi.sin_cos();
            let mut layer = Vec::with_capacity(m * m);
            for &(spsi, cpsi) in &sc {
                for &(sth, cth) in &st {
                    layer.push(trig.residuals(sphi, cphi, spsi, cpsi, sth, cth));
                }
            }
            layer
        })
        .collect();

    let mut out = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let mut lo = [f64::INFINITY; 5];
            let mut hi = [f64::NEG_INFINITY; 5];
            for layer in &layers {
                for (dj, dk) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    let r = &layer[(j + dj) * m + k + dk];
                    for q in 0..5 {
                        lo[q] = lo[q].min(r[q]);
                        hi[q] = hi[q].max(r[q]);
                    }
                }
            }
            if (0..5).all(|q| lo[q] <= 0.0 && hi[q] >= 0.0) {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Scan for every zero of the `H₃` residuals at fixed cone angles.
pub fn rigidity_scan(alpha: f64, beta: f64, gamma: f64, resolution: usize) -> Result<RigidityScan> {
    check_h3(alpha, beta, gamma)?;
    let n = resolution.max(2);
    let trig = TriangleTrig::new(alpha, beta, gamma);
    let res = Residuals { trig };

    let cells: Vec<(usize, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| slab_candidates(&trig, n, i))
        .collect();

    let refined: Vec<(Vector3<f64>, f64)> = cells
        .par_iter()
        .map(|&(i, j, k)| {
            let x0 = Vector3::new(
                PI * (i as f64 + 0.5) / n as f64,
                TAU * (j as f64 + 0.5) / n as f64,
                PI * (k as f64 + 0.5) / n as f64,
            );
            res.refine(x0)
        })
        .collect();

    let mut solutions: Vec<RigiditySolution> = Vec::new();
    let slack = DEDUP_RADIUS;
    for (x, r) in refined {
        if r.is_nan() || r >= ACCEPT_TOL {
            continue;
        }
        let (phi, theta) = (x[0], x[2]);
        if !(-slack..=PI + slack).contains(&phi) || !(-slack..=PI + slack).contains(&theta) {
            continue;
        }
        let (phi, theta) = (phi.clamp(0.0, PI), theta.clamp(0.0, PI));
        let psi = wrap_tau(x[1]);
        let dup = solutions.iter().any(|s| {
            (s.phi - phi).abs() < DEDUP_RADIUS
                && angle_diff(s.psi, psi).abs() < DEDUP_RADIUS
                && (s.theta - theta).abs() < DEDUP_RADIUS
        });
        if !dup {
            solutions.push(RigiditySolution {
                phi,
                psi,
                theta,
                max_residual: r,
                class: classify(alpha, phi, psi, theta),
            });
        }
    }
    solutions.sort_by(|a, b| {
        (a.phi, a.psi, a.theta)
            .partial_cmp(&(b.phi, b.psi, b.theta))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(RigidityScan {
        alpha,
        beta,
        gamma,
        resolution: n,
        candidates: cells.len(),
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherical_trig::solve_triangle;

    #[test]
    fn unique_geometric_solution() {
        for (a, b, g) in [(PI, PI, PI), (2.0, 3.0, 4.0)] {
            let scan = rigidity_scan(a, b, g, 60).unwrap();
            let geo = scan.geometric();
            assert_eq!(geo.len(), 1, "{scan:?}");
            assert!(scan.of_class(SolutionClass::Other).is_empty(), "{scan:?}");
            let t = solve_triangle(a, b, g).unwrap();
            assert!((geo[0].phi - t.phi).abs() < 1e-8);
            assert!((geo[0].theta - t.theta).abs() < 1e-8);
            assert!(angle_diff(geo[0].psi, t.psi).abs() < 1e-8);
        }
    }

    #[test]
    fn inadmissible_triple() {
        assert!(rigidity_scan(1.0, 1.0, 1.0, 10).unwrap_err().is_domain());
    }
}
