//! Singular lengths, volumes, and the rigidity and flexibility drivers.
//!
//! Lengths come in two flavours. The closed forms grow linearly away from
//! the degeneration locus and exceed π inside the admissible domains, while
//! the translation length `δ(H)` read off the traces of the central element
//! is only known up to the fold `ℓ ↦ |ℓ mod 2π|`. The `lifted_*` functions
//! unfold it by following the straight path from the degeneration locus,
//! where the length is zero, choosing at each sample the branch closest to
//! the linear prediction from the two previous ones.

mod rigidity;
mod schlafli;
mod sweep;

pub use rigidity::{rigidity_scan, RigidityScan, RigiditySolution, SolutionClass};
pub use schlafli::{schlafli_richardson, schlafli_volume, Richardson, SchlafliTarget};
pub use sweep::{flexibility_sweep, min_pairwise_gap, sweep_at, sweep_grid, SweepRow};

pub use crate::numeric::fold;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{GeometryError, Result};
use crate::holonomy::{build_h3, build_h4, HolonomyRep};
use crate::spherical_trig::{quadrangle_exists, tau_interval, triangle_violation};
use crate::su2::translation_length_and_jump;

/// Samples used by the `lifted_*` functions between the degeneration
/// locus and the target.
pub const LIFT_SAMPLES: usize = 64;

fn check_h3(alpha: f64, beta: f64, gamma: f64) -> Result<()> {
    match triangle_violation(alpha, beta, gamma) {
        Some(v) => Err(GeometryError::domain(v)),
        None => Ok(()),
    }
}

fn check_h4(alpha: f64) -> Result<()> {
    if quadrangle_exists(alpha) {
        Ok(())
    } else {
        Err(GeometryError::domain(format!(
            "π < α < 2π violated (α = {alpha})"
        )))
    }
}

/// `ℓ_α = ℓ_β = ℓ_γ = (α + β + γ)/2 − π`.
pub fn h3_length(alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    check_h3(alpha, beta, gamma)?;
    Ok(0.5 * (alpha + beta + gamma) - PI)
}

/// `½ ((α + β + γ)/2 − π)²`.
pub fn h3_volume(alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    let l = h3_length(alpha, beta, gamma)?;
    Ok(0.5 * l * l)
}

/// `ℓ = 2(α − π)`, the same for all four components and every `τ`.
pub fn h4_length(alpha: f64) -> Result<f64> {
    check_h4(alpha)?;
    Ok(2.0 * (alpha - PI))
}

/// `2(α − π)²`.
pub fn h4_volume(alpha: f64) -> Result<f64> {
    check_h4(alpha)?;
    let d = alpha - PI;
    Ok(2.0 * d * d)
}

/// Translation length of the central element, folded into [0, π].
pub fn holonomy_length(rep: &HolonomyRep) -> f64 {
    translation_length_and_jump(&rep.central).delta
}

/// The unfolding of `folded ∈ [0, π]` closest to `predicted`. Ties go to
/// the larger value, so the first step off a zero length is positive.
pub(crate) fn unfold(folded: f64, predicted: f64) -> f64 {
    let k = (predicted / TAU).round();
    let mut best = f64::NAN;
    let mut best_gap = f64::INFINITY;
    for dk in [-1.0, 0.0, 1.0] {
        let base = TAU * (k + dk);
        for cand in [base - folded, base + folded] {
            let gap = (cand - predicted).abs();
            if gap < best_gap || (gap == best_gap && cand > best) {
                best = cand;
                best_gap = gap;
            }
        }
    }
    best
}

/// Unfold a sequence of folded lengths sampled along a path that starts
/// at length zero (the first entry is taken as exactly zero).
pub(crate) fn unfold_path(folded: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(folded.len());
    for (i, &f) in folded.iter().enumerate() {
        let v = match i {
            0 => 0.0,
            1 => unfold(f, out[0]),
            _ => unfold(f, 2.0 * out[i - 1] - out[i - 2]),
        };
        out.push(v);
    }
    out
}

/// Point `t·(α, β, γ)` of the ray through an `H₃` target, with
/// `t₀ = 2π/(α + β + γ)` on the degeneration locus.
pub(crate) fn h3_path_start(alpha: f64, beta: f64, gamma: f64) -> f64 {
    TAU / (alpha + beta + gamma)
}

/// `τ` along the `H₄` path: same relative position in `((α − π)/2, π/2)`
/// as the target.
pub(crate) fn h4_path_tau(alpha: f64, rel: f64) -> f64 {
    let lo = 0.5 * (alpha - PI);
    lo + rel * (FRAC_PI_2 - lo)
}

pub(crate) fn h4_relative_tau(alpha: f64, tau: f64) -> f64 {
    let (lo, hi) = tau_interval(alpha);
    (tau - lo) / (hi - lo)
}

/// Folded `δ(H)` of `H₃(t·target)` for each `t` in `ts`; the first entry
/// (on the degeneration locus) is reported as zero.
pub(crate) fn h3_folded_along(target: [f64; 3], ts: &[f64]) -> Result<Vec<f64>> {
    use rayon::prelude::*;
    ts.par_iter()
        .enumerate()
        .map(|(i, &t)| {
            if i == 0 {
                return Ok(0.0);
            }
            let rep = build_h3(t * target[0], t * target[1], t * target[2])?;
            Ok(holonomy_length(&rep))
        })
        .collect()
}

pub(crate) fn h4_folded_along(alphas: &[f64], rel: f64) -> Result<Vec<f64>> {
    use rayon::prelude::*;
    alphas
        .par_iter()
        .enumerate()
        .map(|(i, &a)| {
            if i == 0 {
                return Ok(0.0);
            }
            let rep = build_h4(a, h4_path_tau(a, rel))?;
            Ok(holonomy_length(&rep))
        })
        .collect()
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// `δ(H)` of `H₃(α, β, γ)` unfolded by continuation along the ray from
/// the degeneration locus.
pub fn lifted_h3_length(alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    check_h3(alpha, beta, gamma)?;
    let mut ts = linspace(h3_path_start(alpha, beta, gamma), 1.0, LIFT_SAMPLES);
    *ts.last_mut().unwrap() = 1.0;
    let folded = h3_folded_along([alpha, beta, gamma], &ts)?;
    Ok(*unfold_path(&folded).last().unwrap())
}

/// `δ(H)` of `H₄(α; τ)` unfolded by continuation in `α` from `π`, keeping
/// the relative position of `τ`.
pub fn lifted_h4_length(alpha: f64, tau: f64) -> Result<f64> {
    check_h4(alpha)?;
    let rel = h4_relative_tau(alpha, tau);
    let alphas = linspace(PI, alpha, LIFT_SAMPLES);
    let mut folded = h4_folded_along(&alphas[..LIFT_SAMPLES], rel)?;
    // the target itself is built from τ directly
    folded.push(holonomy_length(&build_h4(alpha, tau)?));
    Ok(*unfold_path(&folded).last().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((h3_length(PI, PI, PI).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!((h3_volume(PI, PI, PI).unwrap() - PI * PI / 8.0).abs() < 1e-15);
        assert!((h4_length(1.5 * PI).unwrap() - PI).abs() < 1e-15);
        assert!((h4_volume(1.5 * PI).unwrap() - 0.5 * PI * PI).abs() < 1e-14);
        assert!(h3_length(1.0, 1.0, 1.0).unwrap_err().is_domain());
        assert!(h4_volume(PI).unwrap_err().is_domain());
    }

    #[test]
    fn lengths_vanish_at_the_degeneration_locus() {
        let e = 1e-6;
        let a = (TAU + e) / 3.0;
        assert!(h3_length(a, a, a).unwrap() < 1e-6);
        assert!(h4_length(PI + e).unwrap() < 1e-5);
    }

    #[test]
    fn unfold_picks_the_nearest_branch() {
        assert!((unfold(0.3, 0.0) - 0.3).abs() < 1e-15);
        assert!((unfold(PI - 0.1, PI + 0.12) - (PI + 0.1)).abs() < 1e-15);
        assert!((unfold(0.2, TAU - 0.25) - (TAU - 0.2)).abs() < 1e-15);
        assert!((unfold(0.2, TAU + 0.15) - (TAU + 0.2)).abs() < 1e-15);
    }

    #[test]
    fn lifted_lengths_match_closed_forms() {
        for (a, b, g) in [
            (PI, PI, PI),
            (5.5, 5.6, 5.7),
            (2.0, 3.0, 4.0),
            (5.9, 5.95, 6.0),
        ] {
            let l = lifted_h3_length(a, b, g).unwrap();
            assert!(
                (l - h3_length(a, b, g).unwrap()).abs() < 1e-10,
                "{a} {b} {g}: {l}"
            );
        }
        for (a, tau) in [(1.5 * PI, 1.0), (6.1, 1.5), (3.5, 0.6)] {
            let l = lifted_h4_length(a, tau).unwrap();
            assert!((l - h4_length(a).unwrap()).abs() < 1e-10, "{a} {tau}: {l}");
        }
    }

    #[test]
    fn folded_length_matches_folded_closed_form() {
        let rep = build_h3(5.5, 5.6, 5.7).unwrap();
        let expect = crate::numeric::fold(h3_length(5.5, 5.6, 5.7).unwrap());
        assert!((holonomy_length(&rep) - expect).abs() < 1e-10);
    }
}
