//! Volume by integrating `2 dVol = Σ ℓᵢ dαᵢ` from the degeneration locus.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{
    check_h3, check_h4, h3_folded_along, h3_path_start, h4_folded_along, h4_relative_tau, linspace,
    unfold_path,
};
use crate::error::{GeometryError, Result};
use crate::spherical_trig::DOMAIN_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SchlafliTarget {
    H3 { alpha: f64, beta: f64, gamma: f64 },
    H4 { alpha: f64, tau: f64 },
}

impl SchlafliTarget {
    /// Whether the target sits on the degeneration locus, where the path
    /// has zero length and the volume is zero.
    fn degenerate(&self) -> bool {
        match *self {
            SchlafliTarget::H3 { alpha, beta, gamma } => {
                [alpha, beta, gamma].iter().all(|&x| x > 0.0 && x < TAU)
                    && (alpha + beta + gamma - TAU).abs() <= DOMAIN_TOL
            }
            SchlafliTarget::H4 { alpha, .. } => (alpha - PI).abs() <= DOMAIN_TOL,
        }
    }
}

fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    let mut acc = values[0] + values[n];
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    acc * h / 3.0
}

/// Composite Simpson integral of the Schläfli form along the straight path
/// from the degeneration locus to `target`, with the lengths taken from
/// holonomy (unfolded by continuation). `steps` must be even.
///
/// For `H₃` the path is the ray `t·(α, β, γ)`; for `H₄` it runs in `α` from
/// `π` with `τ` at the target's relative position in its interval.
pub fn schlafli_volume(target: &SchlafliTarget, steps: usize) -> Result<f64> {
    if steps < 2 || !steps.is_multiple_of(2) {
        return Err(GeometryError::InvalidArgument(format!(
            "Simpson integration needs an even number of steps, got {steps}"
        )));
    }
    if target.degenerate() {
        return Ok(0.0);
    }
    match *target {
        SchlafliTarget::H3 { alpha, beta, gamma } => {
            check_h3(alpha, beta, gamma)?;
            let s = alpha + beta + gamma;
            let t0 = h3_path_start(alpha, beta, gamma);
            let mut ts = linspace(t0, 1.0, steps);
            ts[steps] = 1.0;
            let lengths = unfold_path(&h3_folded_along([alpha, beta, gamma], &ts)?);
            // dVol = ½ ℓ (dα + dβ + dγ) = ½ ℓ s dt
            let f: Vec<f64> = lengths.iter().map(|l| 0.5 * l * s).collect();
            Ok(simpson(&f, (1.0 - t0) / steps as f64))
        }
        SchlafliTarget::H4 { alpha, tau } => {
            check_h4(alpha)?;
            crate::spherical_trig::solve_quadrangle(alpha, tau)?;
            let rel = h4_relative_tau(alpha, tau);
            let mut alphas = linspace(PI, alpha, steps);
            alphas[steps] = alpha;
            let lengths = unfold_path(&h4_folded_along(&alphas, rel)?);
            // four components, each of length ℓ and angle α
            let f: Vec<f64> = lengths.iter().map(|l| 2.0 * l).collect();
            Ok(simpson(&f, (alpha - PI) / steps as f64))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Richardson {
    pub coarse: f64,
    pub fine: f64,
    /// `|fine − coarse|`.
    pub difference: f64,
    /// `fine + (fine − coarse)/15`.
    pub extrapolated: f64,
}

/// Integrate with `steps` and `2·steps` and compare.
pub fn schlafli_richardson(target: &SchlafliTarget, steps: usize) -> Result<Richardson> {
    let coarse = schlafli_volume(target, steps)?;
    let fine = schlafli_volume(target, 2 * steps)?;
    Ok(Richardson {
        coarse,
        fine,
        difference: (fine - coarse).abs(),
        extrapolated: fine + (fine - coarse) / 15.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{h3_volume, h4_volume};

    #[test]
    fn simpson_is_exact_on_cubics() {
        let xs = linspace(0.0, 2.0, 10);
        let f: Vec<f64> = xs.iter().map(|x| x * x * x - x).collect();
        assert!((simpson(&f, 0.2) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn orbifold_volume() {
        let t = SchlafliTarget::H3 {
            alpha: PI,
            beta: PI,
            gamma: PI,
        };
        let v = schlafli_volume(&t, 1000).unwrap();
        assert!((v - PI * PI / 8.0).abs() < 1e-8);
    }

    #[test]
    fn h4_volume_past_the_fold() {
        let a = 6.0;
        let t = SchlafliTarget::H4 { alpha: a, tau: 1.5 };
        let v = schlafli_volume(&t, 1000).unwrap();
        assert!((v - h4_volume(a).unwrap()).abs() < 1e-8, "{v}");
        let t = SchlafliTarget::H3 {
            alpha: 5.9,
            beta: 5.95,
            gamma: 6.0,
        };
        let v = schlafli_volume(&t, 1000).unwrap();
        assert!((v - h3_volume(5.9, 5.95, 6.0).unwrap()).abs() < 1e-8, "{v}");
    }

    #[test]
    fn zero_length_path() {
        let a = TAU / 3.0;
        let t = SchlafliTarget::H3 {
            alpha: a,
            beta: a,
            gamma: a,
        };
        assert_eq!(schlafli_volume(&t, 10).unwrap(), 0.0);
        let t = SchlafliTarget::H4 {
            alpha: PI,
            tau: 0.7,
        };
        assert_eq!(schlafli_volume(&t, 10).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        let t = SchlafliTarget::H3 {
            alpha: PI,
            beta: PI,
            gamma: PI,
        };
        assert!(matches!(
            schlafli_volume(&t, 7),
            Err(GeometryError::InvalidArgument(_))
        ));
        let t = SchlafliTarget::H3 {
            alpha: 1.0,
            beta: 1.0,
            gamma: 1.0,
        };
        assert!(schlafli_volume(&t, 10).unwrap_err().is_domain());
        let t = SchlafliTarget::H4 {
            alpha: 4.0,
            tau: 0.1,
        };
        assert!(schlafli_volume(&t, 10).unwrap_err().is_domain());
    }

    #[test]
    fn richardson_agreement() {
        let t = SchlafliTarget::H4 {
            alpha: 1.5 * PI,
            tau: 1.0,
        };
        let r = schlafli_richardson(&t, 200).unwrap();
        assert!(r.difference < 1e-9);
    }
}
