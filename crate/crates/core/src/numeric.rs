//! Small scalar helpers shared by the geometry modules.

use std::f64::consts::{PI, TAU};

/// Arguments this far outside [-1, 1] are treated as logic errors, not roundoff.
pub(crate) const CLAMP_WARN: f64 = 1e-9;

/// `acos` with the argument clamped to [-1, 1]. Clamping by more than
/// [`CLAMP_WARN`] is logged.
pub(crate) fn clamped_acos(x: f64, what: &str) -> f64 {
    if x.abs() > 1.0 + CLAMP_WARN {
        log::warn!("{what}: acos argument {x} clamped to [-1, 1]");
    }
    x.clamp(-1.0, 1.0).acos()
}

/// Reduce an angle to [0, 2π).
pub(crate) fn wrap_tau(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Fold a real length onto [0, π] the way a distance on a circle of
/// length 2π does.
pub fn fold(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        TAU - r
    } else {
        r
    }
}

/// Signed angular difference reduced to (-π, π].
pub(crate) fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}
