//! Base-space geometry: the turnover triangle of `H₃(α, β, γ)` and the
//! right-angled quadrangle family of `H₄(α; τ)`.
//!
//! The triangle has vertices `(0, 0)`, `(0, φ)` and `(ψ, θ)` in polar
//! coordinates with angles `α/2`, `β/2`, `γ/2`; the quadrangle has one
//! vertex at the pole, three right angles and the angle `α/2` opposite
//! the pole, sides `ℓ₁ = τ` and `ℓ₂` at the pole.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::numeric::{clamped_acos, CLAMP_WARN};

/// Open domain boundaries are shrunk by this margin.
pub const DOMAIN_TOL: f64 = 1e-9;

/// Radicands in `[-RADICAND_TOL, 0)` are treated as roundoff and clamped.
pub const RADICAND_TOL: f64 = 1e-12;

/// Solution of the base triangle for `H₃(α, β, γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleSolution {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Side from `(0, 0)` to `(0, φ)`.
    pub phi: f64,
    /// Longitude of the third vertex; always `α/2`.
    pub psi: f64,
    /// Side from `(0, 0)` to `(ψ, θ)`.
    pub theta: f64,
}

/// Solution of the quadrangle for `H₄(α; τ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadrangleSolution {
    pub alpha: f64,
    /// Side `ℓ₁`, the deformation parameter.
    pub tau: f64,
    /// Side `ℓ₂`.
    pub ell2: f64,
    /// Diagonal from the pole to the obtuse vertex.
    pub phi: f64,
    /// Angle at the pole between side `ℓ₁` and the diagonal.
    pub psi: f64,
    /// Half-distance between the vertices mirrored across side `ℓ₂`.
    pub b1: f64,
    /// Half-distance between the vertices mirrored across side `ℓ₁`.
    pub b2: f64,
}

fn angle_in_range(x: f64) -> bool {
    x > 0.0 && x < TAU
}

/// Which existence inequality fails for `(α, β, γ)`, if any. Boundary
/// points within [`DOMAIN_TOL`] count as failures.
pub fn triangle_violation(alpha: f64, beta: f64, gamma: f64) -> Option<String> {
    for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if !angle_in_range(v) {
            return Some(format!("0 < {name} < 2π (got {v})"));
        }
    }
    let (sum, diff) = (alpha + beta, alpha - beta);
    let checks = [
        ("2π − γ < α + β", TAU - gamma + DOMAIN_TOL < sum),
        ("α + β < 2π + γ", sum < TAU + gamma - DOMAIN_TOL),
        ("−2π + γ < α − β", -TAU + gamma + DOMAIN_TOL < diff),
        ("α − β < 2π − γ", diff < TAU - gamma - DOMAIN_TOL),
    ];
    checks
        .iter()
        .find(|(_, ok)| !ok)
        .map(|(name, _)| format!("{name} violated for (α, β, γ) = ({alpha}, {beta}, {gamma})"))
}

/// Whether the cone angles admit the base triangle (and a spherical
/// structure on `H₃`).
pub fn triangle_exists(alpha: f64, beta: f64, gamma: f64) -> bool {
    triangle_violation(alpha, beta, gamma).is_none()
}

fn checked_acos(x: f64, what: &'static str) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 + CLAMP_WARN {
        return Err(GeometryError::Branch { what, value: x });
    }
    Ok(clamped_acos(x, what))
}

/// Solve the triangle with angles `α/2, β/2, γ/2` by the polar cosine rule.
pub fn solve_triangle(alpha: f64, beta: f64, gamma: f64) -> Result<TriangleSolution> {
    if let Some(v) = triangle_violation(alpha, beta, gamma) {
        return Err(GeometryError::domain(v));
    }
    let (sa, ca) = (0.5 * alpha).sin_cos();
    let (sb, cb) = (0.5 * beta).sin_cos();
    let (sg, cg) = (0.5 * gamma).sin_cos();
    let phi = checked_acos((cg + ca * cb) / (sa * sb), "cos φ")?;
    let theta = checked_acos((cb + ca * cg) / (sa * sg), "cos θ")?;
    Ok(TriangleSolution {
        alpha,
        beta,
        gamma,
        phi,
        psi: 0.5 * alpha,
        theta,
    })
}

/// The five entries of `A_l C_l B_l − B_l A_l C_l` and
/// `C_l B_l A_l − B_l A_l C_l`, as functions of the triangle parameters.
pub fn residuals_h3(alpha: f64, beta: f64, gamma: f64, phi: f64, psi: f64, theta: f64) -> [f64; 5] {
    let trig = TriangleTrig::new(alpha, beta, gamma);
    let (sphi, cphi) = phi.sin_cos();
    let (spsi, cpsi) = psi.sin_cos();
    let (sth, cth) = theta.sin_cos();
    trig.residuals(sphi, cphi, spsi, cpsi, sth, cth)
}

/// Half-angle sines and cosines of a fixed cone-angle triple, so residuals
/// can be evaluated on grids without recomputing them.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TriangleTrig {
    sa: f64,
    ca: f64,
    sb: f64,
    cb: f64,
    sg: f64,
    cg: f64,
}

impl TriangleTrig {
    pub(crate) fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        let (sa, ca) = (0.5 * alpha).sin_cos();
        let (sb, cb) = (0.5 * beta).sin_cos();
        let (sg, cg) = (0.5 * gamma).sin_cos();
        TriangleTrig {
            sa,
            ca,
            sb,
            cb,
            sg,
            cg,
        }
    }

    /// Residuals from precomputed `sin`/`cos` of `φ`, `ψ`, `θ`.
    #[inline]
    pub(crate) fn residuals(
        &self,
        sphi: f64,
        cphi: f64,
        spsi: f64,
        cpsi: f64,
        sth: f64,
        cth: f64,
    ) -> [f64; 5] {
        let TriangleTrig {
            sa,
            ca,
            sb,
            cb,
            sg,
            cg,
        } = *self;
        // sin(α/2 − ψ) and cos(α/2 − ψ)
        let s_am = sa * cpsi - ca * spsi;
        let c_am = ca * cpsi + sa * spsi;
        let r1 = 2.0 * sb * sg * sth * cphi * s_am;
        let r2 = 2.0 * sb * (cg * sa * sphi + sg * (-cphi * c_am * sth + ca * cth * sphi));
        let r3 = -2.0 * sb * sg * sth * sphi * s_am;
        let r4 = 2.0 * sg * (cth * sa * sb * sphi - (cb * sa + ca * sb * cphi) * sth * spsi);
        let r5 = 2.0 * sg * (cb * cpsi * sa * sth + ca * sb * (cphi * cpsi * sth - cth * sphi));
        [r1, r2, r3, r4, r5]
    }
}

/// The quadrangle exists exactly for `π < α < 2π`.
pub fn quadrangle_exists(alpha: f64) -> bool {
    alpha > PI + DOMAIN_TOL && alpha < TAU - DOMAIN_TOL
}

/// The open interval `((α − π)/2, π/2)` of admissible `τ`.
pub fn tau_interval(alpha: f64) -> (f64, f64) {
    (0.5 * (alpha - PI), FRAC_PI_2)
}

fn check_quadrangle_domain(alpha: f64, tau: f64) -> Result<()> {
    if !quadrangle_exists(alpha) {
        return Err(GeometryError::domain(format!(
            "π < α < 2π violated (α = {alpha})"
        )));
    }
    let (lo, hi) = tau_interval(alpha);
    if !(tau > lo + DOMAIN_TOL && tau < hi - DOMAIN_TOL) {
        return Err(GeometryError::domain(format!(
            "(α − π)/2 < τ < π/2 violated (α = {alpha}, τ = {tau}, interval ({lo}, {hi}))"
        )));
    }
    Ok(())
}

/// Solve the quadrangle with side `ℓ₁ = τ` and obtuse angle `α/2`.
///
/// With `k = |cot(α/2)| cot τ` the half-perpendicular `b₂` has
/// `sin b₂ = k`, `cos b₂ = √(1 − k²)`; the remaining quantities follow from
/// the two right triangles cut out by the diagonal, all through `atan2`.
pub fn solve_quadrangle(alpha: f64, tau: f64) -> Result<QuadrangleSolution> {
    check_quadrangle_domain(alpha, tau)?;
    let (sh, ch) = (0.5 * alpha).sin_cos();
    let (st, ct) = tau.sin_cos();

    let k = (ch / sh).abs() * (ct / st);
    let mut radicand = 1.0 - k * k;
    if radicand < 0.0 {
        if radicand < -RADICAND_TOL {
            return Err(GeometryError::Branch {
                what: "1 − cot²(α/2) cot²τ",
                value: radicand,
            });
        }
        radicand = 0.0;
    }
    let cos_b2 = radicand.sqrt();
    let b2 = k.atan2(cos_b2);

    // cos φ = cos τ cos b₂, sin² φ = sin² τ + cos² τ sin² b₂
    let cos_phi = ct * cos_b2;
    let sin_phi = (st * st + ct * ct * k * k).sqrt();
    let phi = sin_phi.atan2(cos_phi);

    // tan ψ = tan b₂ / sin τ
    let psi = k.atan2(st * cos_b2);

    // sin ℓ₂ = −cos(α/2) / sin τ
    let cos_l2_num = st * st - ch * ch;
    if cos_l2_num < -RADICAND_TOL {
        return Err(GeometryError::Branch {
            what: "sin²τ − cos²(α/2)",
            value: cos_l2_num,
        });
    }
    let ell2 = (-ch).atan2(cos_l2_num.max(0.0).sqrt());

    // cos b₁ = cos φ / cos ℓ₂ and sin b₁ = sin φ cos ψ
    let cos_l2 = ell2.cos();
    let b1 = (sin_phi * psi.cos()).atan2(cos_phi / cos_l2);

    Ok(QuadrangleSolution {
        alpha,
        tau,
        ell2,
        phi,
        psi,
        b1,
        b2,
    })
}

/// `τ* = arccos(√2 cos(α/4))`, where `ℓ₁ = ℓ₂` and the quadrangle has its
/// four-fold symmetric double.
pub fn symmetric_tau(alpha: f64) -> Result<f64> {
    if !quadrangle_exists(alpha) {
        return Err(GeometryError::domain(format!(
            "π < α < 2π violated (α = {alpha})"
        )));
    }
    Ok(clamped_acos(
        std::f64::consts::SQRT_2 * (0.25 * alpha).cos(),
        "√2 cos(α/4)",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn triangle_existence_examples() {
        assert!(triangle_exists(PI, PI, PI));
        assert!(!triangle_exists(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2));
        let third = TAU / 3.0;
        assert!(!triangle_exists(third, third, third));
        assert!(!triangle_exists(0.0, PI, PI));
        assert!(!triangle_exists(TAU, PI, PI));
    }

    #[test]
    fn violation_names_the_inequality() {
        let msg = triangle_violation(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!(msg.contains("2π − γ < α + β"), "{msg}");
        let msg = triangle_violation(6.0, 0.3, 1.0).unwrap();
        assert!(msg.contains("α − β < 2π − γ"), "{msg}");
    }

    #[test]
    fn orbifold_triangle_is_octant() {
        let s = solve_triangle(PI, PI, PI).unwrap();
        assert!((s.phi - FRAC_PI_2).abs() < 1e-15);
        assert!((s.theta - FRAC_PI_2).abs() < 1e-15);
        assert!((s.psi - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn three_quarter_turn_triangle() {
        let a = 1.5 * PI;
        let s = solve_triangle(a, a, a).unwrap();
        assert!((s.phi.cos() - (1.0 - SQRT_2)).abs() < 1e-15);
        assert!((s.phi - s.theta).abs() < 1e-15);
        let r = residuals_h3(a, a, a, s.phi, s.psi, s.theta);
        assert!(r.iter().all(|x| x.abs() < 1e-10), "{r:?}");
    }

    #[test]
    fn solve_triangle_rejects_inadmissible() {
        assert!(solve_triangle(1.0, 1.0, 1.0).unwrap_err().is_domain());
    }

    #[test]
    fn r1_and_r3_vanish_on_the_branch() {
        for (a, b, g, phi, theta) in [(2.0, 3.0, 4.0, 0.3, 1.7), (5.0, 1.0, 2.5, 2.9, 0.2)] {
            let r = residuals_h3(a, b, g, phi, 0.5 * a, theta);
            assert!(r[0].abs() < 1e-15 && r[2].abs() < 1e-15);
        }
    }

    #[test]
    fn residuals_detect_perturbation() {
        let s = solve_triangle(2.0, 3.0, 4.0).unwrap();
        let r = residuals_h3(2.0, 3.0, 4.0, s.phi + 0.1, s.psi, s.theta);
        assert!(r.iter().any(|x| x.abs() > 1e-3), "{r:?}");
    }

    #[test]
    fn quadrangle_existence() {
        assert!(quadrangle_exists(1.5 * PI));
        assert!(!quadrangle_exists(PI));
        assert!(!quadrangle_exists(FRAC_PI_2));
        assert!(!quadrangle_exists(TAU));
    }

    #[test]
    fn quadrangle_domain_errors() {
        let a = 1.5 * PI;
        assert!(solve_quadrangle(a, 0.5).unwrap_err().is_domain());
        assert!(solve_quadrangle(a, FRAC_PI_2).unwrap_err().is_domain());
        assert!(solve_quadrangle(PI, 1.0).unwrap_err().is_domain());
        assert!(symmetric_tau(PI).unwrap_err().is_domain());
    }

    #[test]
    fn symmetric_point() {
        let a = 1.5 * PI;
        let tau = symmetric_tau(a).unwrap();
        assert!((tau - (SQRT_2 * (3.0 * PI / 8.0).cos()).acos()).abs() < 1e-15);
        assert!((tau - 0.998_937_456_593_686).abs() < 1e-12);
        let q = solve_quadrangle(a, tau).unwrap();
        assert!((q.psi - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((q.phi.cos() - 1.0 / (0.25 * a).tan()).abs() < 1e-12);
        assert!((q.b1 - q.b2).abs() < 1e-12);
        assert!((q.ell2 - q.tau).abs() < 1e-12);
    }

    #[test]
    fn symmetric_tau_inside_interval() {
        for i in 1..200 {
            let a = PI + PI * i as f64 / 200.0;
            let t = symmetric_tau(a).unwrap();
            let (lo, hi) = tau_interval(a);
            assert!(lo < t && t < hi, "α = {a}: τ* = {t} not in ({lo}, {hi})");
        }
    }

    #[test]
    fn quadrangle_printed_forms() {
        // cos φ = cos τ √(1 − cot²(α/2) cot²τ) and
        // cos ψ = √((1 − cot²(α/2)cot²τ) / (1 + cot²(α/2)cot⁴τ))
        for (a, t) in [(4.0, 1.0), (5.5, 1.3), (3.5, 1.2), (6.0, 1.5)] {
            let q = solve_quadrangle(a, t).unwrap();
            let cot2a = (1.0 / (0.5 * a).tan()).powi(2);
            let cot_t = 1.0 / t.tan();
            let cos_phi = t.cos() * (1.0 - cot2a * cot_t * cot_t).sqrt();
            let cos_psi = ((1.0 - cot2a * cot_t.powi(2)) / (1.0 + cot2a * cot_t.powi(4))).sqrt();
            assert!((q.phi.cos() - cos_phi).abs() < 1e-12);
            assert!((q.psi.cos() - cos_psi).abs() < 1e-12);
            assert!((q.ell2.sin() + (0.5 * a).cos() / t.sin()).abs() < 1e-12);
            assert!((q.b2.cos() - (1.0 - cot2a * cot_t * cot_t).sqrt()).abs() < 1e-12);
            let (s2, c2a) = (t.sin().powi(2), (0.5 * a).cos().powi(2));
            let cos_b1 = t.cos() * ((s2 - cot2a * t.cos().powi(2)) / (s2 - c2a)).sqrt();
            assert!((q.b1.cos() - cos_b1).abs() < 1e-12);
        }
    }
}
