//! The Hopf fibration `S³ → S²` and rotations about its fibres.
//!
//! Base points use either Cartesian coordinates `(a, b, c)` or polar
//! coordinates `(ψ, θ)` with `a = cos ψ sin θ`, `b = sin ψ sin θ`,
//! `c = cos θ`. The fibre over `(a, b, c)` is `C(t) = P(a,b,c) F(t)` where
//! `F(t) = id cos t + k sin t` is the generic fibre over the north pole.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::su2::{common_perpendicular, GreatCircle, Isometry, Su2Element};

/// Below this `1 + c` the fibre formula switches to the south-pole chart.
const SOUTH_POLE_TOL: f64 = 1e-9;

/// Cartesian tolerance for comparing base points.
pub const BASE_POINT_TOL: f64 = 1e-10;

/// A point of the base sphere S².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasePoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl BasePoint {
    pub const NORTH: BasePoint = BasePoint {
        a: 0.0,
        b: 0.0,
        c: 1.0,
    };
    pub const SOUTH: BasePoint = BasePoint {
        a: 0.0,
        b: 0.0,
        c: -1.0,
    };

    /// Normalises the input; fails on the zero vector.
    pub fn from_cartesian(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = (a * a + b * b + c * c).sqrt();
        if !(n > 1e-300 && n.is_finite()) {
            return Err(GeometryError::InvalidArgument(format!(
                "base point ({a}, {b}, {c}) cannot be normalised"
            )));
        }
        Ok(BasePoint {
            a: a / n,
            b: b / n,
            c: c / n,
        })
    }

    pub fn from_polar(psi: f64, theta: f64) -> Self {
        let (sp, cp) = psi.sin_cos();
        let (st, ct) = theta.sin_cos();
        BasePoint {
            a: cp * st,
            b: sp * st,
            c: ct,
        }
    }

    /// Polar coordinates with `ψ ∈ [0, 2π)` and `θ ∈ [0, π]`; `ψ = 0` at
    /// the poles.
    pub fn to_polar(&self) -> (f64, f64) {
        let rho = self.a.hypot(self.b);
        let theta = rho.atan2(self.c);
        let psi = if rho == 0.0 {
            0.0
        } else {
            self.b.atan2(self.a).rem_euclid(TAU)
        };
        (psi, theta)
    }

    pub fn norm(&self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Great-circle distance on the unit S², in [0, π].
    pub fn distance(&self, other: &BasePoint) -> f64 {
        let (u, v) = (self.as_array(), other.as_array());
        let cross = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        let s = cross.iter().map(|x| x * x).sum::<f64>().sqrt();
        let c = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
        s.atan2(c)
    }

    pub fn approx_eq(&self, other: &BasePoint) -> bool {
        (self.a - other.a).abs() <= BASE_POINT_TOL
            && (self.b - other.b).abs() <= BASE_POINT_TOL
            && (self.c - other.c).abs() <= BASE_POINT_TOL
    }
}

/// A unit pure-imaginary quaternion, i.e. the matrix
/// `[[ix, y + iz], [-y + iz, -ix]]` representing a point of S².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImaginaryQuaternion {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ImaginaryQuaternion {
    pub fn from_base(p: &BasePoint) -> Self {
        ImaginaryQuaternion {
            x: p.a,
            y: p.b,
            z: p.c,
        }
    }

    pub fn to_base(&self) -> BasePoint {
        BasePoint {
            a: self.x,
            b: self.y,
            c: self.z,
        }
    }

    fn as_quaternion(&self) -> Su2Element {
        Su2Element {
            w: 0.0,
            x: self.x,
            y: self.y,
            z: self.z,
        }
    }

    /// The S² action `q ↦ Aᵗ q Ā` of an SU(2) element.
    pub fn act(&self, a: &Su2Element) -> ImaginaryQuaternion {
        let q = a.transpose() * self.as_quaternion() * a.bar();
        ImaginaryQuaternion {
            x: q.x,
            y: q.y,
            z: q.z,
        }
    }

    /// Matrix entries as `(re, im)` pairs.
    pub fn matrix(&self) -> [[(f64, f64); 2]; 2] {
        self.as_quaternion().matrix()
    }

    pub fn distance(&self, other: &ImaginaryQuaternion) -> f64 {
        self.to_base().distance(&other.to_base())
    }
}

/// `h(w,x,y,z) = (2(xz + wy), 2(yz − wx), 1 − 2(x² + y²))`.
pub fn hopf_map(p: &Su2Element) -> BasePoint {
    let Su2Element { w, x, y, z } = *p;
    BasePoint {
        a: 2.0 * (x * z + w * y),
        b: 2.0 * (y * z - w * x),
        c: 1.0 - 2.0 * (x * x + y * y),
    }
}

/// The matrix `k = [[0, i], [i, 0]]`, velocity of the generic fibre.
fn k_unit() -> Su2Element {
    Su2Element {
        w: 0.0,
        x: 0.0,
        y: 0.0,
        z: 1.0,
    }
}

/// The generic fibre `F(t)` over the north pole.
pub fn generic_fibre() -> GreatCircle {
    GreatCircle {
        start: Su2Element::IDENTITY,
        velocity: k_unit(),
    }
}

/// `P(a, b, c)`, the element carrying the generic fibre onto the fibre
/// over `(a, b, c)`. At the south pole this is `[[0, 1], [-1, 0]]`.
pub fn fibre_start(base: &BasePoint) -> Su2Element {
    let one_plus_c = 1.0 + base.c;
    if one_plus_c <= SOUTH_POLE_TOL {
        return Su2Element {
            w: 0.0,
            x: 0.0,
            y: 1.0,
            z: 0.0,
        };
    }
    Su2Element::new(one_plus_c, -base.b, base.a, 0.0)
}

/// The fibre `h⁻¹(base)` as the great circle `P(a,b,c) F(t)`.
pub fn fibre_over(base: &BasePoint) -> GreatCircle {
    let start = fibre_start(base);
    GreatCircle {
        start,
        velocity: start * k_unit(),
    }
}

/// `M(ψ, θ) = P(cos ψ sin θ, sin ψ sin θ, cos θ)` written in half angles.
///
/// Only defined up to the lift sign as far as the geometry is concerned;
/// the literal matrix is returned.
pub fn polar_matrix(psi: f64, theta: f64) -> Su2Element {
    if (theta - std::f64::consts::PI).abs() < SOUTH_POLE_TOL {
        log::debug!("polar_matrix evaluated at the south pole (θ = {theta})");
    }
    let (sp, cp) = psi.sin_cos();
    let (sh, ch) = (0.5 * theta).sin_cos();
    Su2Element {
        w: ch,
        x: -sp * sh,
        y: cp * sh,
        z: 0.0,
    }
}

/// Rotation through `ω` about the fibre over `(ψ, θ)`:
/// `⟨M̄ R(ω) Mᵗ, R(ω)⟩`.
pub fn rotation_about_fibre(psi: f64, theta: f64, omega: f64) -> Isometry {
    let m = polar_matrix(psi, theta);
    let r = Su2Element::generic_rotation(omega);
    Isometry::new(m.bar() * r * m.transpose(), r)
}

/// The point `Ĉ = M F̂ M*` of S² fixed by the left factor of
/// [`rotation_about_fibre`], where `F̂ = k`.
pub fn base_fixed_point(psi: f64, theta: f64) -> ImaginaryQuaternion {
    let m = polar_matrix(psi, theta);
    let q = m * k_unit() * m.inverse();
    ImaginaryQuaternion {
        x: q.x,
        y: q.y,
        z: q.z,
    }
}

/// Distance between the fibres over two base points: half their distance
/// on the unit base sphere.
pub fn fibre_distance(base1: &BasePoint, base2: &BasePoint) -> f64 {
    0.5 * base1.distance(base2)
}

/// Common-perpendicular length between the fibres over two base points,
/// measured in S³ rather than read off the base.
pub fn measured_fibre_distance(base1: &BasePoint, base2: &BasePoint) -> Result<f64> {
    if base1.approx_eq(base2) {
        return Ok(0.0);
    }
    Ok(common_perpendicular(&fibre_over(base1), &fibre_over(base2))?.delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::distance;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn t_grid(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |k| TAU * k as f64 / n as f64)
    }

    #[test]
    fn hopf_map_poles() {
        assert_eq!(hopf_map(&Su2Element::IDENTITY), BasePoint::NORTH);
        for t in t_grid(24) {
            let p = Su2Element::new(0.0, t.cos(), -t.sin(), 0.0);
            assert!(hopf_map(&p).approx_eq(&BasePoint::SOUTH));
        }
    }

    #[test]
    fn north_pole_fibre_is_generic_fibre() {
        let f = fibre_over(&BasePoint::NORTH);
        assert_eq!(f, generic_fibre());
        assert_eq!(
            f.velocity.matrix(),
            [[(0.0, 0.0), (0.0, 1.0)], [(0.0, 1.0), (0.0, 0.0)]]
        );
    }

    #[test]
    fn south_pole_fibre_is_exceptional_circle() {
        let f = fibre_over(&BasePoint::SOUTH);
        assert_eq!(
            f.start.matrix(),
            [[(0.0, 0.0), (1.0, 0.0)], [(-1.0, 0.0), (0.0, 0.0)]]
        );
        for t in t_grid(32) {
            let p = f.point(t);
            // lies on the circle (0, cos s, -sin s, 0)
            assert!(p.w.abs() < 1e-15 && p.z.abs() < 1e-15);
            assert!((p.x.hypot(p.y) - 1.0).abs() < 1e-15);
            assert!(hopf_map(&p).approx_eq(&BasePoint::SOUTH));
        }
    }

    #[test]
    fn polar_matrix_special_values() {
        assert_eq!(polar_matrix(0.0, 0.0), Su2Element::IDENTITY);
        let south = polar_matrix(0.0, PI);
        let expected = fibre_start(&BasePoint::SOUTH);
        assert!(south.diff_mod_sign(&expected) < 1e-15);
        // (ψ, θ) = (π/2, π/2) is the base point (0, 1, 0).
        let m = polar_matrix(FRAC_PI_2, FRAC_PI_2);
        let p = fibre_start(&BasePoint::from_cartesian(0.0, 1.0, 0.0).unwrap());
        assert!(m.max_entry_diff(&p) < 1e-12);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(
            m.max_entry_diff(&Su2Element {
                w: s,
                x: -s,
                y: 0.0,
                z: 0.0
            }) < 1e-15
        );
    }

    #[test]
    fn polar_matrix_matches_fibre_start_off_the_pole() {
        for i in 0..20 {
            for j in 0..19 {
                let (psi, theta) = (TAU * i as f64 / 20.0, PI * j as f64 / 19.0);
                let base = BasePoint::from_polar(psi, theta);
                assert!(polar_matrix(psi, theta).max_entry_diff(&fibre_start(&base)) < 1e-12);
            }
        }
    }

    #[test]
    fn polar_round_trip_away_from_poles() {
        for i in 0..36 {
            for j in 1..18 {
                let (psi, theta) = (TAU * i as f64 / 36.0, PI * j as f64 / 18.0);
                let (p2, t2) = BasePoint::from_polar(psi, theta).to_polar();
                assert!((p2 - psi).abs() < 1e-12 && (t2 - theta).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rotation_about_fibre_special_cases() {
        assert!(rotation_about_fibre(1.0, 2.0, 0.0).diff_mod_sign(&Isometry::IDENTITY) < 1e-15);
        for k in 0..10 {
            let omega = 0.7 * k as f64;
            let r = Su2Element::generic_rotation(omega);
            assert!(
                rotation_about_fibre(0.0, 0.0, omega).diff_mod_sign(&Isometry::new(r, r)) < 1e-15
            );
        }
    }

    #[test]
    fn rotation_about_fibre_is_one_parameter_subgroup() {
        let (psi, theta) = (0.8, 2.1);
        for (w1, w2) in [(0.3, 1.1), (2.0, 4.5), (-1.0, 6.0)] {
            let g = rotation_about_fibre(psi, theta, w1) * rotation_about_fibre(psi, theta, w2);
            let h = rotation_about_fibre(psi, theta, w1 + w2);
            assert!(g.left.max_entry_diff(&h.left) < 1e-12);
            assert!(g.right.max_entry_diff(&h.right) < 1e-12);
        }
    }

    #[test]
    fn rotation_fixes_its_fibre() {
        for (psi, theta, omega) in [(0.3, 0.4, 1.0), (2.0, 2.9, 4.0), (5.5, 1.2, 0.1)] {
            let g = rotation_about_fibre(psi, theta, omega);
            let c = fibre_over(&BasePoint::from_polar(psi, theta));
            for t in t_grid(64) {
                assert!(distance(&g.apply(&c.point(t)), &c.point(t)) < 1e-10);
            }
        }
    }

    #[test]
    fn base_fixed_point_entries() {
        let f_hat = base_fixed_point(0.0, 0.0);
        assert_eq!((f_hat.x, f_hat.y, f_hat.z), (0.0, 0.0, 1.0));
        assert_eq!(
            f_hat.matrix(),
            [[(0.0, 0.0), (0.0, 1.0)], [(0.0, 1.0), (0.0, 0.0)]]
        );

        // Ĉ = [[i cos ψ sin θ, sin θ sin ψ + i cos θ], ...]
        for (psi, theta) in [(FRAC_PI_2, FRAC_PI_2), (0.4, 1.3), (4.0, 2.5)] {
            let c = base_fixed_point(psi, theta);
            let m = c.matrix();
            assert!((m[0][0].1 - psi.cos() * theta.sin()).abs() < 1e-15);
            assert!((m[0][1].0 - theta.sin() * psi.sin()).abs() < 1e-15);
            assert!((m[0][1].1 - theta.cos()).abs() < 1e-15);
            assert!(m[0][0].0.abs() < 1e-15);
            assert!(c.to_base().approx_eq(&BasePoint::from_polar(psi, theta)));
        }
    }

    #[test]
    fn fibre_distance_special_values() {
        let p = BasePoint::from_polar(1.0, 1.0);
        assert_eq!(fibre_distance(&p, &p), 0.0);
        let q = BasePoint::from_polar(1.0 + PI, PI - 1.0);
        assert!((fibre_distance(&p, &q) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn base_fixed_point_follows_longitude_shifts() {
        // Rotating the base about the pole by Δ is the S² action of R(Δ)ᵗ-conjugation;
        // check that Ĉ(ψ + Δ, θ) is the image of Ĉ(ψ, θ) under that rotation.
        for (psi, theta, shift) in [(0.2, 0.7, 0.5), (3.0, 2.2, -1.4)] {
            let before = base_fixed_point(psi, theta);
            let after = base_fixed_point(psi + shift, theta);
            let rot = |q: &ImaginaryQuaternion| ImaginaryQuaternion {
                x: q.x * shift.cos() - q.y * shift.sin(),
                y: q.x * shift.sin() + q.y * shift.cos(),
                z: q.z,
            };
            assert!(rot(&before).distance(&after) < 1e-12);
        }
    }
}
