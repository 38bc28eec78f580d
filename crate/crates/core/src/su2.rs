//! SU(2) arithmetic and the round geometry of S³.
//!
//! A point `p = (w, x, y, z)` of S³ is identified with the special-unitary
//! matrix
//!
//! ```text
//!     | w + ix    y + iz |
//!     | -y + iz   w - ix |
//! ```
//!
//! Under this identification the matrix product is the Hamilton product of
//! quaternions, the transpose is `(w, x, -y, z)` and the entrywise complex
//! conjugate is `(w, -x, y, -z)`. Everything below works on the 4-vector and
//! only materialises the matrix when asked.
//!
//! An orientation-preserving isometry of S³ is a pair `⟨A, B⟩` acting by
//! `P ↦ Aᵗ P B̄`; the pair and `⟨-A, -B⟩` act identically.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::ops::{Mul, Neg};

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::numeric::wrap_tau;

/// A unit quaternion, equivalently a point of S³ or an SU(2) matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su2Element {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Su2Element {
    pub const IDENTITY: Su2Element = Su2Element {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// Build from raw coordinates, renormalising onto S³.
    ///
    /// Panics on the zero vector, which has no direction.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        assert!(
            n > 0.0 && n.is_finite(),
            "cannot normalise quaternion ({w}, {x}, {y}, {z})"
        );
        Su2Element {
            w: w / n,
            x: x / n,
            y: y / n,
            z: z / n,
        }
    }

    /// `R(ω)`: the one-parameter subgroup whose two-sided action
    /// `⟨R(ω), R(ω)⟩` rotates S³ through `ω` about the generic fibre.
    pub fn generic_rotation(omega: f64) -> Self {
        let (s, c) = (0.5 * omega).sin_cos();
        Su2Element {
            w: c,
            x: 0.0,
            y: 0.0,
            z: s,
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Su2Element) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Matrix transpose.
    pub fn transpose(&self) -> Self {
        Su2Element {
            w: self.w,
            x: self.x,
            y: -self.y,
            z: self.z,
        }
    }

    /// Entrywise complex conjugate, written with an overline.
    pub fn bar(&self) -> Self {
        Su2Element {
            w: self.w,
            x: -self.x,
            y: self.y,
            z: -self.z,
        }
    }

    /// Conjugate transpose, which is also the group inverse.
    pub fn inverse(&self) -> Self {
        Su2Element {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.w
    }

    /// Half the rotation angle, `arccos(½ tr)` in [0, π], evaluated with
    /// `atan2` so it stays accurate near ±id.
    pub fn half_angle(&self) -> f64 {
        let v = (self.x * self.x + self.y * self.y + self.z * self.z).sqrt();
        v.atan2(self.w)
    }

    /// Matrix entries as `(re, im)` pairs.
    pub fn matrix(&self) -> [[(f64, f64); 2]; 2] {
        [
            [(self.w, self.x), (self.y, self.z)],
            [(-self.y, self.z), (self.w, -self.x)],
        ]
    }

    /// Largest modulus among the entries of the matrix `self - other`.
    pub fn max_entry_diff(&self, other: &Su2Element) -> f64 {
        let (dw, dx) = (self.w - other.w, self.x - other.x);
        let (dy, dz) = (self.y - other.y, self.z - other.z);
        dw.hypot(dx).max(dy.hypot(dz))
    }

    /// [`max_entry_diff`](Self::max_entry_diff) minimised over the lift sign.
    pub fn diff_mod_sign(&self, other: &Su2Element) -> f64 {
        self.max_entry_diff(other)
            .min(self.max_entry_diff(&-*other))
    }

    /// Hamilton product without the final renormalisation.
    fn raw_mul(&self, r: &Su2Element) -> [f64; 4] {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (r.w, r.x, r.y, r.z);
        [
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        ]
    }
}

impl Default for Su2Element {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Mul for Su2Element {
    type Output = Su2Element;

    /// Matrix product; the result is renormalised.
    fn mul(self, rhs: Su2Element) -> Su2Element {
        let [w, x, y, z] = self.raw_mul(&rhs);
        Su2Element::new(w, x, y, z)
    }
}

impl Neg for Su2Element {
    type Output = Su2Element;

    fn neg(self) -> Su2Element {
        Su2Element {
            w: -self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// `cos d(P, Q) = ½ Re tr(Pᵗ Q̄)`.
pub fn cos_distance(p: &Su2Element, q: &Su2Element) -> f64 {
    let m = p.transpose().raw_mul(&q.bar());
    m[0]
}

/// Spherical distance on S³ in [0, π].
///
/// Numerically this is `2·atan2(|p − q|, |p + q|)`, which agrees with
/// `arccos(½ Re tr Pᵗ Q̄)` on unit inputs and needs no clamping.
pub fn distance(p: &Su2Element, q: &Su2Element) -> f64 {
    let (mut dm, mut dp) = (0.0, 0.0);
    for (a, b) in p.as_array().iter().zip(q.as_array()) {
        dm += (a - b) * (a - b);
        dp += (a + b) * (a + b);
    }
    2.0 * dm.sqrt().atan2(dp.sqrt())
}

/// An orientation-preserving isometry of S³ as a pair of SU(2) factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub left: Su2Element,
    pub right: Su2Element,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        left: Su2Element::IDENTITY,
        right: Su2Element::IDENTITY,
    };

    pub fn new(left: Su2Element, right: Su2Element) -> Self {
        Isometry { left, right }
    }

    /// `P ↦ leftᵗ · P · right̄`.
    pub fn apply(&self, p: &Su2Element) -> Su2Element {
        self.left.transpose() * *p * self.right.bar()
    }

    /// The isometry `g ∘ h`, i.e. `apply(compose(g, h), P) = g(h(P))`.
    ///
    /// Because the left factor enters through a transpose and the right one
    /// through a conjugate, this is `⟨h_l g_l, h_r g_r⟩`: the factorwise
    /// product [`Mul`] in reverse order.
    pub fn compose(g: &Isometry, h: &Isometry) -> Isometry {
        *h * *g
    }

    pub fn inverse(&self) -> Isometry {
        Isometry {
            left: self.left.inverse(),
            right: self.right.inverse(),
        }
    }

    /// `g · self · g⁻¹` in the factorwise group law.
    pub fn conjugate_by(&self, g: &Isometry) -> Isometry {
        *g * *self * g.inverse()
    }

    /// Largest entry difference over both factors, each factor compared
    /// modulo its own sign.
    pub fn diff_mod_sign(&self, other: &Isometry) -> f64 {
        self.left
            .diff_mod_sign(&other.left)
            .max(self.right.diff_mod_sign(&other.right))
    }

    /// Max-norm of the factorwise commutator defect `ab − ba`.
    pub fn commutator_norm(&self, other: &Isometry) -> f64 {
        (*self * *other).diff_mod_sign(&(*other * *self))
    }
}

impl Default for Isometry {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Mul for Isometry {
    type Output = Isometry;

    /// Factorwise product in SU(2) × SU(2).
    fn mul(self, rhs: Isometry) -> Isometry {
        Isometry {
            left: self.left * rhs.left,
            right: self.right * rhs.right,
        }
    }
}

impl Neg for Isometry {
    type Output = Isometry;

    fn neg(self) -> Isometry {
        Isometry {
            left: -self.left,
            right: -self.right,
        }
    }
}

/// The geodesic `C(t) = P cos t + Q sin t` with `P ⟂ Q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreatCircle {
    pub start: Su2Element,
    pub velocity: Su2Element,
}

impl GreatCircle {
    /// Both points must be unit and orthogonal within 1e-12.
    pub fn new(start: Su2Element, velocity: Su2Element) -> Result<Self> {
        let c = start.dot(&velocity);
        if c.abs() > 1e-12 {
            return Err(GeometryError::InvalidArgument(format!(
                "start and velocity are not orthogonal (cos d = {c:e})"
            )));
        }
        Ok(GreatCircle { start, velocity })
    }

    /// The great circle through `p` and `q` (Gram–Schmidt on `q`).
    pub fn through(p: Su2Element, q: Su2Element) -> Result<Self> {
        let c = p.dot(&q);
        let v = [q.w - c * p.w, q.x - c * p.x, q.y - c * p.y, q.z - c * p.z];
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if n < 1e-12 {
            return Err(GeometryError::InvalidArgument(
                "points are equal or antipodal; no unique great circle".into(),
            ));
        }
        Ok(GreatCircle {
            start: p,
            velocity: Su2Element::new(v[0], v[1], v[2], v[3]),
        })
    }

    pub fn point(&self, t: f64) -> Su2Element {
        let (s, c) = t.sin_cos();
        let (p, q) = (&self.start, &self.velocity);
        Su2Element::new(
            p.w * c + q.w * s,
            p.x * c + q.x * s,
            p.y * c + q.y * s,
            p.z * c + q.z * s,
        )
    }

    /// Unit tangent at parameter `t`.
    pub fn tangent(&self, t: f64) -> Su2Element {
        self.point(t + FRAC_PI_2)
    }

    /// Image of the whole circle under an isometry.
    pub fn transformed(&self, g: &Isometry) -> GreatCircle {
        GreatCircle {
            start: g.apply(&self.start),
            velocity: g.apply(&self.velocity),
        }
    }

    /// Parameter of the point of this circle nearest to `x`.
    ///
    /// Maximises `x · C(t) = (x·P) cos t + (x·Q) sin t` in closed form; when
    /// every point is equidistant (`x` orthogonal to the plane) returns 0.
    pub fn nearest_parameter(&self, x: &Su2Element) -> f64 {
        let a = x.dot(&self.start);
        let b = x.dot(&self.velocity);
        if a.hypot(b) < 1e-15 {
            0.0
        } else {
            wrap_tau(b.atan2(a))
        }
    }
}

/// `C(t)` on a great circle.
pub fn geodesic_point(c: &GreatCircle, t: f64) -> Su2Element {
    c.point(t)
}

/// A shortest common perpendicular between two great circles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Perpendicular {
    pub t1: f64,
    pub t2: f64,
    pub delta: f64,
    pub foot1: Su2Element,
    pub foot2: Su2Element,
}

impl Perpendicular {
    /// The perpendicular itself as a geodesic starting at `foot1`; `None`
    /// when the circles meet.
    pub fn segment(&self) -> Option<GreatCircle> {
        if self.delta < 1e-12 {
            return None;
        }
        GreatCircle::through(self.foot1, self.foot2).ok()
    }
}

/// Singular values this close count as equal (Clifford-parallel circles).
const ISOCLINIC_TOL: f64 = 1e-9;

/// Shortest common perpendicular of two great circles.
///
/// The minimal distance is the smallest principal angle between the two
/// 2-planes, read off the SVD of the 2×2 cross-Gram matrix. When both
/// principal angles agree the circles are equidistant and every point of
/// `c1` has a perpendicular; the canonical one starts at `c1(0)`.
pub fn common_perpendicular(c1: &GreatCircle, c2: &GreatCircle) -> Result<Perpendicular> {
    let (p1, q1, p2, q2) = (&c1.start, &c1.velocity, &c2.start, &c2.velocity);
    let g = Matrix2::new(p1.dot(p2), p1.dot(q2), q1.dot(p2), q1.dot(q2));
    let svd = g.svd(true, true);
    let (s_max, s_min, i_max) = if svd.singular_values[0] >= svd.singular_values[1] {
        (svd.singular_values[0], svd.singular_values[1], 0)
    } else {
        (svd.singular_values[1], svd.singular_values[0], 1)
    };
    if 1.0 - s_min < 1e-10 {
        return Err(GeometryError::IdenticalCircles);
    }

    let (t1, t2) = if s_max - s_min < ISOCLINIC_TOL {
        let foot1 = c1.point(0.0);
        (0.0, c2.nearest_parameter(&foot1))
    } else {
        let u = svd.u.expect("requested U");
        let v_t = svd.v_t.expect("requested V^T");
        let (u0, u1) = (u[(0, i_max)], u[(1, i_max)]);
        let (v0, v1) = (v_t[(i_max, 0)], v_t[(i_max, 1)]);
        (wrap_tau(u1.atan2(u0)), wrap_tau(v1.atan2(v0)))
    };

    let foot1 = c1.point(t1);
    let foot2 = c2.point(t2);
    Ok(Perpendicular {
        t1,
        t2,
        delta: distance(&foot1, &foot2),
        foot1,
        foot2,
    })
}

/// Translation length and jump of an isometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Translation {
    /// Distance the invariant axis is moved along itself, in [0, π].
    pub delta: f64,
    /// Rotation about the axis combined with the translation, in [0, 2π].
    pub nu: f64,
}

/// Translation length `δ = φ − γ` and jump `ν = φ + γ`, where `γ` and `φ`
/// are the half rotation angles of the left and right factors.
///
/// The pair is only defined up to the lift sign; flipping both factors maps
/// `(γ, φ)` to `(π − γ, π − φ)`, and the lift with `φ ≥ γ` is the one used.
pub fn translation_length_and_jump(m: &Isometry) -> Translation {
    let gamma = m.left.half_angle();
    let phi = m.right.half_angle();
    if (phi - gamma).abs() <= 1e-12 {
        // Pure rotation: both lifts qualify, take the smaller jump.
        Translation {
            delta: (phi - gamma).abs(),
            nu: (phi + gamma).min(TAU - phi - gamma),
        }
    } else if phi > gamma {
        Translation {
            delta: phi - gamma,
            nu: phi + gamma,
        }
    } else {
        Translation {
            delta: gamma - phi,
            nu: TAU - phi - gamma,
        }
    }
}

/// Fold `|t - s|` onto [0, π], the distance between `C(t)` and `C(s)`.
pub fn parameter_distance(t: f64, s: f64) -> f64 {
    let d = (t - s).abs().rem_euclid(TAU);
    if d > PI {
        TAU - d
    } else {
        d
    }
}
