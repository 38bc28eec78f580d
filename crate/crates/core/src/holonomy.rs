//! Lifted holonomy representations into SU(2) × SU(2).
//!
//! Each meridian generator goes to a rotation about a Hopf fibre, so a
//! representation is fixed by its axes: a base point `(ψ, θ)` and a
//! rotation angle per generator. The central element is the image of the
//! first relator word (`acb` for `H₃`, `adcb` for `H₄`); the remaining
//! cyclic spellings are what [`relation_residual`] checks.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hopf::{
    base_fixed_point, fibre_over, rotation_about_fibre, BasePoint, ImaginaryQuaternion,
};
use crate::numeric::clamped_acos;
use crate::spherical_trig::{
    solve_quadrangle, solve_triangle, QuadrangleSolution, TriangleSolution,
};
use crate::su2::{common_perpendicular, Isometry, Su2Element};

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinkKind {
    H3,
    H4,
}

impl LinkKind {
    /// Relator words as generator indices. The first one defines `H`.
    pub fn relators(self) -> &'static [&'static [usize]] {
        match self {
            LinkKind::H3 => &[&[0, 2, 1], &[1, 0, 2], &[2, 1, 0]],
            LinkKind::H4 => &[&[0, 3, 2, 1], &[1, 0, 3, 2], &[2, 1, 0, 3], &[3, 2, 1, 0]],
        }
    }

    pub fn generator_count(self) -> usize {
        match self {
            LinkKind::H3 => 3,
            LinkKind::H4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LinkKind::H3 => "H3",
            LinkKind::H4 => "H4",
        }
    }
}

/// Rotation axis of one generator: the fibre over polar `(psi, theta)`,
/// rotated through `angle`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub psi: f64,
    pub theta: f64,
    pub angle: f64,
}

impl Axis {
    pub fn new(psi: f64, theta: f64, angle: f64) -> Self {
        Axis { psi, theta, angle }
    }

    pub fn rotation(&self) -> Isometry {
        rotation_about_fibre(self.psi, self.theta, self.angle)
    }

    pub fn base(&self) -> BasePoint {
        BasePoint::from_polar(self.psi, self.theta)
    }
}

/// Base geometry the representation was built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ConeData {
    Triangle(TriangleSolution),
    Quadrangle(QuadrangleSolution),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolonomyRep {
    pub kind: LinkKind,
    pub generators: Vec<Isometry>,
    pub axes: Vec<Axis>,
    /// Image `H` of the central element.
    pub central: Isometry,
    pub cone: ConeData,
}

/// Factorwise product of the generators spelled by `word`.
pub fn word_product(generators: &[Isometry], word: &[usize]) -> Isometry {
    word.iter()
        .fold(Isometry::IDENTITY, |acc, &i| acc * generators[i])
}

impl HolonomyRep {
    /// Build generators from axes and take `H` from the first relator.
    pub fn from_axes(kind: LinkKind, axes: Vec<Axis>, cone: ConeData) -> Self {
        assert_eq!(
            axes.len(),
            kind.generator_count(),
            "wrong number of axes for {kind:?}"
        );
        let generators: Vec<Isometry> = axes.iter().map(Axis::rotation).collect();
        let central = word_product(&generators, kind.relators()[0]);
        HolonomyRep {
            kind,
            generators,
            axes,
            central,
            cone,
        }
    }

    /// Axis base points recovered from the generators' left factors rather
    /// than from the stored axis data.
    pub fn measured_bases(&self) -> Vec<BasePoint> {
        self.generators.iter().map(|g| left_axis(&g.left)).collect()
    }

    /// Pairwise common-perpendicular lengths between the axis fibres,
    /// as `(i, j, length)` with `i < j`.
    pub fn axis_perpendiculars(&self) -> Result<Vec<(usize, usize, f64)>> {
        let bases = self.measured_bases();
        let mut out = Vec::new();
        for i in 0..bases.len() {
            for j in i + 1..bases.len() {
                let p = common_perpendicular(&fibre_over(&bases[i]), &fibre_over(&bases[j]))?;
                out.push((i, j, p.delta));
            }
        }
        Ok(out)
    }

    /// Largest commutator defect between `H` and a generator.
    pub fn central_commutator(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| self.central.commutator_norm(g))
            .fold(0.0, f64::max)
    }

    /// Largest commutator defect among the right factors.
    pub fn right_commutator(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, g) in self.generators.iter().enumerate() {
            for h in &self.generators[i + 1..] {
                let a = g.right * h.right;
                let b = h.right * g.right;
                worst = worst.max(a.diff_mod_sign(&b));
            }
        }
        worst
    }

    /// Largest difference between left and right traces over the
    /// generators (meridians have conjugate factors).
    pub fn meridian_trace_gap(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| (g.left.trace() - g.right.trace()).abs())
            .fold(0.0, f64::max)
    }
}

/// Base point fixed by the S² action of a rotation factor
/// `M̄ R(ω) Mᵗ = cos(ω/2) + sin(ω/2) M̄ k M̄⁻¹`.
///
/// `M̄ k M̄⁻¹` is `Ĉ` with its `y` coordinate negated.
fn left_axis(l: &Su2Element) -> BasePoint {
    let n = (l.x * l.x + l.y * l.y + l.z * l.z).sqrt();
    if n < 1e-300 {
        return BasePoint::NORTH;
    }
    BasePoint {
        a: l.x / n,
        b: -l.y / n,
        c: l.z / n,
    }
}

/// `max` over relator pairs and both factors of the entrywise distance
/// between relator images, each factor compared modulo its sign.
pub fn relation_residual(rep: &HolonomyRep) -> f64 {
    words_residual(&rep.generators, rep.kind.relators())
}

/// [`relation_residual`] for an arbitrary generator list and set of words
/// that should all have the same image.
pub fn words_residual(generators: &[Isometry], words: &[&[usize]]) -> f64 {
    let first = word_product(generators, words[0]);
    words[1..]
        .iter()
        .map(|w| word_product(generators, w).diff_mod_sign(&first))
        .fold(0.0, f64::max)
}

/// Axes of `H₃(α, β, γ)`: `A` about the generic fibre, `B` over `(0, φ)`,
/// `C` over `(α/2, θ)`.
pub fn h3_axes(t: &TriangleSolution) -> Vec<Axis> {
    vec![
        Axis::new(0.0, 0.0, t.alpha),
        Axis::new(0.0, t.phi, t.beta),
        Axis::new(t.psi, t.theta, t.gamma),
    ]
}

pub fn build_h3(alpha: f64, beta: f64, gamma: f64) -> Result<HolonomyRep> {
    let t = solve_triangle(alpha, beta, gamma)?;
    Ok(HolonomyRep::from_axes(
        LinkKind::H3,
        h3_axes(&t),
        ConeData::Triangle(t),
    ))
}

/// Axes of `H₄(α; τ)`: the reflections of the quadrangle vertex `(ψ, φ)`,
/// at longitudes `ψ`, `π − ψ`, `π + ψ`, `2π − ψ`.
pub fn h4_axes(q: &QuadrangleSolution) -> Vec<Axis> {
    let (psi, phi, a) = (q.psi, q.phi, q.alpha);
    vec![
        Axis::new(psi, phi, a),
        Axis::new(PI - psi, phi, a),
        Axis::new(PI + psi, phi, a),
        Axis::new(2.0 * PI - psi, phi, a),
    ]
}

pub fn build_h4(alpha: f64, tau: f64) -> Result<HolonomyRep> {
    let q = solve_quadrangle(alpha, tau)?;
    Ok(HolonomyRep::from_axes(
        LinkKind::H4,
        h4_axes(&q),
        ConeData::Quadrangle(q),
    ))
}

/// Outcome of splitting `B` and `D` along the diagonal `BD` of the axis
/// quadrangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleSplit {
    /// Angle at `B` in triangle `BCD`.
    pub beta1: f64,
    /// Angle at `B` in triangle `ABD`.
    pub beta2: f64,
    /// Angle at `D` in triangle `ABD`.
    pub delta1: f64,
    /// Angle at `D` in triangle `BCD`.
    pub delta2: f64,
    /// `‖D″_l C_l B′_l + id‖`.
    pub r1: f64,
    /// `‖A_l D′_l B″_l + id‖`.
    pub r2: f64,
    /// `max(‖B′_l B″_l − B_l‖, ‖D′_l D″_l − D_l‖)`.
    pub decomposition: f64,
    /// `‖A_l D′_l D″_l C_l B′_l B″_l − id‖`.
    pub product: f64,
}

/// Angle at the vertex between sides `adj1` and `adj2`, opposite `opp`.
fn cosine_rule_angle(opp: f64, adj1: f64, adj2: f64) -> f64 {
    clamped_acos(
        (opp.cos() - adj1.cos() * adj2.cos()) / (adj1.sin() * adj2.sin()),
        "triangle split angle",
    )
}

/// Check the two triangle identities behind the `H₄` left relation.
///
/// The axis quadrangle `ABCD` has sides `AB = CD = 2b₁`, `AD = BC = 2b₂`
/// on the base sphere, and its diagonal `BD` runs through the pole, so has
/// length `2φ`. Rotating through twice the triangle angles gives the
/// factors `B = B′B″` and `D = D′D″`.
pub fn triangle_split_check(alpha: f64, tau: f64) -> Result<TriangleSplit> {
    let q = solve_quadrangle(alpha, tau)?;
    let (ab, ad, bd) = (2.0 * q.b1, 2.0 * q.b2, 2.0 * q.phi);
    let beta2 = cosine_rule_angle(ad, ab, bd);
    let delta1 = cosine_rule_angle(ab, ad, bd);
    // BCD is congruent to DAB with B and D exchanged.
    let (beta1, delta2) = (delta1, beta2);

    let axes = h4_axes(&q);
    let (a, b, c, d) = (axes[0], axes[1], axes[2], axes[3]);
    let rot = |ax: &Axis, w: f64| rotation_about_fibre(ax.psi, ax.theta, w).left;
    let al = rot(&a, a.angle);
    let cl = rot(&c, c.angle);
    let (b1, b2) = (rot(&b, 2.0 * beta1), rot(&b, 2.0 * beta2));
    let (d1, d2) = (rot(&d, 2.0 * delta1), rot(&d, 2.0 * delta2));
    let minus_id = -Su2Element::IDENTITY;

    let r1 = (d2 * cl * b1).max_entry_diff(&minus_id);
    let r2 = (al * d1 * b2).max_entry_diff(&minus_id);
    let decomposition = (b1 * b2)
        .max_entry_diff(&rot(&b, b.angle))
        .max((d1 * d2).max_entry_diff(&rot(&d, d.angle)));
    let product = (al * d1 * d2 * cl * b1 * b2).max_entry_diff(&Su2Element::IDENTITY);
    Ok(TriangleSplit {
        beta1,
        beta2,
        delta1,
        delta2,
        r1,
        r2,
        decomposition,
        product,
    })
}

/// Largest S² displacement of an axis base point under its generator's
/// left factor.
pub fn base_descent_defect(rep: &HolonomyRep) -> f64 {
    rep.axes
        .iter()
        .zip(&rep.generators)
        .map(|(ax, g)| {
            let c: ImaginaryQuaternion = base_fixed_point(ax.psi, ax.theta);
            c.act(&g.left).distance(&c)
        })
        .fold(0.0, f64::max)
}
