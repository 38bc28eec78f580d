//! Spherical cone-manifold structures on Hopf links.
//!
//! The crate builds the lifted holonomy representations
//! `π₁(S³ ∖ H_n) → SU(2) × SU(2)` for the three-component cone-manifold
//! `H₃(α, β, γ)` and the four-component family `H₄(α; τ)`, checks the group
//! relations numerically, and extracts singular lengths and volumes.
//!
//! Layout, bottom-up:
//!
//! * [`su2`]: unit quaternions in their 2×2 special-unitary form, the round
//!   metric on S³, great circles and the two-sided action of SU(2) × SU(2).
//! * [`hopf`]: the Hopf map, explicit fibres, rotations about fibres.
//! * [`spherical_trig`]: the base triangle of `H₃` and the base quadrangle
//!   of `H₄`.
//! * [`holonomy`]: generator images, relation residuals, the central element.
//! * [`invariants`]: lengths, volumes, Schläfli integration, the flexibility
//!   sweep and the rigidity scan.
//! * [`report`]: serialisable summaries used by the command-line front end.

pub mod error;
pub mod holonomy;
pub mod hopf;
pub mod invariants;
mod numeric;
pub mod report;
pub mod spherical_trig;
pub mod su2;

pub use error::{GeometryError, Result};
pub use holonomy::{build_h3, build_h4, relation_residual, HolonomyRep, LinkKind};
pub use hopf::{BasePoint, ImaginaryQuaternion};
pub use spherical_trig::{QuadrangleSolution, TriangleSolution};
pub use su2::{GreatCircle, Isometry, Perpendicular, Su2Element};
