//! Serialisable summaries of one cone-manifold.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::holonomy::{build_h3, build_h4, relation_residual, ConeData, HolonomyRep, LinkKind};
use crate::invariants::{
    h3_length, h3_volume, h4_length, h4_volume, holonomy_length, lifted_h3_length, lifted_h4_length,
};
use crate::spherical_trig::symmetric_tau;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisDistance {
    pub i: usize,
    pub j: usize,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceCheck {
    pub left: f64,
    pub left_expected: f64,
    pub right: f64,
    pub right_expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub kind: LinkKind,
    pub cone_angles: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    /// Closed-form length of each singular component.
    pub lengths: Vec<f64>,
    /// `δ(H)` unfolded by continuation from the degeneration locus.
    pub length_from_holonomy: f64,
    /// `δ(H)` as read off the traces, in [0, π].
    pub length_from_holonomy_folded: f64,
    pub volume: f64,
    pub holonomy_residual: f64,
    pub central_commutator: f64,
    pub central_traces: TraceCheck,
    pub perpendiculars: Vec<AxisDistance>,
    pub base: ConeData,
}

fn common(
    rep: &HolonomyRep,
    right_expected: f64,
    left_expected: f64,
) -> Result<(TraceCheck, Vec<AxisDistance>)> {
    let traces = TraceCheck {
        left: rep.central.left.trace(),
        left_expected,
        right: rep.central.right.trace(),
        right_expected,
    };
    let perps = rep
        .axis_perpendiculars()?
        .into_iter()
        .map(|(i, j, length)| AxisDistance { i, j, length })
        .collect();
    Ok((traces, perps))
}

pub fn h3_report(alpha: f64, beta: f64, gamma: f64) -> Result<GeometryReport> {
    let rep = build_h3(alpha, beta, gamma)?;
    let l = h3_length(alpha, beta, gamma)?;
    let (central_traces, perpendiculars) =
        common(&rep, 2.0 * (0.5 * (alpha + beta + gamma)).cos(), -2.0)?;
    Ok(GeometryReport {
        kind: LinkKind::H3,
        cone_angles: vec![alpha, beta, gamma],
        tau: None,
        lengths: vec![l; 3],
        length_from_holonomy: lifted_h3_length(alpha, beta, gamma)?,
        length_from_holonomy_folded: holonomy_length(&rep),
        volume: h3_volume(alpha, beta, gamma)?,
        holonomy_residual: relation_residual(&rep),
        central_commutator: rep.central_commutator(),
        central_traces,
        perpendiculars,
        base: rep.cone,
    })
}

/// Report for `H₄(α; τ)`; `τ` defaults to the symmetric point.
pub fn h4_report(alpha: f64, tau: Option<f64>) -> Result<GeometryReport> {
    let tau = match tau {
        Some(t) => t,
        None => symmetric_tau(alpha)?,
    };
    let rep = build_h4(alpha, tau)?;
    let l = h4_length(alpha)?;
    let (central_traces, perpendiculars) = common(&rep, 2.0 * (2.0 * alpha).cos(), 2.0)?;
    Ok(GeometryReport {
        kind: LinkKind::H4,
        cone_angles: vec![alpha; 4],
        tau: Some(tau),
        lengths: vec![l; 4],
        length_from_holonomy: lifted_h4_length(alpha, tau)?,
        length_from_holonomy_folded: holonomy_length(&rep),
        volume: h4_volume(alpha)?,
        holonomy_residual: relation_residual(&rep),
        central_commutator: rep.central_commutator(),
        central_traces,
        perpendiculars,
        base: rep.cone,
    })
}
