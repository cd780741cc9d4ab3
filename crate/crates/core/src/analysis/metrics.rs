//! Per-step metrics and invariant flags for a trace.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::engine::{value_estimate, OutcomeKind, Trace, CAPTURE_TOL};
use crate::linalg;
use crate::spaces::{Space, SpaceKind};
use crate::strategies::sphere::mirror_point;
use crate::strategies::torus::{potential, THREE_COP_LIFTS};
use crate::strategies::{CopSpec, RobberSpec};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRow {
    pub n: u64,
    pub sub: u32,
    pub tau: f64,
    pub robber_step: f64,
    pub max_cop_step: f64,
    pub min_dist: f64,
    pub value: f64,
    /// Distance of the robber from the star center (radial runs).
    pub robber_radius: Option<f64>,
    /// Distance of the radial cop from the star center.
    pub cop_radius: Option<f64>,
    /// Σ d(r, cᵢ) between lifts (covering-space runs).
    pub potential: Option<f64>,
    /// Largest cross-axis offset of a pincer cop.
    pub cross_offset: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flag {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsSummary {
    pub rows: Vec<MetricsRow>,
    pub flags: Vec<Flag>,
    pub value: f64,
    pub steps: u64,
    /// Total length of the robber's moves.
    pub robber_path: f64,
}

impl MetricsSummary {
    pub fn flag(&self, name: &str) -> Option<&Flag> {
        self.flags.iter().find(|f| f.name == name)
    }

    pub fn all_ok(&self) -> bool {
        self.flags.iter().all(|f| f.ok)
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut s = String::from(
            "n,sub,tau,robber_step,max_cop_step,min_dist,value,robber_radius,cop_radius,potential,cross_offset\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.sub,
                r.tau,
                r.robber_step,
                r.max_cop_step,
                r.min_dist,
                r.value,
                opt(r.robber_radius),
                opt(r.cop_radius),
                opt(r.potential),
                opt(r.cross_offset)
            );
        }
        s
    }
}

fn flag(name: &str, ok: bool, detail: String) -> Flag {
    Flag { name: name.to_string(), ok, detail }
}

/// Radial center and the index of the radial cop, if the trace is a radial run.
fn radial_setup(trace: &Trace) -> Option<(Vec<f64>, usize)> {
    let cop = trace.config.as_ref().map(|c| c.cops.clone());
    let first_axis = trace.steps.iter().find_map(|s| s.aux.as_ref().and_then(|a| a.axis.clone()));
    match (trace.space, cop) {
        (SpaceKind::Ball, Some(CopSpec::Radial { .. })) => Some((vec![0.0; trace.dim], 0)),
        (SpaceKind::Hemisphere, Some(CopSpec::Radial { .. })) => Some((first_axis?, 0)),
        (SpaceKind::Sphere, Some(CopSpec::SphereTwoCop)) => Some((first_axis?, 1)),
        _ => None,
    }
}

pub fn trace_metrics(trace: &Trace) -> MetricsSummary {
    let space = Space { kind: trace.space, dim: trace.dim };
    let dist = |a: &[f64], b: &[f64]| space.dist(a, b);
    let center_dist = |center: &[f64], p: &[f64]| match trace.space {
        SpaceKind::Ball => linalg::dist(center, p),
        _ => Space::sphere(trace.dim).dist(center, p),
    };
    let radial = radial_setup(trace);
    let cops_spec = trace.config.as_ref().map(|c| c.cops.clone());
    let robber_spec = trace.config.as_ref().map(|c| c.robber.clone());
    let three_cop = matches!(cops_spec, Some(CopSpec::TorusThreeCopCatch));
    let pincer_eps = match cops_spec {
        Some(CopSpec::TorusTwoCopLift { epsilon, .. }) => Some(epsilon),
        _ => None,
    };
    let mirror = matches!(cops_spec, Some(CopSpec::SphereMirror | CopSpec::SphereTwoCop));

    let mut rows = Vec::with_capacity(trace.steps.len());
    let mut value = trace.initial.min_dist;
    let mut budget_ok = true;
    let mut monotone_ok = true;
    let mut radial_ok = true;
    let mut radial_worst = 0.0f64;
    let mut prev_cop_radius: Option<f64> = None;
    let mut d_prev = three_cop.then(|| {
        let lifts: Vec<Vec<f64>> = THREE_COP_LIFTS.iter().map(|c| c.to_vec()).collect();
        potential(&trace.initial.robber, &lifts)
    });
    let d0 = d_prev;
    let factor = 2.0 * (7.0 * PI / 18.0).cos();
    let mut decrease_ok = true;
    let mut worst_decrease_slack = f64::INFINITY;
    let mut offset_max = 0.0f64;
    let mut mirror_ok = true;
    let mut mirror_checked = 0usize;
    let mut escape_ok = true;
    let r0 = linalg::dot(&trace.initial.robber, &trace.initial.robber);
    let mut tau_sq = 0.0;
    let mut robber_path = 0.0;
    let mut prev_value = value;

    // the capturing move stops on the robber, so the decrease bound is
    // only claimed for the steps before it
    let capture_n = trace
        .outcome
        .as_ref()
        .filter(|o| o.result == OutcomeKind::Caught)
        .map(|o| o.steps);

    for s in &trace.steps {
        let robber_step = dist(&s.robber.from, &s.robber.to);
        let max_cop_step = s.cops.iter().map(|l| dist(&l.from, &l.to)).fold(0.0, f64::max);
        robber_path += robber_step;
        if robber_step > s.tau + TOL || max_cop_step > s.tau + TOL {
            budget_ok = false;
        }
        value = value.min(s.min_dist);
        if value > prev_value {
            monotone_ok = false;
        }
        prev_value = value;

        let (mut robber_radius, mut cop_radius) = (None, None);
        if let Some((center, idx)) = &radial {
            robber_radius = Some(center_dist(center, &s.robber.to));
            let cr = center_dist(center, &s.cops[*idx].to);
            cop_radius = Some(cr);
            let in_radial = s.aux.as_ref().and_then(|a| a.phase.as_deref()) == Some("radial");
            if in_radial {
                if let Some(p) = prev_cop_radius {
                    if cr < p - TOL {
                        radial_ok = false;
                        radial_worst = radial_worst.max(p - cr);
                    }
                }
                prev_cop_radius = Some(cr);
            }
        }

        let mut pot = None;
        let mut cross = None;
        if let Some(aux) = &s.aux {
            if let (true, Some(r)) = (three_cop, &aux.robber) {
                let d = potential(r, &aux.cops);
                if let (Some(prev), false) = (d_prev, capture_n == Some(s.n)) {
                    let slack = (prev - d) - factor * s.tau;
                    worst_decrease_slack = worst_decrease_slack.min(slack);
                    if slack < -TOL {
                        decrease_ok = false;
                    }
                }
                d_prev = Some(d);
                pot = Some(d);
            }
            let pincer_phase = aux.phase.as_deref() == Some("pincer");
            if let (Some(_), true, Some(r), Some(axis)) = (pincer_eps, pincer_phase, &aux.robber, &aux.axis) {
                let o = aux
                    .cops
                    .iter()
                    .map(|c| {
                        let v = linalg::sub(c, r);
                        linalg::norm(&linalg::axpy(&v, -linalg::dot(&v, axis), axis))
                    })
                    .fold(0.0, f64::max);
                offset_max = offset_max.max(o);
                cross = Some(o);
            }
            if let (true, Some(h)) = (mirror, &aux.axis) {
                let expected = mirror_point(&space, &s.robber.to, h);
                mirror_checked += 1;
                let c = &s.cops[0].to;
                if !(expected.coords == *c || s.min_dist <= CAPTURE_TOL) {
                    mirror_ok = false;
                }
            }
        }
        if matches!(robber_spec, Some(RobberSpec::PerpendicularEscape)) {
            tau_sq += s.tau * s.tau;
            if linalg::dot(&s.robber.to, &s.robber.to) > r0 + tau_sq + TOL {
                escape_ok = false;
            }
        }
        rows.push(MetricsRow {
            n: s.n,
            sub: s.sub.unwrap_or(0),
            tau: s.tau,
            robber_step,
            max_cop_step,
            min_dist: s.min_dist,
            value,
            robber_radius,
            cop_radius,
            potential: pot,
            cross_offset: cross,
        });
    }

    let mut flags = vec![
        flag("budget_legal", budget_ok, "every leg within its budget + 1e-9".into()),
        flag("value_monotone", monotone_ok, "running minimum never increases".into()),
    ];
    if radial.is_some() {
        flags.push(flag(
            "radial_nondecreasing",
            radial_ok,
            format!("largest radius drop after reaching the center: {radial_worst:e}"),
        ));
    }
    if three_cop {
        flags.push(flag(
            "three_cop_decrease",
            decrease_ok,
            format!("min (D_n − D_n+1) − 2τcos(7π/18) before the capturing step: {worst_decrease_slack:e}"),
        ));
        let bound = (d0.unwrap_or(0.0) + 1.0) / factor + 1.0;
        flags.push(flag(
            "three_cop_path_bound",
            robber_path <= bound,
            format!("robber path {robber_path} vs bound {bound}"),
        ));
    }
    if let Some(eps) = pincer_eps {
        flags.push(flag(
            "pincer_offset",
            offset_max <= eps + TOL,
            format!("largest cross offset {offset_max} vs epsilon {eps}"),
        ));
    }
    if mirror {
        flags.push(flag("mirror_invariant", mirror_ok, format!("{mirror_checked} steps checked bit for bit")));
    }
    if matches!(robber_spec, Some(RobberSpec::PerpendicularEscape)) {
        flags.push(flag("escape_radius", escape_ok, "|r|² ≤ |r⁰|² + Στ² + 1e-9".into()));
    }
    MetricsSummary {
        rows,
        flags,
        value: value_estimate(trace),
        steps: trace.outcome.as_ref().map_or(0, |o| o.steps),
        robber_path,
    }
}
