use serde::{Deserialize, Serialize};

use super::Agility;
use crate::config::RunConfig;
use crate::spaces::SpaceKind;

pub const TRACE_SCHEMA: &str = "geocops.trace/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Leg {
    pub from: Vec<f64>,
    pub to: Vec<f64>,
}

/// Strategy-side bookkeeping recorded alongside a step: positions in a
/// covering space and/or a reference axis (pincer axis, mirror normal).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct AuxRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub robber: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cops: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub n: u64,
    /// Index of the sub-step when the step was subdivided.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<u32>,
    /// Full robber destination, on the first sub-step of a subdivided step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<f64>>,
    pub tau: f64,
    pub robber: Leg,
    pub cops: Vec<Leg>,
    /// min_i d(r, cᵢ) after this (sub)step.
    pub min_dist: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clamped: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    Caught,
    WithinEpsilon,
    MaxSteps,
}

impl OutcomeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeKind::Caught => "caught",
            OutcomeKind::WithinEpsilon => "within_epsilon",
            OutcomeKind::MaxSteps => "max_steps",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outcome {
    pub result: OutcomeKind,
    pub steps: u64,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capturing_cop: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Initial {
    pub robber: Vec<f64>,
    pub cops: Vec<Vec<f64>>,
    pub min_dist: f64,
}

/// Complete record of one game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Trace {
    pub schema: String,
    pub space: SpaceKind,
    pub dim: usize,
    pub k: usize,
    pub agility: Agility,
    pub robber_strategy: String,
    pub cop_strategy: String,
    pub max_steps: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub strict: bool,
    pub initial: Initial,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
    pub steps: Vec<StepRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<Outcome>,
}

impl Trace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialization is infallible")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        let t: Trace = serde_json::from_str(s)?;
        if t.schema != TRACE_SCHEMA {
            return Err(crate::Error::Parse(format!("unsupported trace schema `{}`", t.schema)));
        }
        Ok(t)
    }

    /// Same positions, distances and outcome, ignoring strategy labels,
    /// clamping notes and auxiliary records.
    pub fn same_play(&self, other: &Trace) -> bool {
        self.space == other.space
            && self.dim == other.dim
            && self.k == other.k
            && self.initial == other.initial
            && self.outcome == other.outcome
            && self.steps.len() == other.steps.len()
            && self.steps.iter().zip(&other.steps).all(|(a, b)| {
                a.n == b.n
                    && a.sub == b.sub
                    && a.tau.to_bits() == b.tau.to_bits()
                    && a.robber == b.robber
                    && a.cops == b.cops
                    && a.min_dist.to_bits() == b.min_dist.to_bits()
            })
    }
}
