//! JSON run configuration (`geocops.run/1`).
//!
//! ```json
//! {
//!   "schema": "geocops.run/1",
//!   "space": { "kind": "ball", "dim": 2 },
//!   "k": 1,
//!   "initial": { "robber": [0.9, 0.0], "cops": [[0.0, 0.0]] },
//!   "agility": { "kind": "harmonic", "offset": 2 },
//!   "robber": { "kind": "boundary_circler", "radius": 1.0 },
//!   "cops": { "kind": "radial" },
//!   "max_steps": 100000,
//!   "epsilon": 0.01,
//!   "seed": 7
//! }
//! ```
//!
//! `initial` and `agility` may be omitted; the robber then picks them (see
//! [`RunConfig::initial_positions`] and [`RunConfig::agility`]).

use serde::{Deserialize, Serialize};

use crate::engine::{
    init_game, Agility, CopStrategy, Game, Outcome, OutcomeKind, RobberStrategy, RunOptions, Trace,
};
use crate::error::{Error, Result};
use crate::spaces::{Point, Space, SpaceKind};
use crate::strategies::{cop_seed, CopSpec, RobberSpec};

pub const RUN_SCHEMA: &str = "geocops.run/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialPositions {
    pub robber: Vec<f64>,
    pub cops: Vec<Vec<f64>>,
}

fn default_strict() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: String,
    pub space: Space,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialPositions>,
    #[serde(default, rename = "agility", skip_serializing_if = "Option::is_none")]
    pub agility_override: Option<Agility>,
    pub robber: RobberSpec,
    pub cops: CopSpec,
    pub max_steps: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_strict")]
    pub strict: bool,
    /// Output directory for `run` (trace.json, metrics.csv).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: RunConfig = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.schema != RUN_SCHEMA {
            return bad(format!("unsupported schema {:?}, expected {RUN_SCHEMA:?}", self.schema));
        }
        Space::new(self.space.kind, self.space.dim).map_err(|e| Error::Config(e.to_string()))?;
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.max_steps == 0 {
            return bad("max_steps must be at least 1".into());
        }
        if let Some(e) = self.epsilon {
            if !(e >= 0.0) {
                return bad("epsilon must be nonnegative".into());
            }
        }
        if let Some(init) = &self.initial {
            if init.cops.len() != self.k {
                return bad(format!("{} initial cop positions for k = {}", init.cops.len(), self.k));
            }
        }
        self.agility().validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    /// The configured agility, or the robber's choice τ(n) = 1/(n+2).
    pub fn agility(&self) -> Agility {
        self.agility_override.clone().unwrap_or_else(Agility::harmonic)
    }

    /// Configured start, or the robber's default layout: robber at
    /// (1/2, 0, …, 0) and cops at (1/100, 0, …, 0) in balls and ℓ² boxes;
    /// robber on the equator point e₁ and cops at the south pole on spheres
    /// (the north pole on hemispheres); robber at (1/2, …, 1/2) and cops at
    /// the origin on tori.
    pub fn initial_positions(&self) -> Result<(Point, Vec<Point>)> {
        let s = self.space;
        let (r, c) = match &self.initial {
            Some(i) => (i.robber.clone(), i.cops.clone()),
            None => {
                let m = s.ambient_dim();
                let (r, c) = match s.kind {
                    SpaceKind::Ball | SpaceKind::EllTwoBox => {
                        let mut r = vec![0.0; m];
                        let mut c = vec![0.0; m];
                        r[0] = 0.5;
                        c[0] = 0.01;
                        (r, c)
                    }
                    SpaceKind::Sphere | SpaceKind::Hemisphere => {
                        let mut r = vec![0.0; m];
                        let mut c = vec![0.0; m];
                        r[0] = 1.0;
                        c[m - 1] = if s.kind == SpaceKind::Sphere { -1.0 } else { 1.0 };
                        (r, c)
                    }
                    SpaceKind::Torus => (vec![0.5; m], vec![0.0; m]),
                };
                (r, vec![c; self.k])
            }
        };
        let robber = s.point(r).map_err(|e| Error::Config(format!("initial robber: {e}")))?;
        let cops = c
            .into_iter()
            .enumerate()
            .map(|(i, p)| s.point(p).map_err(|e| Error::Config(format!("initial cop {i}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok((robber, cops))
    }

    /// Builds a fresh game with strategies and plays it out.
    pub fn simulate(&self) -> Result<Trace> {
        let mut session = self.start()?;
        session.finish()?;
        Ok(session.into_trace())
    }

    /// Builds a fresh game with its strategies, ready to be stepped.
    pub fn start(&self) -> Result<Session> {
        self.validate()?;
        if self.robber == RobberSpec::PerpendicularEscape && self.initial.is_some() {
            log::warn!("perpendicular_escape from a custom start is an unsupported configuration");
        }
        let agility = self.agility();
        let (robber0, cops0) = self.initial_positions()?;
        let state = init_game(self.space, self.k, robber0, cops0, &agility)?;
        let options = RunOptions { strict: self.strict, ..Default::default() };
        let mut game = Game::new(state, agility, options)?;
        game.attach_config(self.clone());
        let robber = self.robber.build(self.seed)?;
        let cops = self.cops.build(self.space.dim, cop_seed(self.seed))?;
        let t = game.trace_mut();
        t.robber_strategy = robber.name().to_string();
        t.cop_strategy = cops.name().to_string();
        t.max_steps = self.max_steps;
        t.epsilon = self.epsilon;
        Ok(Session { game, robber, cops, max_steps: self.max_steps, epsilon: self.epsilon })
    }

    /// Sets a field addressed by a dotted path (e.g. `epsilon`,
    /// `cops.epsilon`, `agility.c`) from a JSON literal.
    pub fn with_param(&self, path: &str, value: &str) -> Result<RunConfig> {
        self.with_params(&[(path.to_string(), value.to_string())])
    }

    /// Several dotted-path assignments, validated once at the end.
    pub fn with_params(&self, assignments: &[(String, String)]) -> Result<RunConfig> {
        let mut v = serde_json::to_value(self).expect("config serializes");
        for (path, value) in assignments {
            let parsed: serde_json::Value = serde_json::from_str(value)
                .unwrap_or_else(|_| serde_json::Value::String(value.to_string()));
            let mut slot = &mut v;
            let parts: Vec<&str> = path.split('.').collect();
            for (i, key) in parts.iter().enumerate() {
                let obj = slot
                    .as_object_mut()
                    .ok_or_else(|| Error::Config(format!("{path}: {key} is not inside an object")))?;
                if i + 1 == parts.len() {
                    obj.insert(key.to_string(), parsed.clone());
                    break;
                }
                slot = obj
                    .entry(key.to_string())
                    .or_insert_with(|| serde_json::Value::Object(Default::default()));
            }
        }
        let c: RunConfig = serde_json::from_value(v).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }
}

/// A configured game that can be advanced one step at a time.
pub struct Session {
    pub game: Game,
    robber: Box<dyn RobberStrategy>,
    cops: Box<dyn CopStrategy>,
    max_steps: u64,
    epsilon: Option<f64>,
}

impl Session {
    /// True once the robber is caught, the value is within epsilon, or the
    /// step limit is reached.
    pub fn is_over(&self) -> bool {
        let s = &self.game.state;
        s.caught || self.epsilon.is_some_and(|e| s.value <= e) || s.step >= self.max_steps
    }

    /// Plays one step. Returns false without moving when the game is over.
    pub fn step(&mut self) -> Result<bool> {
        if self.is_over() {
            return Ok(false);
        }
        self.game.step(self.robber.as_mut(), self.cops.as_mut())?;
        Ok(true)
    }

    /// Plays the remaining steps and records the outcome.
    pub fn finish(&mut self) -> Result<Outcome> {
        let remaining = self.max_steps.saturating_sub(self.game.state.step);
        if self.is_over() {
            let s = &self.game.state;
            let result = if s.caught {
                OutcomeKind::Caught
            } else if self.epsilon.is_some_and(|e| s.value <= e) {
                OutcomeKind::WithinEpsilon
            } else {
                OutcomeKind::MaxSteps
            };
            let outcome = Outcome {
                result,
                steps: s.step,
                value: s.value,
                capturing_cop: s.capturing_cop,
            };
            self.game.trace_mut().outcome = Some(outcome.clone());
            return Ok(outcome);
        }
        let outcome = self.game.run(self.robber.as_mut(), self.cops.as_mut(), remaining, self.epsilon)?;
        self.game.trace_mut().max_steps = self.max_steps;
        Ok(outcome)
    }

    pub fn into_trace(self) -> Trace {
        self.game.into_trace()
    }
}

/// Re-simulates the config recorded in `trace`. Same config and seed give a
/// byte-identical trace.
pub fn rerun(trace: &Trace) -> Result<Trace> {
    let config = trace
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("trace carries no run config".into()))?;
    config.simulate()
}
