//! Discrete game loop.
//!
//! Step n: the robber picks a destination within τ(n) and moves along the
//! shortest geodesic; the whole move (destination and path) is revealed;
//! then every cop answers with a destination within τ(n). The game stops
//! when a cop lands on the robber. A cop strategy may ask for the step to
//! be played as m sub-steps of budget τ(n)/m along the robber's path.

mod agility;
mod trace;

pub use agility::Agility;
pub use trace::{
    AuxRecord, Initial, Leg, Outcome, OutcomeKind, StepRecord, Trace, TRACE_SCHEMA,
};

use crate::error::{invalid, Error, Mover, Result};
use crate::spaces::{self, GeodesicPath, Point, Space, TOL};
use crate::strategies::scripted::{ScriptedCops, ScriptedRobber};

/// Distance at or below which a cop counts as standing on the robber.
pub const CAPTURE_TOL: f64 = 1e-9;

const MAX_SUBDIVISIONS: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct MoveRecord {
    pub mover: Mover,
    pub origin: Point,
    pub destination: Point,
    pub path: GeodesicPath,
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameState {
    pub space: Space,
    /// Number of completed steps.
    pub step: u64,
    pub robber: Point,
    pub cops: Vec<Point>,
    pub caught: bool,
    pub capturing_cop: Option<usize>,
    /// Running value: min over the history of min_i d(r, cᵢ).
    pub value: f64,
}

impl GameState {
    pub fn min_distance(&self) -> f64 {
        min_distance(&self.space, &self.robber, &self.cops)
    }
}

fn min_distance(space: &Space, robber: &Point, cops: &[Point]) -> f64 {
    cops.iter().map(|c| space.dist(&robber.coords, &c.coords)).fold(f64::INFINITY, f64::min)
}

/// What the robber sees before moving.
pub struct RobberView<'a> {
    pub space: &'a Space,
    /// The step about to be played (1-based).
    pub step: u64,
    pub budget: f64,
    pub state: &'a GameState,
}

/// What the cops see: the robber's completed (sub-)move and their own positions.
pub struct CopView<'a> {
    pub space: &'a Space,
    pub step: u64,
    pub sub: usize,
    pub subdivisions: usize,
    pub budget: f64,
    pub robber_move: &'a MoveRecord,
    pub cops: &'a [Point],
}

pub trait RobberStrategy: Send {
    fn name(&self) -> &'static str;
    fn next_move(&mut self, view: &RobberView<'_>) -> Result<Point>;
}

pub trait CopStrategy: Send {
    fn name(&self) -> &'static str;

    /// Number of equal sub-steps to play this step in; the view carries the
    /// full robber move and the full budget.
    fn subdivisions(&mut self, _view: &CopView<'_>) -> usize {
        1
    }

    /// One destination per cop.
    fn respond(&mut self, view: &CopView<'_>) -> Result<Vec<Point>>;

    fn aux(&self) -> Option<AuxRecord> {
        None
    }
}

/// Builds the state at step 0.
pub fn init_game(
    space: Space,
    k: usize,
    robber: Point,
    cops: Vec<Point>,
    agility: &Agility,
) -> Result<GameState> {
    if k == 0 {
        return invalid("at least one cop is required");
    }
    if cops.len() != k {
        return invalid(format!("{} cop positions given for k = {k}", cops.len()));
    }
    agility.validate()?;
    for p in std::iter::once(&robber).chain(&cops) {
        if p.space != space {
            return invalid("initial position belongs to a different space");
        }
        p.validate()?;
    }
    let robber = Point { space, coords: space.canonicalize(robber.coords) };
    let cops: Vec<Point> =
        cops.into_iter().map(|c| Point { space, coords: space.canonicalize(c.coords) }).collect();
    let (caught, capturing_cop) = capture_check(&robber, &cops);
    let value = if caught { 0.0 } else { min_distance(&space, &robber, &cops) };
    Ok(GameState { space, step: 0, robber, cops, caught, capturing_cop, value })
}

/// Capture means a cop ended its move exactly on the robber. A cop that is
/// merely within [`CAPTURE_TOL`] wins on value but has not caught anyone.
fn capture_check(robber: &Point, cops: &[Point]) -> (bool, Option<usize>) {
    let hit = cops.iter().position(|c| c.same_bits(robber));
    (hit.is_some(), hit)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Reject over-budget or off-space moves (otherwise clamp them).
    pub strict: bool,
    /// Divergence heuristic threshold; a warning is logged when the agility
    /// sums to less over the run horizon. Defaults to 10·diameter.
    pub divergence_threshold: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { strict: true, divergence_threshold: None }
    }
}

/// A game in progress together with its trace.
pub struct Game {
    pub agility: Agility,
    pub state: GameState,
    pub options: RunOptions,
    trace: Trace,
}

impl Game {
    pub fn new(state: GameState, agility: Agility, options: RunOptions) -> Result<Self> {
        agility.validate()?;
        let space = state.space;
        let trace = Trace {
            schema: TRACE_SCHEMA.to_string(),
            space: space.kind,
            dim: space.dim,
            k: state.cops.len(),
            agility: agility.clone(),
            robber_strategy: String::new(),
            cop_strategy: String::new(),
            max_steps: 0,
            epsilon: None,
            strict: options.strict,
            initial: Initial {
                robber: state.robber.coords.clone(),
                cops: state.cops.iter().map(|c| c.coords.clone()).collect(),
                min_dist: state.min_distance(),
            },
            config: None,
            steps: Vec::new(),
            outcome: None,
        };
        Ok(Game { agility, state, options, trace })
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn into_trace(self) -> Trace {
        self.trace
    }

    pub(crate) fn trace_mut(&mut self) -> &mut Trace {
        &mut self.trace
    }

    pub fn attach_config(&mut self, config: crate::config::RunConfig) {
        self.trace.config = Some(config);
    }

    fn legalize(
        &self,
        mover: Mover,
        from: &Point,
        proposed: Point,
        budget: f64,
        clamped: &mut Vec<String>,
    ) -> Result<Point> {
        let space = self.state.space;
        let problem = if proposed.space != space || proposed.coords.len() != space.ambient_dim() {
            Some("destination is not a point of the game space".to_string())
        } else if let Err(e) = space.validate(&proposed.coords) {
            Some(format!("destination off the space: {e}"))
        } else {
            let d = space.dist(&from.coords, &proposed.coords);
            (d > budget + TOL).then(|| format!("move of length {d} exceeds budget {budget}"))
        };
        match problem {
            None => Ok(Point { space, coords: space.canonicalize(proposed.coords) }),
            Some(reason) if self.options.strict => Err(Error::IllegalMove { mover, reason }),
            Some(reason) => {
                log::debug!("clamping {mover}: {reason}");
                clamped.push(mover.to_string());
                if proposed.coords.len() != space.ambient_dim() {
                    return Ok(from.clone());
                }
                let target = Point { space, coords: retract(&space, &proposed.coords) };
                spaces::move_toward(&space, from, &target, budget)
            }
        }
    }

    /// Plays one step.
    pub fn step(
        &mut self,
        robber: &mut dyn RobberStrategy,
        cops: &mut dyn CopStrategy,
    ) -> Result<()> {
        if self.state.caught {
            return invalid("the robber has already been caught");
        }
        let space = self.state.space;
        let n = self.state.step + 1;
        let tau = self.agility.tau(n);
        let proposed = robber.next_move(&RobberView {
            space: &space,
            step: n,
            budget: tau,
            state: &self.state,
        })?;
        let mut robber_clamped = Vec::new();
        let origin = self.state.robber.clone();
        let dest = self.legalize(Mover::Robber, &origin, proposed, tau, &mut robber_clamped)?;
        let full = MoveRecord {
            mover: Mover::Robber,
            path: spaces::shortest_geodesic(&space, &origin, &dest)?,
            origin,
            destination: dest,
            budget: tau,
        };
        let m = cops
            .subdivisions(&CopView {
                space: &space,
                step: n,
                sub: 0,
                subdivisions: 1,
                budget: tau,
                robber_move: &full,
                cops: &self.state.cops,
            })
            .clamp(1, MAX_SUBDIVISIONS);
        let full_target = full.destination.coords.clone();
        let pieces: Vec<MoveRecord> = if m == 1 {
            vec![full]
        } else {
            full.path
                .subdivide(m)
                .into_iter()
                .map(|path| MoveRecord {
                    mover: Mover::Robber,
                    origin: path.start.clone(),
                    destination: path.end.clone(),
                    path,
                    budget: tau / m as f64,
                })
                .collect()
        };
        for (j, piece) in pieces.iter().enumerate() {
            let budget = piece.budget;
            let answers = cops.respond(&CopView {
                space: &space,
                step: n,
                sub: j,
                subdivisions: m,
                budget,
                robber_move: piece,
                cops: &self.state.cops,
            })?;
            if answers.len() != self.state.cops.len() {
                return Err(Error::StrategyMisuse(format!(
                    "cop strategy returned {} moves for {} cops",
                    answers.len(),
                    self.state.cops.len()
                )));
            }
            let mut clamped = if j == 0 { std::mem::take(&mut robber_clamped) } else { Vec::new() };
            let mut new_cops = Vec::with_capacity(answers.len());
            for (i, (from, to)) in self.state.cops.iter().zip(answers).enumerate() {
                new_cops.push(self.legalize(Mover::Cop(i), from, to, budget, &mut clamped)?);
            }
            let robber_at = piece.destination.clone();
            let (caught, who) = capture_check(&robber_at, &new_cops);
            let md = if caught { 0.0 } else { min_distance(&space, &robber_at, &new_cops) };
            self.trace.steps.push(StepRecord {
                n,
                sub: (m > 1).then_some(j as u32),
                of: (m > 1).then_some(m as u32),
                target: (m > 1 && j == 0).then(|| full_target.clone()),
                tau: budget,
                robber: Leg { from: piece.origin.coords.clone(), to: robber_at.coords.clone() },
                cops: self
                    .state
                    .cops
                    .iter()
                    .zip(&new_cops)
                    .map(|(a, b)| Leg { from: a.coords.clone(), to: b.coords.clone() })
                    .collect(),
                min_dist: md,
                clamped,
                aux: cops.aux(),
            });
            self.state.robber = robber_at;
            self.state.cops = new_cops;
            self.state.value = self.state.value.min(md);
            if caught {
                self.state.caught = true;
                self.state.capturing_cop = who;
                self.state.value = 0.0;
                break;
            }
        }
        self.state.step = n;
        Ok(())
    }

    /// Plays until capture, until the running value is within `epsilon`, or
    /// for `max_steps` steps.
    pub fn run(
        &mut self,
        robber: &mut dyn RobberStrategy,
        cops: &mut dyn CopStrategy,
        max_steps: u64,
        epsilon: Option<f64>,
    ) -> Result<Outcome> {
        if max_steps == 0 {
            return invalid("max_steps must be at least 1");
        }
        if let Some(e) = epsilon {
            if !(e >= 0.0) {
                return invalid("epsilon must be nonnegative");
            }
        }
        let threshold =
            self.options.divergence_threshold.unwrap_or(10.0 * self.state.space.diameter());
        if self.agility.check_divergence(max_steps, threshold).is_err() {
            log::warn!(
                "agility sums to {:.4} over {max_steps} steps, under {threshold:.4} (10 diameters); \
                 strategies relying on Σ τ = ∞ may not finish",
                self.agility.partial_sum(max_steps)
            );
        }
        self.trace.robber_strategy = robber.name().to_string();
        self.trace.cop_strategy = cops.name().to_string();
        self.trace.max_steps = max_steps;
        self.trace.epsilon = epsilon;
        let within = |v: f64| epsilon.is_some_and(|e| v <= e);
        let start = self.state.step;
        while !self.state.caught
            && !within(self.state.value)
            && self.state.step - start < max_steps
        {
            self.step(robber, cops)?;
        }
        let result = if self.state.caught {
            OutcomeKind::Caught
        } else if within(self.state.value) {
            OutcomeKind::WithinEpsilon
        } else {
            OutcomeKind::MaxSteps
        };
        let outcome = Outcome {
            result,
            steps: self.state.step,
            value: self.state.value,
            capturing_cop: self.state.capturing_cop,
        };
        self.trace.outcome = Some(outcome.clone());
        Ok(outcome)
    }
}

/// Pulls arbitrary coordinates back into the space (used only by lenient
/// clamping).
fn retract(space: &Space, coords: &[f64]) -> Vec<f64> {
    use crate::spaces::SpaceKind::*;
    let mut x: Vec<f64> = coords.iter().map(|v| if v.is_finite() { *v } else { 0.0 }).collect();
    match space.kind {
        Ball => {
            let n = crate::linalg::norm(&x);
            if n > 1.0 {
                x = crate::linalg::scale(&x, 1.0 / n);
            }
        }
        EllTwoBox => {
            for (i, v) in x.iter_mut().enumerate() {
                let cap = 1.0 / (i + 1) as f64;
                *v = v.clamp(-cap, cap);
            }
            let n = crate::linalg::norm(&x);
            if n > 1.0 {
                x = crate::linalg::scale(&x, 1.0 / n);
            }
        }
        Sphere | Hemisphere => {
            if crate::linalg::norm(&x) == 0.0 {
                x[space.dim] = 1.0;
            }
            if space.kind == Hemisphere {
                x[space.dim] = x[space.dim].abs();
            }
            x = space.canonicalize(x);
        }
        Torus => x = space.canonicalize(x),
    }
    x
}

/// Minimum recorded cop–robber distance; 0 for a caught trace.
pub fn value_estimate(trace: &Trace) -> f64 {
    if trace.outcome.as_ref().is_some_and(|o| o.result == OutcomeKind::Caught) {
        return 0.0;
    }
    let v = trace
        .steps
        .iter()
        .map(|s| s.min_dist)
        .fold(trace.initial.min_dist, f64::min);
    if v <= CAPTURE_TOL {
        0.0
    } else {
        v
    }
}

/// Re-plays the recorded moves through the engine's legality checks and
/// returns the regenerated trace (compare with [`Trace::same_play`]).
pub fn replay(trace: &Trace) -> Result<Trace> {
    let space = Space::new(trace.space, trace.dim)?;
    let robber = space.point(trace.initial.robber.clone())?;
    let cops = trace
        .initial
        .cops
        .iter()
        .map(|c| space.point(c.clone()))
        .collect::<Result<Vec<_>>>()?;
    let state = init_game(space, trace.k, robber, cops, &trace.agility)?;
    let options = RunOptions { strict: trace.strict, divergence_threshold: Some(0.0) };
    let mut game = Game::new(state, trace.agility.clone(), options)?;
    let mut robber = ScriptedRobber::from_trace(trace);
    let mut cops = ScriptedCops::from_trace(trace);
    if trace.max_steps > 0 {
        game.run(&mut robber, &mut cops, trace.max_steps, trace.epsilon)?;
    }
    Ok(game.into_trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::greedy::GreedyChase;
    use crate::strategies::scripted::ScriptedRobber;

    fn b1(x: f64) -> Point {
        Space::ball(1).point(vec![x]).unwrap()
    }

    struct Stay;
    impl RobberStrategy for Stay {
        fn name(&self) -> &'static str {
            "stay"
        }
        fn next_move(&mut self, v: &RobberView<'_>) -> Result<Point> {
            Ok(v.state.robber.clone())
        }
    }
    impl CopStrategy for Stay {
        fn name(&self) -> &'static str {
            "stay"
        }
        fn respond(&mut self, v: &CopView<'_>) -> Result<Vec<Point>> {
            Ok(v.cops.to_vec())
        }
    }

    #[test]
    fn init_examples() {
        let b2 = Space::ball(2);
        let s = init_game(
            b2,
            1,
            b2.point(vec![0.5, 0.0]).unwrap(),
            vec![b2.point(vec![-0.5, 0.0]).unwrap()],
            &Agility::harmonic(),
        )
        .unwrap();
        assert_eq!(s.value, 1.0);
        assert!(!s.caught);
        let s = init_game(b2, 1, b2.point(vec![0.5, 0.0]).unwrap(), vec![b2.point(vec![0.5, 0.0]).unwrap()], &Agility::harmonic()).unwrap();
        assert!(s.caught);
        assert!(init_game(b2, 0, b2.point(vec![0.5, 0.0]).unwrap(), vec![], &Agility::harmonic()).is_err());
    }

    #[test]
    fn both_stay_put() {
        let st = init_game(Space::ball(1), 1, b1(0.5), vec![b1(-0.5)], &Agility::harmonic()).unwrap();
        let mut g = Game::new(st, Agility::harmonic(), RunOptions::default()).unwrap();
        let o = g.run(&mut Stay, &mut Stay, 5, None).unwrap();
        assert_eq!(o.result, OutcomeKind::MaxSteps);
        assert_eq!(value_estimate(g.trace()), 1.0);
        assert!(g.trace().steps.iter().all(|s| s.min_dist == 1.0));
    }

    #[test]
    fn one_dimensional_chase_caught_by_step_ten() {
        // Oracle: robber pinned at 1.0 after two steps; cop at -1 + 0.25 n
        // reaches 1.0 at n = 8 (closing the gap exactly when 0.25 n >= 2).
        let mut pos_r = 0.5f64;
        let mut pos_c = -1.0f64;
        let mut oracle_n = 0;
        for n in 1..=20 {
            pos_r = (pos_r + 0.25).min(1.0);
            if (pos_r - pos_c).abs() <= 0.25 {
                oracle_n = n;
                break;
            }
            pos_c += 0.25;
        }
        assert_eq!(oracle_n, 8);

        let agility = Agility::Constant { c: 0.25 };
        let st = init_game(Space::ball(1), 1, b1(0.5), vec![b1(-1.0)], &agility).unwrap();
        let mut g = Game::new(st, agility, RunOptions::default()).unwrap();
        let script: Vec<Vec<f64>> = (1..=20).map(|n| vec![(0.5 + 0.25 * n as f64).min(1.0)]).collect();
        let mut robber = ScriptedRobber::new(script);
        let mut cop = GreedyChase::new(1, 0);
        let o = g.run(&mut robber, &mut cop, 100, None).unwrap();
        assert_eq!(o.result, OutcomeKind::Caught);
        assert_eq!(o.steps, oracle_n);
        assert!(o.steps <= 10);
        assert_eq!(value_estimate(g.trace()), 0.0);
    }

    #[test]
    fn illegal_moves() {
        let agility = Agility::Constant { c: 0.1 };
        let st = init_game(Space::ball(1), 1, b1(0.0), vec![b1(-1.0)], &agility).unwrap();
        let mut g = Game::new(st.clone(), agility.clone(), RunOptions::default()).unwrap();
        let mut r = ScriptedRobber::new(vec![vec![0.5]]);
        let e = g.step(&mut r, &mut Stay).unwrap_err();
        assert!(matches!(e, Error::IllegalMove { mover: Mover::Robber, .. }));

        let opts = RunOptions { strict: false, ..Default::default() };
        let mut g = Game::new(st, agility, opts).unwrap();
        let mut r = ScriptedRobber::new(vec![vec![0.5]]);
        g.step(&mut r, &mut Stay).unwrap();
        assert!((g.state.robber.coords[0] - 0.1).abs() < 1e-15);
        assert_eq!(g.trace().steps[0].clamped, vec!["robber".to_string()]);
    }

    #[test]
    fn zero_max_steps_rejected() {
        let st = init_game(Space::ball(1), 1, b1(0.0), vec![b1(-1.0)], &Agility::harmonic()).unwrap();
        let mut g = Game::new(st, Agility::harmonic(), RunOptions::default()).unwrap();
        assert!(g.run(&mut Stay, &mut Stay, 0, None).is_err());
    }

    #[test]
    fn value_of_monotone_sequence() {
        let st = init_game(Space::ball(1), 1, b1(0.0), vec![b1(-1.0)], &Agility::harmonic()).unwrap();
        let mut t = Game::new(st, Agility::harmonic(), RunOptions::default()).unwrap().into_trace();
        for (n, d) in [1.0, 0.5, 0.25].into_iter().enumerate() {
            t.steps.push(StepRecord {
                n: n as u64 + 1,
                sub: None,
                of: None,
                target: None,
                tau: 0.1,
                robber: Leg { from: vec![0.0], to: vec![0.0] },
                cops: vec![],
                min_dist: d,
                clamped: vec![],
                aux: None,
            });
        }
        assert_eq!(value_estimate(&t), 0.25);
    }
}
