//! Strategies that replay fixed move lists.

use crate::engine::{CopStrategy, CopView, RobberStrategy, RobberView, Trace};
use crate::error::{Error, Result};
use crate::spaces::Point;

/// Emits the listed destinations verbatim, one per step, then stays put.
#[derive(Debug, Clone)]
pub struct ScriptedRobber {
    moves: Vec<Vec<f64>>,
    next: usize,
}

impl ScriptedRobber {
    pub fn new(moves: Vec<Vec<f64>>) -> Self {
        ScriptedRobber { moves, next: 0 }
    }

    /// The robber's destinations as recorded in a trace.
    pub fn from_trace(trace: &Trace) -> Self {
        let mut moves = Vec::new();
        let mut last_n = 0;
        for s in &trace.steps {
            if s.n != last_n {
                moves.push(s.target.clone().unwrap_or_else(|| s.robber.to.clone()));
                last_n = s.n;
            }
        }
        ScriptedRobber::new(moves)
    }
}

impl RobberStrategy for ScriptedRobber {
    fn name(&self) -> &'static str {
        "scripted"
    }

    fn next_move(&mut self, view: &RobberView<'_>) -> Result<Point> {
        let p = match self.moves.get(self.next) {
            Some(c) => Point { space: *view.space, coords: c.clone() },
            None => view.state.robber.clone(),
        };
        self.next += 1;
        Ok(p)
    }
}

/// Emits recorded cop destinations, one list per (sub-)step.
#[derive(Debug, Clone)]
pub struct ScriptedCops {
    moves: Vec<(usize, Vec<Vec<f64>>)>,
    next: usize,
}

impl ScriptedCops {
    /// `moves[j]` holds one destination per cop; each step is played whole.
    pub fn new(moves: Vec<Vec<Vec<f64>>>) -> Self {
        ScriptedCops { moves: moves.into_iter().map(|m| (1, m)).collect(), next: 0 }
    }

    pub fn from_trace(trace: &Trace) -> Self {
        let moves = trace
            .steps
            .iter()
            .map(|s| {
                (s.of.unwrap_or(1) as usize, s.cops.iter().map(|l| l.to.clone()).collect())
            })
            .collect();
        ScriptedCops { moves, next: 0 }
    }
}

impl CopStrategy for ScriptedCops {
    fn name(&self) -> &'static str {
        "scripted"
    }

    fn subdivisions(&mut self, _view: &CopView<'_>) -> usize {
        self.moves.get(self.next).map_or(1, |m| m.0)
    }

    fn respond(&mut self, view: &CopView<'_>) -> Result<Vec<Point>> {
        let out = match self.moves.get(self.next) {
            Some((_, m)) => {
                if m.len() != view.cops.len() {
                    return Err(Error::StrategyMisuse("scripted cop count mismatch".into()));
                }
                m.iter().map(|c| Point { space: *view.space, coords: c.clone() }).collect()
            }
            None => view.cops.to_vec(),
        };
        self.next += 1;
        Ok(out)
    }
}
