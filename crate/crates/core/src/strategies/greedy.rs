//! Sampling baselines: greedy chase, greedy evasion, boundary circling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::directions;
use crate::engine::{CopStrategy, CopView, RobberStrategy, RobberView};
use crate::error::{misuse, Result};
use crate::linalg;
use crate::spaces::{move_toward, Point, SpaceKind};

pub const DEFAULT_DIRECTIONS: usize = 64;

/// Each cop lands on the robber when it can, otherwise takes the sampled
/// direction that gets it closest.
pub struct GreedyChase {
    directions: usize,
    rng: ChaCha8Rng,
}

impl GreedyChase {
    pub fn new(directions: usize, seed: u64) -> Self {
        GreedyChase { directions, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl CopStrategy for GreedyChase {
    fn name(&self) -> &'static str {
        "greedy_chase"
    }

    fn respond(&mut self, view: &CopView<'_>) -> Result<Vec<Point>> {
        let space = view.space;
        let r = &view.robber_move.destination;
        let mut out = Vec::with_capacity(view.cops.len());
        for c in view.cops {
            if space.dist(&c.coords, &r.coords) <= view.budget {
                out.push(r.clone());
                continue;
            }
            let mut best = c.clone();
            let mut best_d = space.dist(&c.coords, &r.coords);
            for dir in directions::sample(c, self.directions, &mut self.rng) {
                let q = space.step_in_direction(c, &dir, view.budget);
                let d = space.dist(&q.coords, &r.coords);
                if d < best_d {
                    best = q;
                    best_d = d;
                }
            }
            out.push(best);
        }
        Ok(out)
    }
}

/// Moves to the sampled destination (or stays) maximizing the distance to
/// the nearest cop.
pub struct GreedyEvader {
    directions: usize,
    rng: ChaCha8Rng,
}

impl GreedyEvader {
    pub fn new(directions: usize, seed: u64) -> Self {
        GreedyEvader { directions, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl RobberStrategy for GreedyEvader {
    fn name(&self) -> &'static str {
        "greedy_evader"
    }

    fn next_move(&mut self, view: &RobberView<'_>) -> Result<Point> {
        let space = view.space;
        let r = &view.state.robber;
        let cops = &view.state.cops;
        let score = |q: &Point| {
            cops.iter().map(|c| space.dist(&q.coords, &c.coords)).fold(f64::INFINITY, f64::min)
        };
        let mut best = r.clone();
        let mut best_s = score(r);
        for dir in directions::sample(r, self.directions, &mut self.rng) {
            let q = space.step_in_direction(r, &dir, view.budget);
            let s = score(&q);
            if s > best_s {
                best = q;
                best_s = s;
            }
        }
        Ok(best)
    }
}

/// Runs around the circle of the given radius in the (e₁, e₂)-plane of a
/// ball, heading there first if needed.
pub struct BoundaryCircler {
    radius: f64,
    clockwise: bool,
}

impl BoundaryCircler {
    pub fn new(radius: f64, clockwise: bool) -> Result<Self> {
        if !(radius > 0.0 && radius <= 1.0) {
            return misuse(format!("circler radius {radius} must lie in (0, 1]"));
        }
        Ok(BoundaryCircler { radius, clockwise })
    }
}

impl RobberStrategy for BoundaryCircler {
    fn name(&self) -> &'static str {
        "boundary_circler"
    }

    fn next_move(&mut self, view: &RobberView<'_>) -> Result<Point> {
        let space = view.space;
        if space.kind != SpaceKind::Ball || space.dim < 2 {
            return misuse("boundary_circler needs a ball of dimension >= 2");
        }
        let r = &view.state.robber;
        let (x, y) = (r.coords[0], r.coords[1]);
        let planar = (x * x + y * y).sqrt();
        let off_plane = linalg::norm(&r.coords[2..]);
        let on_circle = (planar - self.radius).abs() <= 1e-12 && off_plane == 0.0;
        if !on_circle {
            let (ux, uy) = if planar > 0.0 { (x / planar, y / planar) } else { (1.0, 0.0) };
            let mut t = vec![0.0; space.dim];
            t[0] = self.radius * ux;
            t[1] = self.radius * uy;
            let target = Point { space: *space, coords: t };
            return move_toward(space, r, &target, view.budget);
        }
        let half = (view.budget / (2.0 * self.radius)).min(1.0);
        let turn = 2.0 * half.asin() * if self.clockwise { -1.0 } else { 1.0 };
        let a = y.atan2(x) + turn;
        let mut c = vec![0.0; space.dim];
        c[0] = self.radius * a.cos();
        c[1] = self.radius * a.sin();
        // the chord can exceed the budget by rounding; pull it back if so
        let q = Point { space: *space, coords: c };
        if space.dist(&r.coords, &q.coords) > view.budget {
            return move_toward(space, r, &q, view.budget);
        }
        Ok(q)
    }
}
