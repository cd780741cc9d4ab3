//! Robber strategies that provably escape too few cops.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::directions;
use crate::engine::{RobberStrategy, RobberView};
use crate::error::{misuse, Error, Result};
use crate::linalg;
use crate::spaces::{Point, SpaceKind};

/// Unit direction of the perpendicular escape from `r` given cops `cops`
/// in ℝⁿ: normal to the affine hull of r and the cops, pointing toward the
/// foot of the origin on that normal line. When the foot is r itself the
/// first nonzero coordinate of the direction is made positive.
pub fn perpendicular_direction(r: &[f64], cops: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = r.len();
    if cops.len() >= n {
        return misuse(format!("perpendicular escape needs at most {} cops in dimension {n}", n - 1));
    }
    let span: Vec<Vec<f64>> = cops.iter().map(|c| linalg::sub(c, r)).collect();
    let nu = linalg::orthogonal_complement_vector(&span, n)
        .ok_or_else(|| Error::InternalInvariant("no direction normal to the cop hyperplane".into()))?;
    let s = linalg::dot(r, &nu);
    let sign = if s > 0.0 {
        -1.0
    } else if s < 0.0 {
        1.0
    } else {
        let first = nu.iter().find(|v| **v != 0.0).copied().unwrap_or(1.0);
        first.signum()
    };
    Ok(linalg::scale(&nu, sign))
}

/// Moves the full budget along the perpendicular escape direction.
pub struct PerpendicularEscape;

impl RobberStrategy for PerpendicularEscape {
    fn name(&self) -> &'static str {
        "perpendicular_escape"
    }

    fn next_move(&mut self, view: &RobberView<'_>) -> Result<Point> {
        if view.space.kind != SpaceKind::Ball {
            return misuse("perpendicular_escape needs a ball");
        }
        let r = &view.state.robber;
        let cops: Vec<Vec<f64>> = view.state.cops.iter().map(|c| c.coords.clone()).collect();
        let dir = perpendicular_direction(&r.coords, &cops)?;
        Ok(Point { space: *view.space, coords: linalg::axpy(&r.coords, view.budget, &dir) })
    }
}

const LOCAL_SEARCH_ROUNDS: usize = 16;

/// On Tⁿ against at most n cops: a destination at distance exactly the
/// budget that no cop can reach this step, found by sampling directions and
/// refining the best one by local search.
pub struct TorusUncoveredDirection {
    samples: usize,
    rng: ChaCha8Rng,
}

impl TorusUncoveredDirection {
    pub fn new(samples: usize, seed: u64) -> Self {
        TorusUncoveredDirection { samples: samples.max(4), rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl RobberStrategy for TorusUncoveredDirection {
    fn name(&self) -> &'static str {
        "torus_uncovered_direction"
    }

    fn next_move(&mut self, view: &RobberView<'_>) -> Result<Point> {
        let space = view.space;
        if space.kind != SpaceKind::Torus {
            return misuse("torus_uncovered_direction needs a torus");
        }
        let r = &view.state.robber;
        let cops = &view.state.cops;
        if cops.len() > space.dim {
            return misuse(format!("at most {} cops can be escaped on T^{}", space.dim, space.dim));
        }
        if cops.iter().any(|c| c.same_bits(r)) {
            return misuse("a cop already stands on the robber");
        }
        let t = view.budget;
        let dest = |d: &[f64]| {
            let coords: Vec<f64> = r.coords.iter().zip(d).map(|(x, v)| x + t * v).collect();
            Point { space: *space, coords: space.canonicalize(coords) }
        };
        let score = |d: &[f64]| {
            let q = dest(d);
            cops.iter().map(|c| space.dist(&q.coords, &c.coords)).fold(f64::INFINITY, f64::min)
        };
        let mut best = directions::sample(r, self.samples, &mut self.rng)
            .into_iter()
            .map(|d| (score(&d), d))
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .ok_or_else(|| Error::SearchFailure("no directions sampled".into()))?;
        let mut step = 0.5;
        let mut rounds = 0;
        while step > 1e-6 && space.dim > 1 && rounds < LOCAL_SEARCH_ROUNDS {
            rounds += 1;
            let mut improved = false;
            for _ in 0..8 {
                let g: Vec<f64> = (0..space.dim).map(|_| directions::gaussian(&mut self.rng)).collect();
                let Some(d) = linalg::normalized(&linalg::axpy(&best.1, step, &g)) else { continue };
                let s = score(&d);
                if s > best.0 {
                    best = (s, d);
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if !(best.0 > t) {
            return Err(Error::SearchFailure(format!(
                "best sampled destination is {} from a cop, budget {t}",
                best.0
            )));
        }
        Ok(dest(&best.1))
    }
}
