//! n cops catching the robber on Bⁿ by induction on n.
//!
//! On Bᵐ with coordinates (x, z), x ∈ ℝᵐ⁻¹: cops 1..m−1 first play the
//! (m−1)-cop game in the plane z = 0 against the shadow x of the robber.
//! The cop that lands on the shadow becomes the tracker: it copies the
//! robber's x every step and spends what is left on closing the z gap. The
//! other m−1 cops then keep z equal to the robber's and play the (m−1)-cop
//! game inside that slice with their leftover budget.

use crate::engine::{AuxRecord, CopStrategy, CopView};
use crate::error::{misuse, Result};
use crate::linalg;
use crate::spaces::{Point, SpaceKind};

#[derive(Debug, Clone)]
enum Phase {
    Base,
    Shadow(Box<Team>),
    Split { tracker: usize, members: Vec<usize>, slice: Box<Team> },
}

#[derive(Debug, Clone)]
struct Team {
    m: usize,
    phase: Phase,
}

fn chase_1d(c: f64, target: f64, budget: f64) -> f64 {
    if (target - c).abs() <= budget {
        target
    } else {
        c + budget * (target - c).signum()
    }
}

/// Moves toward `target` by at most `budget`; lands on it exactly if possible.
fn chase(c: &[f64], target: &[f64], budget: f64) -> Vec<f64> {
    let d = linalg::dist(c, target);
    if d <= budget {
        target.to_vec()
    } else {
        linalg::axpy(c, budget / d, &linalg::sub(target, c))
    }
}

fn clip_to_radius(x: Vec<f64>, radius: f64) -> Vec<f64> {
    let n = linalg::norm(&x);
    if n > radius && n > 0.0 {
        linalg::scale(&x, radius / n)
    } else {
        x
    }
}

fn same_bits(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

/// Moves the last coordinate toward `z` first; returns the new coordinate
/// and the budget left for the remaining coordinates.
fn align_z(cz: f64, z: f64, budget: f64) -> (f64, f64) {
    let nz = chase_1d(cz, z, budget);
    let dz = (nz - cz).abs();
    (nz, (budget * budget - dz * dz).max(0.0).sqrt())
}

impl Team {
    fn new(m: usize) -> Self {
        let phase = if m == 1 { Phase::Base } else { Phase::Shadow(Box::new(Team::new(m - 1))) };
        Team { m, phase }
    }

    fn describe(&self) -> String {
        match &self.phase {
            Phase::Base => "chase".into(),
            Phase::Shadow(sub) => format!("shadow[{}]", sub.describe()),
            Phase::Split { tracker, slice, .. } => {
                format!("tracker={tracker};slice[{}]", slice.describe())
            }
        }
    }

    fn play(
        &mut self,
        cops: &[Vec<f64>],
        budgets: &[f64],
        r_from: &[f64],
        r_to: &[f64],
        radius: f64,
    ) -> Vec<Vec<f64>> {
        let m = self.m;
        let last = m - 1;
        let split = |v: &[f64]| (v[..last].to_vec(), v[last]);
        let (rx_to, rz_to) = split(r_to);
        let (rx_from, _) = split(r_from);
        let mut out = cops.to_vec();
        match &mut self.phase {
            Phase::Base => {
                for (o, (c, b)) in out.iter_mut().zip(cops.iter().zip(budgets)) {
                    *o = vec![chase_1d(c[0], r_to[0], *b).clamp(-radius, radius)];
                    if c[0] == r_to[0] {
                        o[0] = r_to[0];
                    }
                }
            }
            Phase::Shadow(sub) => {
                out[0] = clip_to_radius(chase(&cops[0], r_to, budgets[0]), radius);
                if same_bits(&cops[0], r_to) || linalg::dist(&cops[0], r_to) <= budgets[0] {
                    out[0] = r_to.to_vec();
                }
                let mut xs = Vec::new();
                let mut sub_budgets = Vec::new();
                let mut zs = Vec::new();
                for i in 1..m {
                    let (x, z) = split(&cops[i]);
                    let (nz, left) = align_z(z, 0.0, budgets[i]);
                    xs.push(x);
                    zs.push(nz);
                    sub_budgets.push(left);
                }
                let new_xs = sub.play(&xs, &sub_budgets, &rx_from, &rx_to, radius);
                let mut tracker = None;
                for (j, (x, z)) in new_xs.into_iter().zip(zs).enumerate() {
                    if tracker.is_none() && same_bits(&x, &rx_to) {
                        tracker = Some(j + 1);
                    }
                    let mut p = x;
                    p.push(z);
                    out[j + 1] = clip_to_radius(p, radius);
                }
                if let Some(t) = tracker {
                    let members = (0..m).filter(|i| *i != t).collect();
                    self.phase = Phase::Split { tracker: t, members, slice: Box::new(Team::new(m - 1)) };
                }
            }
            Phase::Split { tracker, members, slice } => {
                let t = *tracker;
                let (tx, tz) = split(&cops[t]);
                let cost = linalg::dist(&tx, &rx_to);
                let p = if cost <= budgets[t] {
                    let left = (budgets[t] * budgets[t] - cost * cost).max(0.0).sqrt();
                    let mut p = rx_to.clone();
                    p.push(if (rz_to - tz).abs() <= left { rz_to } else { chase_1d(tz, rz_to, left) });
                    p
                } else {
                    let mut target = rx_to.clone();
                    target.push(tz);
                    chase(&cops[t], &target, budgets[t])
                };
                out[t] = if same_bits(&p, r_to) { p } else { clip_to_radius(p, radius) };

                let slice_radius = (radius * radius - rz_to * rz_to).max(0.0).sqrt();
                let mut xs = Vec::new();
                let mut sub_budgets = Vec::new();
                let mut zs = Vec::new();
                for &i in members.iter() {
                    let (x, z) = split(&cops[i]);
                    let (nz, left) = align_z(z, rz_to, budgets[i]);
                    xs.push(x);
                    zs.push(nz);
                    sub_budgets.push(left);
                }
                let new_xs = slice.play(&xs, &sub_budgets, &rx_from, &rx_to, slice_radius);
                for (j, (x, z)) in new_xs.into_iter().zip(zs).enumerate() {
                    let mut p = x;
                    p.push(z);
                    out[members[j]] = if same_bits(&p, r_to) { p } else { clip_to_radius(p, radius) };
                }
            }
        }
        out
    }
}

/// The inductive n-cop team on Bⁿ.
pub struct BallCatchTeam {
    team: Option<Team>,
}

impl BallCatchTeam {
    pub fn new() -> Self {
        BallCatchTeam { team: None }
    }
}

impl Default for BallCatchTeam {
    fn default() -> Self {
        Self::new()
    }
}

impl CopStrategy for BallCatchTeam {
    fn name(&self) -> &'static str {
        "ball_catch_team"
    }

    fn respond(&mut self, view: &CopView<'_>) -> Result<Vec<Point>> {
        let space = *view.space;
        if space.kind != SpaceKind::Ball {
            return misuse("ball_catch_team needs a ball");
        }
        if view.cops.len() != space.dim {
            return misuse(format!(
                "ball_catch_team on B^{} needs {} cops, got {}",
                space.dim,
                space.dim,
                view.cops.len()
            ));
        }
        let team = self.team.get_or_insert_with(|| Team::new(space.dim));
        let cops: Vec<Vec<f64>> = view.cops.iter().map(|c| c.coords.clone()).collect();
        let budgets = vec![view.budget; cops.len()];
        let rm = view.robber_move;
        let r = &rm.destination;
        let moves = team.play(&cops, &budgets, &rm.origin.coords, &r.coords, 1.0);
        Ok(moves
            .into_iter()
            .zip(view.cops)
            .map(|(p, c)| {
                if same_bits(&p, &r.coords) {
                    return r.clone();
                }
                // rounding in the split budgets can overshoot by a few ulps
                let p = clip_to_radius(p, 1.0);
                let d = linalg::dist(&p, &c.coords);
                let p = if d > view.budget { chase(&c.coords, &p, view.budget) } else { p };
                Point { space, coords: p }
            })
            .collect())
    }

    fn aux(&self) -> Option<AuxRecord> {
        let team = self.team.as_ref()?;
        Some(AuxRecord { phase: Some(team.describe()), ..Default::default() })
    }
}
