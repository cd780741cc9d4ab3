//! Cop and robber policies, and the configuration descriptors that build
//! them. Every descriptor has a documented string identifier (`kind`).

pub mod ball_team;
pub mod directions;
pub mod disk;
pub mod escape;
pub mod greedy;
pub mod radial;
pub mod scripted;
pub mod simplex;
pub mod sphere;
pub mod torus;

use serde::{Deserialize, Serialize};

use crate::engine::{CopStrategy, RobberStrategy};
use crate::error::Result;
use crate::spaces::StarStructure;

fn default_directions() -> usize {
    greedy::DEFAULT_DIRECTIONS
}

fn default_radius() -> f64 {
    1.0
}

/// Cop strategy descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CopSpec {
    DiskGuard {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
    },
    /// Radial strategy; `pole` overrides the hemisphere's center.
    Radial {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pole: Option<Vec<f64>>,
    },
    SphereMirror,
    SphereTwoCop,
    BallCatchTeam,
    TorusTwoCopLift {
        epsilon: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tol: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_den: Option<u64>,
    },
    TorusThreeCopCatch,
    GreedyChase {
        #[serde(default = "default_directions")]
        directions: usize,
    },
}

impl CopSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            CopSpec::DiskGuard { .. } => "disk_guard",
            CopSpec::Radial { .. } => "radial",
            CopSpec::SphereMirror => "sphere_mirror",
            CopSpec::SphereTwoCop => "sphere_two_cop",
            CopSpec::BallCatchTeam => "ball_catch_team",
            CopSpec::TorusTwoCopLift { .. } => "torus_two_cop_lift",
            CopSpec::TorusThreeCopCatch => "torus_three_cop_catch",
            CopSpec::GreedyChase { .. } => "greedy_chase",
        }
    }

    /// A fresh strategy instance (instances carry per-run memory).
    pub fn build(&self, dim: usize, seed: u64) -> Result<Box<dyn CopStrategy>> {
        Ok(match self {
            CopSpec::DiskGuard { radius } => Box::new(disk::DiskGuard::new(*radius)),
            CopSpec::Radial { pole: None } => Box::new(radial::RadialCop::new()),
            CopSpec::Radial { pole: Some(p) } => {
                Box::new(radial::RadialCop::with_star(StarStructure::hemisphere_at(dim, p.clone())))
            }
            CopSpec::SphereMirror => Box::new(sphere::SphereMirror::new()),
            CopSpec::SphereTwoCop => Box::new(sphere::SphereTwoCop::new()),
            CopSpec::BallCatchTeam => Box::new(ball_team::BallCatchTeam::new()),
            CopSpec::TorusTwoCopLift { epsilon, tol, max_den } => {
                Box::new(torus::TorusTwoCopLift::new(*epsilon, *tol, *max_den)?)
            }
            CopSpec::TorusThreeCopCatch => Box::new(torus::TorusThreeCopCatch::new()),
            CopSpec::GreedyChase { directions } => Box::new(greedy::GreedyChase::new(*directions, seed)),
        })
    }
}

/// Robber strategy descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RobberSpec {
    PerpendicularEscape,
    TorusUncoveredDirection {
        #[serde(default = "default_directions")]
        samples: usize,
    },
    BoundaryCircler {
        #[serde(default = "default_radius")]
        radius: f64,
        #[serde(default)]
        clockwise: bool,
    },
    GreedyEvader {
        #[serde(default = "default_directions")]
        directions: usize,
    },
    /// Destinations played verbatim, one per step; the robber stays put
    /// once the list is exhausted.
    Scripted { moves: Vec<Vec<f64>> },
}

impl RobberSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            RobberSpec::PerpendicularEscape => "perpendicular_escape",
            RobberSpec::TorusUncoveredDirection { .. } => "torus_uncovered_direction",
            RobberSpec::BoundaryCircler { .. } => "boundary_circler",
            RobberSpec::GreedyEvader { .. } => "greedy_evader",
            RobberSpec::Scripted { .. } => "scripted",
        }
    }

    pub fn build(&self, seed: u64) -> Result<Box<dyn RobberStrategy>> {
        Ok(match self {
            RobberSpec::PerpendicularEscape => Box::new(escape::PerpendicularEscape),
            RobberSpec::TorusUncoveredDirection { samples } => {
                Box::new(escape::TorusUncoveredDirection::new(*samples, seed))
            }
            RobberSpec::BoundaryCircler { radius, clockwise } => {
                Box::new(greedy::BoundaryCircler::new(*radius, *clockwise)?)
            }
            RobberSpec::GreedyEvader { directions } => Box::new(greedy::GreedyEvader::new(*directions, seed)),
            RobberSpec::Scripted { moves } => Box::new(scripted::ScriptedRobber::new(moves.clone())),
        })
    }
}

/// Seed handed to the cop side, decorrelated from the robber's.
pub fn cop_seed(seed: u64) -> u64 {
    seed ^ 0x9E37_79B9_7F4A_7C15
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        let specs = vec![
            CopSpec::DiskGuard { radius: Some(0.5) },
            CopSpec::Radial { pole: None },
            CopSpec::SphereTwoCop,
            CopSpec::TorusTwoCopLift { epsilon: 0.1, tol: None, max_den: Some(10) },
            CopSpec::GreedyChase { directions: 8 },
        ];
        for s in specs {
            let j = serde_json::to_string(&s).unwrap();
            assert!(j.contains(s.kind()));
            assert_eq!(serde_json::from_str::<CopSpec>(&j).unwrap(), s);
        }
        let r: RobberSpec = serde_json::from_str(r#"{"kind":"greedy_evader"}"#).unwrap();
        assert_eq!(r, RobberSpec::GreedyEvader { directions: 64 });
        assert!(serde_json::from_str::<RobberSpec>(r#"{"kind":"teleport"}"#).is_err());
        assert!(serde_json::from_str::<CopSpec>(r#"{"kind":"radial","bogus":1}"#).is_err());
    }
}
