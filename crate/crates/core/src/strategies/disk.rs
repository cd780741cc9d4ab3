//! Guarding the disk of radius d around the center of a ball.

use crate::engine::{CopStrategy, CopView};
use crate::error::{misuse, Result};
use crate::linalg;
use crate::spaces::{Point, SpaceKind};

const GUARD_TOL: f64 = 1e-9;

/// First parameter t ∈ [0, 1] at which the chord a→b reaches norm `d`,
/// if it comes within `d` of the origin.
pub fn first_crossing(a: &[f64], b: &[f64], d: f64) -> Option<f64> {
    let v = linalg::sub(b, a);
    let vv = linalg::dot(&v, &v);
    if vv == 0.0 {
        return (linalg::norm(a) < d).then_some(0.0);
    }
    let t_min = (-linalg::dot(a, &v) / vv).clamp(0.0, 1.0);
    if linalg::norm(&linalg::axpy(a, t_min, &v)) >= d {
        return None;
    }
    // |a + t v|² = d² ⇒ vv t² + 2(a·v) t + |a|² − d² = 0, smaller root
    let av = linalg::dot(a, &v);
    let disc = (av * av - vv * (linalg::dot(a, a) - d * d)).max(0.0);
    Some(((-av - disc.sqrt()) / vv).clamp(0.0, 1.0))
}

/// One guard move. The cop stands at radius `d` on the segment from the
/// center to the robber. If the robber's chord enters the disk the cop runs
/// through the crossing point onto the robber's destination; otherwise it
/// moves to radius `d` on the robber's new ray.
pub fn disk_guard_move(
    cop: &[f64],
    robber_from: &[f64],
    robber_to: &[f64],
    d: f64,
    budget: f64,
) -> Result<Vec<f64>> {
    let rr = linalg::norm(robber_from);
    if (linalg::norm(cop) - d).abs() > GUARD_TOL {
        return misuse(format!("guard cop is at radius {}, not {d}", linalg::norm(cop)));
    }
    if rr < d - GUARD_TOL {
        return misuse("robber already inside the guarded disk");
    }
    if linalg::norm(&linalg::reject(cop, &linalg::scale(robber_from, 1.0 / rr))) > 1e-7 {
        return misuse("guard cop is not on the segment from the center to the robber");
    }
    if first_crossing(robber_from, robber_to, d).is_some() || linalg::dist(cop, robber_to) <= budget {
        return Ok(robber_to.to_vec());
    }
    if robber_to == robber_from {
        return Ok(cop.to_vec());
    }
    Ok(linalg::scale(robber_to, d / linalg::norm(robber_to)))
}

/// Guard of the disk of radius `radius` (default: the cop's initial distance
/// to the center). Only the first cop guards; others stay put.
pub struct DiskGuard {
    radius: Option<f64>,
}

impl DiskGuard {
    pub fn new(radius: Option<f64>) -> Self {
        DiskGuard { radius }
    }
}

impl CopStrategy for DiskGuard {
    fn name(&self) -> &'static str {
        "disk_guard"
    }

    fn respond(&mut self, view: &CopView<'_>) -> Result<Vec<Point>> {
        if view.space.kind != SpaceKind::Ball {
            return misuse("disk_guard needs a ball");
        }
        let c = &view.cops[0];
        let d = *self.radius.get_or_insert_with(|| linalg::norm(&c.coords));
        let rm = view.robber_move;
        let p = disk_guard_move(&c.coords, &rm.origin.coords, &rm.destination.coords, d, view.budget)?;
        let mut out = view.cops.to_vec();
        out[0] = if p == rm.destination.coords {
            rm.destination.clone()
        } else {
            Point { space: *view.space, coords: p }
        };
        Ok(out)
    }
}
