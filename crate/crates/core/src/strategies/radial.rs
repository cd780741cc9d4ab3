//! Radial strategy on star-shaped spaces (ball, hemisphere).
//!
//! Phase 1: walk to the center. Phase 2: end every move on the robber's
//! current ray, as far out as the budget allows but never beyond the robber.

use std::f64::consts::FRAC_PI_4;

use crate::engine::{AuxRecord, CopStrategy, CopView};
use crate::error::{Error, Result};
use crate::linalg;
use crate::spaces::StarStructure;
use crate::spaces::{GeodesicPath, Point, Space, SpaceKind};

const BISECT_TOL: f64 = 1e-12;
const ALIGN_TOL: f64 = 1e-6;
const MAX_SUB: usize = 64;

fn star_dist(star: &StarStructure, a: &[f64], b: &[f64]) -> f64 {
    if star.space.kind == SpaceKind::Ball {
        linalg::dist(a, b)
    } else {
        Space::sphere(star.space.dim).dist(a, b)
    }
}

/// Shortest-path point at distance `t` from `a` toward `b` inside the star.
fn toward(star: &StarStructure, a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    let d = star_dist(star, a, b);
    if d <= t {
        return b.to_vec();
    }
    if star.space.kind == SpaceKind::Ball {
        return linalg::axpy(a, t / d, &linalg::sub(b, a));
    }
    let u = linalg::normalized(&linalg::reject(b, a)).unwrap_or_else(|| linalg::reject(&star.center, a));
    let (s, c) = t.sin_cos();
    a.iter().zip(&u).map(|(x, v)| c * x + s * v).collect()
}

/// Checks that `cop` sits on the ray of `robber`, no farther out.
pub fn on_robber_ray(star: &StarStructure, cop: &[f64], robber: &[f64]) -> bool {
    let rc = star.radius(cop);
    if rc <= ALIGN_TOL {
        return true;
    }
    let (Ok(uc), Ok(ur)) = (star.ray_direction(cop), star.ray_direction(robber)) else {
        return false;
    };
    linalg::dist(&uc, &ur) <= ALIGN_TOL && rc <= star.radius(robber) + ALIGN_TOL
}

/// One radial move. Returns the new cop position and whether the center
/// has been reached.
pub fn radial_step(
    star: &StarStructure,
    cop: &[f64],
    robber_from: &[f64],
    robber_to: &[f64],
    budget: f64,
    reached: bool,
) -> Result<(Vec<f64>, bool)> {
    let mut b = budget;
    let mut c = cop.to_vec();
    if !reached {
        let dc = star.radius(&c);
        if dc > b {
            if star_dist(star, &c, robber_to) <= b {
                return Ok((robber_to.to_vec(), false));
            }
            let dir = star.ray_direction(&c)?;
            return Ok((star.point_on_ray(&dir, dc - b), false));
        }
        b -= dc;
        c = star.center.clone();
    } else if !on_robber_ray(star, &c, robber_from) {
        return Err(Error::StrategyMisuse("radial cop is not on the robber's ray".into()));
    }
    if star_dist(star, &c, robber_to) <= b {
        return Ok((robber_to.to_vec(), true));
    }
    let theta = star.radius(robber_to);
    let u = match star.ray_direction(robber_to) {
        Ok(u) => u,
        Err(_) => return Ok((toward(star, &c, &star.center, b), true)),
    };
    let s = if star.space.kind == SpaceKind::Ball {
        let uc = linalg::dot(&u, &c);
        let disc = (uc * uc - linalg::dot(&c, &c) + b * b).max(0.0);
        (uc + disc.sqrt()).clamp(0.0, theta)
    } else {
        let rho = star.radius(&c);
        let cos_phi = match star.ray_direction(&c) {
            Ok(uc) => linalg::dot(&uc, &u).clamp(-1.0, 1.0),
            Err(_) => 1.0,
        };
        let s_star = (rho.sin() * cos_phi).atan2(rho.cos()).clamp(0.0, theta);
        let f = |s: f64| star_dist(star, &c, &star.point_on_ray(&u, s));
        if f(s_star) > b {
            log::debug!("new ray out of reach; moving toward its nearest point");
            let target = star.point_on_ray(&u, s_star);
            return Ok((toward(star, &c, &target, b), true));
        }
        let (mut lo, mut hi) = (s_star, theta);
        while hi - lo > BISECT_TOL {
            let mid = 0.5 * (lo + hi);
            if f(mid) <= b {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let p = star.point_on_ray(&u, s);
    if star_dist(star, &c, &p) > b {
        return Ok((toward(star, &c, &p, b), true));
    }
    Ok((p, true))
}

/// Total angle swept by the ray of a point moving along `path`.
pub fn azimuth_turn(star: &StarStructure, path: &GeodesicPath) -> f64 {
    const SAMPLES: usize = 32;
    let mut turn = 0.0;
    let mut prev: Option<Vec<f64>> = None;
    for i in 0..=SAMPLES {
        let p = path.evaluate(i as f64 / SAMPLES as f64);
        if let Ok(u) = star.ray_direction(&p.coords) {
            if let Some(v) = &prev {
                turn += linalg::dot(v, &u).clamp(-1.0, 1.0).acos();
            }
            prev = Some(u);
        }
    }
    turn
}

/// Sub-steps needed to keep each sub-move's ray rotation below π/4.
pub fn hemisphere_subdivisions(star: &StarStructure, path: &GeodesicPath) -> usize {
    ((azimuth_turn(star, path) / FRAC_PI_4).ceil() as usize).clamp(1, MAX_SUB)
}

/// Every cop plays the radial strategy independently.
pub struct RadialCop {
    star: Option<StarStructure>,
    reached: Vec<bool>,
}

impl RadialCop {
    pub fn new() -> Self {
        RadialCop { star: None, reached: Vec::new() }
    }

    pub fn with_star(star: StarStructure) -> Self {
        RadialCop { star: Some(star), reached: Vec::new() }
    }

    fn star(&mut self, space: &Space) -> Result<&StarStructure> {
        if self.star.is_none() {
            self.star = Some(StarStructure::for_space(space)?);
        }
        Ok(self.star.as_ref().expect("set above"))
    }

    /// Whether each cop has reached the center.
    pub fn reached(&self) -> &[bool] {
        &self.reached
    }
}

impl Default for RadialCop {
    fn default() -> Self {
        Self::new()
    }
}

impl CopStrategy for RadialCop {
    fn name(&self) -> &'static str {
        "radial"
    }

    fn subdivisions(&mut self, view: &CopView<'_>) -> usize {
        match self.star(view.space) {
            Ok(star) if star.space.kind == SpaceKind::Hemisphere => {
                hemisphere_subdivisions(star, &view.robber_move.path)
            }
            _ => 1,
        }
    }

    fn respond(&mut self, view: &CopView<'_>) -> Result<Vec<Point>> {
        let space = *view.space;
        let star = self.star(&space)?.clone();
        if self.reached.len() != view.cops.len() {
            self.reached = vec![false; view.cops.len()];
        }
        let rm = view.robber_move;
        let mut out = Vec::with_capacity(view.cops.len());
        for (i, c) in view.cops.iter().enumerate() {
            let (p, reached) = radial_step(
                &star,
                &c.coords,
                &rm.origin.coords,
                &rm.destination.coords,
                view.budget,
                self.reached[i],
            )?;
            self.reached[i] = reached;
            if p == rm.destination.coords {
                out.push(rm.destination.clone());
            } else {
                out.push(Point { space, coords: space.canonicalize(p) });
            }
        }
        Ok(out)
    }

    fn aux(&self) -> Option<AuxRecord> {
        let star = self.star.as_ref()?;
        let phase = if self.reached.iter().all(|r| *r) { "radial" } else { "approach" };
        Some(AuxRecord {
            axis: Some(star.center.clone()),
            phase: Some(phase.to_string()),
            ..Default::default()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_one_step_from_figure() {
        // Oracle: brute-force the largest radius on the new ray within reach.
        let star = StarStructure::ball(2);
        let c = [0.5, 0.0];
        for &theta in &[0.1f64, 0.3, 0.5] {
            let r0 = [1.0, 0.0];
            let r1 = [theta.cos(), theta.sin()];
            let b = linalg::dist(&r0, &r1);
            let (p, _) = radial_step(&star, &c, &r0, &r1, b, true).unwrap();
            let radius = linalg::norm(&p);
            let ang = p[1].atan2(p[0]);
            assert!((ang - theta).abs() < 1e-12);
            assert!(radius >= 0.5);
            let mut best = 0.0;
            for j in 0..=1_000_000 {
                let s = j as f64 / 1e6;
                if linalg::dist(&c, &[s * theta.cos(), s * theta.sin()]) <= b {
                    best = s;
                }
            }
            assert!((radius - best).abs() < 2e-6, "{radius} vs {best}");
            assert!(linalg::dist(&c, &p) <= b + 1e-12);
        }
    }

    #[test]
    fn outward_on_own_ray_gains_full_budget() {
        let star = StarStructure::ball(2);
        let (p, _) = radial_step(&star, &[0.2, 0.0], &[0.5, 0.0], &[0.6, 0.0], 0.1, true).unwrap();
        assert!((p[0] - 0.3).abs() < 1e-15 && p[1] == 0.0);
    }

    #[test]
    fn approach_then_leftover() {
        let star = StarStructure::ball(2);
        let (p, reached) = radial_step(&star, &[0.05, 0.0], &[0.0, 0.5], &[0.0, 0.6], 0.1, false).unwrap();
        assert!(reached);
        assert!((p[1] - 0.05).abs() < 1e-15 && p[0] == 0.0);
        let (p, reached) = radial_step(&star, &[0.5, 0.0], &[0.0, 0.5], &[0.0, 0.6], 0.1, false).unwrap();
        assert!(!reached);
        assert!((p[0] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn hemisphere_one_step_matches_spherical_law_of_cosines() {
        // Oracle: scan s on the new meridian with cos d = cosρ cos s + sinρ sin s cosφ.
        let star = StarStructure::hemisphere(2);
        let rho: f64 = 0.4;
        let c = [rho.sin(), 0.0, rho.cos()];
        let th: f64 = 1.0;
        let phi: f64 = 0.3;
        let r0 = [th.sin(), 0.0, th.cos()];
        let r1 = [th.sin() * phi.cos(), th.sin() * phi.sin(), th.cos()];
        let b = Space::sphere(2).dist(&r0, &r1);
        let (p, _) = radial_step(&star, &c, &r0, &r1, b, true).unwrap();
        let s_got = star.radius(&p);
        let mut best = 0.0;
        for j in 0..=1_000_000 {
            let s = th * j as f64 / 1e6;
            let cosd = rho.cos() * s.cos() + rho.sin() * s.sin() * phi.cos();
            if cosd.clamp(-1.0, 1.0).acos() <= b {
                best = s;
            }
        }
        assert!((s_got - best).abs() < 2e-6, "{s_got} vs {best}");
        assert!(s_got >= rho);
        let u = star.ray_direction(&p).unwrap();
        assert!((u[1].atan2(u[0]) - phi).abs() < 1e-12);
    }

    #[test]
    fn misaligned_cop_is_misuse() {
        let star = StarStructure::ball(2);
        let e = radial_step(&star, &[0.0, 0.5], &[0.9, 0.0], &[0.9, 0.0], 0.1, true).unwrap_err();
        assert!(matches!(e, Error::StrategyMisuse(_)));
    }
}
