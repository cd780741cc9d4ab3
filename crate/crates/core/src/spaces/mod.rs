//! Geodesic-space kernel: the game spaces, their intrinsic metrics and
//! shortest geodesics, plus the retractions and covering maps used by the
//! strategies.
//!
//! Coordinates are ambient: `Ball(n)` and `Torus(n)` live in ℝⁿ,
//! `Sphere(n)` and `Hemisphere(n)` in ℝⁿ⁺¹ (north pole is the last basis
//! vector), and `EllTwoBox(k)` is the truncation Dᵏ of the ℓ² box
//! `{‖x‖ ≤ 1, |xᵢ| ≤ 1/i}` stored as k coordinates.

mod maps;
mod star;

pub use maps::{
    mirror_across, shadow_radial_ball, shadow_truncate, sphere_mirror, torus_lift, torus_project,
    wrap_unit,
};
pub use star::StarStructure;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg;

/// Membership and comparison tolerance shared by every space.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Ball,
    Sphere,
    Hemisphere,
    Torus,
    EllTwoBox,
}

impl SpaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::Ball => "ball",
            SpaceKind::Sphere => "sphere",
            SpaceKind::Hemisphere => "hemisphere",
            SpaceKind::Torus => "torus",
            SpaceKind::EllTwoBox => "ell_two_box",
        }
    }
}

impl std::str::FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ball" => SpaceKind::Ball,
            "sphere" => SpaceKind::Sphere,
            "hemisphere" => SpaceKind::Hemisphere,
            "torus" => SpaceKind::Torus,
            "ell_two_box" => SpaceKind::EllTwoBox,
            other => return invalid(format!("unknown space kind `{other}`")),
        })
    }
}

/// Which geodesic space, plus its dimension parameter (n, or the truncation
/// order k for `EllTwoBox`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Space {
    pub kind: SpaceKind,
    pub dim: usize,
}

impl Space {
    pub fn new(kind: SpaceKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return invalid("space dimension must be positive");
        }
        Ok(Space { kind, dim })
    }

    pub fn ball(n: usize) -> Self {
        Space { kind: SpaceKind::Ball, dim: n }
    }

    pub fn sphere(n: usize) -> Self {
        Space { kind: SpaceKind::Sphere, dim: n }
    }

    pub fn hemisphere(n: usize) -> Self {
        Space { kind: SpaceKind::Hemisphere, dim: n }
    }

    pub fn torus(n: usize) -> Self {
        Space { kind: SpaceKind::Torus, dim: n }
    }

    pub fn ell_two_box(k: usize) -> Self {
        Space { kind: SpaceKind::EllTwoBox, dim: k }
    }

    /// Number of stored coordinates.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            SpaceKind::Sphere | SpaceKind::Hemisphere => self.dim + 1,
            _ => self.dim,
        }
    }

    pub fn diameter(&self) -> f64 {
        match self.kind {
            SpaceKind::Ball | SpaceKind::EllTwoBox => 2.0,
            SpaceKind::Sphere | SpaceKind::Hemisphere => std::f64::consts::PI,
            SpaceKind::Torus => 0.5 * (self.dim as f64).sqrt(),
        }
    }

    pub fn is_spherical(&self) -> bool {
        matches!(self.kind, SpaceKind::Sphere | SpaceKind::Hemisphere)
    }

    /// Checks the membership invariant of this space at tolerance [`TOL`].
    pub fn validate(&self, coords: &[f64]) -> Result<()> {
        if coords.len() != self.ambient_dim() {
            return invalid(format!(
                "{} of dimension {} expects {} coordinates, got {}",
                self.kind.as_str(),
                self.dim,
                self.ambient_dim(),
                coords.len()
            ));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return invalid("non-finite coordinate");
        }
        let n = linalg::norm(coords);
        match self.kind {
            SpaceKind::Ball => {
                if n > 1.0 + TOL {
                    return invalid(format!("point has norm {n} > 1 (outside the ball)"));
                }
            }
            SpaceKind::Sphere | SpaceKind::Hemisphere => {
                if (n - 1.0).abs() > TOL {
                    return invalid(format!("point has norm {n}, not on the unit sphere"));
                }
                if self.kind == SpaceKind::Hemisphere && coords[self.dim] < -TOL {
                    return invalid("point lies below the equator of the upper hemisphere");
                }
            }
            SpaceKind::Torus => {
                if let Some(x) = coords.iter().find(|x| **x < -TOL || **x >= 1.0 + TOL) {
                    return invalid(format!("torus coordinate {x} outside [0,1)"));
                }
            }
            SpaceKind::EllTwoBox => {
                if n > 1.0 + TOL {
                    return invalid(format!("point has norm {n} > 1"));
                }
                for (i, x) in coords.iter().enumerate() {
                    if x.abs() > 1.0 / (i + 1) as f64 + TOL {
                        return invalid(format!("coordinate {} = {x} exceeds 1/{}", i + 1, i + 1));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, coords: &[f64]) -> bool {
        self.validate(coords).is_ok()
    }

    /// Snaps coordinates onto the space's canonical form (mod 1 on the
    /// torus, unit norm on spheres). Assumes the input is already within
    /// tolerance of the space.
    pub fn canonicalize(&self, mut coords: Vec<f64>) -> Vec<f64> {
        match self.kind {
            SpaceKind::Torus => {
                for x in coords.iter_mut() {
                    *x = wrap_unit(*x);
                }
            }
            SpaceKind::Sphere | SpaceKind::Hemisphere => {
                let n = linalg::norm(&coords);
                if n > 0.0 && (n - 1.0).abs() > 4.0 * f64::EPSILON {
                    for x in coords.iter_mut() {
                        *x /= n;
                    }
                }
            }
            SpaceKind::Ball | SpaceKind::EllTwoBox => {}
        }
        coords
    }

    /// Validates and canonicalizes `coords` into a point of this space.
    pub fn point(&self, coords: Vec<f64>) -> Result<Point> {
        self.validate(&coords)?;
        Ok(Point { space: *self, coords: self.canonicalize(coords) })
    }

    /// Intrinsic distance between raw coordinate vectors of this space.
    pub fn dist(&self, a: &[f64], b: &[f64]) -> f64 {
        match self.kind {
            SpaceKind::Ball | SpaceKind::EllTwoBox => linalg::dist(a, b),
            SpaceKind::Sphere | SpaceKind::Hemisphere => {
                let diff = linalg::dist(a, b);
                let sum = linalg::norm(&linalg::add(a, b));
                2.0 * diff.atan2(sum)
            }
            SpaceKind::Torus => a
                .iter()
                .zip(b)
                .map(|(x, y)| {
                    let d = (x - y).abs().rem_euclid(1.0);
                    let d = d.min(1.0 - d);
                    d * d
                })
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Displacement from `a` to `b` along the shortest lift on the torus.
    pub(crate) fn torus_delta(a: &[f64], b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| wrap_half(y - x)).collect()
    }

    /// Point reached by leaving `p` in direction `dir` for length `t`,
    /// retracted back into the space with a 1-Lipschitz retraction fixing
    /// the space, so the result is never farther than `t` from `p`.
    pub fn step_in_direction(&self, p: &Point, dir: &[f64], t: f64) -> Point {
        let coords = match self.kind {
            SpaceKind::Ball => {
                let x = linalg::axpy(&p.coords, t, dir);
                let n = linalg::norm(&x);
                if n > 1.0 {
                    linalg::scale(&x, 1.0 / n)
                } else {
                    x
                }
            }
            SpaceKind::EllTwoBox => {
                let mut x = linalg::axpy(&p.coords, t, dir);
                for (i, xi) in x.iter_mut().enumerate() {
                    let cap = 1.0 / (i + 1) as f64;
                    *xi = xi.clamp(-cap, cap);
                }
                let n = linalg::norm(&x);
                if n > 1.0 {
                    linalg::scale(&x, 1.0 / n)
                } else {
                    x
                }
            }
            SpaceKind::Sphere | SpaceKind::Hemisphere => {
                let tangent = linalg::normalized(&linalg::reject(dir, &p.coords));
                match tangent {
                    None => p.coords.clone(),
                    Some(u) => {
                        let mut x: Vec<f64> = p
                            .coords
                            .iter()
                            .zip(&u)
                            .map(|(a, b)| t.cos() * a + t.sin() * b)
                            .collect();
                        if self.kind == SpaceKind::Hemisphere {
                            let last = x.len() - 1;
                            x[last] = x[last].abs();
                        }
                        x
                    }
                }
            }
            SpaceKind::Torus => linalg::axpy(&p.coords, t, dir),
        };
        Point { space: *self, coords: self.canonicalize(coords) }
    }
}

/// Wraps a real displacement into (-1/2, 1/2]; an exact half goes positive.
pub(crate) fn wrap_half(d: f64) -> f64 {
    let w = d - (d + 0.5).floor();
    if w == -0.5 {
        0.5
    } else {
        w
    }
}

/// A position in a game space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub space: Space,
    pub coords: Vec<f64>,
}

impl Point {
    pub fn validate(&self) -> Result<()> {
        self.space.validate(&self.coords)
    }

    /// Bitwise coordinate equality (the engine's exact-capture convention).
    pub fn same_bits(&self, other: &Point) -> bool {
        self.coords.len() == other.coords.len()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

fn check_pair(space: &Space, p: &Point, q: &Point) -> Result<()> {
    if p.space != *space || q.space != *space {
        return invalid(format!(
            "points belong to {:?}/{:?}, expected {:?}",
            p.space, q.space, space
        ));
    }
    if p.coords.len() != space.ambient_dim() || q.coords.len() != space.ambient_dim() {
        return invalid("dimension mismatch");
    }
    Ok(())
}

/// Intrinsic (shortest-path) distance.
pub fn distance(space: &Space, p: &Point, q: &Point) -> Result<f64> {
    check_pair(space, p, q)?;
    Ok(space.dist(&p.coords, &q.coords))
}

#[derive(Debug, Clone, PartialEq)]
enum PathShape {
    Constant,
    /// start + s * delta (ball, Dᵏ)
    Chord(Vec<f64>),
    /// cos(sθ)·start + sin(sθ)·tangent
    Arc(Vec<f64>),
    /// torus projection of start + s * delta
    Lifted(Vec<f64>),
}

/// Constant-speed path between two points, parameterized over [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub start: Point,
    pub end: Point,
    pub length: f64,
    shape: PathShape,
}

impl GeodesicPath {
    pub fn evaluate(&self, s: f64) -> Point {
        if s <= 0.0 {
            return self.start.clone();
        }
        if s >= 1.0 {
            return self.end.clone();
        }
        let space = self.start.space;
        let coords = match &self.shape {
            PathShape::Constant => self.start.coords.clone(),
            PathShape::Chord(delta) => linalg::axpy(&self.start.coords, s, delta),
            PathShape::Arc(tangent) => {
                let a = s * self.length;
                let (sn, cs) = a.sin_cos();
                self.start.coords.iter().zip(tangent).map(|(p, t)| cs * p + sn * t).collect()
            }
            PathShape::Lifted(delta) => linalg::axpy(&self.start.coords, s, delta),
        };
        Point { space, coords: space.canonicalize(coords) }
    }

    /// Initial unit direction (ambient for chords and lifts, tangent for arcs).
    pub fn direction(&self) -> Option<Vec<f64>> {
        match &self.shape {
            PathShape::Constant => None,
            PathShape::Chord(d) | PathShape::Lifted(d) => linalg::normalized(d),
            PathShape::Arc(t) => Some(t.clone()),
        }
    }

    /// Splits the path into `parts` consecutive equal-length pieces.
    pub fn subdivide(&self, parts: usize) -> Vec<GeodesicPath> {
        let parts = parts.max(1);
        if parts == 1 {
            return vec![self.clone()];
        }
        let knots: Vec<Point> = (0..=parts).map(|i| self.evaluate(i as f64 / parts as f64)).collect();
        knots
            .windows(2)
            .map(|w| shortest_geodesic_unchecked(&w[0], &w[1]))
            .collect()
    }
}

/// Shortest geodesic with deterministic tie-breaking: sphere antipodes use
/// the great circle through e₁ (e₂ if degenerate; through the pole on the
/// hemisphere), and torus half-turns go in the positive direction.
pub fn shortest_geodesic(space: &Space, p: &Point, q: &Point) -> Result<GeodesicPath> {
    check_pair(space, p, q)?;
    Ok(shortest_geodesic_unchecked(p, q))
}

pub(crate) fn shortest_geodesic_unchecked(p: &Point, q: &Point) -> GeodesicPath {
    let space = p.space;
    let (shape, length) = match space.kind {
        SpaceKind::Ball | SpaceKind::EllTwoBox => {
            let delta = linalg::sub(&q.coords, &p.coords);
            let len = linalg::norm(&delta);
            (PathShape::Chord(delta), len)
        }
        SpaceKind::Torus => {
            let delta = Space::torus_delta(&p.coords, &q.coords);
            let len = linalg::norm(&delta);
            (PathShape::Lifted(delta), len)
        }
        SpaceKind::Sphere | SpaceKind::Hemisphere => {
            let theta = space.dist(&p.coords, &q.coords);
            if theta == 0.0 {
                (PathShape::Constant, 0.0)
            } else {
                let raw = linalg::reject(&q.coords, &p.coords);
                let tangent = if linalg::norm(&raw) > 1e-12 {
                    linalg::normalized(&raw).expect("nonzero")
                } else {
                    antipodal_tangent(&space, &p.coords)
                };
                (PathShape::Arc(tangent), theta)
            }
        }
    };
    GeodesicPath { start: p.clone(), end: q.clone(), length, shape }
}

fn antipodal_tangent(space: &Space, p: &[f64]) -> Vec<f64> {
    let m = p.len();
    let candidates: Vec<usize> = if space.kind == SpaceKind::Hemisphere {
        vec![m - 1, 0, 1]
    } else {
        vec![0, 1]
    };
    for i in candidates {
        if i >= m {
            continue;
        }
        let v = linalg::reject(&linalg::basis(m, i), p);
        if linalg::norm(&v) > 1e-6 {
            return linalg::normalized(&v).expect("nonzero");
        }
    }
    linalg::orthogonal_complement_vector(&[p.to_vec()], m).expect("sphere of dimension >= 1")
}

/// Moves from `from` toward `target` by at most `budget` along the shortest
/// geodesic; returns `target` itself when it is within reach.
pub fn move_toward(space: &Space, from: &Point, target: &Point, budget: f64) -> Result<Point> {
    if !(budget >= 0.0) {
        return invalid("budget must be nonnegative");
    }
    check_pair(space, from, target)?;
    let d = space.dist(&from.coords, &target.coords);
    if d <= budget {
        return Ok(target.clone());
    }
    if budget == 0.0 {
        return Ok(from.clone());
    }
    let path = shortest_geodesic_unchecked(from, target);
    Ok(path.evaluate(budget / path.length))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn pt(space: Space, c: &[f64]) -> Point {
        space.point(c.to_vec()).unwrap()
    }

    #[test]
    fn distance_examples() {
        let t2 = Space::torus(2);
        let d = distance(&t2, &pt(t2, &[0.1, 0.2]), &pt(t2, &[0.9, 0.2])).unwrap();
        assert!((d - 0.2).abs() < 1e-12);
        let s2 = Space::sphere(2);
        let d = distance(&s2, &pt(s2, &[0.0, 0.0, 1.0]), &pt(s2, &[1.0, 0.0, 0.0])).unwrap();
        assert!((d - FRAC_PI_2).abs() < 1e-15);
        let b2 = Space::ball(2);
        let d = distance(&b2, &pt(b2, &[0.0, 0.0]), &pt(b2, &[0.3, 0.4])).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn distance_rejects_mismatch() {
        let b2 = Space::ball(2);
        let b3 = Space::ball(3);
        let e = distance(&b2, &pt(b2, &[0.0, 0.0]), &pt(b3, &[0.0, 0.0, 0.0]));
        assert!(matches!(e, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn geodesic_midpoints() {
        let b2 = Space::ball(2);
        let g = shortest_geodesic(&b2, &pt(b2, &[0.0, 0.0]), &pt(b2, &[1.0, 0.0])).unwrap();
        assert_eq!(g.evaluate(0.5).coords, vec![0.5, 0.0]);
        let s2 = Space::sphere(2);
        let g = shortest_geodesic(&s2, &pt(s2, &[0.0, 0.0, 1.0]), &pt(s2, &[1.0, 0.0, 0.0])).unwrap();
        let m = g.evaluate(0.5).coords;
        assert!((m[0] - FRAC_1_SQRT_2).abs() < 1e-15 && m[1].abs() < 1e-15);
        assert!((m[2] - FRAC_1_SQRT_2).abs() < 1e-15);
        let t2 = Space::torus(2);
        let g = shortest_geodesic(&t2, &pt(t2, &[0.9, 0.0]), &pt(t2, &[0.1, 0.0])).unwrap();
        let m = g.evaluate(0.5).coords;
        assert!(m[0].min(1.0 - m[0]) < 1e-15 && m[1] == 0.0);
        assert!((g.length - 0.2).abs() < 1e-15);
    }

    #[test]
    fn antipodal_tie_breaks() {
        let s2 = Space::sphere(2);
        let n = pt(s2, &[0.0, 0.0, 1.0]);
        let s = pt(s2, &[0.0, 0.0, -1.0]);
        let g = shortest_geodesic(&s2, &n, &s).unwrap();
        assert!((g.length - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(g.direction().unwrap(), vec![1.0, 0.0, 0.0]);
        // e1 itself: fall back to e2
        let a = pt(s2, &[1.0, 0.0, 0.0]);
        let b = pt(s2, &[-1.0, 0.0, 0.0]);
        let g = shortest_geodesic(&s2, &a, &b).unwrap();
        assert_eq!(g.direction().unwrap(), vec![0.0, 1.0, 0.0]);
        // hemisphere antipodes go through the pole
        let h2 = Space::hemisphere(2);
        let g = shortest_geodesic(&h2, &pt(h2, &[1.0, 0.0, 0.0]), &pt(h2, &[-1.0, 0.0, 0.0])).unwrap();
        let m = g.evaluate(0.5).coords;
        assert!((m[2] - 1.0).abs() < 1e-15);
        // torus exact half: positive direction
        let t1 = Space::torus(1);
        let g = shortest_geodesic(&t1, &pt(t1, &[0.0]), &pt(t1, &[0.5])).unwrap();
        assert_eq!(g.direction().unwrap(), vec![1.0]);
        assert!((g.evaluate(0.5).coords[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn move_toward_examples() {
        let b2 = Space::ball(2);
        let o = pt(b2, &[0.0, 0.0]);
        let e = pt(b2, &[1.0, 0.0]);
        assert_eq!(move_toward(&b2, &o, &e, 0.3).unwrap().coords, vec![0.3, 0.0]);
        assert_eq!(move_toward(&b2, &o, &e, 0.0).unwrap(), o);
        assert_eq!(move_toward(&b2, &o, &e, 5.0).unwrap(), e);
        let t2 = Space::torus(2);
        let r = move_toward(&t2, &pt(t2, &[0.95, 0.0]), &pt(t2, &[0.1, 0.0]), 0.05).unwrap();
        assert!(r.coords[0].min(1.0 - r.coords[0]) < 1e-12);
        assert!(move_toward(&b2, &o, &e, -1.0).is_err());
    }

    #[test]
    fn membership() {
        assert!(Space::ball(2).point(vec![0.8, 0.7]).is_err());
        assert!(Space::sphere(2).point(vec![0.0, 0.0, 1.1]).is_err());
        assert!(Space::hemisphere(2).point(vec![0.0, 0.0, -1.0]).is_err());
        assert!(Space::ell_two_box(3).point(vec![0.1, 0.6, 0.0]).is_err());
        assert!(Space::ell_two_box(3).point(vec![0.5, 0.3, 0.1]).is_ok());
        assert!(Space::torus(2).point(vec![1.2, 0.0]).is_err());
        assert!(Space::new(SpaceKind::Ball, 0).is_err());
    }

    #[test]
    fn wrap_half_ties_positive() {
        assert_eq!(wrap_half(0.5), 0.5);
        assert_eq!(wrap_half(-0.5), 0.5);
        assert!((wrap_half(0.8) + 0.2).abs() < 1e-15);
    }

    #[test]
    fn step_in_direction_never_exceeds_length() {
        let b2 = Space::ball(2);
        let p = pt(b2, &[0.9, 0.0]);
        let q = b2.step_in_direction(&p, &[1.0, 0.0], 0.3);
        assert_eq!(q.coords, vec![1.0, 0.0]);
        let h2 = Space::hemisphere(2);
        let p = pt(h2, &[1.0, 0.0, 0.0]);
        let q = h2.step_in_direction(&p, &[0.0, 0.0, -1.0], 0.2);
        assert!(q.coords[2] >= 0.0);
        assert!(h2.dist(&p.coords, &q.coords) <= 0.2 + 1e-12);
    }
}
