use std::f64::consts::FRAC_PI_2;

use super::{Point, Space, SpaceKind, TOL};
use crate::error::{invalid, Error, Result};
use crate::linalg;

/// A space that is a union of rays from a center, every ray reaching the
/// boundary set at the same distance: the ball (straight rays from the
/// origin, length 1) or a closed hemisphere (meridians from the pole,
/// length π/2). Equator points are the ray endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct StarStructure {
    pub space: Space,
    pub center: Vec<f64>,
    pub max_ray: f64,
}

impl StarStructure {
    pub fn ball(n: usize) -> Self {
        StarStructure { space: Space::ball(n), center: vec![0.0; n], max_ray: 1.0 }
    }

    /// Upper hemisphere of Sⁿ around the north pole.
    pub fn hemisphere(n: usize) -> Self {
        Self::hemisphere_at(n, linalg::basis(n + 1, n))
    }

    /// Hemisphere `{x : x·pole ≥ 0}` of Sⁿ, for an arbitrary unit pole.
    pub fn hemisphere_at(n: usize, pole: Vec<f64>) -> Self {
        StarStructure { space: Space::hemisphere(n), center: pole, max_ray: FRAC_PI_2 }
    }

    pub fn for_space(space: &Space) -> Result<Self> {
        match space.kind {
            SpaceKind::Ball => Ok(Self::ball(space.dim)),
            SpaceKind::Hemisphere => Ok(Self::hemisphere(space.dim)),
            _ => Err(Error::StrategyMisuse(format!(
                "no star structure on {}",
                space.kind.as_str()
            ))),
        }
    }

    fn is_ball(&self) -> bool {
        self.space.kind == SpaceKind::Ball
    }

    /// Distance from the center.
    pub fn radius(&self, y: &[f64]) -> f64 {
        if self.is_ball() {
            linalg::norm(y)
        } else {
            Space::sphere(self.space.dim).dist(&self.center, y)
        }
    }

    /// Unit direction labelling the ray through `y` (for the hemisphere,
    /// the tangent at the pole, i.e. the normalized equatorial component).
    pub fn ray_direction(&self, y: &[f64]) -> Result<Vec<f64>> {
        let v = if self.is_ball() { y.to_vec() } else { linalg::reject(y, &self.center) };
        if linalg::norm(&v) <= 1e-15 {
            return Err(Error::UndefinedRay);
        }
        Ok(linalg::normalized(&v).expect("nonzero"))
    }

    /// The point at distance `d` from the center along the ray `dir`.
    pub fn point_on_ray(&self, dir: &[f64], d: f64) -> Vec<f64> {
        if self.is_ball() {
            linalg::scale(dir, d)
        } else {
            let (s, c) = d.sin_cos();
            dir.iter().zip(&self.center).map(|(u, p)| s * u + c * p).collect()
        }
    }

    pub fn in_star(&self, y: &[f64]) -> bool {
        if self.is_ball() {
            self.space.contains(y)
        } else {
            (linalg::norm(y) - 1.0).abs() <= TOL && linalg::dot(y, &self.center) >= -TOL
        }
    }

    /// φ: slides `y` along its ray to distance `d` from the center.
    pub fn radial_map(&self, y: &Point, d: f64) -> Result<Point> {
        if !self.in_star(&y.coords) {
            return invalid("point is outside the star-shaped space");
        }
        if !(d > 0.0 && d <= self.max_ray + TOL) {
            return invalid(format!("radius {d} must lie in (0, {}]", self.max_ray));
        }
        let dir = self.ray_direction(&y.coords)?;
        if self.radius(&y.coords) == d {
            return Ok(y.clone());
        }
        let coords = self.point_on_ray(&dir, d.min(self.max_ray));
        Ok(Point { space: y.space, coords: y.space.canonicalize(coords) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_examples() {
        let b = StarStructure::ball(2);
        let y = Space::ball(2).point(vec![0.5, 0.0]).unwrap();
        assert_eq!(b.radial_map(&y, 0.25).unwrap().coords, vec![0.25, 0.0]);
        assert_eq!(b.radial_map(&y, 0.5).unwrap(), y);

        let h = StarStructure::hemisphere(2);
        let y = Space::hemisphere(2).point(vec![0.8f64.sin(), 0.0, 0.8f64.cos()]).unwrap();
        let z = h.radial_map(&y, 0.4).unwrap().coords;
        assert!((z[0] - 0.4f64.sin()).abs() < 1e-15);
        assert!(z[1].abs() < 1e-15);
        assert!((z[2] - 0.4f64.cos()).abs() < 1e-15);

        let o = Space::ball(2).point(vec![0.0, 0.0]).unwrap();
        assert!(matches!(b.radial_map(&o, 0.3), Err(Error::UndefinedRay)));
        assert!(b.radial_map(&y_ball(), 1.5).is_err());
    }

    fn y_ball() -> Point {
        Space::ball(2).point(vec![0.3, 0.1]).unwrap()
    }

    #[test]
    fn equator_is_ray_end() {
        let h = StarStructure::hemisphere(2);
        let e = Space::hemisphere(2).point(vec![0.0, 1.0, 0.0]).unwrap();
        assert!((h.radius(&e.coords) - FRAC_PI_2).abs() < 1e-15);
        let back = h.radial_map(&h.radial_map(&e, 0.3).unwrap(), FRAC_PI_2).unwrap();
        assert!(Space::sphere(2).dist(&back.coords, &e.coords) < 1e-15);
    }
}
