//! Shadows (1-Lipschitz retractions) and the torus covering map.

use super::{Point, Space, SpaceKind};
use crate::error::{invalid, Error, Result};
use crate::linalg;

/// Reduces a real number into [0, 1).
pub fn wrap_unit(x: f64) -> f64 {
    let w = x - x.floor();
    // x slightly below an integer can round up to exactly 1.0
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

/// Folds the upper hemisphere of Sⁿ onto the lower one: z ↦ −z when z > 0.
pub fn sphere_mirror(p: &Point) -> Result<Point> {
    if p.space.kind != SpaceKind::Sphere {
        return invalid("sphere_mirror expects a point of a sphere");
    }
    let mut coords = p.coords.clone();
    let last = coords.len() - 1;
    if coords[last] > 0.0 {
        coords[last] = -coords[last];
    }
    Ok(Point { space: p.space, coords })
}

/// Fold across the hyperplane through the origin with unit normal `h`:
/// points with `x·h > 0` are reflected, the closed half `x·h ≤ 0` is fixed.
/// With `h = e_last` this is [`sphere_mirror`].
pub fn mirror_across(x: &[f64], h: &[f64]) -> Vec<f64> {
    let s = linalg::dot(x, h);
    if s <= 0.0 {
        x.to_vec()
    } else {
        linalg::axpy(x, -2.0 * s, h)
    }
}

/// Covering map ℝⁿ → Tⁿ.
pub fn torus_project(x: &[f64]) -> Result<Point> {
    if x.is_empty() {
        return invalid("torus_project needs at least one coordinate");
    }
    if x.iter().any(|v| !v.is_finite()) {
        return invalid("non-finite coordinate");
    }
    Ok(Point {
        space: Space::torus(x.len()),
        coords: x.iter().map(|v| wrap_unit(*v)).collect(),
    })
}

/// The lift of `p` nearest to `reference`. Fails when some coordinate of
/// `p` sits exactly half a turn from the reference (1-based coordinate in
/// the error), because the nearest lift is then not unique.
pub fn torus_lift(p: &Point, reference: &[f64]) -> Result<Vec<f64>> {
    if p.space.kind != SpaceKind::Torus || reference.len() != p.coords.len() {
        return invalid("torus_lift needs a torus point and a reference of equal dimension");
    }
    p.coords
        .iter()
        .zip(reference)
        .enumerate()
        .map(|(i, (x, r))| {
            let d = x - r;
            let w = d - (d + 0.5).floor();
            if w.abs() >= 0.5 {
                Err(Error::AmbiguousLift { coord: i + 1 })
            } else {
                Ok(r + w)
            }
        })
        .collect()
}

/// Truncation Dᵐ → Dᵏ ⊂ Dᵐ: keeps the first `k` coordinates, zeroes the rest.
pub fn shadow_truncate(x: &Point, k: usize) -> Result<Point> {
    if x.space.kind != SpaceKind::EllTwoBox {
        return invalid("shadow_truncate expects a point of an ℓ² box truncation");
    }
    if k == 0 || k > x.space.dim {
        return invalid(format!("truncation order {k} must lie in 1..={}", x.space.dim));
    }
    let mut coords = x.coords.clone();
    for c in coords.iter_mut().skip(k) {
        *c = 0.0;
    }
    Ok(Point { space: x.space, coords })
}

/// Radial retraction onto the centered ball of radius `radius`.
pub fn shadow_radial_ball(x: &Point, radius: f64) -> Result<Point> {
    if !(radius > 0.0) {
        return invalid("radius must be positive");
    }
    if !matches!(x.space.kind, SpaceKind::EllTwoBox | SpaceKind::Ball) {
        return invalid("shadow_radial_ball expects a point of a ball or ℓ² box truncation");
    }
    let n = linalg::norm(&x.coords);
    let coords = if n <= radius { x.coords.clone() } else { linalg::scale(&x.coords, radius / n) };
    Ok(Point { space: x.space, coords })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_examples() {
        let s2 = Space::sphere(2);
        let m = |c: &[f64]| sphere_mirror(&s2.point(c.to_vec()).unwrap()).unwrap().coords;
        assert_eq!(m(&[0.0, 0.0, 1.0]), vec![0.0, 0.0, -1.0]);
        assert_eq!(m(&[0.0, 0.0, -1.0]), vec![0.0, 0.0, -1.0]);
        assert_eq!(m(&[1.0, 0.0, 0.0]), vec![1.0, 0.0, 0.0]);
        // general fold agrees bit for bit with the pole fold
        let p = [0.6, 0.0, 0.8];
        assert_eq!(mirror_across(&p, &[0.0, 0.0, 1.0]), m(&p));
    }

    #[test]
    fn project_examples() {
        let p = torus_project(&[1.3, -0.4]).unwrap().coords;
        assert!((p[0] - 0.3).abs() < 1e-12 && (p[1] - 0.6).abs() < 1e-12);
        assert_eq!(torus_project(&[0.0, 0.0]).unwrap().coords, vec![0.0, 0.0]);
        assert_eq!(torus_project(&[2.0, 3.0]).unwrap().coords, vec![0.0, 0.0]);
        assert_eq!(wrap_unit(-1e-17), 0.0);
    }

    #[test]
    fn lift_examples() {
        let t2 = Space::torus(2);
        let p = t2.point(vec![0.3, 0.6]).unwrap();
        let x = torus_lift(&p, &[1.25, -0.45]).unwrap();
        assert!((x[0] - 1.3).abs() < 1e-12 && (x[1] + 0.4).abs() < 1e-12);
        let o = t2.point(vec![0.0, 0.0]).unwrap();
        assert_eq!(torus_lift(&o, &[3.0, 3.0]).unwrap(), vec![3.0, 3.0]);
        let h = t2.point(vec![0.5, 0.0]).unwrap();
        assert!(matches!(torus_lift(&h, &[0.0, 0.0]), Err(Error::AmbiguousLift { coord: 1 })));
    }

    #[test]
    fn truncate_and_radial_examples() {
        let d3 = Space::ell_two_box(3);
        let x = d3.point(vec![0.5, 0.3, 0.1]).unwrap();
        assert_eq!(shadow_truncate(&x, 2).unwrap().coords, vec![0.5, 0.3, 0.0]);
        let y = d3.point(vec![0.5, 0.3, 0.0]).unwrap();
        assert_eq!(shadow_truncate(&y, 2).unwrap(), y);
        let d2 = Space::ell_two_box(2);
        let a = d2.point(vec![0.5, 0.0]).unwrap();
        assert_eq!(shadow_radial_ball(&a, 0.5).unwrap(), a);
        let z = d2.point(vec![0.0, 0.0]).unwrap();
        assert_eq!(shadow_radial_ball(&z, 0.5).unwrap(), z);
        let b = Space::ball(2).point(vec![0.9, 0.3]).unwrap();
        let r = shadow_radial_ball(&b, 0.5).unwrap();
        let n = (0.81f64 + 0.09).sqrt();
        assert!((r.coords[0] - 0.45 / n).abs() < 1e-15 && (r.coords[1] - 0.15 / n).abs() < 1e-15);
        assert!((linalg::norm(&r.coords) - 0.5).abs() < 1e-15);
    }
}
