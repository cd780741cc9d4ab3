//! Mirror guard of a hemisphere and the two-cop strategy on Sⁿ.

use crate::engine::{AuxRecord, CopStrategy, CopView};
use crate::error::{misuse, Error, Result};
use crate::linalg;
use crate::spaces::mirror_across;
use crate::spaces::StarStructure;
use crate::spaces::{move_toward, Point, Space, SpaceKind};

use super::radial::{hemisphere_subdivisions, radial_step};

const ALIGN_TOL: f64 = 1e-9;

/// Fold normal making `cop` the mirror image of `robber`: the unit vector
/// from cop to robber. A coincident pair gets ±e_last, whichever leaves the
/// pair on the fixed side.
pub fn mirror_normal(robber: &[f64], cop: &[f64]) -> Vec<f64> {
    match linalg::normalized(&linalg::sub(robber, cop)) {
        Some(h) => h,
        None => {
            let m = robber.len();
            let e = linalg::basis(m, m - 1);
            if robber[m - 1] <= 0.0 {
                e
            } else {
                linalg::scale(&e, -1.0)
            }
        }
    }
}

/// Orthogonal Q (rows) with Q·h = e_last, so that in the new coordinates
/// the fold across h becomes the standard mirror z ↦ −z.
pub fn align_mirror(robber: &[f64], cop: &[f64]) -> Result<Vec<Vec<f64>>> {
    let h = mirror_normal(robber, cop);
    let m = h.len();
    let v = linalg::sub(&h, &linalg::basis(m, m - 1));
    let vv = linalg::dot(&v, &v);
    let q: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let id = if i == j { 1.0 } else { 0.0 };
                    if vv < 1e-30 {
                        id
                    } else {
                        id - 2.0 * v[i] * v[j] / vv
                    }
                })
                .collect()
        })
        .collect();
    for i in 0..m {
        for j in 0..m {
            let g: f64 = (0..m).map(|k| q[k][i] * q[k][j]).sum();
            let id = if i == j { 1.0 } else { 0.0 };
            if (g - id).abs() > 1e-12 {
                return Err(Error::InternalInvariant("alignment map is not orthogonal".into()));
            }
        }
    }
    Ok(q)
}

pub fn apply(q: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    q.iter().map(|row| linalg::dot(row, x)).collect()
}

/// Mirror image of a sphere point across `h`, in canonical form.
pub fn mirror_point(space: &Space, x: &[f64], h: &[f64]) -> Point {
    Point { space: *space, coords: space.canonicalize(mirror_across(x, h)) }
}

/// Cop 0 keeps c = ρ(r), where ρ folds across the hyperplane ⟂ h fixed at
/// the first observation. Other cops stay put.
pub struct SphereMirror {
    h: Option<Vec<f64>>,
}

impl SphereMirror {
    pub fn new() -> Self {
        SphereMirror { h: None }
    }

    pub fn axis(&self) -> Option<&[f64]> {
        self.h.as_deref()
    }

    fn mirror(&mut self, view: &CopView<'_>) -> Result<Point> {
        if view.space.kind != SpaceKind::Sphere {
            return misuse("mirror strategy needs a sphere");
        }
        let rm = view.robber_move;
        let c = &view.cops[0];
        let h = self.h.get_or_insert_with(|| mirror_normal(&rm.origin.coords, &c.coords));
        let expected = mirror_point(view.space, &rm.origin.coords, h);
        if view.space.dist(&expected.coords, &c.coords) > ALIGN_TOL {
            return misuse("mirror cop is not at the image of the robber");
        }
        Ok(mirror_point(view.space, &rm.destination.coords, h))
    }
}

impl Default for SphereMirror {
    fn default() -> Self {
        Self::new()
    }
}

impl CopStrategy for SphereMirror {
    fn name(&self) -> &'static str {
        "sphere_mirror"
    }

    fn respond(&mut self, view: &CopView<'_>) -> Result<Vec<Point>> {
        let mut out = view.cops.to_vec();
        out[0] = self.mirror(view)?;
        Ok(out)
    }

    fn aux(&self) -> Option<AuxRecord> {
        Some(AuxRecord { axis: self.h.clone(), ..Default::default() })
    }
}

/// Two cops on Sⁿ: cop 0 mirrors, cop 1 walks to the pole h of the robber's
/// side and plays the radial strategy on that hemisphere.
pub struct SphereTwoCop {
    mirror: SphereMirror,
    reached: bool,
}

impl SphereTwoCop {
    pub fn new() -> Self {
        SphereTwoCop { mirror: SphereMirror::new(), reached: false }
    }

    fn star(&self, view: &CopView<'_>) -> StarStructure {
        let h = self
            .mirror
            .h
            .clone()
            .unwrap_or_else(|| mirror_normal(&view.robber_move.origin.coords, &view.cops[0].coords));
        StarStructure::hemisphere_at(view.space.dim, h)
    }
}

impl Default for SphereTwoCop {
    fn default() -> Self {
        Self::new()
    }
}

impl CopStrategy for SphereTwoCop {
    fn name(&self) -> &'static str {
        "sphere_two_cop"
    }

    fn subdivisions(&mut self, view: &CopView<'_>) -> usize {
        if view.space.kind != SpaceKind::Sphere || view.cops.len() != 2 {
            return 1;
        }
        hemisphere_subdivisions(&self.star(view), &view.robber_move.path)
    }

    fn respond(&mut self, view: &CopView<'_>) -> Result<Vec<Point>> {
        if view.cops.len() != 2 {
            return misuse("sphere_two_cop needs exactly two cops");
        }
        let space = *view.space;
        let first = self.mirror.mirror(view)?;
        let star = self.star(view);
        let h = star.center.clone();
        let rm = view.robber_move;
        let r = &rm.destination;
        let c = &view.cops[1];
        let b = view.budget;
        let second = if linalg::dot(&r.coords, &h) < 0.0 {
            move_toward(&space, c, r, b)?
        } else if space.dist(&c.coords, &r.coords) <= b {
            r.clone()
        } else {
            let mut budget = b;
            let mut from = c.coords.clone();
            if !self.reached {
                let pole = Point { space, coords: h.clone() };
                let d = space.dist(&c.coords, &h);
                if d > b {
                    from = move_toward(&space, c, &pole, b)?.coords;
                    budget = 0.0;
                } else {
                    self.reached = true;
                    budget -= d;
                    from = h.clone();
                }
            }
            if self.reached {
                let (p, _) = radial_step(&star, &from, &rm.origin.coords, &r.coords, budget, true)?;
                if p == r.coords {
                    r.clone()
                } else {
                    let q = Point { space, coords: space.canonicalize(p) };
                    // rounding in the two-leg approach can overshoot by an ulp
                    if space.dist(&c.coords, &q.coords) > b {
                        move_toward(&space, c, &q, b)?
                    } else {
                        q
                    }
                }
            } else {
                Point { space, coords: from }
            }
        };
        Ok(vec![first, second])
    }

    fn aux(&self) -> Option<AuxRecord> {
        let phase = if self.reached { "radial" } else { "approach" };
        Some(AuxRecord {
            axis: self.mirror.h.clone(),
            phase: Some(phase.to_string()),
            ..Default::default()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::sphere_mirror;

    #[test]
    fn meridian_example() {
        let s = Space::sphere(2);
        let h = mirror_normal(&[0.0, 0.0, 1.0], &[0.0, 0.0, -1.0]);
        assert_eq!(h, vec![0.0, 0.0, 1.0]);
        assert_eq!(mirror_point(&s, &[1.0, 0.0, 0.0], &h).coords, vec![1.0, 0.0, 0.0]);
        assert_eq!(mirror_point(&s, &[0.0, 0.0, 1.0], &h).coords, vec![0.0, 0.0, -1.0]);
    }

    #[test]
    fn identity_alignment_cases() {
        let q = align_mirror(&[0.0, 0.0, 1.0], &[0.0, 0.0, -1.0]).unwrap();
        assert_eq!(q, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let q = align_mirror(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap();
        let e = apply(&q, &[1.0, 0.0, 0.0]);
        assert!((linalg::dist(&e, &[1.0, 0.0, 0.0])) < 1e-15);
    }

    #[test]
    fn generic_alignment() {
        // Oracle: after Q the standard mirror sends Q r to Q c.
        let s = Space::sphere(2);
        let r = s.point(linalg::normalized(&[0.3, -0.5, 0.2]).unwrap()).unwrap();
        let c = s.point(linalg::normalized(&[-0.4, 0.1, 0.7]).unwrap()).unwrap();
        let q = align_mirror(&r.coords, &c.coords).unwrap();
        let qr = s.point(apply(&q, &r.coords)).unwrap();
        let qc = apply(&q, &c.coords);
        let m = sphere_mirror(&qr).unwrap();
        assert!(linalg::dist(&m.coords, &qc) < 1e-9);
        let h = mirror_normal(&r.coords, &c.coords);
        assert!(linalg::dist(&mirror_across(&r.coords, &h), &c.coords) < 1e-12);
    }
}
