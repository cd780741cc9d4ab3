//! Sampling checks that the shadow maps are 1-Lipschitz retractions.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg;
use crate::spaces::{shadow_radial_ball, shadow_truncate, sphere_mirror};
use crate::spaces::{Point, Space, SpaceKind};
use crate::strategies::directions::gaussian;

pub const RATIO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShadowMap {
    /// Sⁿ → lower hemisphere (n = 2).
    SphereMirror,
    /// D⁸ → D⁴.
    ShadowTruncate,
    /// D⁴ → ball of radius 1/4.
    ShadowRadialBall,
    /// T² → T¹ × {0}.
    TorusProjection,
    Identity,
}

impl ShadowMap {
    pub const ALL: [ShadowMap; 5] = [
        ShadowMap::SphereMirror,
        ShadowMap::ShadowTruncate,
        ShadowMap::ShadowRadialBall,
        ShadowMap::TorusProjection,
        ShadowMap::Identity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ShadowMap::SphereMirror => "sphere_mirror",
            ShadowMap::ShadowTruncate => "shadow_truncate",
            ShadowMap::ShadowRadialBall => "shadow_radial_ball",
            ShadowMap::TorusProjection => "torus_projection",
            ShadowMap::Identity => "identity",
        }
    }

    pub fn domain(self) -> Space {
        match self {
            ShadowMap::SphereMirror => Space::sphere(2),
            ShadowMap::ShadowTruncate => Space::ell_two_box(8),
            ShadowMap::ShadowRadialBall => Space::ell_two_box(4),
            ShadowMap::TorusProjection => Space::torus(2),
            ShadowMap::Identity => Space::ball(3),
        }
    }

    pub fn apply(self, x: &Point) -> Result<Point> {
        match self {
            ShadowMap::SphereMirror => sphere_mirror(x),
            ShadowMap::ShadowTruncate => shadow_truncate(x, 4),
            ShadowMap::ShadowRadialBall => shadow_radial_ball(x, 0.25),
            ShadowMap::TorusProjection => {
                let mut c = x.coords.clone();
                *c.last_mut().expect("nonempty") = 0.0;
                Ok(Point { space: x.space, coords: c })
            }
            ShadowMap::Identity => Ok(x.clone()),
        }
    }
}

impl FromStr for ShadowMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShadowMap::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown map {s:?}")))
    }
}

/// Uniform-ish random point of a space.
pub fn sample_point(space: &Space, rng: &mut ChaCha8Rng) -> Point {
    let m = space.ambient_dim();
    let coords = match space.kind {
        SpaceKind::Ball => {
            let g: Vec<f64> = (0..m).map(|_| gaussian(rng)).collect();
            let u = linalg::normalized(&g).unwrap_or_else(|| linalg::basis(m, 0));
            let r = rng.gen::<f64>().powf(1.0 / m as f64);
            linalg::scale(&u, r)
        }
        SpaceKind::Sphere | SpaceKind::Hemisphere => {
            let g: Vec<f64> = (0..m).map(|_| gaussian(rng)).collect();
            let mut u = linalg::normalized(&g).unwrap_or_else(|| linalg::basis(m, 0));
            if space.kind == SpaceKind::Hemisphere {
                u[m - 1] = u[m - 1].abs();
            }
            u
        }
        SpaceKind::Torus => (0..m).map(|_| rng.gen::<f64>()).collect(),
        SpaceKind::EllTwoBox => loop {
            let x: Vec<f64> = (0..m).map(|i| rng.gen_range(-1.0..=1.0) / (i + 1) as f64).collect();
            if linalg::norm(&x) <= 1.0 {
                break x;
            }
        },
    };
    Point { space: *space, coords: space.canonicalize(coords) }
}

/// A point near `x` (within about `scale`), still in the space.
fn perturb(space: &Space, x: &Point, scale: f64, rng: &mut ChaCha8Rng) -> Point {
    let g: Vec<f64> = (0..x.coords.len()).map(|_| gaussian(rng)).collect();
    let dir = linalg::normalized(&g).unwrap_or_else(|| linalg::basis(x.coords.len(), 0));
    space.step_in_direction(x, &dir, scale * rng.gen::<f64>())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzReport {
    pub map: ShadowMap,
    pub samples: usize,
    pub max_ratio: f64,
    pub idempotent: bool,
    pub fixes_image: bool,
    pub pass: bool,
}

/// Samples `samples` pairs (half of them close together) and checks
/// d(σx, σy) ≤ (1 + tol)·d(x, y), σ∘σ = σ, and σ = id on the image.
pub fn check_lipschitz(map: ShadowMap, samples: usize, seed: u64) -> Result<LipschitzReport> {
    if samples == 0 {
        return invalid("need at least one sample");
    }
    let space = map.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_ratio: f64 = 0.0;
    let mut idempotent = true;
    let mut fixes_image = true;
    for i in 0..samples {
        let x = sample_point(&space, &mut rng);
        let y = if i % 2 == 0 { sample_point(&space, &mut rng) } else { perturb(&space, &x, 1e-3, &mut rng) };
        let d = space.dist(&x.coords, &y.coords);
        let (sx, sy) = (map.apply(&x)?, map.apply(&y)?);
        if d > 0.0 {
            max_ratio = max_ratio.max(space.dist(&sx.coords, &sy.coords) / d);
        }
        let ssx = map.apply(&sx)?;
        if space.dist(&ssx.coords, &sx.coords) > 1e-15 {
            idempotent = false;
        }
        if map.apply(&ssx)?.coords != ssx.coords {
            fixes_image = false;
        }
    }
    Ok(LipschitzReport {
        map,
        samples,
        max_ratio,
        idempotent,
        fixes_image,
        pass: max_ratio <= 1.0 + RATIO_TOL && idempotent && fixes_image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_ratio_is_one() {
        let r = check_lipschitz(ShadowMap::Identity, 1000, 1).unwrap();
        assert!((r.max_ratio - 1.0).abs() < 1e-15);
        assert!(r.pass);
    }

    #[test]
    fn all_maps_pass() {
        for m in ShadowMap::ALL {
            let r = check_lipschitz(m, 2000, 5).unwrap();
            assert!(r.pass, "{m:?}: {r:?}");
        }
    }

    #[test]
    fn unknown_map() {
        assert!("warp".parse::<ShadowMap>().is_err());
        assert_eq!("sphere_mirror".parse::<ShadowMap>().unwrap(), ShadowMap::SphereMirror);
    }

    #[test]
    fn samples_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in ShadowMap::ALL {
            let s = m.domain();
            for _ in 0..100 {
                assert!(s.contains(&sample_point(&s, &mut rng).coords));
            }
        }
    }
}
