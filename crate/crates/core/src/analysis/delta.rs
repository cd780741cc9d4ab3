//! The contraction functional δ(d₁, d₂, d) of the radial retraction.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::spaces::SpaceKind;

/// Verdict margin: δ counts as positive only above this.
pub const POSITIVE_MARGIN: f64 = 1e-8;
pub const DEFAULT_GRID: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaReport {
    pub space: SpaceKind,
    pub d1: f64,
    pub d2: f64,
    pub d: f64,
    /// Estimated infimum of f over the angle between the rays.
    pub infimum: f64,
    /// Angle attaining the estimate (0 when it is the α → 0 limit).
    pub argmin: f64,
    /// Grid spacing of the scan before refinement.
    pub resolution: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<f64>,
    /// Lower bound claimed for unequal radii in the ball.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<f64>,
    pub positive: bool,
}

fn check_order(d1: f64, d2: f64, d: f64, max: f64) -> Result<()> {
    let ok = [d1, d2, d].iter().all(|v| v.is_finite())
        && 0.0 < d
        && d <= d2
        && d2 <= d1
        && d1 <= max
        && d1 > d;
    if !ok {
        return invalid(format!("need 0 < d <= d2 <= d1 <= {max} and d1 > d, got d1={d1}, d2={d2}, d={d}"));
    }
    Ok(())
}

/// Ball: 1 − |φ_d(y₁) − φ_d(y₂)| / |y₁ − y₂| for rays at angle θ.
pub fn ball_ratio_gap(d1: f64, d2: f64, d: f64, theta: f64) -> f64 {
    let h = (0.5 * theta).sin();
    let num = 2.0 * d * h;
    let den = ((d1 - d2).powi(2) + 4.0 * d1 * d2 * h * h).sqrt();
    1.0 - num / den
}

/// Spherical distance between points at distances a, b from the pole with
/// meridians at angle α (haversine form of arccos(cos a cos b + sin a sin b cos α)).
pub fn meridian_distance(a: f64, b: f64, alpha: f64) -> f64 {
    let h = ((0.5 * (a - b)).sin().powi(2) + a.sin() * b.sin() * (0.5 * alpha).sin().powi(2)).max(0.0);
    2.0 * h.sqrt().min(1.0).asin()
}

/// Hemisphere: f(α) = 1 − dist(φ(y₁), φ(y₂)) / dist(y₁, y₂).
pub fn hemisphere_f(d1: f64, d2: f64, d: f64, alpha: f64) -> f64 {
    1.0 - meridian_distance(d, d, alpha) / meridian_distance(d1, d2, alpha)
}

/// lim_{α→0} f(α): 1 for unequal radii, 1 − sin d / sin d₁ otherwise.
pub fn hemisphere_limit_at_zero(d1: f64, d2: f64, d: f64) -> f64 {
    if d1 != d2 {
        1.0
    } else {
        1.0 - d.sin() / d1.sin()
    }
}

/// Grid scan over (0, hi] followed by golden-section refinement around the
/// best grid point. Returns (min value, argmin).
pub fn infimum_on(f: impl Fn(f64) -> f64, hi: f64, grid: usize) -> (f64, f64) {
    let grid = grid.max(2);
    let h = hi / grid as f64;
    let (mut best_i, mut best) = (1, f64::INFINITY);
    for i in 1..=grid {
        let v = f(i as f64 * h);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let lo = (best_i as f64 - 1.0) * h;
    let up = ((best_i as f64 + 1.0) * h).min(hi);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo.max(h * 1e-6), up);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..100 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    let mut out = (best, best_i as f64 * h);
    for (v, x) in [(f1, x1), (f2, x2)] {
        if v < out.0 {
            out = (v, x);
        }
    }
    out
}

pub fn delta_ball(d1: f64, d2: f64, d: f64, grid: usize) -> Result<DeltaReport> {
    check_order(d1, d2, d, 1.0)?;
    let (mut inf, mut arg) = infimum_on(|t| ball_ratio_gap(d1, d2, d, t), PI, grid);
    if d1 != d2 && 1.0 < inf {
        // the θ → 0 limit
        inf = 1.0;
        arg = 0.0;
    }
    let closed_form = (d1 == d2).then(|| 1.0 - d / d1);
    let lower_bound = (d1 != d2).then(|| {
        let s = (d1 - d2).powi(2);
        1.0 - (1.0 - s / (s + 4.0)).sqrt()
    });
    Ok(DeltaReport {
        space: SpaceKind::Ball,
        d1,
        d2,
        d,
        infimum: inf,
        argmin: arg,
        resolution: PI / grid.max(2) as f64,
        closed_form,
        lower_bound,
        positive: inf > POSITIVE_MARGIN,
    })
}

pub fn delta_hemisphere(d1: f64, d2: f64, d: f64, grid: usize) -> Result<DeltaReport> {
    check_order(d1, d2, d, FRAC_PI_2)?;
    let (mut inf, mut arg) = infimum_on(|a| hemisphere_f(d1, d2, d, a), FRAC_PI_2, grid);
    let lim = hemisphere_limit_at_zero(d1, d2, d);
    if lim < inf {
        inf = lim;
        arg = 0.0;
    }
    Ok(DeltaReport {
        space: SpaceKind::Hemisphere,
        d1,
        d2,
        d,
        infimum: inf,
        argmin: arg,
        resolution: FRAC_PI_2 / grid.max(2) as f64,
        closed_form: None,
        lower_bound: None,
        positive: inf > POSITIVE_MARGIN,
    })
}
