//! cos d₁ cos d₂ + sin d₁ sin d₂ cos α < cos² d + sin² d cos α
//! for 0 < d ≤ d₂ ≤ d₁ ≤ π/2, d < d₁, 0 < α ≤ π/2.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::Serialize;

pub fn valid_tuple(d: f64, d2: f64, d1: f64, alpha: f64) -> bool {
    0.0 < d && d <= d2 && d2 <= d1 && d1 <= FRAC_PI_2 && d < d1 && 0.0 < alpha && alpha <= FRAC_PI_2
}

/// Both sides as written.
pub fn direct_sides(d: f64, d2: f64, d1: f64, alpha: f64) -> (f64, f64) {
    (
        d1.cos() * d2.cos() + d1.sin() * d2.sin() * alpha.cos(),
        d.cos().powi(2) + d.sin().powi(2) * alpha.cos(),
    )
}

/// Margin of the equivalent haversine form
/// sin²((d₁−d₂)/2) + sin d₁ sin d₂ sin²(α/2) − sin² d sin²(α/2) (> 0 ⇔ holds).
pub fn haversine_margin(d: f64, d2: f64, d1: f64, alpha: f64) -> f64 {
    let h = (0.5 * alpha).sin().powi(2);
    (0.5 * (d1 - d2)).sin().powi(2) + (d1.sin() * d2.sin() - d.sin().powi(2)) * h
}

pub fn check_technical_inequality(d: f64, d2: f64, d1: f64, alpha: f64) -> bool {
    haversine_margin(d, d2, d1, alpha) > 0.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TechnicalReport {
    pub grid: usize,
    pub checked: usize,
    pub skipped: usize,
    pub violations: usize,
    pub min_margin: f64,
    pub pass: bool,
}

/// Sweeps `grid`⁴ tuples with every parameter on {i·(π/2)/grid : i = 1..grid},
/// skipping tuples outside the hypotheses.
pub fn sweep(grid: usize) -> TechnicalReport {
    let g = grid.max(1);
    let v = |i: usize| FRAC_PI_2 * (i + 1) as f64 / g as f64;
    let (checked, skipped, violations, min_margin) = (0..g * g)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / g, ij % g);
            let mut acc = (0usize, 0usize, 0usize, f64::INFINITY);
            for k in 0..g {
                for l in 0..g {
                    let (d, d2, d1, a) = (v(i), v(j), v(k), v(l));
                    if !valid_tuple(d, d2, d1, a) {
                        acc.1 += 1;
                        continue;
                    }
                    acc.0 += 1;
                    let m = haversine_margin(d, d2, d1, a);
                    acc.3 = acc.3.min(m);
                    if !(m > 0.0) {
                        acc.2 += 1;
                    }
                }
            }
            acc
        })
        .reduce(
            || (0, 0, 0, f64::INFINITY),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3.min(b.3)),
        );
    TechnicalReport { grid: g, checked, skipped, violations, min_margin, pass: violations == 0 && checked > 0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_tuple() {
        let (l, r) = direct_sides(0.2, 0.5, 0.8, 1.0);
        assert!(l < r);
        assert!(check_technical_inequality(0.2, 0.5, 0.8, 1.0));
    }

    #[test]
    fn near_degenerate() {
        let d = 0.7;
        let e = d + 1e-6;
        assert!(check_technical_inequality(d, e, e, FRAC_PI_2));
        let (l, r) = direct_sides(d, e, e, FRAC_PI_2);
        assert!(l < r);
    }

    #[test]
    fn forms_agree_on_grid() {
        // Oracle: the direct sides decide the same way wherever the gap is
        // well above rounding.
        for i in 1..=12 {
            for j in 1..=12 {
                for k in 1..=12 {
                    for l in 1..=12 {
                        let s = FRAC_PI_2 / 12.0;
                        let (d, d2, d1, a) = (i as f64 * s, j as f64 * s, k as f64 * s, l as f64 * s);
                        if !valid_tuple(d, d2, d1, a) {
                            continue;
                        }
                        let (lhs, rhs) = direct_sides(d, d2, d1, a);
                        if (rhs - lhs).abs() > 1e-12 {
                            assert_eq!(lhs < rhs, check_technical_inequality(d, d2, d1, a));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn small_sweep() {
        let r = sweep(8);
        assert!(r.pass);
        assert_eq!(r.checked + r.skipped, 8usize.pow(4));
    }
}
