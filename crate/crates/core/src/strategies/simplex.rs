//! Progress bound inside a regular simplex with reflected cops.

use crate::error::{invalid, Error, Result};
use crate::linalg;

/// τ / (n √(n(n+1))).
pub fn simplex_gain_bound(n: usize, tau: f64) -> f64 {
    let n = n as f64;
    tau / (n * (n * (n + 1.0)).sqrt())
}

/// For x in the interior of the simplex {Σxᵢ = 1, xᵢ ≥ 0} ⊂ ℝⁿ⁺¹ and x′ in
/// the simplex, reflects x across every facet (cᵢ = x + (2aᵢ/n)·nᵢ with
/// nᵢ the all-ones vector with a zero in place i) and returns the index and
/// length of the largest projection of x′ − x onto cᵢ − x.
pub fn simplex_closest_cop_gain(x: &[f64], x2: &[f64]) -> Result<(usize, f64)> {
    let m = x.len();
    if m < 3 || x2.len() != m {
        return invalid("simplex points need n + 1 >= 3 equal-length coordinates");
    }
    let n = (m - 1) as f64;
    for (name, p) in [("x", x), ("x'", x2)] {
        if (p.iter().sum::<f64>() - 1.0).abs() > 1e-9 || p.iter().any(|v| *v < -1e-12) {
            return invalid(format!("{name} is not in the simplex"));
        }
    }
    if let Some(i) = x.iter().position(|a| *a <= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "x lies on facet {} of the simplex; the reflection degenerates",
            i + 1
        )));
    }
    let step = linalg::sub(x2, x);
    let mut best = (0, f64::NEG_INFINITY);
    for (i, a) in x.iter().enumerate() {
        let mut ni = vec![1.0; m];
        ni[i] = 0.0;
        let ci = linalg::axpy(x, 2.0 * a / n, &ni);
        let dir = linalg::sub(&ci, x);
        let proj = linalg::dot(&step, &dir) / linalg::norm(&dir);
        if proj > best.1 {
            best = (i, proj);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_for_triangle() {
        assert!((simplex_gain_bound(2, 1.0) - 1.0 / (2.0 * 6f64.sqrt())).abs() < 1e-15);
        assert!((simplex_gain_bound(2, 1.0) - 0.2041).abs() < 1e-4);
    }

    #[test]
    fn zero_step() {
        let x = [0.2, 0.3, 0.5];
        let (_, g) = simplex_closest_cop_gain(&x, &x).unwrap();
        assert_eq!(g, 0.0);
    }

    #[test]
    fn boundary_rejected() {
        assert!(simplex_closest_cop_gain(&[0.0, 0.5, 0.5], &[0.2, 0.3, 0.5]).is_err());
    }

    #[test]
    fn projection_matches_coordinate_formula() {
        // (x′ − x)·(cᵢ − x)/|cᵢ − x| = (aᵢ − bᵢ)/√n
        let x = [0.2, 0.3, 0.1, 0.4];
        let y = [0.25, 0.2, 0.15, 0.4];
        let (i, g) = simplex_closest_cop_gain(&x, &y).unwrap();
        let best = x.iter().zip(&y).map(|(a, b)| (a - b) / 3f64.sqrt()).fold(f64::MIN, f64::max);
        assert_eq!(i, 1);
        assert!((g - best).abs() < 1e-15);
    }
}
