//! Numerical verifiers for the supporting lemmas, and trace metrics.

pub mod delta;
pub mod lipschitz;
pub mod metrics;
pub mod technical;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::linalg;
use crate::strategies::simplex::{simplex_closest_cop_gain, simplex_gain_bound};

pub use delta::{delta_ball, delta_hemisphere, DeltaReport};
pub use lipschitz::{check_lipschitz, LipschitzReport, ShadowMap};
pub use metrics::{trace_metrics, MetricsSummary};
pub use technical::{check_technical_inequality, TechnicalReport};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexReport {
    pub n: usize,
    pub samples: usize,
    /// min over samples of (gain − τ/(n√(n(n+1)))).
    pub min_slack: f64,
    pub bound_factor: f64,
    pub pass: bool,
}

fn random_simplex_point(m: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    use rand::Rng;
    let e: Vec<f64> = (0..m).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    linalg::scale(&e, 1.0 / s)
}

/// Random interior x and arbitrary x′ in the n-simplex: the best projection
/// must reach τ/(n√(n(n+1))).
pub fn verify_simplex(n: usize, samples: usize, seed: u64) -> Result<SimplexReport> {
    if n < 2 {
        return invalid("simplex dimension must be at least 2");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_slack = f64::INFINITY;
    for i in 0..samples {
        let x = random_simplex_point(n + 1, &mut rng);
        let y = if i % 2 == 0 {
            random_simplex_point(n + 1, &mut rng)
        } else {
            // a short step inside the simplex
            let z = random_simplex_point(n + 1, &mut rng);
            linalg::axpy(&x, 0.01, &linalg::sub(&z, &x))
        };
        let tau = linalg::dist(&x, &y);
        let (_, gain) = simplex_closest_cop_gain(&x, &y)?;
        min_slack = min_slack.min(gain - simplex_gain_bound(n, tau));
    }
    Ok(SimplexReport {
        n,
        samples,
        min_slack,
        bound_factor: simplex_gain_bound(n, 1.0),
        pass: min_slack >= -1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_bound_holds() {
        for n in 2..=5 {
            let r = verify_simplex(n, 2000, n as u64).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}
