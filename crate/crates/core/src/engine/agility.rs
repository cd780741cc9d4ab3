use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Named schedules usable through [`Agility::Custom`].
const CUSTOM_SCHEDULES: &[(&str, fn(u64) -> f64)] = &[
    ("inverse_sqrt", |n| 1.0 / ((n + 1) as f64).sqrt()),
    ("harmonic", |n| 1.0 / (n + 2) as f64),
    ("log_harmonic", |n| 1.0 / ((n + 2) as f64 * ((n + 2) as f64).ln())),
];

/// Per-step move budget τ(n), n ≥ 1, identical for every player in a step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Agility {
    /// τ(n) = 1 / (n + offset)
    Harmonic { offset: f64 },
    Constant { c: f64 },
    /// Listed values; the last one repeats past the end.
    Explicit { sequence: Vec<f64> },
    /// A built-in named schedule (`inverse_sqrt`, `harmonic`, `log_harmonic`).
    Custom { name: String },
}

impl Agility {
    /// τ(n) = 1/(n+2), the robber's schedule in the ball escape.
    pub fn harmonic() -> Self {
        Agility::Harmonic { offset: 2.0 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Agility::Harmonic { offset } => {
                if !(offset.is_finite() && *offset > -1.0) {
                    return invalid("harmonic offset must exceed -1 so that τ(1) > 0");
                }
            }
            Agility::Constant { c } => {
                if !(c.is_finite() && *c > 0.0) {
                    return invalid("constant agility must be positive");
                }
            }
            Agility::Explicit { sequence } => {
                if sequence.is_empty() || sequence.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
                    return invalid("explicit agility needs a nonempty list of positive values");
                }
            }
            Agility::Custom { name } => {
                if !CUSTOM_SCHEDULES.iter().any(|(n, _)| n == name) {
                    return Err(Error::Config(format!("unknown custom agility `{name}`")));
                }
            }
        }
        Ok(())
    }

    /// Budget of step `n` (1-based). Step 0 is treated as step 1.
    pub fn tau(&self, n: u64) -> f64 {
        let n = n.max(1);
        match self {
            Agility::Harmonic { offset } => 1.0 / (n as f64 + offset),
            Agility::Constant { c } => *c,
            Agility::Explicit { sequence } => {
                let i = ((n - 1) as usize).min(sequence.len() - 1);
                sequence[i]
            }
            Agility::Custom { name } => CUSTOM_SCHEDULES
                .iter()
                .find(|(k, _)| k == name)
                .map(|(_, f)| f(n))
                .unwrap_or(f64::NAN),
        }
    }

    pub fn partial_sum(&self, horizon: u64) -> f64 {
        (1..=horizon).map(|n| self.tau(n)).sum()
    }

    /// Finite stand-in for Σ τ(n) = ∞: the partial sum over `horizon`
    /// steps must reach `threshold`.
    pub fn check_divergence(&self, horizon: u64, threshold: f64) -> Result<f64> {
        let s = self.partial_sum(horizon);
        if s >= threshold {
            Ok(s)
        } else {
            invalid(format!(
                "agility sums to {s:.6} over {horizon} steps, below the divergence threshold {threshold}"
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules() {
        let h = Agility::harmonic();
        assert_eq!(h.tau(1), 1.0 / 3.0);
        assert_eq!(h.tau(10), 1.0 / 12.0);
        let e = Agility::Explicit { sequence: vec![0.5, 0.25] };
        assert_eq!(e.tau(1), 0.5);
        assert_eq!(e.tau(7), 0.25);
        assert_eq!(Agility::Constant { c: 0.1 }.tau(3), 0.1);
        let c = Agility::Custom { name: "inverse_sqrt".into() };
        assert!(c.validate().is_ok());
        assert_eq!(c.tau(3), 0.5);
        assert!(Agility::Custom { name: "nope".into() }.validate().is_err());
        assert!(Agility::Constant { c: 0.0 }.validate().is_err());
        assert!(Agility::Explicit { sequence: vec![] }.validate().is_err());
    }

    #[test]
    fn divergence_heuristic() {
        let h = Agility::harmonic();
        // Σ 1/(n+2) = H(N+2) − 3/2 ≈ ln(N+2) + γ − 3/2 + 1/(2(N+2))
        let n = 100_000.0f64;
        let oracle = (n + 2.0).ln() + 0.577_215_664_901_532_9 - 1.5 + 0.5 / (n + 2.0);
        let s = h.check_divergence(100_000, 10.0).unwrap();
        assert!((s - oracle).abs() < 1e-8, "{s} vs {oracle}");
        assert!(h.check_divergence(100, 10.0).is_err());
    }
}
