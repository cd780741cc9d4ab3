//! Cops and Robber on compact geodesic spaces.
//!
//! * [`spaces`]: balls, spheres, hemispheres, flat tori and truncated ℓ²
//!   boxes, with their metrics, geodesics, shadows and covering maps.
//! * [`engine`]: the discrete game loop (robber moves first and reveals its
//!   geodesic, then every cop answers), agility schedules and traces.
//! * [`strategies`]: the constructive cop and robber strategies plus greedy
//!   baselines.
//! * [`analysis`]: numerical verifiers for the supporting inequalities and
//!   per-trace metrics.
//! * [`config`] and [`cli`]: the JSON run configuration and the `geocops`
//!   command-line front end.

// `!(x >= 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod spaces;
pub mod strategies;

pub use error::{Error, Mover, Result};
pub use spaces::{Point, Space, SpaceKind};
