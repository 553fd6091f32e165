//! Probability density estimation by entropy maximization under local
//! Gaussian conditions.
//!
//! A sample is discretized on an equidistant grid. Weights on the grid are
//! found by simulated annealing on
//!
//! ```text
//! E = Σ_k (F_k^sim − F_k^emp)² − k_H·H
//! ```
//!
//! where `F_k^emp` is the sample mean of a Gaussian centered at `c_k` and
//! `F_k^sim` the same average under the weights. The weights are then
//! normalized and smoothed with a moving average.
//!
//! Alongside the estimator the crate provides the closed-form error model
//! for a single condition ([`error_analysis`]) and the optimal-width
//! solvers derived from it ([`sigma_solver`]).
//!
//! ```no_run
//! use gaussian_maxent::annealer::estimate;
//! use gaussian_maxent::domain::{EstimatorConfig, Selection};
//!
//! let sel = Selection::new(vec![0.1, 0.4, 0.35, 0.8, 0.42, 0.38]).unwrap();
//! let config = EstimatorConfig { n_points: 200, n_conditions: 21, smoothing_window: 5, ..Default::default() };
//! let sigmas = vec![sel.delta_x() / 30.0; config.n_conditions];
//! let result = estimate(&sel, &config, &sigmas).unwrap();
//! println!("{:?}", &result.density[..5]);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod annealer;
pub mod domain;
pub mod error;
pub mod error_analysis;
pub mod experiments;
pub mod input;
pub mod objective;
pub mod quad;
pub mod sigma_solver;

pub use annealer::{estimate, AnnealSchedule, EstimateResult};
pub use domain::{ConditionSet, EstimatorConfig, Grid, Selection, WeightVector};
pub use error::{Error, Result};
pub use objective::EntropyMode;
