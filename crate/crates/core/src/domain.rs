//! Shared domain types: the sample, the discretization grid, the weight
//! vector, the condition set and the estimator configuration.

use crate::annealer::AnnealSchedule;
use crate::error::{Error, Result};
use crate::objective::{empirical_average, EntropyMode};

/// A univariate sample, stored sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    values: Vec<f64>,
    x_min: f64,
    x_max: f64,
    delta_x: f64,
}

impl Selection {
    pub fn new(values: impl Into<Vec<f64>>) -> Result<Self> {
        let mut values = values.into();
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index, value });
        }
        if values.len() < 2 {
            return Err(Error::EmptyOrDegenerateSample {
                n: values.len(),
                span: 0.0,
            });
        }
        values.sort_by(f64::total_cmp);
        let x_min = values[0];
        let x_max = values[values.len() - 1];
        let delta_x = x_max - x_min;
        if delta_x <= 0.0 {
            return Err(Error::EmptyOrDegenerateSample {
                n: values.len(),
                span: delta_x,
            });
        }
        Ok(Self {
            values,
            x_min,
            x_max,
            delta_x,
        })
    }

    /// Sorted sample values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn delta_x(&self) -> f64 {
        self.delta_x
    }
}

/// `n` equidistant points from `lo` to `lo + span`, with the last point
/// pinned to `hi` so both endpoints are exact.
fn equidistant(lo: f64, hi: f64, span: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo + 0.5 * span],
        _ => {
            let last = (n - 1) as f64;
            let mut pts: Vec<f64> = (0..n).map(|j| lo + span * (j as f64) / last).collect();
            pts[n - 1] = hi;
            pts
        }
    }
}

/// Equidistant discretization of `[x_min, x_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    bin_width: f64,
    delta_x: f64,
}

impl Grid {
    pub fn new(sel: &Selection, n_points: usize) -> Result<Self> {
        Self::spanning(sel.x_min(), sel.x_max(), n_points)
    }

    /// Grid over an explicit interval; `hi` must exceed `lo`.
    pub fn spanning(lo: f64, hi: f64, n_points: usize) -> Result<Self> {
        if n_points < 2 {
            return Err(Error::InvalidPointCount(n_points));
        }
        let delta_x = hi - lo;
        if !(delta_x > 0.0) || !delta_x.is_finite() {
            return Err(Error::EmptyOrDegenerateSample {
                n: 2,
                span: delta_x,
            });
        }
        Ok(Self {
            points: equidistant(lo, hi, delta_x, n_points),
            bin_width: delta_x / (n_points - 1) as f64,
            delta_x,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }

    pub fn delta_x(&self) -> f64 {
        self.delta_x
    }
}

/// Nonnegative optimization weights aligned with a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: impl Into<Vec<f64>>) -> Result<Self> {
        let weights = weights.into();
        for (index, &value) in weights.iter().enumerate() {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::NegativeWeight { index, value });
            }
        }
        Ok(Self(weights))
    }

    /// `n` weights all equal to `value`.
    pub fn constant(n: usize, value: f64) -> Self {
        assert!(value >= 0.0 && value.is_finite());
        Self(vec![value; n])
    }

    pub(crate) fn from_vec_unchecked(weights: Vec<f64>) -> Self {
        debug_assert!(weights.iter().all(|&w| w >= 0.0));
        Self(weights)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Rescale to unit sum.
    pub fn normalize(&self) -> Result<Self> {
        crate::annealer::normalize(self)
    }
}

/// Gaussian conditions: centers, widths and empirical averages.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionSet {
    centers: Vec<f64>,
    sigmas: Vec<f64>,
    f_emp: Vec<f64>,
}

impl ConditionSet {
    /// Builds `sigmas.len()` equidistant centers over the sample span and
    /// their empirical averages.
    pub fn new(sel: &Selection, sigmas: &[f64]) -> Result<Self> {
        if let Some(&s) = sigmas.iter().find(|&&s| !(s > 0.0) || !s.is_finite()) {
            return Err(Error::NonPositiveSigma(s));
        }
        let centers = equidistant(sel.x_min(), sel.x_max(), sel.delta_x(), sigmas.len());
        let f_emp = centers
            .iter()
            .zip(sigmas)
            .map(|(&c, &s)| empirical_average(sel, c, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            centers,
            sigmas: sigmas.to_vec(),
            f_emp,
        })
    }

    /// Same width for every condition.
    pub fn uniform(sel: &Selection, n_conditions: usize, sigma: f64) -> Result<Self> {
        Self::new(sel, &vec![sigma; n_conditions])
    }

    /// Assemble from precomputed parts. Used by tests and synthetic
    /// instances where the empirical averages are chosen directly.
    pub fn from_parts(centers: Vec<f64>, sigmas: Vec<f64>, f_emp: Vec<f64>) -> Result<Self> {
        if sigmas.len() != centers.len() {
            return Err(Error::LengthMismatch {
                expected: centers.len(),
                actual: sigmas.len(),
            });
        }
        if f_emp.len() != centers.len() {
            return Err(Error::LengthMismatch {
                expected: centers.len(),
                actual: f_emp.len(),
            });
        }
        if let Some(&s) = sigmas.iter().find(|&&s| !(s > 0.0)) {
            return Err(Error::NonPositiveSigma(s));
        }
        Ok(Self {
            centers,
            sigmas,
            f_emp,
        })
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn f_emp(&self) -> &[f64] {
        &self.f_emp
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    pub n_points: usize,
    pub n_conditions: usize,
    /// Entropy weight; larger values pull the estimate toward uniform.
    pub k_h: f64,
    pub smoothing_window: usize,
    pub entropy_mode: EntropyMode,
    pub schedule: AnnealSchedule,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            n_points: 1000,
            n_conditions: 101,
            k_h: 1e-3,
            smoothing_window: 10,
            entropy_mode: EntropyMode::default(),
            schedule: AnnealSchedule::default(),
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_points < 2 {
            return Err(Error::InvalidPointCount(self.n_points));
        }
        if !(self.k_h > 0.0) || !self.k_h.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "k_h must be positive, got {}",
                self.k_h
            )));
        }
        if self.n_conditions > self.n_points {
            return Err(Error::InvalidConfig(format!(
                "n_conditions ({}) exceeds n_points ({})",
                self.n_conditions, self.n_points
            )));
        }
        if self.smoothing_window == 0 || self.smoothing_window > self.n_points {
            return Err(Error::InvalidConfig(format!(
                "smoothing window must be in [1, {}], got {}",
                self.n_points, self.smoothing_window
            )));
        }
        self.schedule.validate()
    }
}

/// Converts unit-sum weights into density values: probability mass over
/// bin width.
pub fn density_from_weights(w: &WeightVector, g: &Grid) -> Result<Vec<f64>> {
    if w.len() != g.n_points() {
        return Err(Error::LengthMismatch {
            expected: g.n_points(),
            actual: w.len(),
        });
    }
    let sum = w.sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { sum });
    }
    let scale = 1.0 / g.bin_width();
    Ok(w.as_slice().iter().map(|p| p * scale).collect())
}
