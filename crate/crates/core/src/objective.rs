//! Gaussian conditions, empirical and simulated averages, entropy, and the
//! relaxed cost minimized by the annealer.

use crate::domain::{ConditionSet, Grid, Selection, WeightVector};
use crate::error::{Error, Result};

/// Which weights the entropy term is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntropyMode {
    /// `H(p / Σp)`: the entropy of the distribution the weights describe.
    #[default]
    Normalized,
    /// `H(p)` on the raw weights, which live on the `Σp ≈ N_p` scale.
    Raw,
}

impl std::str::FromStr for EntropyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normalized" => Ok(Self::Normalized),
            "raw" => Ok(Self::Raw),
            other => Err(Error::InvalidConfig(format!(
                "unknown entropy mode {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for EntropyMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Normalized => "normalized",
            Self::Raw => "raw",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    /// `Σ_k (F_k^sim − F_k^emp)²`
    pub condition_term: f64,
    pub entropy: f64,
    pub total: f64,
}

impl CostBreakdown {
    pub fn new(condition_term: f64, entropy: f64, k_h: f64) -> Self {
        Self {
            condition_term,
            entropy,
            total: condition_term - k_h * entropy,
        }
    }
}

#[inline]
pub fn gaussian(x: f64) -> f64 {
    (-0.5 * x * x).exp()
}

pub fn condition_value(x: f64, c: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::NonPositiveSigma(sigma));
    }
    Ok(gaussian((x - c) / sigma))
}

/// Sample mean of the condition function centered at `c`.
pub fn empirical_average(sel: &Selection, c: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::NonPositiveSigma(sigma));
    }
    let sum: f64 = sel
        .values()
        .iter()
        .map(|&x| gaussian((x - c) / sigma))
        .sum();
    Ok(sum / sel.n() as f64)
}

/// `(1/N_p) Σ_j p_j f(x_j)` on the weights as given (no normalization).
pub fn simulated_average(w: &WeightVector, g: &Grid, c: f64, sigma: f64) -> Result<f64> {
    check_len(w, g)?;
    if !(sigma > 0.0) {
        return Err(Error::NonPositiveSigma(sigma));
    }
    let sum: f64 = w
        .as_slice()
        .iter()
        .zip(g.points())
        .map(|(&p, &x)| p * gaussian((x - c) / sigma))
        .sum();
    Ok(sum / g.n_points() as f64)
}

#[inline]
pub(crate) fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Shannon entropy `−Σ p ln p` with `0 ln 0 = 0`.
pub fn entropy(w: &WeightVector) -> f64 {
    -w.as_slice().iter().map(|&p| xlnx(p)).sum::<f64>()
}

/// Entropy of `p / Σp`, computed as `ln S − (Σ p ln p) / S`.
pub fn normalized_entropy(w: &WeightVector) -> Result<f64> {
    let s = w.sum();
    if !(s > 0.0) {
        return Err(Error::AllZeroWeights);
    }
    let t: f64 = w.as_slice().iter().map(|&p| xlnx(p)).sum();
    Ok(entropy_from_sums(s, t))
}

#[inline]
pub(crate) fn entropy_from_sums(sum: f64, sum_xlnx: f64) -> f64 {
    sum.ln() - sum_xlnx / sum
}

pub fn entropy_in_mode(w: &WeightVector, mode: EntropyMode) -> Result<f64> {
    match mode {
        EntropyMode::Raw => Ok(entropy(w)),
        EntropyMode::Normalized => normalized_entropy(w),
    }
}

/// Simulated averages for every condition.
pub fn simulated_averages(w: &WeightVector, g: &Grid, cs: &ConditionSet) -> Result<Vec<f64>> {
    cs.centers()
        .iter()
        .zip(cs.sigmas())
        .map(|(&c, &s)| simulated_average(w, g, c, s))
        .collect()
}

/// The relaxed cost `E = Σ_k (F_k^sim − F_k^emp)² − k_H·H`.
pub fn cost(
    w: &WeightVector,
    g: &Grid,
    cs: &ConditionSet,
    k_h: f64,
    mode: EntropyMode,
) -> Result<CostBreakdown> {
    let sim = simulated_averages(w, g, cs)?;
    let condition_term = sim
        .iter()
        .zip(cs.f_emp())
        .map(|(s, e)| (s - e) * (s - e))
        .sum();
    Ok(CostBreakdown::new(
        condition_term,
        entropy_in_mode(w, mode)?,
        k_h,
    ))
}

/// `ε(c_k) = |F_k^sim − F_k^emp| / F_k^emp`, on the weights as given.
pub fn relative_condition_errors(
    w: &WeightVector,
    g: &Grid,
    cs: &ConditionSet,
) -> Result<Vec<f64>> {
    let sim = simulated_averages(w, g, cs)?;
    sim.iter()
        .zip(cs.f_emp())
        .enumerate()
        .map(|(k, (s, &e))| {
            if e == 0.0 {
                Err(Error::ZeroEmpiricalAverage(k))
            } else {
                Ok((s - e).abs() / e)
            }
        })
        .collect()
}

fn check_len(w: &WeightVector, g: &Grid) -> Result<()> {
    if w.len() != g.n_points() {
        return Err(Error::LengthMismatch {
            expected: g.n_points(),
            actual: w.len(),
        });
    }
    Ok(())
}

/// `f_k(x_j) / N_p` for every condition and grid point, row-major by
/// condition. Column `j` holds everything a change to `p_j` touches.
#[derive(Debug, Clone)]
pub struct ConditionMatrix {
    n_conditions: usize,
    n_points: usize,
    /// Stored column-major (grid point outer) so one weight update reads a
    /// contiguous slice.
    by_point: Vec<f64>,
}

impl ConditionMatrix {
    pub fn new(g: &Grid, cs: &ConditionSet) -> Self {
        let n_points = g.n_points();
        let n_conditions = cs.len();
        let inv = 1.0 / n_points as f64;
        let mut by_point = Vec::with_capacity(n_points * n_conditions);
        for &x in g.points() {
            for (&c, &s) in cs.centers().iter().zip(cs.sigmas()) {
                by_point.push(gaussian((x - c) / s) * inv);
            }
        }
        Self {
            n_conditions,
            n_points,
            by_point,
        }
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[f64] {
        &self.by_point[j * self.n_conditions..(j + 1) * self.n_conditions]
    }

    pub fn n_conditions(&self) -> usize {
        self.n_conditions
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Simulated averages for all conditions.
    pub fn apply(&self, weights: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_conditions];
        for (j, &p) in weights.iter().enumerate() {
            if p != 0.0 {
                for (o, &m) in out.iter_mut().zip(self.column(j)) {
                    *o += p * m;
                }
            }
        }
        out
    }
}
