//! Simulated-annealing minimization of the relaxed cost, and the
//! post-processing that turns the optimized weights into a density.
//!
//! Moves perturb one weight at a time by a uniform amount in
//! `[-step_size, step_size]`, reflecting at zero. The simulated averages and
//! the entropy sums are updated incrementally, so a move costs `O(N_c)`.
//! The full state is recomputed at every temperature level to stop
//! floating-point drift.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::domain::{
    density_from_weights, ConditionSet, EstimatorConfig, Grid, Selection, WeightVector,
};
use crate::error::{Error, Result};
use crate::objective::{
    entropy_from_sums, simulated_averages, xlnx, ConditionMatrix, CostBreakdown, EntropyMode,
};

#[derive(Debug, Clone, PartialEq)]
pub struct AnnealSchedule {
    pub t_initial: f64,
    /// Geometric cooling factor per temperature level.
    pub cooling: f64,
    /// Moves per temperature level; `None` means `20 × N_p`.
    pub steps_per_temp: Option<usize>,
    pub t_min: f64,
    /// Largest additive change to a single weight.
    pub step_size: f64,
    pub seed: u64,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        Self {
            t_initial: 1e-6,
            cooling: 0.95,
            steps_per_temp: None,
            t_min: 1e-12,
            step_size: 0.5,
            seed: 0,
        }
    }
}

impl AnnealSchedule {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSchedule(msg));
        if !(self.t_initial > 0.0) || !self.t_initial.is_finite() {
            return bad(format!(
                "t_initial must be positive, got {}",
                self.t_initial
            ));
        }
        if !(self.t_min > 0.0) || self.t_min >= self.t_initial {
            return bad(format!(
                "t_min must be in (0, t_initial), got {} with t_initial {}",
                self.t_min, self.t_initial
            ));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return bad(format!("cooling must be in (0, 1), got {}", self.cooling));
        }
        if self.steps_per_temp == Some(0) {
            return bad("steps_per_temp must be at least 1".into());
        }
        if !(self.step_size > 0.0) || !self.step_size.is_finite() {
            return bad(format!(
                "step_size must be positive, got {}",
                self.step_size
            ));
        }
        Ok(())
    }

    pub fn steps_for(&self, n_points: usize) -> usize {
        self.steps_per_temp.unwrap_or(20 * n_points)
    }

    /// Number of temperature levels the schedule visits.
    pub fn levels(&self) -> usize {
        let mut t = self.t_initial;
        let mut n = 0;
        while t >= self.t_min {
            n += 1;
            t *= self.cooling;
        }
        n
    }
}

/// Output of a single annealing run.
#[derive(Debug, Clone)]
pub struct AnnealOutcome {
    /// Best weights seen at a temperature-level boundary.
    pub weights: WeightVector,
    pub initial_cost: CostBreakdown,
    pub final_cost: CostBreakdown,
    /// Current accepted cost at the end of each temperature level, preceded
    /// by the initial cost.
    pub cost_trace: Vec<f64>,
    pub accepted_moves: u64,
    pub total_moves: u64,
}

/// Mutable annealing state with incrementally maintained sums.
struct State<'a> {
    matrix: &'a ConditionMatrix,
    f_emp: &'a [f64],
    k_h: f64,
    mode: EntropyMode,
    weights: Vec<f64>,
    /// `F_k^sim − F_k^emp`
    residuals: Vec<f64>,
    condition_term: f64,
    sum: f64,
    sum_xlnx: f64,
}

impl<'a> State<'a> {
    fn new(
        matrix: &'a ConditionMatrix,
        f_emp: &'a [f64],
        k_h: f64,
        mode: EntropyMode,
        weights: Vec<f64>,
    ) -> Self {
        let mut s = Self {
            matrix,
            f_emp,
            k_h,
            mode,
            weights,
            residuals: Vec::new(),
            condition_term: 0.0,
            sum: 0.0,
            sum_xlnx: 0.0,
        };
        s.recompute();
        s
    }

    fn recompute(&mut self) {
        self.residuals = self.matrix.apply(&self.weights);
        for (r, e) in self.residuals.iter_mut().zip(self.f_emp) {
            *r -= e;
        }
        self.condition_term = self.residuals.iter().map(|r| r * r).sum();
        self.sum = self.weights.iter().sum();
        self.sum_xlnx = self.weights.iter().map(|&p| xlnx(p)).sum();
    }

    fn entropy_of(&self, sum: f64, sum_xlnx: f64) -> f64 {
        match self.mode {
            EntropyMode::Raw => -sum_xlnx,
            EntropyMode::Normalized => {
                if sum > 0.0 {
                    entropy_from_sums(sum, sum_xlnx)
                } else {
                    0.0
                }
            }
        }
    }

    fn breakdown(&self) -> CostBreakdown {
        CostBreakdown::new(
            self.condition_term,
            self.entropy_of(self.sum, self.sum_xlnx),
            self.k_h,
        )
    }

    fn total(&self) -> f64 {
        self.condition_term - self.k_h * self.entropy_of(self.sum, self.sum_xlnx)
    }

    /// Cost change if weight `j` became `new`, with the pieces needed to
    /// commit it.
    fn propose(&self, j: usize, new: f64) -> Proposal {
        let old = self.weights[j];
        let delta = new - old;
        let d_cond: f64 = self
            .matrix
            .column(j)
            .iter()
            .zip(&self.residuals)
            .map(|(&m, &r)| {
                let a = delta * m;
                a * (2.0 * r + a)
            })
            .sum();
        let sum = self.sum + delta;
        let sum_xlnx = self.sum_xlnx - xlnx(old) + xlnx(new);
        let d_entropy = self.entropy_of(sum, sum_xlnx) - self.entropy_of(self.sum, self.sum_xlnx);
        Proposal {
            j,
            new,
            delta,
            d_cond,
            sum,
            sum_xlnx,
            d_total: d_cond - self.k_h * d_entropy,
        }
    }

    fn commit(&mut self, p: &Proposal) {
        for (r, &m) in self.residuals.iter_mut().zip(self.matrix.column(p.j)) {
            *r += p.delta * m;
        }
        self.weights[p.j] = p.new;
        self.condition_term += p.d_cond;
        self.sum = p.sum;
        self.sum_xlnx = p.sum_xlnx;
    }
}

struct Proposal {
    j: usize,
    new: f64,
    delta: f64,
    d_cond: f64,
    sum: f64,
    sum_xlnx: f64,
    d_total: f64,
}

/// Minimizes the relaxed cost over nonnegative weights, starting from all
/// weights equal to one. Returns the best state seen at a level boundary.
pub fn anneal(g: &Grid, cs: &ConditionSet, config: &EstimatorConfig) -> Result<AnnealOutcome> {
    anneal_from(g, cs, config, WeightVector::constant(g.n_points(), 1.0))
}

/// [`anneal`] from an explicit starting point.
pub fn anneal_from(
    g: &Grid,
    cs: &ConditionSet,
    config: &EstimatorConfig,
    start: WeightVector,
) -> Result<AnnealOutcome> {
    let sched = &config.schedule;
    sched.validate()?;
    if !(config.k_h > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "k_h must be positive, got {}",
            config.k_h
        )));
    }
    if start.len() != g.n_points() {
        return Err(Error::LengthMismatch {
            expected: g.n_points(),
            actual: start.len(),
        });
    }
    let matrix = ConditionMatrix::new(g, cs);
    let mut state = State::new(
        &matrix,
        cs.f_emp(),
        config.k_h,
        config.entropy_mode,
        start.into_vec(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(sched.seed);

    let n = g.n_points();
    let steps = sched.steps_for(n);
    let initial_cost = state.breakdown();
    let mut best_cost = initial_cost;
    let mut best_weights = state.weights.clone();
    let mut cost_trace = vec![initial_cost.total];
    let (mut accepted, mut total) = (0u64, 0u64);

    let mut t = sched.t_initial;
    while t >= sched.t_min {
        for _ in 0..steps {
            let j = rng.gen_range(0..n);
            let step = rng.gen_range(-sched.step_size..=sched.step_size);
            let new = (state.weights[j] + step).abs();
            let p = state.propose(j, new);
            total += 1;
            if p.d_total <= 0.0 || rng.gen::<f64>() < (-p.d_total / t).exp() {
                state.commit(&p);
                accepted += 1;
            }
        }
        state.recompute();
        let current = state.breakdown();
        cost_trace.push(current.total);
        if current.total < best_cost.total {
            best_cost = current;
            best_weights.copy_from_slice(&state.weights);
        }
        t *= sched.cooling;
    }
    debug_assert!((state.total() - state.breakdown().total).abs() < 1e-9);

    Ok(AnnealOutcome {
        weights: WeightVector::from_vec_unchecked(best_weights),
        initial_cost,
        final_cost: best_cost,
        cost_trace,
        accepted_moves: accepted,
        total_moves: total,
    })
}

/// Divides every weight by the total.
pub fn normalize(w: &WeightVector) -> Result<WeightVector> {
    let sum = w.sum();
    if !(sum > 0.0) {
        return Err(Error::AllZeroWeights);
    }
    Ok(WeightVector::from_vec_unchecked(
        w.as_slice().iter().map(|p| p / sum).collect(),
    ))
}

/// Centered moving average. Near the ends the window shrinks symmetrically
/// around the point, so the first and last values pass through unchanged.
pub fn moving_average(values: &[f64], window: usize) -> Result<Vec<f64>> {
    if window == 0 {
        return Err(Error::InvalidConfig(
            "moving-average window must be at least 1".into(),
        ));
    }
    if window > values.len() {
        return Err(Error::WindowTooLarge {
            window,
            len: values.len(),
        });
    }
    let left = (window - 1) / 2;
    let right = window / 2;
    let n = values.len();
    Ok((0..n)
        .map(|j| {
            let edge = j.min(n - 1 - j);
            let lo = j - left.min(edge);
            let hi = j + right.min(edge);
            values[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect())
}

/// Everything an estimation run produces.
#[derive(Debug, Clone)]
pub struct EstimateResult {
    pub grid: Grid,
    pub conditions: ConditionSet,
    /// Optimized weights before normalization.
    pub raw_weights: WeightVector,
    /// Smoothed, unit-sum probabilities on the grid.
    pub probabilities: WeightVector,
    pub density: Vec<f64>,
    /// Relative condition errors; NaN where the empirical average
    /// underflowed to zero (narrow condition far from every sample point).
    pub epsilon: Vec<f64>,
    pub cost_trace: Vec<f64>,
    pub final_cost: CostBreakdown,
}

/// Full pipeline: grid and conditions, annealing, relative condition
/// errors on the raw weights, normalization, smoothing and
/// re-normalization.
pub fn estimate(
    sel: &Selection,
    config: &EstimatorConfig,
    sigmas: &[f64],
) -> Result<EstimateResult> {
    config.validate()?;
    if sigmas.len() != config.n_conditions {
        return Err(Error::LengthMismatch {
            expected: config.n_conditions,
            actual: sigmas.len(),
        });
    }
    let grid = Grid::new(sel, config.n_points)?;
    let conditions = ConditionSet::new(sel, sigmas)?;
    let outcome = anneal(&grid, &conditions, config)?;
    let epsilon = simulated_averages(&outcome.weights, &grid, &conditions)?
        .iter()
        .zip(conditions.f_emp())
        .map(|(s, &e)| {
            if e == 0.0 {
                f64::NAN
            } else {
                (s - e).abs() / e
            }
        })
        .collect();
    let probs = normalize(&outcome.weights)?;
    let smoothed = moving_average(probs.as_slice(), config.smoothing_window)?;
    let probabilities = normalize(&WeightVector::from_vec_unchecked(smoothed))?;
    let density = density_from_weights(&probabilities, &grid)?;
    Ok(EstimateResult {
        grid,
        conditions,
        raw_weights: outcome.weights,
        probabilities,
        density,
        epsilon,
        cost_trace: outcome.cost_trace,
        final_cost: outcome.final_cost,
    })
}
