//! End-to-end runs: sampling, bandwidth rules, estimation and error
//! measurement against a known density.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::annealer::{estimate, EstimateResult};
use crate::domain::{EstimatorConfig, Selection};
use crate::error::{Error, Result};
use crate::error_analysis::truncation_factors;
use crate::experiments::curvature::{local_curvature, TabulatedDensity};
use crate::experiments::test_pdf::TestPdf;
use crate::objective::CostBreakdown;
use crate::quad::trapezoid;
use crate::sigma_solver::{condition_error_sigma, pdf_error_sigma, sigma0};

/// How condition widths are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaRule {
    /// The same absolute width everywhere.
    Fixed(f64),
    /// `ΔX / k` everywhere.
    FractionOfSpan(f64),
    /// Per-center `σ₀` from the local density.
    Sigma0,
    /// Per-center `σ₁`, the real root of the density-error cubic.
    Sigma1,
    /// Per-center `σ₄`, cancelling the mean condition error.
    Sigma4,
}

impl Default for SigmaRule {
    fn default() -> Self {
        SigmaRule::FractionOfSpan(30.0)
    }
}

impl FromStr for SigmaRule {
    type Err = Error;

    /// Accepts `sigma0`, `sigma1`, `sigma4`, `span/K` and `fixed:VALUE`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("unknown sigma rule {s:?}"));
        match s {
            "sigma0" => Ok(Self::Sigma0),
            "sigma1" => Ok(Self::Sigma1),
            "sigma4" => Ok(Self::Sigma4),
            _ => {
                if let Some(k) = s.strip_prefix("span/") {
                    let k: f64 = k.parse().map_err(|_| bad())?;
                    if !(k > 0.0) {
                        return Err(bad());
                    }
                    Ok(Self::FractionOfSpan(k))
                } else if let Some(v) = s.strip_prefix("fixed:") {
                    let v: f64 = v.parse().map_err(|_| bad())?;
                    if !(v > 0.0) {
                        return Err(Error::NonPositiveSigma(v));
                    }
                    Ok(Self::Fixed(v))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for SigmaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fixed(v) => write!(f, "fixed:{v}"),
            Self::FractionOfSpan(k) => write!(f, "span/{k}"),
            Self::Sigma0 => f.write_str("sigma0"),
            Self::Sigma1 => f.write_str("sigma1"),
            Self::Sigma4 => f.write_str("sigma4"),
        }
    }
}

impl SigmaRule {
    /// Form usable inside file names.
    pub fn file_tag(&self) -> String {
        match self {
            Self::Fixed(v) => format!("fixed{v}"),
            Self::FractionOfSpan(k) => format!("span{k}"),
            other => other.to_string(),
        }
    }

    pub fn is_local(&self) -> bool {
        matches!(self, Self::Sigma0 | Self::Sigma1 | Self::Sigma4)
    }
}

/// Widths chosen for each condition, and how many fell outside the
/// corridor `[bin width, ΔX/10]` and were clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaChoice {
    pub sigmas: Vec<f64>,
    pub clamped: usize,
}

/// Computes per-condition widths for `rule`.
///
/// Local rules read `ρ(c)` and `ρ''(c)` from `density` with a central
/// stencil of step `ΔX/1000`, over a window `d = ΔX/10`, and take `C₁`, `C₂`
/// at the provisional width `ΔX/30`. Centers without an admissible value
/// get the upper corridor bound.
pub fn choose_sigmas<F: Fn(f64) -> f64>(
    rule: SigmaRule,
    sel: &Selection,
    config: &EstimatorConfig,
    density: F,
    support: (f64, f64),
) -> Result<SigmaChoice> {
    let n_c = config.n_conditions;
    let span = sel.delta_x();
    match rule {
        SigmaRule::Fixed(v) => {
            return Ok(SigmaChoice {
                sigmas: vec![v; n_c],
                clamped: 0,
            })
        }
        SigmaRule::FractionOfSpan(k) => {
            return Ok(SigmaChoice {
                sigmas: vec![span / k; n_c],
                clamped: 0,
            })
        }
        _ => {}
    }
    let lo = span / (config.n_points - 1) as f64;
    let hi = span / 10.0;
    let d = span / 10.0;
    let h = span * 1e-3;
    let factors = truncation_factors(span / 30.0, d)?;
    let (c1, c2) = (factors.c1, factors.c2);
    let centers = crate::domain::ConditionSet::from_parts(
        (0..n_c)
            .map(|k| {
                if n_c == 1 {
                    sel.x_min() + 0.5 * span
                } else {
                    sel.x_min() + span * k as f64 / (n_c - 1) as f64
                }
            })
            .collect(),
        vec![1.0; n_c],
        vec![1.0; n_c],
    )?;
    let mut clamped = 0;
    let mut sigmas = Vec::with_capacity(n_c);
    for &c in centers.centers() {
        let at = c.clamp(support.0 + h, support.1 - h);
        let (rho, rho2) = local_curvature(&density, support, at, h)?;
        let raw = if rho > 0.0 {
            match rule {
                SigmaRule::Sigma0 => Some(sigma0(rho, c1)),
                SigmaRule::Sigma1 => {
                    let sol = pdf_error_sigma(rho, rho2, c1, c2)?;
                    let first = sol.roots[0];
                    if first.im.abs() < crate::sigma_solver::REAL_TOL && first.re > 0.0 {
                        Some(first.re)
                    } else {
                        sol.real_positive_roots.first().copied()
                    }
                }
                SigmaRule::Sigma4 => condition_error_sigma(rho, rho2, d, c1, c2).ok(),
                _ => unreachable!(),
            }
        } else {
            None
        };
        let s = match raw {
            Some(s) if s >= lo && s <= hi => s,
            Some(s) => {
                clamped += 1;
                s.clamp(lo, hi)
            }
            None => {
                clamped += 1;
                hi
            }
        };
        sigmas.push(s);
    }
    Ok(SigmaChoice { sigmas, clamped })
}

/// Mixes a base seed with a replicate index and a stream tag (splitmix64).
pub fn derive_seed(base: u64, replicate: u64, stream: u64) -> u64 {
    let mut z = base
        .wrapping_add(replicate.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(stream.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const SAMPLE_STREAM: u64 = 1;
const ANNEAL_STREAM: u64 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub n_samples: usize,
    pub sigma_rule: SigmaRule,
    pub config: EstimatorConfig,
    pub seed: u64,
    pub replicates: usize,
}

impl RunSpec {
    pub fn new(
        n_samples: usize,
        sigma_rule: SigmaRule,
        config: EstimatorConfig,
        seed: u64,
    ) -> Self {
        Self {
            n_samples,
            sigma_rule,
            config,
            seed,
            replicates: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub n_samples: usize,
    pub sigma_rule: SigmaRule,
    pub replicate: usize,
    pub base_seed: u64,
    pub sample_seed: Option<u64>,
    /// Configuration actually used, including the annealing seed.
    pub config: EstimatorConfig,
    pub sigma_clamped: usize,
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    pub true_density: Option<Vec<f64>>,
    pub centers: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub f_emp: Vec<f64>,
    pub epsilon: Vec<f64>,
    /// `∫|ρ̂ − ρ|` by the trapezoidal rule on the grid.
    pub l1_error: Option<f64>,
    pub linf_error: Option<f64>,
    pub final_cost: CostBreakdown,
    pub cost_trace: Vec<f64>,
    pub wall_time: Duration,
}

impl RunReport {
    /// Key/value pairs that determine the run, in a fixed order.
    pub fn parameters(&self) -> Vec<(&'static str, String)> {
        let c = &self.config;
        let s = &c.schedule;
        let mut p = vec![
            ("n_samples", self.n_samples.to_string()),
            ("sigma_rule", self.sigma_rule.to_string()),
            ("seed", self.base_seed.to_string()),
            ("replicate", self.replicate.to_string()),
        ];
        if let Some(ss) = self.sample_seed {
            p.push(("sample_seed", ss.to_string()));
        }
        p.extend([
            ("n_points", c.n_points.to_string()),
            ("n_conditions", c.n_conditions.to_string()),
            ("k_h", c.k_h.to_string()),
            ("smoothing_window", c.smoothing_window.to_string()),
            ("entropy_mode", c.entropy_mode.to_string()),
            ("t_initial", s.t_initial.to_string()),
            ("cooling", s.cooling.to_string()),
            ("steps_per_temp", s.steps_for(c.n_points).to_string()),
            ("t_min", s.t_min.to_string()),
            ("step_size", s.step_size.to_string()),
            ("anneal_seed", s.seed.to_string()),
            ("sigma_clamped", self.sigma_clamped.to_string()),
            ("final_cost", self.final_cost.total.to_string()),
        ]);
        if let (Some(l1), Some(linf)) = (self.l1_error, self.linf_error) {
            p.push(("l1_error", l1.to_string()));
            p.push(("linf_error", linf.to_string()));
        }
        p
    }

    /// Median `ε` over centers where the true density is at least
    /// `fraction` of its maximum, skipping undefined (NaN) entries. `None`
    /// without a known truth.
    pub fn median_epsilon_where_dense(&self, pdf: &TestPdf, fraction: f64) -> Option<f64> {
        self.true_density.as_ref()?;
        let rho: Vec<f64> = self.centers.iter().map(|&c| pdf.density(c)).collect();
        let max = rho.iter().cloned().fold(0.0, f64::max);
        let mut eps: Vec<f64> = self
            .epsilon
            .iter()
            .zip(&rho)
            .filter(|(e, &r)| r >= fraction * max && !e.is_nan())
            .map(|(&e, _)| e)
            .collect();
        if eps.is_empty() {
            return None;
        }
        eps.sort_by(f64::total_cmp);
        Some(median_sorted(&eps))
    }
}

pub(crate) fn median_sorted(v: &[f64]) -> f64 {
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Estimates from a given sample. With `truth`, the report carries the
/// true density and the l1/l∞ errors.
pub fn estimate_sample(
    sel: &Selection,
    rule: SigmaRule,
    config: &EstimatorConfig,
    truth: Option<&TestPdf>,
) -> Result<(EstimateResult, SigmaChoice)> {
    let choice = match (rule.is_local(), truth) {
        (false, _) => choose_sigmas(rule, sel, config, |_| 0.0, (f64::MIN, f64::MAX))?,
        (true, Some(pdf)) => choose_sigmas(rule, sel, config, |x| pdf.density(x), (0.0, 1.0))?,
        (true, None) => {
            let pilot_sigmas = vec![sel.delta_x() / 30.0; config.n_conditions];
            let pilot = estimate(sel, config, &pilot_sigmas)?;
            let table = TabulatedDensity::new(pilot.grid.points().to_vec(), pilot.density.clone())?;
            choose_sigmas(rule, sel, config, |x| table.eval(x), table.support())?
        }
    };
    Ok((estimate(sel, config, &choice.sigmas)?, choice))
}

/// Where a run sits in an experiment.
struct RunId {
    n_samples: usize,
    replicate: usize,
    base_seed: u64,
    sample_seed: Option<u64>,
}

fn report_from(
    result: EstimateResult,
    choice: SigmaChoice,
    id: RunId,
    rule: SigmaRule,
    config: EstimatorConfig,
    truth: Option<&TestPdf>,
    wall_time: Duration,
) -> RunReport {
    let grid = result.grid.points().to_vec();
    let true_density: Option<Vec<f64>> =
        truth.map(|pdf| grid.iter().map(|&x| pdf.density(x)).collect());
    let (l1_error, linf_error) = match &true_density {
        Some(t) => {
            let diff: Vec<f64> = result
                .density
                .iter()
                .zip(t)
                .map(|(a, b)| (a - b).abs())
                .collect();
            (
                Some(trapezoid(&grid, &diff)),
                Some(diff.iter().cloned().fold(0.0, f64::max)),
            )
        }
        None => (None, None),
    };
    RunReport {
        n_samples: id.n_samples,
        sigma_rule: rule,
        replicate: id.replicate,
        base_seed: id.base_seed,
        sample_seed: id.sample_seed,
        config,
        sigma_clamped: choice.clamped,
        grid,
        density: result.density,
        true_density,
        centers: result.conditions.centers().to_vec(),
        sigmas: choice.sigmas,
        f_emp: result.conditions.f_emp().to_vec(),
        epsilon: result.epsilon,
        l1_error,
        linf_error,
        final_cost: result.final_cost,
        cost_trace: result.cost_trace,
        wall_time,
    }
}

/// Estimates a user-supplied sample (no known truth).
pub fn run_on_sample(
    sel: &Selection,
    rule: SigmaRule,
    config: &EstimatorConfig,
) -> Result<RunReport> {
    let start = Instant::now();
    let (result, choice) = estimate_sample(sel, rule, config, None)?;
    Ok(report_from(
        result,
        choice,
        RunId {
            n_samples: sel.n(),
            replicate: 0,
            base_seed: config.schedule.seed,
            sample_seed: None,
        },
        rule,
        config.clone(),
        None,
        start.elapsed(),
    ))
}

/// One replicate of a spec on the test density.
pub fn run_replicate(spec: &RunSpec, pdf: &TestPdf, replicate: usize) -> Result<RunReport> {
    let start = Instant::now();
    let sample_seed = derive_seed(spec.seed, replicate as u64, SAMPLE_STREAM);
    let sel = pdf.sample(spec.n_samples, sample_seed)?;
    let mut config = spec.config.clone();
    config.schedule.seed = derive_seed(spec.seed, replicate as u64, ANNEAL_STREAM);
    let (result, choice) = estimate_sample(&sel, spec.sigma_rule, &config, Some(pdf))?;
    Ok(report_from(
        result,
        choice,
        RunId {
            n_samples: spec.n_samples,
            replicate,
            base_seed: spec.seed,
            sample_seed: Some(sample_seed),
        },
        spec.sigma_rule,
        config,
        Some(pdf),
        start.elapsed(),
    ))
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub reports: Vec<RunReport>,
    pub l1_mean: f64,
    pub l1_sd: f64,
}

/// Runs all replicates of `spec` concurrently; reports come back in
/// replicate order.
pub fn run(spec: &RunSpec, pdf: &TestPdf) -> Result<RunSummary> {
    if spec.replicates == 0 {
        return Err(Error::InvalidConfig("replicates must be at least 1".into()));
    }
    if spec.n_samples < 2 {
        return Err(Error::InvalidCount(spec.n_samples));
    }
    spec.config.validate()?;
    let reports = (0..spec.replicates)
        .into_par_iter()
        .map(|r| run_replicate(spec, pdf, r))
        .collect::<Result<Vec<_>>>()?;
    let l1: Vec<f64> = reports.iter().filter_map(|r| r.l1_error).collect();
    let n = l1.len() as f64;
    let l1_mean = l1.iter().sum::<f64>() / n;
    let l1_sd = if l1.len() > 1 {
        (l1.iter().map(|x| (x - l1_mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(RunSummary {
        reports,
        l1_mean,
        l1_sd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_rule_round_trip() {
        for s in ["sigma0", "sigma1", "sigma4", "span/30", "fixed:0.01"] {
            assert_eq!(s.parse::<SigmaRule>().unwrap().to_string(), s);
        }
        assert!("span/0".parse::<SigmaRule>().is_err());
        assert!("fixed:-1".parse::<SigmaRule>().is_err());
        assert!("bogus".parse::<SigmaRule>().is_err());
        assert_eq!(SigmaRule::FractionOfSpan(30.0).file_tag(), "span30");
    }

    #[test]
    fn derived_seeds_differ() {
        let a = derive_seed(7, 0, SAMPLE_STREAM);
        let b = derive_seed(7, 1, SAMPLE_STREAM);
        let c = derive_seed(7, 0, ANNEAL_STREAM);
        assert!(a != b && a != c && b != c);
        assert_eq!(a, derive_seed(7, 0, SAMPLE_STREAM));
    }

    #[test]
    fn local_rules_stay_in_corridor() {
        let pdf = TestPdf::new();
        let sel = pdf.sample(1000, 5).unwrap();
        let config = EstimatorConfig::default();
        for rule in [SigmaRule::Sigma0, SigmaRule::Sigma1, SigmaRule::Sigma4] {
            let ch = choose_sigmas(rule, &sel, &config, |x| pdf.density(x), (0.0, 1.0)).unwrap();
            assert_eq!(ch.sigmas.len(), 101);
            let hi = sel.delta_x() / 10.0;
            assert!(ch.sigmas.iter().all(|&s| s > 0.0 && s <= hi));
        }
        // Around the tallest mode sigma4 is well inside the corridor.
        let ch = choose_sigmas(
            SigmaRule::Sigma4,
            &sel,
            &config,
            |x| pdf.density(x),
            (0.0, 1.0),
        )
        .unwrap();
        let span = sel.delta_x();
        let k = ((0.859 - sel.x_min()) / span * 100.0).round() as usize;
        assert!(ch.sigmas[k] > span / 60.0 && ch.sigmas[k] < span / 20.0);
    }
}
