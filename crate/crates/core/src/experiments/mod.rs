//! Experiment harness on the benchmark density: sampling, runs, curvature
//! helpers and CSV output.

pub mod curvature;
pub mod figures;
pub mod run;
pub mod test_pdf;

use rayon::prelude::*;

use crate::domain::EstimatorConfig;
use crate::error::Result;
use run::{RunReport, RunSpec, SigmaRule};
use test_pdf::TestPdf;

/// Runs behind the `paper-fig2` command: `N = 100` under several width rules,
/// then `N ∈ {1000, 10000}` at `σ = ΔX/30`.
pub fn figure2_specs(config: &EstimatorConfig, seed: u64) -> Vec<RunSpec> {
    let mut specs: Vec<RunSpec> = [
        SigmaRule::Sigma1,
        SigmaRule::Sigma4,
        SigmaRule::FractionOfSpan(30.0),
    ]
    .into_iter()
    .map(|rule| RunSpec::new(100, rule, config.clone(), seed))
    .collect();
    for n in [1000, 10_000] {
        specs.push(RunSpec::new(
            n,
            SigmaRule::FractionOfSpan(30.0),
            config.clone(),
            seed,
        ));
    }
    specs
}

/// Every combination of sample size, width rule and replicate, run
/// concurrently. Reports are ordered by size, then rule, then replicate.
pub fn sweep(
    sizes: &[usize],
    rules: &[SigmaRule],
    config: &EstimatorConfig,
    seed: u64,
    replicates: usize,
    pdf: &TestPdf,
) -> Result<Vec<RunReport>> {
    let jobs: Vec<(RunSpec, usize)> = sizes
        .iter()
        .flat_map(|&n| rules.iter().map(move |&rule| (n, rule)))
        .flat_map(|(n, rule)| {
            let spec = RunSpec {
                replicates,
                ..RunSpec::new(n, rule, config.clone(), seed)
            };
            (0..replicates).map(move |r| (spec.clone(), r))
        })
        .collect();
    jobs.par_iter()
        .map(|(spec, r)| run::run_replicate(spec, pdf, *r))
        .collect()
}
