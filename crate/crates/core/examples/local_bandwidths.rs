//! Per-center widths from the curvature-based rules compared with a
//! fixed fraction of the span, on a small sample where the choice matters.
//!
//! cargo run --release --example local_bandwidths -- [seed]

use gaussian_maxent::domain::EstimatorConfig;
use gaussian_maxent::experiments::run::{run_replicate, RunSpec, SigmaRule};
use gaussian_maxent::experiments::test_pdf::TestPdf;

fn main() -> gaussian_maxent::Result<()> {
    let seed: u64 = std::env::args()
        .nth(1)
        .map_or(0, |a| a.parse().expect("seed"));
    let pdf = TestPdf::new();
    for rule in [
        SigmaRule::FractionOfSpan(30.0),
        SigmaRule::Sigma0,
        SigmaRule::Sigma1,
        SigmaRule::Sigma4,
    ] {
        let spec = RunSpec::new(100, rule, EstimatorConfig::default(), seed);
        let r = run_replicate(&spec, &pdf, 0)?;
        let (lo, hi) = r
            .sigmas
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(a, b), &s| (a.min(s), b.max(s)));
        println!(
            "{:<8} sigma in [{lo:.4}, {hi:.4}], {:>3} clamped, l1 = {:.3}",
            rule.to_string(),
            r.sigma_clamped,
            r.l1_error.unwrap()
        );
    }
    Ok(())
}
