//! Error of the estimate on the benchmark density as the sample grows,
//! averaged over replicates.
//!
//! cargo run --release --example consistency_sweep -- [replicates]

use gaussian_maxent::domain::EstimatorConfig;
use gaussian_maxent::experiments::run::{run, RunSpec, SigmaRule};
use gaussian_maxent::experiments::test_pdf::TestPdf;

fn main() -> gaussian_maxent::Result<()> {
    let replicates: usize = std::env::args()
        .nth(1)
        .map_or(5, |a| a.parse().expect("replicates"));
    let pdf = TestPdf::new();
    println!("{:>7} {:>9} {:>9}", "N", "mean l1", "sd l1");
    for n in [100, 300, 1000, 3000, 10_000] {
        let mut spec = RunSpec::new(
            n,
            SigmaRule::FractionOfSpan(30.0),
            EstimatorConfig::default(),
            42,
        );
        spec.replicates = replicates;
        let summary = run(&spec, &pdf)?;
        println!("{n:>7} {:>9.4} {:>9.4}", summary.l1_mean, summary.l1_sd);
    }
    Ok(())
}
