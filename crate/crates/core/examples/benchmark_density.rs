//! Reference run on the six-bump benchmark density: l1 error, located
//! maxima and the relative condition errors.
//!
//! cargo run --release --example benchmark_density -- [N] [seed]

use gaussian_maxent::domain::EstimatorConfig;
use gaussian_maxent::experiments::run::{run_replicate, RunSpec, SigmaRule};
use gaussian_maxent::experiments::test_pdf::TestPdf;

fn main() -> gaussian_maxent::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(1000, |a| a.parse().expect("N"));
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));

    let pdf = TestPdf::new();
    let spec = RunSpec::new(
        n,
        SigmaRule::FractionOfSpan(30.0),
        EstimatorConfig::default(),
        seed,
    );
    let report = run_replicate(&spec, &pdf, 0)?;

    println!(
        "N = {n}, seed = {seed}, {:.2}s",
        report.wall_time.as_secs_f64()
    );
    println!(
        "l1 = {:.4}, sup error = {:.4}",
        report.l1_error.unwrap(),
        report.linf_error.unwrap()
    );
    for m in pdf.modes() {
        let j = (0..report.grid.len())
            .filter(|&j| (report.grid[j] - m).abs() <= 0.02)
            .max_by(|&a, &b| report.density[a].total_cmp(&report.density[b]))
            .unwrap();
        println!(
            "true maximum {m:.4}: estimate peaks at {:.4}",
            report.grid[j]
        );
    }
    println!(
        "median eps where the density is at least 10% of its maximum: {:.2e}",
        report.median_epsilon_where_dense(&pdf, 0.1).unwrap()
    );
    println!("{:>8} {:>10} {:>10}", "c", "rho(c)", "eps");
    for (k, c) in report.centers.iter().enumerate().step_by(10) {
        println!(
            "{c:>8.3} {:>10.4} {:>10.2e}",
            pdf.density(*c),
            report.epsilon[k]
        );
    }
    Ok(())
}
