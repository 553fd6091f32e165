//! Optimal condition widths as functions of the local curvature: the
//! roots of the density-error cubic and the width cancelling the mean
//! condition error.
//!
//! cargo run --example bandwidth_curves

use gaussian_maxent::sigma_solver::{
    condition_error_sigma, critical_curvature, pdf_error_sigma, sigma0, sigma1_small_curvature,
};

fn main() -> gaussian_maxent::Result<()> {
    let (rho, d, c1, c2) = (1.0, 1.0, 1.0, 1.0);
    println!("sigma0 = {:.6}", sigma0(rho, c1));
    println!(
        "three real roots for rho'' in ({:.6}, 0)",
        critical_curvature(rho, c1, c2)
    );
    println!("sigma4 has no solution from rho'' = {}", 24.0 / (d * d * d));
    println!();
    println!(
        "{:>6} {:>10} {:>22} {:>10} {:>10}",
        "rho''", "disc", "real positive roots", "approx", "sigma4"
    );
    for i in 0..=14 {
        let rho2 = -3.0 + 2.0 * i as f64;
        let sol = pdf_error_sigma(rho, rho2, c1, c2)?;
        let roots: Vec<String> = sol
            .real_positive_roots
            .iter()
            .map(|s| format!("{s:.4}"))
            .collect();
        let approx = if rho2 >= 0.0 {
            format!("{:.4}", sigma1_small_curvature(rho, rho2, c1, c2))
        } else {
            "-".into()
        };
        let s4 = condition_error_sigma(rho, rho2, d, c1, c2)
            .map_or("none".into(), |s| format!("{s:.4}"));
        println!(
            "{rho2:>6.1} {:>10.3} {:>22} {approx:>10} {s4:>10}",
            sol.discriminant,
            roots.join(" ")
        );
    }
    Ok(())
}
