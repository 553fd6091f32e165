//! Closed-form error model of one Gaussian condition: truncation factors,
//! moments and the mean/variance of the density and condition errors as
//! the width varies.
//!
//! cargo run --example error_model

use gaussian_maxent::error_analysis::{error_stats, moments, LocalModel};

fn main() -> gaussian_maxent::Result<()> {
    let (rho_c, rho2, d, k_h, n) = (1.0, -2.0, 1.0, 1e-3, 1000);
    println!("rho(c) = {rho_c}, rho''(c) = {rho2}, d = {d}, k_H = {k_h}, N = {n}");
    println!(
        "{:>6} {:>8} {:>8} {:>9} {:>11} {:>11} {:>11} {:>11}",
        "sigma", "C1", "C2", "F", "E drho", "sd drho", "E dFtot", "sd dFtot"
    );
    for i in 1..=10 {
        let sigma = 0.03 * i as f64;
        let model = LocalModel::new(rho_c, rho2, d, sigma, k_h, n)?;
        let m = moments(&model)?;
        let e = error_stats(&model)?;
        println!(
            "{sigma:>6.2} {:>8.5} {:>8.5} {:>9.5} {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e}",
            m.factors.c1,
            m.factors.c2,
            m.f,
            e.mean_drho,
            e.var_drho.sqrt(),
            e.mean_dftot,
            e.var_dftot.sqrt()
        );
    }
    Ok(())
}
