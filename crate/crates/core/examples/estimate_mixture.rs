//! Estimate the density of a two-component Gaussian mixture and print it
//! as a coarse text plot.
//!
//! cargo run --release --example estimate_mixture

use gaussian_maxent::annealer::estimate;
use gaussian_maxent::domain::{EstimatorConfig, Selection};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Box–Muller draw from N(mean, sd²).
fn normal<R: Rng>(rng: &mut R, mean: f64, sd: f64) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    mean + sd * (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn main() -> gaussian_maxent::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let values: Vec<f64> = (0..2000)
        .map(|i| {
            if i % 3 == 0 {
                normal(&mut rng, 2.0, 0.3)
            } else {
                normal(&mut rng, -1.0, 0.8)
            }
        })
        .collect();
    let sel = Selection::new(values)?;

    let config = EstimatorConfig::default();
    let sigmas = vec![sel.delta_x() / 30.0; config.n_conditions];
    let result = estimate(&sel, &config, &sigmas)?;

    let max = result.density.iter().cloned().fold(0.0, f64::max);
    for j in (0..result.grid.n_points()).step_by(25) {
        let bar = (60.0 * result.density[j] / max).round() as usize;
        println!(
            "{:>7.3} {:>7.4} {}",
            result.grid.points()[j],
            result.density[j],
            "#".repeat(bar)
        );
    }
    println!("final cost {:.6e}", result.final_cost.total);
    Ok(())
}
