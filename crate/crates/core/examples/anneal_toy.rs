//! The optimizer on its own: a small grid, two hand-made conditions, and
//! the cost after each temperature level.
//!
//! cargo run --example anneal_toy

use gaussian_maxent::annealer::{anneal, normalize, AnnealSchedule};
use gaussian_maxent::domain::{ConditionSet, EstimatorConfig, Grid};
use gaussian_maxent::objective::{simulated_averages, EntropyMode};

fn main() -> gaussian_maxent::Result<()> {
    let grid = Grid::spanning(0.0, 1.0, 20)?;
    let conditions = ConditionSet::from_parts(vec![0.25, 0.75], vec![0.1, 0.1], vec![0.35, 0.10])?;
    let config = EstimatorConfig {
        n_points: 20,
        n_conditions: 2,
        k_h: 1e-3,
        smoothing_window: 1,
        entropy_mode: EntropyMode::Normalized,
        schedule: AnnealSchedule {
            t_initial: 1e-3,
            cooling: 0.8,
            steps_per_temp: Some(2000),
            t_min: 1e-10,
            seed: 3,
            ..AnnealSchedule::default()
        },
    };
    let out = anneal(&grid, &conditions, &config)?;
    println!("initial cost {:.6e}", out.initial_cost.total);
    for (level, c) in out.cost_trace.iter().enumerate().step_by(10) {
        println!("level {level:>3}: {c:.6e}");
    }
    println!(
        "final cost {:.6e} ({} of {} moves accepted)",
        out.final_cost.total, out.accepted_moves, out.total_moves
    );
    println!("target averages {:?}", conditions.f_emp());
    println!(
        "reached        {:?}",
        simulated_averages(&out.weights, &grid, &conditions)?
    );
    let p = normalize(&out.weights)?;
    for (x, w) in grid.points().iter().zip(p.as_slice()) {
        println!("{x:>5.2} {w:.4} {}", "#".repeat((w * 400.0) as usize));
    }
    Ok(())
}
