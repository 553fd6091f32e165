//! CSV emission. Every file starts with `# key=value` comment lines
//! holding the parameters that produced it, followed by a header row.
//! Numbers use Rust's shortest round-trip formatting, so output is
//! byte-stable for fixed inputs.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiments::run::RunReport;
use crate::sigma_solver::{Figure1Row, REAL_TOL};

pub const FIGURE1_FILE: &str = "fig1_sigma_vs_rho2.csv";

fn write_comments<W: Write>(w: &mut W, params: &[(&str, String)]) -> Result<()> {
    for (k, v) in params {
        writeln!(w, "# {k}={v}")?;
    }
    Ok(())
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Grid, estimated density and (when known) the true density.
pub fn write_density_csv<W: Write>(mut w: W, report: &RunReport) -> Result<()> {
    write_comments(&mut w, &report.parameters())?;
    let mut out = csv::Writer::from_writer(w);
    match &report.true_density {
        Some(truth) => {
            out.write_record(["x", "density", "true_density"])?;
            for ((x, d), t) in report.grid.iter().zip(&report.density).zip(truth) {
                out.write_record([x.to_string(), d.to_string(), t.to_string()])?;
            }
        }
        None => {
            out.write_record(["x", "density"])?;
            for (x, d) in report.grid.iter().zip(&report.density) {
                out.write_record([x.to_string(), d.to_string()])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Condition centers, widths, empirical averages and relative errors.
pub fn write_epsilon_csv<W: Write>(mut w: W, report: &RunReport) -> Result<()> {
    write_comments(&mut w, &report.parameters())?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["c", "sigma", "f_emp", "epsilon"])?;
    for (((c, s), f), e) in report
        .centers
        .iter()
        .zip(&report.sigmas)
        .zip(&report.f_emp)
        .zip(&report.epsilon)
    {
        out.write_record([c.to_string(), s.to_string(), f.to_string(), e.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

/// Bandwidth-versus-curvature table.
pub fn write_figure1_csv<W: Write>(
    mut w: W,
    rows: &[Figure1Row],
    rho_c: f64,
    d: f64,
    c1: f64,
    c2: f64,
) -> Result<()> {
    write_comments(
        &mut w,
        &[
            ("rho_c", rho_c.to_string()),
            ("d", d.to_string()),
            ("c1", c1.to_string()),
            ("c2", c2.to_string()),
            ("n_rows", rows.len().to_string()),
            ("rho2_first", opt(rows.first().map(|r| r.rho2))),
            ("rho2_last", opt(rows.last().map(|r| r.rho2))),
        ],
    )?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "rho2",
        "discriminant",
        "sigma1_re",
        "sigma1_im",
        "sigma1_real",
        "sigma2_re",
        "sigma2_im",
        "sigma2_real",
        "sigma3_re",
        "sigma3_im",
        "sigma3_real",
        "n_real_positive",
        "sigma_min_positive",
        "sigma4",
    ])?;
    for row in rows {
        let sol = &row.solution;
        let mut rec = vec![row.rho2.to_string(), sol.discriminant.to_string()];
        for k in 0..3 {
            match sol.roots.get(k) {
                Some(z) => {
                    rec.push(z.re.to_string());
                    rec.push(z.im.to_string());
                    rec.push((z.im.abs() < REAL_TOL).to_string());
                }
                None => rec.extend([String::new(), String::new(), String::new()]),
            }
        }
        rec.push(sol.real_positive_roots.len().to_string());
        rec.push(opt(sol.real_positive_roots.first().copied()));
        rec.push(opt(row.sigma4));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(BufWriter::new(f))
}

/// File stem for a run, e.g. `N1000_sigmaspan30`, with a replicate suffix
/// for replicates after the first.
pub fn run_stem(report: &RunReport) -> String {
    let mut stem = format!(
        "N{}_sigma{}",
        report.n_samples,
        report.sigma_rule.file_tag()
    );
    if report.replicate > 0 {
        stem.push_str(&format!("_rep{}", report.replicate));
    }
    stem
}

/// Writes the density and epsilon CSVs for one run under `prefix`.
pub fn write_run(dir: &Path, prefix: &str, report: &RunReport) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let stem = run_stem(report);
    let density = dir.join(format!("{prefix}_density_{stem}.csv"));
    let epsilon = dir.join(format!("{prefix}_epsilon_{stem}.csv"));
    let mut w = create(&density)?;
    write_density_csv(&mut w, report)?;
    w.flush()?;
    let mut w = create(&epsilon)?;
    write_epsilon_csv(&mut w, report)?;
    w.flush()?;
    Ok(vec![density, epsilon])
}

pub fn write_figure1(
    dir: &Path,
    rows: &[Figure1Row],
    rho_c: f64,
    d: f64,
    c1: f64,
    c2: f64,
) -> Result<PathBuf> {
    if rows.is_empty() {
        return Err(Error::NoData);
    }
    fs::create_dir_all(dir)?;
    let path = dir.join(FIGURE1_FILE);
    let mut w = create(&path)?;
    write_figure1_csv(&mut w, rows, rho_c, d, c1, c2)?;
    w.flush()?;
    Ok(path)
}

/// Writes the bandwidth table (at `C₁ = C₂ = 1`, `d = 1`, `ρ(c) = 1`) when
/// given, and density/epsilon files for every report.
pub fn emit_figures(
    dir: &Path,
    reports: &[RunReport],
    fig1: Option<&[Figure1Row]>,
) -> Result<Vec<PathBuf>> {
    if reports.is_empty() {
        return Err(Error::NoData);
    }
    let mut paths = Vec::new();
    if let Some(rows) = fig1 {
        paths.push(write_figure1(dir, rows, 1.0, 1.0, 1.0, 1.0)?);
    }
    for r in reports {
        paths.extend(write_run(dir, "fig2", r)?);
    }
    Ok(paths)
}

/// One row per run: sizes, rules, seeds and error metrics. The comment
/// block records the estimator settings shared by all runs and the sweep
/// axes.
pub fn write_summary_csv<W: Write>(
    mut w: W,
    reports: &[RunReport],
    medians: &[Option<f64>],
) -> Result<()> {
    let first = reports.first().ok_or(Error::NoData)?;
    let join = |f: &dyn Fn(&RunReport) -> String| {
        let mut v: Vec<String> = Vec::new();
        for r in reports {
            let x = f(r);
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v.join(",")
    };
    let c = &first.config;
    let s = &c.schedule;
    write_comments(
        &mut w,
        &[
            ("sizes", join(&|r| r.n_samples.to_string())),
            ("rules", join(&|r| r.sigma_rule.to_string())),
            (
                "replicates",
                (reports.iter().map(|r| r.replicate).max().unwrap_or(0) + 1).to_string(),
            ),
            ("seed", first.base_seed.to_string()),
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
        ],
    )?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "n_samples",
        "sigma_rule",
        "replicate",
        "sample_seed",
        "anneal_seed",
        "l1_error",
        "linf_error",
        "median_epsilon_dense",
        "final_cost",
        "sigma_clamped",
    ])?;
    for (r, m) in reports.iter().zip(medians) {
        out.write_record([
            r.n_samples.to_string(),
            r.sigma_rule.to_string(),
            r.replicate.to_string(),
            r.sample_seed.map(|s| s.to_string()).unwrap_or_default(),
            r.config.schedule.seed.to_string(),
            opt(r.l1_error),
            opt(r.linf_error),
            opt(*m),
            r.final_cost.total.to_string(),
            r.sigma_clamped.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
