use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use gaussian_maxent::annealer::AnnealSchedule;
use gaussian_maxent::domain::EstimatorConfig;
use gaussian_maxent::experiments::figures::{
    emit_figures, write_figure1, write_run, write_summary_csv,
};
use gaussian_maxent::experiments::run::{run_on_sample, run_replicate, RunReport, SigmaRule};
use gaussian_maxent::experiments::test_pdf::TestPdf;
use gaussian_maxent::experiments::{figure2_specs, sweep};
use gaussian_maxent::input::{read_selection, Column};
use gaussian_maxent::objective::EntropyMode;
use gaussian_maxent::sigma_solver::{default_rho2_range, figure1_data};
use gaussian_maxent::{Error, Result};

#[derive(Parser)]
#[command(
    version,
    about = "Maximum-entropy density estimation with Gaussian conditions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the density of a sample file.
    Estimate {
        /// Plain text (one value per line) or CSV with --column.
        #[arg(long)]
        input: PathBuf,
        /// CSV column, by index or header name.
        #[arg(long)]
        column: Option<Column>,
        /// The CSV file has no header row.
        #[arg(long)]
        no_header: bool,
        #[arg(long, default_value = "span/30")]
        sigma_rule: SigmaRule,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[command(flatten)]
        est: EstimatorArgs,
    },
    /// Optimal widths versus curvature.
    PaperFig1 {
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        rho_c: f64,
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, default_value_t = 1.0)]
        c1: f64,
        #[arg(long, default_value_t = 1.0)]
        c2: f64,
    },
    /// Estimates on the benchmark density for several sizes and width rules.
    PaperFig2 {
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[command(flatten)]
        est: EstimatorArgs,
    },
    /// Grid over sample sizes, width rules and replicates.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "span/30")]
        rules: Vec<SigmaRule>,
        #[arg(long, default_value_t = 10)]
        replicates: usize,
        /// Also write density and epsilon files for every run.
        #[arg(long)]
        write_runs: bool,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[command(flatten)]
        est: EstimatorArgs,
    },
}

#[derive(Args)]
struct EstimatorArgs {
    #[arg(long, default_value_t = 1000)]
    n_points: usize,
    #[arg(long, default_value_t = 101)]
    n_conditions: usize,
    #[arg(long, default_value_t = 1e-3)]
    k_h: f64,
    #[arg(long, default_value_t = 10)]
    window: usize,
    /// `normalized` or `raw`.
    #[arg(long, default_value = "normalized")]
    entropy_mode: EntropyMode,
    #[arg(long, default_value_t = AnnealSchedule::default().t_initial)]
    t_initial: f64,
    #[arg(long, default_value_t = AnnealSchedule::default().cooling)]
    cooling: f64,
    /// Defaults to 20 × n-points.
    #[arg(long)]
    steps_per_temp: Option<usize>,
    #[arg(long, default_value_t = AnnealSchedule::default().t_min)]
    t_min: f64,
    #[arg(long, default_value_t = AnnealSchedule::default().step_size)]
    step_size: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl EstimatorArgs {
    fn config(&self) -> Result<EstimatorConfig> {
        let config = EstimatorConfig {
            n_points: self.n_points,
            n_conditions: self.n_conditions,
            k_h: self.k_h,
            smoothing_window: self.window,
            entropy_mode: self.entropy_mode,
            schedule: AnnealSchedule {
                t_initial: self.t_initial,
                cooling: self.cooling,
                steps_per_temp: self.steps_per_temp,
                t_min: self.t_min,
                step_size: self.step_size,
                seed: self.seed,
            },
        };
        config.validate()?;
        Ok(config)
    }
}

fn print_paths(paths: &[PathBuf]) {
    for p in paths {
        println!("{}", p.display());
    }
}

fn warn_clamped(r: &RunReport) {
    if r.sigma_clamped > 0 {
        eprintln!(
            "warning: {} of {} widths from rule {} left [bin width, span/10] and were clamped",
            r.sigma_clamped,
            r.sigmas.len(),
            r.sigma_rule
        );
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Estimate {
            input,
            column,
            no_header,
            sigma_rule,
            out_dir,
            est,
        } => {
            let config = est.config()?;
            let sel = read_selection(&input, column.as_ref(), !no_header)?;
            let report = run_on_sample(&sel, sigma_rule, &config)?;
            warn_clamped(&report);
            print_paths(&write_run(&out_dir, "estimate", &report)?);
        }
        Command::PaperFig1 {
            out_dir,
            rho_c,
            d,
            c1,
            c2,
        } => {
            let rows = figure1_data(rho_c, d, c1, c2, &default_rho2_range())?;
            print_paths(&[write_figure1(&out_dir, &rows, rho_c, d, c1, c2)?]);
        }
        Command::PaperFig2 { out_dir, est } => {
            let config = est.config()?;
            let pdf = TestPdf::new();
            let reports = figure2_specs(&config, est.seed)
                .par_iter()
                .map(|spec| run_replicate(spec, &pdf, 0))
                .collect::<Result<Vec<_>>>()?;
            reports.iter().for_each(warn_clamped);
            print_paths(&emit_figures(&out_dir, &reports, None)?);
        }
        Command::Sweep {
            sizes,
            rules,
            replicates,
            write_runs,
            out_dir,
            est,
        } => {
            if replicates == 0 || sizes.is_empty() || rules.is_empty() {
                return Err(Error::NoData);
            }
            let config = est.config()?;
            let pdf = TestPdf::new();
            let reports = sweep(&sizes, &rules, &config, est.seed, replicates, &pdf)?;
            let medians: Vec<Option<f64>> = reports
                .iter()
                .map(|r| r.median_epsilon_where_dense(&pdf, 0.1))
                .collect();
            fs::create_dir_all(&out_dir)?;
            let path = out_dir.join("sweep_summary.csv");
            let f =
                File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            write_summary_csv(BufWriter::new(f), &reports, &medians)?;
            let mut paths = vec![path];
            if write_runs {
                for r in &reports {
                    paths.extend(write_run(&out_dir, "sweep", r)?);
                }
            }
            print_paths(&paths);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = match e.kind() {
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    "a subcommand is required".to_owned()
                }
                _ => {
                    let rendered = e.render().to_string();
                    rendered
                        .lines()
                        .next()
                        .unwrap_or_default()
                        .trim_start_matches("error: ")
                        .to_owned()
                }
            };
            eprintln!("error kind=Usage message={message:?}");
            return ExitCode::from(2);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error kind={} message={:?}", e.kind(), e.to_string());
            ExitCode::FAILURE
        }
    }
}
