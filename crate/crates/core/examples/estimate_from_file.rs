//! Read a sample from a text or CSV file, estimate its density and write
//! the density and relative-error tables.
//!
//! cargo run --release --example estimate_from_file -- data.csv [column] [out_dir]
//!
//! Without arguments a demonstration file is generated in a temporary
//! directory.

use std::path::PathBuf;

use gaussian_maxent::domain::EstimatorConfig;
use gaussian_maxent::experiments::figures::write_run;
use gaussian_maxent::experiments::run::{run_on_sample, SigmaRule};
use gaussian_maxent::experiments::test_pdf::TestPdf;
use gaussian_maxent::input::{read_selection, Column};

fn main() -> gaussian_maxent::Result<()> {
    let mut args = std::env::args().skip(1);
    let (path, column) = match args.next() {
        Some(p) => (
            PathBuf::from(p),
            args.next().map(|c| c.parse::<Column>().unwrap()),
        ),
        None => {
            let path = std::env::temp_dir().join("gaussian_maxent_demo.csv");
            let rows: String = TestPdf::new()
                .draw(500, 9)
                .iter()
                .enumerate()
                .map(|(i, x)| format!("{i},{x}\n"))
                .collect();
            std::fs::write(&path, format!("id,value\n{rows}"))?;
            (path, Some(Column::Name("value".into())))
        }
    };
    let out_dir = args.next().map_or_else(
        || std::env::temp_dir().join("gaussian_maxent_out"),
        PathBuf::from,
    );

    let sel = read_selection(&path, column.as_ref(), true)?;
    println!(
        "{} values from {}, range [{:.4}, {:.4}]",
        sel.n(),
        path.display(),
        sel.x_min(),
        sel.x_max()
    );
    let report = run_on_sample(
        &sel,
        SigmaRule::FractionOfSpan(30.0),
        &EstimatorConfig::default(),
    )?;
    for p in write_run(&out_dir, "estimate", &report)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}
