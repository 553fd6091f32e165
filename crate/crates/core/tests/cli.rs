//! Command-line behavior: outputs, parameter headers and error reporting.

use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussian-maxent"))
        .args(args)
        .output()
        .expect("spawn CLI")
}

fn comments(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .take_while(|l| l.starts_with('#'))
        .map(str::to_owned)
        .collect()
}

fn error_line(out: &Output) -> String {
    let stderr = String::from_utf8_lossy(&out.stderr);
    stderr.lines().last().unwrap_or_default().to_owned()
}

fn write_sample(dir: &Path) -> String {
    let path = dir.join("sample.csv");
    let mut text = String::from("id,value\n");
    for i in 0..200 {
        let x = (i as f64 * 0.618_033_988_7).fract();
        text.push_str(&format!("{i},{}\n", x * x));
    }
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn estimate_writes_tables_with_every_setting() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_sample(dir.path());
    let out_dir = dir.path().join("out");
    let out = cli(&[
        "estimate",
        "--input",
        &input,
        "--column",
        "value",
        "--n-points",
        "120",
        "--n-conditions",
        "11",
        "--k-h",
        "0.002",
        "--window",
        "4",
        "--entropy-mode",
        "raw",
        "--t-initial",
        "1e-5",
        "--cooling",
        "0.9",
        "--steps-per-temp",
        "500",
        "--t-min",
        "1e-9",
        "--step-size",
        "0.25",
        "--seed",
        "9",
        "--sigma-rule",
        "fixed:0.05",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let density = out_dir.join("estimate_density_N200_sigmafixed0.05.csv");
    let header = comments(&density);
    for expected in [
        "# n_samples=200",
        "# sigma_rule=fixed:0.05",
        "# n_points=120",
        "# n_conditions=11",
        "# k_h=0.002",
        "# smoothing_window=4",
        "# entropy_mode=raw",
        "# t_initial=0.00001",
        "# cooling=0.9",
        "# steps_per_temp=500",
        "# t_min=0.000000001",
        "# step_size=0.25",
        "# anneal_seed=9",
    ] {
        assert!(
            header.iter().any(|l| l == expected),
            "missing {expected} in {header:?}"
        );
    }
    let body: Vec<String> = std::fs::read_to_string(&density)
        .unwrap()
        .lines()
        .skip(header.len())
        .map(str::to_owned)
        .collect();
    assert_eq!(body[0], "x,density");
    assert_eq!(body.len(), 121);
    let eps =
        std::fs::read_to_string(out_dir.join("estimate_epsilon_N200_sigmafixed0.05.csv")).unwrap();
    assert_eq!(eps.lines().filter(|l| !l.starts_with('#')).count(), 12);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().count(), 2);
}

#[test]
fn fig1_table_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["paper-fig1", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("fig1_sigma_vs_rho2.csv")).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 702);
    assert!(rows[0].starts_with("rho2,discriminant,sigma1_re"));
    let zero: Vec<&str> = rows
        .iter()
        .find(|r| r.starts_with("0,"))
        .unwrap()
        .split(',')
        .collect();
    assert_eq!(zero[1], "0");
    let sigma: f64 = zero[2].parse().unwrap();
    assert!((sigma - 0.398_942_280_401_432_7).abs() < 1e-15);
    assert_eq!(zero[11], "1");
}

#[test]
fn sweep_summary_lists_every_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&[
        "sweep",
        "--sizes",
        "50,80",
        "--rules",
        "span/20,sigma0",
        "--replicates",
        "2",
        "--n-points",
        "100",
        "--n-conditions",
        "11",
        "--seed",
        "1",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = dir.path().join("sweep_summary.csv");
    let header = comments(&path);
    assert!(header.contains(&"# sizes=50,80".to_owned()));
    assert!(header.contains(&"# rules=span/20,sigma0".to_owned()));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 8);
}

#[test]
fn errors_are_reported_as_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_sample(dir.path());
    let cases: [(&[&str], &str); 5] = [
        (&["estimate", "--input", "/does/not/exist"], "IoFailure"),
        (
            &[
                "estimate",
                "--input",
                &input,
                "--column",
                "value",
                "--cooling",
                "1.5",
            ],
            "InvalidSchedule",
        ),
        (
            &[
                "estimate", "--input", &input, "--column", "value", "--k-h=-1",
            ],
            "InvalidConfig",
        ),
        (&["estimate", "--input", &input], "Parse"),
        (&["sweep", "--replicates", "0"], "NoData"),
    ];
    for (args, kind) in cases {
        let mut full: Vec<&str> = args.to_vec();
        let out_dir = dir.path().join("o");
        full.extend(["--out-dir", out_dir.to_str().unwrap()]);
        let out = cli(&full);
        assert!(!out.status.success(), "{args:?} succeeded");
        let line = error_line(&out);
        assert!(
            line.starts_with(&format!("error kind={kind} message=\"")),
            "{args:?}: {line}"
        );
    }
}

#[test]
fn degenerate_sample_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flat.txt");
    std::fs::write(&path, "1.0\n1.0\n1.0\n").unwrap();
    let out = cli(&[
        "estimate",
        "--input",
        path.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(error_line(&out).starts_with("error kind=EmptyOrDegenerateSample"));
}

#[test]
fn usage_errors_use_the_same_format() {
    let out = cli(&["estimate", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(error_line(&out).starts_with("error kind=Usage message=\""));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
    let help = cli(&["--help"]);
    assert!(help.status.success());
    assert!(String::from_utf8_lossy(&help.stdout).contains("paper-fig2"));
}
