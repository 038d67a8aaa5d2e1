//! Command-line entry point: run configuration, subcommand drivers, and
//! machine-readable report output.
//!
//! Subcommands: `verify | spectrum | converge | validate-radial`. A JSON
//! config file (`--config`) supplies defaults; flags override individual
//! fields. Reports carry `"schema_version": 1` and are deterministic for a
//! fixed config. Exit codes: 0 pass, 1 verification failure, 2 usage or
//! config error.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{build_circle, circle_convergence_scan, verify_circle_algebra};
use crate::radial::{
    cutoff_check, gaussian_profile_check, matrix_element_check, CutoffReport, GaussianFitReport,
    MatrixElementReport,
};
use crate::report::{ConvergenceTable, KRule, VerificationReport};
use crate::sphere::{build_sphere, madore_baseline, sphere_convergence_scan, verify_sphere_algebra};
use crate::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "fuzzy-spectra",
    version,
    about = "Fuzzy circle/sphere operator algebras: verification, spectra, convergence scans, radial cross-check"
)]
struct Cli {
    /// JSON config file; command-line flags override its fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suite over a Λ-range and report residuals
    Verify(CommonArgs),
    /// Emit R² and angular-momentum spectra with closed-form predictions
    Spectrum(CommonArgs),
    /// Strong-convergence scan ‖(f̂_Λ − f·)φ‖ over a Λ-range
    Converge(CommonArgs),
    /// Independent radial Schrödinger finite-difference cross-check
    ValidateRadial(RadialArgs),
}

#[derive(Args, Default)]
struct CommonArgs {
    /// circle | sphere | madore (madore reads --lambda/--lambda-max as n)
    #[arg(long)]
    model: Option<String>,
    /// Λ (or the start of the Λ-range)
    #[arg(long)]
    lambda: Option<u32>,
    /// Inclusive end of the Λ-range
    #[arg(long)]
    lambda_max: Option<u32>,
    /// Fixed k (overrides --k-rule)
    #[arg(long)]
    k: Option<f64>,
    /// lambda2 | prop33 | prop43 | <number>
    #[arg(long)]
    k_rule: Option<String>,
    /// Residual tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Output file (stdout when omitted); written atomically
    #[arg(long)]
    out: Option<PathBuf>,
    /// json | csv
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct RadialArgs {
    /// Ambient dimension, 2 or 3
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    k: Option<f64>,
    /// Angular cutoff Λ for the level-separation check
    #[arg(long)]
    lambda: Option<u32>,
    /// Interior grid points
    #[arg(long)]
    grid_points: Option<usize>,
    /// Also write the ground eigenfunction as (r, u) CSV to this path
    #[arg(long)]
    dump_eigenfunction: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
}

/// On-disk run configuration. Every field optional; flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    model: Option<String>,
    lambda: Option<u32>,
    lambda_max: Option<u32>,
    k: Option<f64>,
    k_rule: Option<String>,
    tol: Option<f64>,
    out: Option<PathBuf>,
    format: Option<String>,
    d: Option<u32>,
    grid_points: Option<usize>,
    /// Circle: rows [m, re, im]. Sphere: rows [l, m, re, im].
    f: Option<Vec<Vec<f64>>>,
    phi: Option<Vec<Vec<f64>>>,
}

fn load_config(path: Option<&Path>) -> Result<FileConfig, Error> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            Ok(serde_json::from_str(&text)?)
        }
    }
}

/// Write atomically (temp file + rename) or to stdout when no path given.
fn emit(out: Option<&Path>, content: &str) -> Result<(), Error> {
    match out {
        None => {
            println!("{content}");
            Ok(())
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            {
                let mut fh = std::fs::File::create(&tmp)?;
                fh.write_all(content.as_bytes())?;
                fh.write_all(b"\n")?;
            }
            std::fs::rename(&tmp, path)?;
            Ok(())
        }
    }
}

/// 17 significant digits — enough to round-trip any f64.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

struct Resolved {
    model: String,
    lambdas: Vec<u32>,
    k_rule: KRule,
    tol: f64,
    out: Option<PathBuf>,
    format: String,
    f: Option<Vec<Vec<f64>>>,
    phi: Option<Vec<Vec<f64>>>,
}

fn resolve(args: &CommonArgs, file: FileConfig, default_format: &str) -> Result<Resolved, Error> {
    let model = args
        .model
        .clone()
        .or(file.model)
        .unwrap_or_else(|| "circle".into());
    if !matches!(model.as_str(), "circle" | "sphere" | "madore") {
        return Err(Error::Config(format!("unknown model '{model}'")));
    }
    let lo = args.lambda.or(file.lambda).unwrap_or(1);
    let hi = args.lambda_max.or(file.lambda_max).unwrap_or(lo);
    if lo < 1 || hi < lo {
        return Err(Error::Config(format!("bad Λ-range {lo}..{hi}")));
    }
    let k_rule = match args.k.or(file.k) {
        Some(k) if k > 0.0 => KRule::Fixed(k),
        Some(k) => return Err(Error::Config(format!("k must be positive, got {k}"))),
        None => match args.k_rule.clone().or(file.k_rule) {
            Some(s) => s.parse()?,
            None => KRule::Lambda2,
        },
    };
    let tol = args.tol.or(file.tol).unwrap_or(1e-12);
    if !(tol > 0.0) {
        return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
    }
    let format = args
        .format
        .clone()
        .or(file.format)
        .unwrap_or_else(|| default_format.into());
    if !matches!(format.as_str(), "json" | "csv") {
        return Err(Error::Config(format!("unknown format '{format}'")));
    }
    // k must resolve for every Λ in range
    for lambda in lo..=hi {
        k_rule.k_for(lambda)?;
    }
    Ok(Resolved {
        model,
        lambdas: (lo..=hi).collect(),
        k_rule,
        tol,
        out: args.out.clone().or(file.out),
        format,
        f: file.f,
        phi: file.phi,
    })
}

#[derive(Serialize)]
struct VerifyOutput {
    schema_version: u32,
    command: &'static str,
    reports: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    parity_violations: Vec<(u32, f64)>,
    overall_pass: bool,
}

fn cmd_verify(cfg: &Resolved) -> Result<bool, Error> {
    let mut reports = Vec::new();
    let mut parity_violations = Vec::new();
    for &lambda in &cfg.lambdas {
        match cfg.model.as_str() {
            "circle" => {
                let fc = build_circle(lambda, cfg.k_rule.k_for(lambda)?)?;
                reports.push(verify_circle_algebra(&fc, cfg.tol));
            }
            "sphere" => {
                let fs = build_sphere(lambda, cfg.k_rule.k_for(lambda)?)?;
                reports.push(verify_sphere_algebra(&fs, cfg.tol));
            }
            _ => {
                let rep = madore_baseline(lambda.max(2), cfg.tol)?;
                parity_violations.push((rep.fs.n, rep.parity_violation));
                reports.push(rep.report);
            }
        }
    }
    let overall_pass = reports.iter().all(|r| r.overall_pass);
    let out = VerifyOutput {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        reports,
        parity_violations,
        overall_pass,
    };
    emit(cfg.out.as_deref(), &serde_json::to_string_pretty(&out)?)?;
    Ok(overall_pass)
}

#[derive(Serialize)]
struct SpectrumRow {
    lambda: u32,
    k: f64,
    observable: String,
    label: String,
    eigenvalue: f64,
    predicted: f64,
    abs_error: f64,
}

fn cmd_spectrum(cfg: &Resolved) -> Result<bool, Error> {
    let mut rows: Vec<SpectrumRow> = Vec::new();
    for &lambda in &cfg.lambdas {
        let k = cfg.k_rule.k_for(lambda)?;
        match cfg.model.as_str() {
            "circle" => {
                let fc = build_circle(lambda, k)?;
                let r2 = fc.r_squared();
                let li = lambda as i32;
                for (i, m) in (-li..=li).enumerate() {
                    let eig = r2.entry(i, i).re;
                    let pred = fc.r_squared_predicted(m);
                    rows.push(SpectrumRow {
                        lambda,
                        k,
                        observable: "R2".into(),
                        label: format!("m={m}"),
                        eigenvalue: eig,
                        predicted: pred,
                        abs_error: (eig - pred).abs(),
                    });
                    let lm = fc.lbar.entry(i, i).re;
                    rows.push(SpectrumRow {
                        lambda,
                        k,
                        observable: "Lbar".into(),
                        label: format!("m={m}"),
                        eigenvalue: lm,
                        predicted: m as f64,
                        abs_error: (lm - m as f64).abs(),
                    });
                }
            }
            "sphere" => {
                let fs = build_sphere(lambda, k)?;
                let r2 = fs.r_squared();
                let l2 = fs.l_squared();
                for (i, (l, m)) in fs.basis_labels().into_iter().enumerate() {
                    let eig = r2.entry(i, i).re;
                    let pred = fs.r_squared_predicted(l);
                    rows.push(SpectrumRow {
                        lambda,
                        k,
                        observable: "R2".into(),
                        label: format!("l={l} m={m}"),
                        eigenvalue: eig,
                        predicted: pred,
                        abs_error: (eig - pred).abs(),
                    });
                    let eig = l2.entry(i, i).re;
                    let pred = (l * (l + 1)) as f64;
                    rows.push(SpectrumRow {
                        lambda,
                        k,
                        observable: "L2".into(),
                        label: format!("l={l} m={m}"),
                        eigenvalue: eig,
                        predicted: pred,
                        abs_error: (eig - pred).abs(),
                    });
                }
            }
            other => {
                return Err(Error::Config(format!("spectrum supports circle|sphere, got '{other}'")));
            }
        }
    }
    let pass = rows.iter().all(|r| r.abs_error <= cfg.tol);
    let content = match cfg.format.as_str() {
        "csv" => {
            let mut s = String::from("lambda,k,observable,label,eigenvalue,predicted,abs_error");
            for r in &rows {
                s.push_str(&format!(
                    "\n{},{},{},{},{},{},{}",
                    r.lambda,
                    fmt_f64(r.k),
                    r.observable,
                    r.label,
                    fmt_f64(r.eigenvalue),
                    fmt_f64(r.predicted),
                    fmt_f64(r.abs_error)
                ));
            }
            s
        }
        _ => serde_json::to_string_pretty(&serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "command": "spectrum",
            "rows": rows,
            "pass": pass,
        }))?,
    };
    emit(cfg.out.as_deref(), &content)?;
    Ok(pass)
}

fn parse_circle_terms(rows: &[Vec<f64>]) -> Result<Vec<(i32, Complex64)>, Error> {
    rows.iter()
        .map(|row| {
            if row.len() != 3 {
                return Err(Error::Config(
                    "circle coefficient rows must be [m, re, im]".into(),
                ));
            }
            if row[0].fract() != 0.0 {
                return Err(Error::Config(format!("non-integer mode index {}", row[0])));
            }
            Ok((row[0] as i32, Complex64::new(row[1], row[2])))
        })
        .collect()
}

fn parse_sphere_terms(rows: &[Vec<f64>]) -> Result<Vec<(u32, i32, Complex64)>, Error> {
    rows.iter()
        .map(|row| {
            if row.len() != 4 {
                return Err(Error::Config(
                    "sphere coefficient rows must be [l, m, re, im]".into(),
                ));
            }
            if row[0].fract() != 0.0 || row[1].fract() != 0.0 || row[0] < 0.0 {
                return Err(Error::Config(format!(
                    "bad harmonic index ({}, {})",
                    row[0], row[1]
                )));
            }
            Ok((row[0] as u32, row[1] as i32, Complex64::new(row[2], row[3])))
        })
        .collect()
}

fn cmd_converge(cfg: &Resolved) -> Result<bool, Error> {
    let one = Complex64::new(1.0, 0.0);
    let table: ConvergenceTable = match cfg.model.as_str() {
        "circle" => {
            // defaults: f = u (the unit Fourier mode), φ = ψ₀
            let f = match &cfg.f {
                Some(rows) => parse_circle_terms(rows)?,
                None => vec![(1, one)],
            };
            let phi = match &cfg.phi {
                Some(rows) => parse_circle_terms(rows)?,
                None => vec![(0, one)],
            };
            circle_convergence_scan(&f, &phi, &cfg.lambdas, cfg.k_rule)?
        }
        "sphere" => {
            // defaults: f = Y₁⁰, φ = ψ₀⁰
            let f = match &cfg.f {
                Some(rows) => parse_sphere_terms(rows)?,
                None => vec![(1, 0, one)],
            };
            let phi = match &cfg.phi {
                Some(rows) => parse_sphere_terms(rows)?,
                None => vec![(0, 0, one)],
            };
            sphere_convergence_scan(&f, &phi, &cfg.lambdas, cfg.k_rule)?
        }
        other => {
            return Err(Error::Config(format!(
                "converge supports circle|sphere, got '{other}'"
            )));
        }
    };
    // sanity monotonicity only; the full strict decrease lives in the tests
    let pass = match (table.rows.first(), table.rows.last()) {
        (Some(first), Some(last)) => last.norm <= first.norm,
        _ => false,
    };
    let content = match cfg.format.as_str() {
        "csv" => {
            let mut s = String::from("lambda,k,norm,edge_norm,description");
            for r in &table.rows {
                s.push_str(&format!(
                    "\n{},{},{},{},{}",
                    r.lambda,
                    fmt_f64(r.k),
                    fmt_f64(r.norm),
                    fmt_f64(r.edge_norm),
                    r.description
                ));
            }
            s
        }
        _ => serde_json::to_string_pretty(&serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "command": "converge",
            "table": table,
            "pass": pass,
        }))?,
    };
    emit(cfg.out.as_deref(), &content)?;
    Ok(pass)
}

#[derive(Serialize)]
struct RadialOutput {
    schema_version: u32,
    command: &'static str,
    cutoff: CutoffReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix_element: Option<MatrixElementReport>,
    profiles: Vec<GaussianFitReport>,
    pass: bool,
}

fn cmd_validate_radial(args: &RadialArgs, file: FileConfig) -> Result<bool, Error> {
    let d = args.d.or(file.d).unwrap_or(3);
    let k = args.k.or(file.k).unwrap_or(1e6);
    let lambda = args.lambda.or(file.lambda).unwrap_or(5);
    let n = args.grid_points.or(file.grid_points).unwrap_or(4000);
    let format = args
        .format
        .clone()
        .or(file.format)
        .unwrap_or_else(|| "json".into());
    let out = args.out.clone().or(file.out);

    if let Some(path) = &args.dump_eigenfunction {
        let v0 = crate::radial::calibrate_v0(d, k);
        let problem = crate::radial::RadialProblem::new(d, 0, k, v0, n)?;
        let sol = crate::radial::solve_radial(&problem, 1)?;
        let mut s = String::from("r,u");
        for (i, &u) in sol.eigenvectors[0].iter().enumerate() {
            s.push_str(&format!("\n{},{}", fmt_f64(problem.r(i)), fmt_f64(u)));
        }
        emit(Some(path), &s)?;
    }
    let cutoff = cutoff_check(d, k, lambda, n)?;
    let matrix_element = if d == 2 {
        Some(matrix_element_check(k, 0, n / 2)?)
    } else {
        None
    };
    let mut profiles = vec![gaussian_profile_check(d, 0, k, n)?];
    if lambda >= 2 {
        profiles.push(gaussian_profile_check(d, 2, k, n)?);
    }
    let mut pass = cutoff.levels_ok && cutoff.analytic_ok;
    if let Some(me) = &matrix_element {
        pass &= me.pass;
    }
    for p in &profiles {
        pass &= p.width_rel_error < 0.01 && p.center_error < 0.01;
    }
    let output = RadialOutput {
        schema_version: SCHEMA_VERSION,
        command: "validate-radial",
        cutoff,
        matrix_element,
        profiles,
        pass,
    };
    let content = match format.as_str() {
        "csv" => {
            let mut s = String::from("check,value,reference,pass");
            s.push_str(&format!(
                "\ncutoff_margin,{},{},{}",
                fmt_f64(output.cutoff.margin),
                fmt_f64(0.0),
                output.cutoff.levels_ok && output.cutoff.analytic_ok
            ));
            if let Some(me) = &output.matrix_element {
                s.push_str(&format!(
                    "\nmatrix_element,{},{},{}",
                    fmt_f64(me.numeric),
                    fmt_f64(me.predicted),
                    me.pass
                ));
            }
            for p in &output.profiles {
                s.push_str(&format!(
                    "\nprofile_center_j{},{},{},{}",
                    p.j,
                    fmt_f64(p.center),
                    fmt_f64(p.predicted_center),
                    p.center_error < 0.01
                ));
                s.push_str(&format!(
                    "\nprofile_width_j{},{},{},{}",
                    p.j,
                    fmt_f64(p.width),
                    fmt_f64(p.predicted_width),
                    p.width_rel_error < 0.01
                ));
            }
            s
        }
        "json" => serde_json::to_string_pretty(&output)?,
        other => return Err(Error::Config(format!("unknown format '{other}'"))),
    };
    emit(out.as_deref(), &content)?;
    Ok(pass)
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    if let Ok(threads) = std::env::var("FUZZY_SPECTRA_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            // ignore failure: the global pool may already exist in tests
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    let file = match load_config(cli.config.as_deref()) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("config error: {e}");
            return 2;
        }
    };
    let outcome = match &cli.command {
        Command::Verify(args) => resolve(args, file, "json").and_then(|cfg| cmd_verify(&cfg)),
        Command::Spectrum(args) => resolve(args, file, "csv").and_then(|cfg| cmd_spectrum(&cfg)),
        Command::Converge(args) => resolve(args, file, "json").and_then(|cfg| cmd_converge(&cfg)),
        Command::ValidateRadial(args) => cmd_validate_radial(args, file),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
