//! `diagspec`: construction, spectra and verification from the command line.
//!
//! Exit codes: 0 success, 1 usage or range error, 2 size cap, 3 verification
//! failure.

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use diagspec::gram_partition::{self, GramOptions};
use diagspec::gram_signed_z2::{signed_report, Mode};
use diagspec::oracle::{self, VerificationReport};
use diagspec::sdm::{self, BuildOptions};
use diagspec::{spectrum, Exec};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "diagspec", version, about = "Exact spectra of symmetric diagram matrices and partition Gram matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetric diagram matrices A^{s+r,s}.
    #[command(subcommand)]
    Sdm(SdmCommand),
    /// Gram matrix block spectra.
    #[command(subcommand)]
    Gram(GramCommand),
}

#[derive(Subcommand)]
enum SdmCommand {
    /// Print the matrix of symbols x_0..x_min.
    Build {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = sdm::DEFAULT_MAX_SIZE)]
        max_size: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Print the distinct eigenvalues with multiplicities.
    Eig {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        out: Out,
    },
    /// Check the eigenvalues against exact characteristic polynomials.
    Verify {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Verify every (s, r) with 1 <= s + r <= max-total.
    Sweep {
        #[arg(long, default_value_t = 7)]
        max_total: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses the rayon default.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum GramCommand {
    /// Partition algebra, G_s for k-diagrams.
    Partition {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        /// Include the explicit Gram matrix.
        #[arg(long)]
        matrix: bool,
        /// Compare the exact determinant with the block spectra.
        #[arg(long)]
        det: bool,
        /// Include the integer values of x where a block eigenvalue vanishes.
        #[arg(long)]
        roots: bool,
        #[arg(long, default_value_t = gram_partition::DEFAULT_MAX_SIZE)]
        max_size: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Algebra of Z2-relations.
    Z2 {
        #[command(flatten)]
        key: SignedKey,
        #[command(flatten)]
        out: Out,
    },
    /// Signed partition algebra.
    Signed {
        #[command(flatten)]
        key: SignedKey,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Shape {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    r: usize,
}

#[derive(Args)]
struct SignedKey {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s1: usize,
    #[arg(long)]
    s2: usize,
}

#[derive(Args)]
struct Out {
    /// Output format.
    #[arg(long = "out", value_enum, env = "DIAGSPEC_FORMAT", default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

/// A result as JSON plus a flat tabular view for csv/table output.
struct Report {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    failed: bool,
}

impl Report {
    fn new<T: Serialize>(value: &T, header: &[&str], rows: Vec<Vec<String>>) -> Result<Self> {
        Ok(Self {
            json: serde_json::to_value(value)?,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows,
            failed: false,
        })
    }
}

fn emit(report: &Report, format: Format) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.json)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&report.header)?;
            for row in &report.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
        Format::Table => {
            let mut widths: Vec<usize> = report.header.iter().map(|h| h.len()).collect();
            for row in &report.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: &[String]| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ")
            };
            writeln!(out, "{}", line(&report.header).trim_end())?;
            writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "))?;
            for row in &report.rows {
                writeln!(out, "{}", line(row).trim_end())?;
            }
        }
    }
    Ok(())
}

fn sdm_build(shape: &Shape, max_size: usize) -> Result<Report> {
    let m = sdm::build_with(shape.s, shape.r, &BuildOptions { max_size, ..Default::default() })?;
    let header: Vec<String> = (0..m.n()).map(|j| format!("c{j}")).collect();
    let mut report = Report::new(&m, &[], m.symbol_rows())?;
    report.header = header;
    Ok(report)
}

fn sdm_eig(shape: &Shape) -> Result<Report> {
    let spec = spectrum::sdm_spectrum(shape.s, shape.r)?;
    let rows = spec
        .eigenvalues
        .iter()
        .map(|f| vec![f.l.to_string(), f.to_string(), f.multiplicity.to_string()])
        .collect();
    Report::new(&spec, &["l", "eigenvalue", "multiplicity"], rows)
}

fn verification_rows(reports: &[VerificationReport]) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|r| {
            vec![
                r.params["s"].to_string(),
                r.params["r"].to_string(),
                r.trials.to_string(),
                r.failures.len().to_string(),
                r.passed.to_string(),
            ]
        })
        .collect()
}

const VERIFY_HEADER: [&str; 5] = ["s", "r", "trials", "failures", "passed"];

fn sdm_verify(shape: &Shape, trials: usize, seed: u64) -> Result<Report> {
    let rep = oracle::verify_sdm_spectrum(shape.s, shape.r, trials, seed)?;
    let mut report = Report::new(&rep, &VERIFY_HEADER, verification_rows(std::slice::from_ref(&rep)))?;
    report.failed = !rep.passed;
    Ok(report)
}

fn sdm_sweep(max_total: usize, trials: usize, seed: u64, jobs: usize) -> Result<Report> {
    let cells: Vec<(usize, usize)> =
        (1..=max_total).flat_map(|t| (0..=t).map(move |s| (s, t - s))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().context("building thread pool")?;
    let results: Vec<diagspec::Result<VerificationReport>> = pool.install(|| {
        use rayon::prelude::*;
        cells
            .par_iter()
            .map(|&(s, r)| {
                let opts = oracle::OracleOptions { exec: Exec::Sequential, ..Default::default() };
                oracle::verify_sdm_spectrum_with(s, r, trials, seed, &opts)
            })
            .collect()
    });
    let reports = results.into_iter().collect::<diagspec::Result<Vec<_>>>()?;
    let mut report = Report::new(&reports, &VERIFY_HEADER, verification_rows(&reports))?;
    report.failed = reports.iter().any(|r| !r.passed);
    Ok(report)
}

fn gram_partition(k: usize, s: usize, matrix: bool, det: bool, roots: bool, max_size: usize) -> Result<Report> {
    let mut rep = gram_partition::gram_report(k, s)?;
    let gram = if matrix {
        Some(gram_partition::build_gram_with(k, s, &GramOptions { max_size, ..Default::default() })?)
    } else {
        None
    };
    let mut extra = serde_json::Map::new();
    let mut failed = false;
    if det {
        let check = oracle::verify_gram_det(k, s)?;
        rep.det_sign = check.sign;
        failed = !check.passed;
        extra.insert("det".into(), json!(check.det.to_string()));
        extra.insert("det_predicted".into(), json!(check.predicted.to_string()));
    }
    if roots {
        let xs = gram_partition::semisimple_exceptions(k, s)?;
        rep.singular_x = Some(xs.iter().map(|x| i64::try_from(x).expect("small root")).collect());
    }
    if matrix {
        let g = gram.as_ref().expect("built above");
        extra.insert("diagrams".into(), json!(g.diagrams.iter().map(|d| d.to_string()).collect::<Vec<_>>()));
        extra.insert("matrix".into(), json!(g.monomial_rows()));
    }
    let rows = rep
        .blocks
        .iter()
        .flat_map(|b| {
            b.eigen.iter().map(move |e| {
                vec![b.r.to_string(), e.l.to_string(), e.poly.to_string(), e.multiplicity.to_string()]
            })
        })
        .collect();
    let mut report = Report::new(&rep, &["r", "l", "eigenpoly", "multiplicity"], rows)?;
    if let Value::Object(map) = &mut report.json {
        map.extend(extra);
    }
    report.failed = failed;
    Ok(report)
}

fn gram_signed(mode: Mode, key: &SignedKey) -> Result<Report> {
    let rep = signed_report(mode, key.k, key.s1, key.s2)?;
    let rows = rep
        .blocks
        .iter()
        .flat_map(|b| {
            b.eigen.iter().map(move |e| {
                vec![
                    b.r1.to_string(),
                    b.r2.to_string(),
                    e.l1.to_string(),
                    e.l2.to_string(),
                    e.poly.to_string(),
                    e.multiplicity_per_copy.to_string(),
                ]
            })
        })
        .collect();
    Report::new(&rep, &["r1", "r2", "l1", "l2", "eigenpoly", "multiplicity_per_copy"], rows)
}

fn run(cli: Cli) -> Result<bool> {
    let (report, format) = match cli.command {
        Command::Sdm(SdmCommand::Build { shape, max_size, out }) => (sdm_build(&shape, max_size)?, out.format),
        Command::Sdm(SdmCommand::Eig { shape, out }) => (sdm_eig(&shape)?, out.format),
        Command::Sdm(SdmCommand::Verify { shape, trials, seed, out }) => (sdm_verify(&shape, trials, seed)?, out.format),
        Command::Sdm(SdmCommand::Sweep { max_total, trials, seed, jobs, out }) => {
            (sdm_sweep(max_total, trials, seed, jobs)?, out.format)
        }
        Command::Gram(GramCommand::Partition { k, s, matrix, det, roots, max_size, out }) => {
            (gram_partition(k, s, matrix, det, roots, max_size)?, out.format)
        }
        Command::Gram(GramCommand::Z2 { key, out }) => (gram_signed(Mode::Z2, &key)?, out.format),
        Command::Gram(GramCommand::Signed { key, out }) => (gram_signed(Mode::Signed, &key)?, out.format),
    };
    emit(&report, format)?;
    Ok(!report.failed)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<diagspec::Error>() {
        Some(e) if e.is_size_cap() => 2,
        Some(diagspec::Error::SelfCheck(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
