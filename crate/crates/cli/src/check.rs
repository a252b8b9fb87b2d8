use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;

use renyi_lab::inequalities::{
    batch_check_with_violations, AlphaSummary, BatchConfig, InequalityId, PolygamyConfig,
    ResidualReport, VIOLATION_TOL,
};
use renyi_lab::linalg::haar_random_pure;
use renyi_lab::renyi_ent::ConjecturePolicy;
use renyi_lab::roof::RoofBudget;
use renyi_lab::{Error, Result};

use crate::{fmt_f64, VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Inequality {
    Ckw,
    RenyiMonogamy,
    CoaPolygamy,
    EoaPolygamy,
    RenyiPolygamy,
}

impl From<Inequality> for InequalityId {
    fn from(i: Inequality) -> InequalityId {
        match i {
            Inequality::Ckw => InequalityId::Ckw,
            Inequality::RenyiMonogamy => InequalityId::RenyiMonogamy,
            Inequality::CoaPolygamy => InequalityId::CoaPolygamy,
            Inequality::EoaPolygamy => InequalityId::EoaPolygamy,
            Inequality::RenyiPolygamy => InequalityId::RenyiPolygamy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub inequality: Inequality,

    /// Comma-separated Renyi orders for the alpha-dependent inequalities.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,

    /// Number of qubits per sample.
    #[arg(long, default_value_t = 3)]
    pub n: usize,

    #[arg(long, default_value_t = 1000)]
    pub samples: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Check every focus qubit instead of qubit 0 only.
    #[arg(long)]
    pub all_foci: bool,

    /// Use the roof optimizer for the polygamy right-hand side instead
    /// of the certified f_alpha(C^a) bound (slower, tighter).
    #[arg(long)]
    pub oracle_rhs: bool,

    /// Conjecture floor for the analytic two-qubit formula.
    #[arg(long, default_value_t = 0.83)]
    pub floor: f64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ViolationRecord<'a> {
    #[serde(flatten)]
    report: &'a ResidualReport,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    version: &'a str,
    inequality: &'static str,
    n_qubits: usize,
    n_samples: usize,
    seed: u64,
    all_foci: bool,
    violation_tol: f64,
    conjecture_floor: f64,
    summaries: &'a [AlphaSummary],
}

fn csv_report(args: &CheckArgs, id: InequalityId, summaries: &[AlphaSummary]) -> String {
    let mut out = String::new();
    out.push_str(
        "version,inequality,alpha,n_qubits,n_samples,seed,all_foci,checks,\
         min_residual,mean_residual,violations,numerical_zeros,worst_seed,worst_focus,\
         violation_tol\n",
    );
    for s in summaries {
        let alpha = s.alpha.map(fmt_f64).unwrap_or_default();
        out.push_str(&format!(
            "{VERSION},{},{alpha},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            id.name(),
            args.n,
            args.samples,
            args.seed,
            args.all_foci,
            s.checks,
            fmt_f64(s.min_residual),
            fmt_f64(s.mean_residual),
            s.violations,
            s.numerical_zeros,
            s.worst_seed,
            s.worst_focus,
            fmt_f64(VIOLATION_TOL),
        ));
    }
    out
}

fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, contents)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .map_err(|e| Error::InvalidArgument(format!("cannot write to stdout: {e}")))
        }
    }
}

fn sidecar_path(out: Option<&Path>) -> PathBuf {
    match out {
        Some(p) => {
            let mut name = p.file_name().unwrap_or_default().to_os_string();
            name.push(".violations.json");
            p.with_file_name(name)
        }
        None => PathBuf::from("violations.json"),
    }
}

fn dump_violations(args: &CheckArgs, violations: &[ResidualReport]) -> Result<PathBuf> {
    let records: Vec<ViolationRecord> = violations
        .iter()
        .map(|r| {
            let psi = haar_random_pure(args.n, r.state_seed);
            ViolationRecord {
                report: r,
                amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
            }
        })
        .collect();
    let path = sidecar_path(args.out.as_deref());
    let text = serde_json::to_string_pretty(&records)
        .map_err(|e| Error::InvalidArgument(format!("cannot serialize violations: {e}")))?;
    fs::write(&path, text)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

pub fn run(args: &CheckArgs) -> Result<u8> {
    let id: InequalityId = args.inequality.into();
    let cfg = BatchConfig {
        n_qubits: args.n,
        n_samples: args.samples,
        seed: args.seed,
        all_foci: args.all_foci,
        policy: ConjecturePolicy {
            alpha_floor: args.floor,
            strict: false,
        },
        polygamy: PolygamyConfig {
            strict_window: false,
            oracle_rhs: args.oracle_rhs.then(|| RoofBudget {
                seed: args.seed,
                ..Default::default()
            }),
            ..Default::default()
        },
        roof_budget: RoofBudget {
            seed: args.seed,
            ..Default::default()
        },
    };
    let (summaries, violations) = batch_check_with_violations(id, &args.alpha, &cfg)?;

    let report = match args.format {
        Format::Csv => csv_report(args, id, &summaries),
        Format::Json => {
            let j = JsonReport {
                version: VERSION,
                inequality: id.name(),
                n_qubits: args.n,
                n_samples: args.samples,
                seed: args.seed,
                all_foci: args.all_foci,
                violation_tol: VIOLATION_TOL,
                conjecture_floor: args.floor,
                summaries: &summaries,
            };
            let mut text = serde_json::to_string_pretty(&j)
                .map_err(|e| Error::InvalidArgument(format!("cannot serialize report: {e}")))?;
            text.push('\n');
            text
        }
    };
    write_output(args.out.as_deref(), &report)?;

    if violations.is_empty() {
        Ok(0)
    } else {
        let path = dump_violations(args, &violations)?;
        eprintln!(
            "{} violation(s) found; offending states dumped to {}",
            violations.len(),
            path.display()
        );
        Ok(1)
    }
}
