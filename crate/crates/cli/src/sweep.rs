use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};

use renyi_lab::entropy::AlphaParam;
use renyi_lab::sweeps::{
    convexity_scan, convexity_threshold, h_nonneg_scan, h_sign_scan, polygamy_threshold,
    SweepResult, Verdict, SCAN_TOL,
};
use renyi_lab::{Error, Result};

use crate::{fmt_f64, VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Minimum of the second derivative of f_alpha over a refined x grid.
    Convexity,
    /// Extremum of h_alpha over the polar quarter-disk grid.
    HScan,
    /// Bisect the convexity transition of f_alpha.
    ConvexityThreshold,
    /// Bisect the sign transition of h_alpha.
    PolygamyThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    /// Max side (polygamy regime) up to alpha = 1.5, min side above.
    Auto,
    /// Minimum of h (monogamy side, verdict holds iff nonnegative).
    Min,
    /// Maximum of h (polygamy side, verdict holds iff nonpositive).
    Max,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub kind: Kind,

    /// Comma-separated Renyi orders (scans only).
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,

    /// Which extremum of h to track in h-scan.
    #[arg(long, value_enum, default_value_t = Side::Auto)]
    pub side: Side,

    /// Uniform grid size for convexity scans.
    #[arg(long, default_value_t = 2000)]
    pub x_grid: usize,

    /// Radial grid size for h scans.
    #[arg(long, default_value_t = 300)]
    pub radial: usize,

    /// Angular grid size for h scans.
    #[arg(long, default_value_t = 300)]
    pub angular: usize,

    /// Bisection bracket (thresholds only).
    #[arg(long)]
    pub lo: Option<f64>,

    #[arg(long)]
    pub hi: Option<f64>,

    #[arg(long, default_value_t = 20)]
    pub iters: usize,

    /// Output file for scan tables; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "violated",
    }
}

fn scan_csv(results: &[(SweepResult, &'static str)]) -> String {
    let mut out = String::new();
    out.push_str("alpha,grid_min_or_max,location_x,location_y,verdict,kind,version,scan_tol\n");
    for (r, kind) in results {
        out.push_str(&format!(
            "{},{},{},{},{},{kind},{VERSION},{}\n",
            fmt_f64(r.alpha),
            fmt_f64(r.extremal_value),
            fmt_f64(r.extremal_location.0),
            fmt_f64(r.extremal_location.1),
            verdict_str(r.verdict),
            fmt_f64(SCAN_TOL),
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

fn require_alphas(args: &SweepArgs) -> Result<Vec<AlphaParam>> {
    if args.alpha.is_empty() {
        return Err(Error::InvalidArgument(
            "this scan requires --alpha".to_string(),
        ));
    }
    args.alpha.iter().map(|&a| AlphaParam::new(a)).collect()
}

fn bracket(args: &SweepArgs, default_lo: f64, default_hi: f64) -> (f64, f64) {
    (args.lo.unwrap_or(default_lo), args.hi.unwrap_or(default_hi))
}

pub fn run(args: &SweepArgs) -> Result<u8> {
    match args.kind {
        Kind::Convexity => {
            let mut rows = Vec::new();
            for a in require_alphas(args)? {
                rows.push((convexity_scan(&a, args.x_grid)?, "convexity"));
            }
            write_output(args.out.as_deref(), &scan_csv(&rows))?;
            Ok(0)
        }
        Kind::HScan => {
            let mut rows = Vec::new();
            for a in require_alphas(args)? {
                let min_side = match args.side {
                    Side::Min => true,
                    Side::Max => false,
                    Side::Auto => a.value() > 1.5,
                };
                let row = if min_side {
                    (h_nonneg_scan(&a, args.radial, args.angular)?, "h-min")
                } else {
                    (h_sign_scan(&a, args.radial, args.angular)?, "h-max")
                };
                rows.push(row);
            }
            write_output(args.out.as_deref(), &scan_csv(&rows))?;
            Ok(0)
        }
        Kind::ConvexityThreshold => {
            let (lo, hi) = bracket(args, 0.5, 2.0);
            let interval = convexity_threshold(lo, hi, args.iters, args.x_grid)?;
            let text = format!(
                "interval_lo: {}\ninterval_hi: {}\nversion: {VERSION}\n",
                fmt_f64(interval.lo),
                fmt_f64(interval.hi)
            );
            write_output(args.out.as_deref(), &text)?;
            Ok(0)
        }
        Kind::PolygamyThreshold => {
            let (lo, hi) = bracket(args, 1.0, 2.0);
            let interval = polygamy_threshold(lo, hi, args.iters, args.radial, args.angular)?;
            let text = format!(
                "interval_lo: {}\ninterval_hi: {}\nversion: {VERSION}\n",
                fmt_f64(interval.lo),
                fmt_f64(interval.hi)
            );
            write_output(args.out.as_deref(), &text)?;
            Ok(0)
        }
    }
}
