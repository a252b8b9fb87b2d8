//! Grid scans and bisection for the two alpha thresholds: where the
//! convexity of `f_alpha` fails (just below 0.83, witnessed near x = 1)
//! and where the sign of `h_alpha` flips from nonpositive to mixed
//! (just above 1.43).
//!
//! Both transitions hide in awkward corners: the convexity violations
//! sit at x around 1 and the alpha = 1.9 superadditivity violations sit
//! at amplitude ~1e-12 inside x^2 + y^2 <= 0.008, so each scan adds a
//! logarithmically refined band to its uniform grid. Every claimed
//! extremum is re-evaluated at its witness point before the verdict is
//! returned.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::AlphaParam;
use crate::renyi_ent::{f_alpha_d2, h_alpha};
use crate::{Error, Result};

/// Scan verdict tolerance: an extremum on the wrong side of zero by
/// more than this flips the verdict.
pub const SCAN_TOL: f64 = 1e-12;

/// Number of log-spaced refinement points added to each scan axis.
const REFINE_POINTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
}

/// Outcome of one grid scan at one alpha.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub alpha: f64,
    pub grid_spec: String,
    pub extremal_value: f64,
    pub extremal_location: (f64, f64),
    pub verdict: Verdict,
}

/// Closed bisection interval known to contain a verdict transition.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThresholdInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ThresholdInterval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Uniform interior grid on (0, 1) plus a band log-spaced in `1 - x`
/// down to `1 - x = 1e-8`, ascending.
fn convexity_grid(x_grid: usize) -> Vec<f64> {
    let mut points: Vec<f64> = (1..=x_grid)
        .map(|k| k as f64 / (x_grid + 1) as f64)
        .collect();
    let (lo, hi) = (1e-8f64, 0.1f64);
    let ratio = (hi / lo).ln();
    for k in 0..REFINE_POINTS {
        let gap = lo * (ratio * k as f64 / (REFINE_POINTS - 1) as f64).exp();
        points.push(1.0 - gap);
    }
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();
    points
}

/// Minimum of the second derivative of `f_alpha` over the refined grid;
/// convexity holds when that minimum stays above `-1e-12`.
pub fn convexity_scan(a: &AlphaParam, x_grid: usize) -> Result<SweepResult> {
    if x_grid < 100 {
        return Err(Error::arg(format!(
            "convexity scan needs at least 100 grid points, got {x_grid}"
        )));
    }
    let points = convexity_grid(x_grid);
    let values: Vec<f64> = points
        .par_iter()
        .map(|&x| f_alpha_d2(x, a))
        .collect::<Result<_>>()?;
    let mut min = f64::INFINITY;
    let mut at = points[0];
    for (&x, &v) in points.iter().zip(&values) {
        if v < min {
            min = v;
            at = x;
        }
    }
    // Witness re-check.
    let min = f_alpha_d2(at, a)?;
    Ok(SweepResult {
        alpha: a.value(),
        grid_spec: format!(
            "x: {} uniform on (0,1) + {} log-refined in 1-x over [1e-8, 0.1]",
            x_grid, REFINE_POINTS
        ),
        extremal_value: min,
        extremal_location: (at, 0.0),
        verdict: if min >= -SCAN_TOL {
            Verdict::Holds
        } else {
            Verdict::Violated
        },
    })
}

/// Polar grid over the quarter disk: C in (0, 1], t in (0, pi/2), plus
/// a radial band log-spaced over C in [1e-6, 0.1]. Points come out in
/// ascending (C, t) order so ties break toward the lexicographically
/// smallest witness.
fn polar_grid(radial: usize, angular: usize) -> Vec<(f64, f64)> {
    let mut radii: Vec<f64> = (1..=radial).map(|i| i as f64 / radial as f64).collect();
    let (lo, hi) = (1e-6f64, 0.1f64);
    let ratio = (hi / lo).ln();
    for k in 0..REFINE_POINTS {
        radii.push(lo * (ratio * k as f64 / (REFINE_POINTS - 1) as f64).exp());
    }
    radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
    radii.dedup();
    let mut points = Vec::with_capacity(radii.len() * angular);
    for &c in &radii {
        for j in 1..=angular {
            let t = j as f64 * FRAC_PI_2 / (angular + 1) as f64;
            points.push((c, t));
        }
    }
    points
}

fn h_scan(a: &AlphaParam, radial: usize, angular: usize, maximize: bool) -> Result<SweepResult> {
    if radial < 100 || angular < 100 {
        return Err(Error::arg(format!(
            "h scans need at least a 100x100 grid, got {radial}x{angular}"
        )));
    }
    let points = polar_grid(radial, angular);
    let values: Vec<f64> = points
        .par_iter()
        .map(|&(c, t)| h_alpha(c * t.cos(), c * t.sin(), a))
        .collect::<Result<_>>()?;
    let mut extremal = if maximize {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    };
    let mut at = points[0];
    for (&p, &v) in points.iter().zip(&values) {
        let better = if maximize { v > extremal } else { v < extremal };
        if better {
            extremal = v;
            at = p;
        }
    }
    let (x, y) = (at.0 * at.1.cos(), at.0 * at.1.sin());
    let extremal = h_alpha(x, y, a)?;
    let verdict = if maximize {
        // Polygamy side: h must be nonpositive everywhere.
        if extremal <= SCAN_TOL {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    } else {
        // Monogamy side: h must be nonnegative everywhere.
        if extremal >= -SCAN_TOL {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    };
    Ok(SweepResult {
        alpha: a.value(),
        grid_spec: format!(
            "polar (C,t): {}x{} uniform + {}x{} log-refined C in [1e-6, 0.1]",
            radial, angular, REFINE_POINTS, angular
        ),
        extremal_value: extremal,
        extremal_location: (x, y),
        verdict,
    })
}

/// Maximum of `h_alpha` over the quarter disk; `holds` means h is
/// nonpositive everywhere (the polygamy regime, alpha up to ~1.43).
pub fn h_sign_scan(a: &AlphaParam, radial: usize, angular: usize) -> Result<SweepResult> {
    h_scan(a, radial, angular, true)
}

/// Minimum of `h_alpha` over the quarter disk; `holds` means h is
/// nonnegative everywhere (the monogamy regime, alpha >= 2).
pub fn h_nonneg_scan(a: &AlphaParam, radial: usize, angular: usize) -> Result<SweepResult> {
    h_scan(a, radial, angular, false)
}

fn bisect<F: Fn(f64) -> Result<bool>>(
    mut lo: f64,
    mut hi: f64,
    iters: usize,
    lo_state: bool,
    check: F,
) -> Result<ThresholdInterval> {
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if check(mid)? == lo_state {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdInterval { lo, hi })
}

/// Bisects the convexity transition of `f_alpha`. Requires the scan to
/// be violated at `lo` and to hold at `hi`.
pub fn convexity_threshold(
    lo: f64,
    hi: f64,
    iters: usize,
    x_grid: usize,
) -> Result<ThresholdInterval> {
    if lo.is_nan() || hi.is_nan() || lo >= hi || lo <= 0.0 {
        return Err(Error::arg(format!("invalid bracket [{lo}, {hi}]")));
    }
    let violated = |alpha: f64| -> Result<bool> {
        let a = AlphaParam::new(alpha)?;
        Ok(convexity_scan(&a, x_grid)?.verdict == Verdict::Violated)
    };
    if !violated(lo)? {
        return Err(Error::arg(format!(
            "bracket precondition failed: convexity already holds at alpha = {lo}"
        )));
    }
    if violated(hi)? {
        return Err(Error::arg(format!(
            "bracket precondition failed: convexity still violated at alpha = {hi}"
        )));
    }
    bisect(lo, hi, iters, true, violated)
}

/// Bisects the sign transition of `h_alpha` (polygamy ceiling).
/// Requires `h_sign_scan` to hold at `lo` and be violated at `hi`.
pub fn polygamy_threshold(
    lo: f64,
    hi: f64,
    iters: usize,
    radial: usize,
    angular: usize,
) -> Result<ThresholdInterval> {
    if lo.is_nan() || hi.is_nan() || lo >= hi || lo <= 0.0 {
        return Err(Error::arg(format!("invalid bracket [{lo}, {hi}]")));
    }
    let holds = |alpha: f64| -> Result<bool> {
        let a = AlphaParam::new(alpha)?;
        Ok(h_sign_scan(&a, radial, angular)?.verdict == Verdict::Holds)
    };
    if !holds(lo)? {
        return Err(Error::arg(format!(
            "bracket precondition failed: h sign scan already violated at alpha = {lo}"
        )));
    }
    if holds(hi)? {
        return Err(Error::arg(format!(
            "bracket precondition failed: h sign scan still holds at alpha = {hi}"
        )));
    }
    bisect(lo, hi, iters, true, holds)
}
