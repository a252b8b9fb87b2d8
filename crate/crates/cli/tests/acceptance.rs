//! End-to-end acceptance criteria, one test per criterion, each
//! printing a single `criterion N: PASS` / `FAIL` line.

use std::process::Command;
use std::time::{Duration, Instant};

use renyi_lab::concurrence::wootters_spectrum;
use renyi_lab::entropy::AlphaParam;
use renyi_lab::inequalities::{
    batch_check, ckw_residual, coa_polygamy_residual, renyi_monogamy_residual, BatchConfig,
    InequalityId,
};
use renyi_lab::linalg::{haar_random_pure, partial_trace};
use renyi_lab::renyi_ent::{f_alpha, f_alpha_d2, ConjecturePolicy};
use renyi_lab::roof::{convex_roof_min, roof_max, PureMeasure, RoofBudget};
use renyi_lab::states::{ghz, w_state};
use renyi_lab::sweeps::{h_nonneg_scan, h_sign_scan, Verdict};

fn report<F: FnOnce() -> Result<(), String>>(n: usize, f: F) {
    match f() {
        Ok(()) => println!("criterion {n}: PASS"),
        Err(msg) => {
            println!("criterion {n}: FAIL ({msg})");
            panic!("criterion {n} failed: {msg}");
        }
    }
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_renyi-lab"))
}

fn parse_interval(stdout: &str) -> Result<(f64, f64), String> {
    let mut lo = None;
    let mut hi = None;
    for line in stdout.lines() {
        if let Some(v) = line.strip_prefix("interval_lo: ") {
            lo = v.trim().parse::<f64>().ok();
        }
        if let Some(v) = line.strip_prefix("interval_hi: ") {
            hi = v.trim().parse::<f64>().ok();
        }
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok((lo, hi)),
        _ => Err(format!("missing interval lines in output: {stdout}")),
    }
}

fn a(alpha: f64) -> AlphaParam {
    AlphaParam::new(alpha).unwrap()
}

#[test]
fn criterion_1_convexity_threshold() {
    report(1, || {
        let start = Instant::now();
        let out = binary()
            .args(["sweep", "convexity-threshold", "--lo", "0.5", "--hi", "2"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit {:?}", out.status.code()));
        }
        let (lo, hi) = parse_interval(&String::from_utf8_lossy(&out.stdout))?;
        if !(0.82..=0.83).contains(&lo) || !(0.82..=0.83).contains(&hi) || lo > hi {
            return Err(format!("interval [{lo}, {hi}] not inside [0.82, 0.83]"));
        }
        if start.elapsed() > Duration::from_secs(60) {
            return Err(format!("took {:?}, budget 1 minute", start.elapsed()));
        }
        Ok(())
    });
}

#[test]
fn criterion_2_polygamy_threshold() {
    report(2, || {
        let start = Instant::now();
        let out = binary()
            .args(["sweep", "polygamy-threshold", "--lo", "1.0", "--hi", "2.0"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit {:?}", out.status.code()));
        }
        let (lo, hi) = parse_interval(&String::from_utf8_lossy(&out.stdout))?;
        if !(1.43..=1.44).contains(&lo) || !(1.43..=1.44).contains(&hi) || lo > hi {
            return Err(format!("interval [{lo}, {hi}] not inside [1.43, 1.44]"));
        }
        let one = h_sign_scan(&a(1.0), 300, 300).map_err(|e| e.to_string())?;
        if one.verdict != Verdict::Holds {
            return Err(format!(
                "alpha = 1.0 scan should hold, max = {}",
                one.extremal_value
            ));
        }
        if start.elapsed() > Duration::from_secs(120) {
            return Err(format!("took {:?}, budget 2 minutes", start.elapsed()));
        }
        Ok(())
    });
}

#[test]
fn criterion_3_h_sign_structure() {
    report(3, || {
        for alpha in [2.0, 2.5, 3.0, 5.0, 10.0] {
            let s = h_nonneg_scan(&a(alpha), 300, 300).map_err(|e| e.to_string())?;
            if s.verdict != Verdict::Holds {
                return Err(format!("alpha = {alpha}: min {} < 0", s.extremal_value));
            }
        }
        let s = h_nonneg_scan(&a(1.9), 300, 300).map_err(|e| e.to_string())?;
        if s.verdict != Verdict::Violated {
            return Err("alpha = 1.9 should be violated".to_string());
        }
        let (x, y) = s.extremal_location;
        if x * x + y * y > 0.008 {
            return Err(format!("witness ({x}, {y}) outside x^2 + y^2 <= 0.008"));
        }
        if s.extremal_value.abs() >= 1e-10 {
            return Err(format!(
                "violation magnitude {} not below 1e-10",
                s.extremal_value
            ));
        }
        Ok(())
    });
}

#[test]
fn criterion_4_monogamy_monte_carlo() {
    report(4, || {
        let start = Instant::now();
        let alphas = [2.0, 2.5, 3.0, 5.0];
        for (n_qubits, n_samples) in [(3, 10_000), (4, 1_000)] {
            let cfg = BatchConfig {
                n_qubits,
                n_samples,
                seed: 2024,
                ..Default::default()
            };
            let summaries = batch_check(InequalityId::RenyiMonogamy, &alphas, &cfg)
                .map_err(|e| e.to_string())?;
            for s in &summaries {
                if s.violations != 0 {
                    return Err(format!(
                        "{n_qubits} qubits, alpha {:?}: {} violations, min residual {}",
                        s.alpha, s.violations, s.min_residual
                    ));
                }
            }
        }
        // Contrast: EoF (alpha = 1) monogamy fails on random states.
        let cfg = BatchConfig {
            n_samples: 10_000,
            seed: 2024,
            ..Default::default()
        };
        let contrast =
            batch_check(InequalityId::RenyiMonogamy, &[1.0], &cfg).map_err(|e| e.to_string())?;
        if contrast[0].violations == 0 {
            return Err("expected at least one EoF monogamy violation".to_string());
        }
        if start.elapsed() > Duration::from_secs(300) {
            return Err(format!("took {:?}, budget 5 minutes", start.elapsed()));
        }
        Ok(())
    });
}

#[test]
fn criterion_5_polygamy_monte_carlo() {
    report(5, || {
        let cfg = BatchConfig {
            n_samples: 10_000,
            seed: 2024,
            ..Default::default()
        };
        let summaries = batch_check(InequalityId::RenyiPolygamy, &[0.83, 1.0, 1.2, 1.43], &cfg)
            .map_err(|e| e.to_string())?;
        for s in &summaries {
            if s.violations != 0 {
                return Err(format!(
                    "alpha {:?}: {} violations, min residual {}",
                    s.alpha, s.violations, s.min_residual
                ));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_named_state_ground_truth() {
    report(6, || {
        let policy = ConjecturePolicy::default();
        let g = ghz(3).map_err(|e| e.to_string())?;
        let r = renyi_monogamy_residual(&g, 0, &a(2.0), &policy, 0).map_err(|e| e.to_string())?;
        if (r.residual - 1.0).abs() > 1e-9 {
            return Err(format!("GHZ residual {} != 1", r.residual));
        }
        let w = w_state(3).map_err(|e| e.to_string())?;
        let r = ckw_residual(&w, 0, 0).map_err(|e| e.to_string())?;
        if r.residual.abs() > 1e-9 {
            return Err(format!("W ckw residual {} != 0", r.residual));
        }
        let r = coa_polygamy_residual(&w, 0, 0).map_err(|e| e.to_string())?;
        if r.residual.abs() > 1e-9 {
            return Err(format!("W coa-polygamy residual {} != 0", r.residual));
        }
        let r = renyi_monogamy_residual(&w, 0, &a(2.0), &policy, 0).map_err(|e| e.to_string())?;
        let expect = (9.0f64 / 5.0).log2() - 2.0 * f_alpha(2.0 / 3.0, &a(2.0)).unwrap();
        if (r.residual - expect).abs() > 1e-6 || (r.residual - 0.12285).abs() > 1e-4 {
            return Err(format!("W renyi residual {} != {expect}", r.residual));
        }
        Ok(())
    });
}

#[test]
fn criterion_7_oracle_equivalence() {
    report(7, || {
        let start = Instant::now();
        let budget = RoofBudget::default();
        for seed in 0..50u64 {
            // Pair marginals of Haar 3-qubit states are rank-2 two-qubit
            // states almost surely.
            let psi = haar_random_pure(3, 31_000 + seed);
            let pair = partial_trace(&psi.to_density(), &[0, 1]).map_err(|e| e.to_string())?;
            let spectrum = wootters_spectrum(&pair).map_err(|e| e.to_string())?;
            for alpha in [1.2, 2.0, 3.0] {
                let ap = a(alpha);
                let closed = f_alpha(spectrum.concurrence(), &ap).map_err(|e| e.to_string())?;
                let roof = convex_roof_min(&pair, PureMeasure::Renyi(ap), &budget)
                    .map_err(|e| e.to_string())?;
                if (roof.value - closed).abs() > 2e-3 {
                    return Err(format!(
                        "seed {seed}, alpha {alpha}: roof {} vs closed form {closed}",
                        roof.value
                    ));
                }
            }
            let coa = spectrum.assistance();
            let roof =
                roof_max(&pair, PureMeasure::Concurrence, &budget).map_err(|e| e.to_string())?;
            if (roof.value - coa).abs() > 2e-3 {
                return Err(format!(
                    "seed {seed}: roof CoA {} vs lambda sum {coa}",
                    roof.value
                ));
            }
        }
        if start.elapsed() > Duration::from_secs(600) {
            return Err(format!("took {:?}, budget 10 minutes", start.elapsed()));
        }
        Ok(())
    });
}

#[test]
fn criterion_8_function_level_properties() {
    report(8, || {
        let start = Instant::now();
        let alphas = [0.83, 0.9, 1.0, 1.2, 2.0, 3.0, 5.0, 10.0];
        for &alpha in &alphas {
            let ap = a(alpha);
            // Endpoints.
            if f_alpha(0.0, &ap).unwrap() != 0.0 {
                return Err(format!("f_{alpha}(0) != 0"));
            }
            if (f_alpha(1.0, &ap).unwrap() - 1.0).abs() > 1e-12 {
                return Err(format!("f_{alpha}(1) != 1"));
            }
            // Strict monotonicity.
            let mut prev = 0.0;
            for k in 1..=500 {
                let x = k as f64 / 500.0;
                let v = f_alpha(x, &ap).unwrap();
                if v <= prev {
                    return Err(format!("f_{alpha} not increasing at x = {x}"));
                }
                prev = v;
            }
        }
        // Convexity for alpha >= 1.
        for &alpha in &[1.0, 1.5, 2.0, 5.0] {
            let ap = a(alpha);
            for k in 1..500 {
                let x = k as f64 / 500.0;
                if f_alpha_d2(x, &ap).unwrap() < -1e-12 {
                    return Err(format!("f_{alpha} not convex at x = {x}"));
                }
            }
        }
        // alpha -> 1 continuity against the binary-entropy curve.
        for k in 1..100 {
            let x = k as f64 / 100.0;
            let base = f_alpha(x, &a(1.0)).unwrap();
            for da in [-1e-4, 1e-4] {
                let v = f_alpha(x, &a(1.0 + da)).unwrap();
                if (v - base).abs() > 1e-3 {
                    return Err(format!("discontinuity at alpha = 1 + {da}, x = {x}"));
                }
            }
        }
        // Analytic vs finite-difference second derivative.
        let h = 1e-4;
        for &alpha in &[0.83, 1.2, 2.0, 4.0] {
            let ap = a(alpha);
            for &x in &[0.1, 0.3, 0.5, 0.7, 0.9] {
                let fd = (f_alpha(x + h, &ap).unwrap() - 2.0 * f_alpha(x, &ap).unwrap()
                    + f_alpha(x - h, &ap).unwrap())
                    / (h * h);
                let an = f_alpha_d2(x, &ap).unwrap();
                if (fd - an).abs() > 1e-4 * an.abs().max(1.0) {
                    return Err(format!("d2 mismatch at alpha {alpha}, x {x}: {an} vs {fd}"));
                }
            }
        }
        if start.elapsed() > Duration::from_secs(60) {
            return Err(format!("took {:?}, budget 1 minute", start.elapsed()));
        }
        Ok(())
    });
}
