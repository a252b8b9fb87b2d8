//! Monogamy and polygamy residuals for multi-qubit pure states, plus
//! batched Monte-Carlo checks over Haar-random samples.
//!
//! Residuals are oriented so that `>= 0` always means "inequality
//! satisfied": `lhs - sum(rhs)` for the monogamy family, `sum(rhs) -
//! lhs` for the polygamy family. Anything in `(-1e-9, 0)` is counted as
//! a numerical zero, not a violation.

use rayon::prelude::*;
use serde::Serialize;

use crate::concurrence::{pure_concurrence, wootters_concurrence};
use crate::entropy::AlphaParam;
use crate::linalg::{haar_random_pure, partial_trace, DensityMatrix, PureState};
use crate::renyi_ent::{
    renyi_entanglement_pure, renyi_entanglement_two_qubit, reoa_lower_bound, ConjecturePolicy,
};
use crate::roof::{roof_max, splitmix64, PureMeasure, RoofBudget};
use crate::{Error, Result};

/// Residuals below this count as violations; the gap down from zero
/// separates genuine counterexamples from floating-point noise at the
/// 1e-12 normalization scale.
pub const VIOLATION_TOL: f64 = -1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityId {
    Ckw,
    RenyiMonogamy,
    CoaPolygamy,
    EoaPolygamy,
    RenyiPolygamy,
}

impl InequalityId {
    pub fn name(&self) -> &'static str {
        match self {
            InequalityId::Ckw => "ckw",
            InequalityId::RenyiMonogamy => "renyi-monogamy",
            InequalityId::CoaPolygamy => "coa-polygamy",
            InequalityId::EoaPolygamy => "eoa-polygamy",
            InequalityId::RenyiPolygamy => "renyi-polygamy",
        }
    }

    pub fn uses_alpha(&self) -> bool {
        matches!(
            self,
            InequalityId::RenyiMonogamy | InequalityId::RenyiPolygamy
        )
    }

    fn is_monogamy(&self) -> bool {
        matches!(self, InequalityId::Ckw | InequalityId::RenyiMonogamy)
    }
}

/// One inequality evaluated on one state at one alpha.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub inequality_id: InequalityId,
    pub alpha: Option<f64>,
    pub lhs: f64,
    pub rhs_terms: Vec<f64>,
    pub residual: f64,
    pub state_seed: u64,
    pub focus: usize,
    pub conjectural: bool,
}

impl ResidualReport {
    fn new(
        id: InequalityId,
        alpha: Option<f64>,
        lhs: f64,
        rhs_terms: Vec<f64>,
        state_seed: u64,
        focus: usize,
        conjectural: bool,
    ) -> ResidualReport {
        let mut report = ResidualReport {
            inequality_id: id,
            alpha,
            lhs,
            rhs_terms,
            residual: 0.0,
            state_seed,
            focus,
            conjectural,
        };
        report.residual = report.recompute_residual();
        report
    }

    /// Recomputes the signed residual from the stored sides; equals the
    /// stored `residual` field exactly.
    pub fn recompute_residual(&self) -> f64 {
        let rhs: f64 = self.rhs_terms.iter().sum();
        if self.inequality_id.is_monogamy() {
            self.lhs - rhs
        } else {
            rhs - self.lhs
        }
    }

    pub fn is_violation(&self) -> bool {
        self.residual < VIOLATION_TOL
    }
}

fn check_focus(psi: &PureState, focus: usize) -> Result<()> {
    let n = psi.n_qubits();
    if !(2..=4).contains(&n) {
        return Err(Error::arg(format!(
            "inequality checks support 2 to 4 qubits, got {n}"
        )));
    }
    if focus >= n {
        return Err(Error::arg(format!(
            "focus qubit {focus} out of range for {n} qubits"
        )));
    }
    Ok(())
}

fn reduced_pair(psi: &PureState, focus: usize, other: usize) -> Result<DensityMatrix> {
    let mut keep = [focus, other];
    keep.sort_unstable();
    partial_trace(&psi.to_density(), &keep)
}

fn others(psi: &PureState, focus: usize) -> Vec<usize> {
    (0..psi.n_qubits()).filter(|&q| q != focus).collect()
}

/// CKW residual: `C^2(focus|rest) - sum_i C^2(rho_{focus,i})`.
pub fn ckw_residual(psi: &PureState, focus: usize, state_seed: u64) -> Result<ResidualReport> {
    check_focus(psi, focus)?;
    let lhs = pure_concurrence(psi, &[focus])?.powi(2);
    let mut rhs = Vec::new();
    for other in others(psi, focus) {
        let pair = reduced_pair(psi, focus, other)?;
        rhs.push(wootters_concurrence(&pair)?.powi(2));
    }
    Ok(ResidualReport::new(
        InequalityId::Ckw,
        None,
        lhs,
        rhs,
        state_seed,
        focus,
        false,
    ))
}

/// Renyi-alpha monogamy residual:
/// `E_alpha(focus|rest) - sum_i E_alpha(rho_{focus,i})`.
/// Proven non-negative for alpha >= 2; smaller alphas are evaluated but
/// flagged as outside the theorem regime.
pub fn renyi_monogamy_residual(
    psi: &PureState,
    focus: usize,
    a: &AlphaParam,
    policy: &ConjecturePolicy,
    state_seed: u64,
) -> Result<ResidualReport> {
    check_focus(psi, focus)?;
    let lhs = renyi_entanglement_pure(psi, &[focus], a)?;
    let mut rhs = Vec::new();
    let mut conjectural = a.value() < 2.0;
    for other in others(psi, focus) {
        let pair = reduced_pair(psi, focus, other)?;
        let term = renyi_entanglement_two_qubit(&pair, a, policy)?;
        conjectural |= term.conjectural;
        rhs.push(term.value);
    }
    Ok(ResidualReport::new(
        InequalityId::RenyiMonogamy,
        Some(a.value()),
        lhs,
        rhs,
        state_seed,
        focus,
        conjectural,
    ))
}

/// CoA polygamy residual: `sum_i (C^a(rho_{focus,i}))^2 - C^2(focus|rest)`.
pub fn coa_polygamy_residual(
    psi: &PureState,
    focus: usize,
    state_seed: u64,
) -> Result<ResidualReport> {
    check_focus(psi, focus)?;
    let lhs = pure_concurrence(psi, &[focus])?.powi(2);
    let mut rhs = Vec::new();
    for other in others(psi, focus) {
        let pair = reduced_pair(psi, focus, other)?;
        rhs.push(crate::concurrence::concurrence_of_assistance(&pair)?.powi(2));
    }
    Ok(ResidualReport::new(
        InequalityId::CoaPolygamy,
        None,
        lhs,
        rhs,
        state_seed,
        focus,
        false,
    ))
}

/// EoA polygamy residual with the optimization oracle on the right-hand
/// side: `sum_i roof_max(rho_{focus,i}, vonNeumann) - E(focus|rest)`.
/// The oracle lower-bounds each EoA term, so this residual lower-bounds
/// the true one.
pub fn eoa_polygamy_residual(
    psi: &PureState,
    focus: usize,
    budget: &RoofBudget,
    state_seed: u64,
) -> Result<ResidualReport> {
    check_focus(psi, focus)?;
    let one = AlphaParam::new(1.0)?;
    let lhs = renyi_entanglement_pure(psi, &[focus], &one)?;
    let mut rhs = Vec::new();
    for other in others(psi, focus) {
        let pair = reduced_pair(psi, focus, other)?;
        let term = roof_max(&pair, PureMeasure::Renyi(one), budget)?;
        if !term.converged {
            return Err(Error::non_convergence(format!(
                "EoA roof for pair (focus {focus}, other {other}) hit the iteration cap"
            )));
        }
        rhs.push(term.value);
    }
    Ok(ResidualReport::new(
        InequalityId::EoaPolygamy,
        None,
        lhs,
        rhs,
        state_seed,
        focus,
        false,
    ))
}

/// Validity window and right-hand-side mode for the Renyi polygamy check.
#[derive(Debug, Clone, Copy)]
pub struct PolygamyConfig {
    pub window: (f64, f64),
    /// Reject alphas outside the window instead of flagging them.
    pub strict_window: bool,
    /// Substitute `roof_max(renyi(alpha))` for the certified
    /// `f_alpha(C^a)` bound: tighter but much slower.
    pub oracle_rhs: Option<RoofBudget>,
}

impl Default for PolygamyConfig {
    fn default() -> PolygamyConfig {
        PolygamyConfig {
            window: (0.83, 1.44),
            strict_window: true,
            oracle_rhs: None,
        }
    }
}

/// Renyi polygamy residual:
/// `sum_i f_alpha(C^a(rho_{focus,i})) - E_alpha(focus|rest)`.
///
/// The right-hand side is the certified lower bound on each REoA term,
/// so a non-negative residual implies the polygamy inequality itself.
pub fn renyi_polygamy_residual(
    psi: &PureState,
    focus: usize,
    a: &AlphaParam,
    cfg: &PolygamyConfig,
    state_seed: u64,
) -> Result<ResidualReport> {
    check_focus(psi, focus)?;
    let alpha = a.value();
    let mut conjectural = false;
    if alpha < cfg.window.0 || alpha > cfg.window.1 {
        if cfg.strict_window {
            return Err(Error::domain(format!(
                "alpha = {alpha} outside the polygamy validity window [{}, {}]",
                cfg.window.0, cfg.window.1
            )));
        }
        conjectural = true;
    }
    conjectural |= alpha < 1.0;
    let lhs = renyi_entanglement_pure(psi, &[focus], a)?;
    let policy = ConjecturePolicy {
        alpha_floor: cfg
            .window
            .0
            .min(crate::renyi_ent::DEFAULT_CONJECTURE_ALPHA_FLOOR),
        strict: false,
    };
    let mut rhs = Vec::new();
    for other in others(psi, focus) {
        let pair = reduced_pair(psi, focus, other)?;
        let term = match &cfg.oracle_rhs {
            Some(budget) => {
                let r = roof_max(&pair, PureMeasure::Renyi(*a), budget)?;
                if !r.converged {
                    return Err(Error::non_convergence(format!(
                        "REoA roof for pair (focus {focus}, other {other}) hit the iteration cap"
                    )));
                }
                r.value
            }
            None => reoa_lower_bound(&pair, a, &policy)?.value,
        };
        rhs.push(term);
    }
    Ok(ResidualReport::new(
        InequalityId::RenyiPolygamy,
        Some(alpha),
        lhs,
        rhs,
        state_seed,
        focus,
        conjectural,
    ))
}

/// Per-alpha batch summary over Haar-random samples.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaSummary {
    pub inequality_id: InequalityId,
    pub alpha: Option<f64>,
    pub checks: usize,
    pub min_residual: f64,
    pub mean_residual: f64,
    pub violations: usize,
    pub numerical_zeros: usize,
    pub worst_seed: u64,
    pub worst_focus: usize,
}

/// Batch configuration; each sample derives its own state seed from
/// `(seed, index)` so serial and parallel runs agree.
#[derive(Debug, Clone)]
pub struct BatchConfig {
    pub n_qubits: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub all_foci: bool,
    pub policy: ConjecturePolicy,
    pub polygamy: PolygamyConfig,
    pub roof_budget: RoofBudget,
}

impl Default for BatchConfig {
    fn default() -> BatchConfig {
        BatchConfig {
            n_qubits: 3,
            n_samples: 1000,
            seed: 0,
            all_foci: false,
            policy: ConjecturePolicy::default(),
            polygamy: PolygamyConfig::default(),
            roof_budget: RoofBudget::default(),
        }
    }
}

/// Deterministic per-sample state seed.
pub fn sample_seed(run_seed: u64, index: u64) -> u64 {
    splitmix64(run_seed ^ splitmix64(index))
}

fn residuals_for_sample(
    id: InequalityId,
    psi: &PureState,
    alpha: Option<&AlphaParam>,
    cfg: &BatchConfig,
    state_seed: u64,
) -> Result<Vec<ResidualReport>> {
    let foci: Vec<usize> = if cfg.all_foci {
        (0..psi.n_qubits()).collect()
    } else {
        vec![0]
    };
    let mut out = Vec::with_capacity(foci.len());
    for focus in foci {
        let report = match id {
            InequalityId::Ckw => ckw_residual(psi, focus, state_seed)?,
            InequalityId::CoaPolygamy => coa_polygamy_residual(psi, focus, state_seed)?,
            InequalityId::EoaPolygamy => {
                eoa_polygamy_residual(psi, focus, &cfg.roof_budget, state_seed)?
            }
            InequalityId::RenyiMonogamy => {
                let a = alpha.ok_or_else(|| Error::arg("alpha required".to_string()))?;
                renyi_monogamy_residual(psi, focus, a, &cfg.policy, state_seed)?
            }
            InequalityId::RenyiPolygamy => {
                let a = alpha.ok_or_else(|| Error::arg("alpha required".to_string()))?;
                renyi_polygamy_residual(psi, focus, a, &cfg.polygamy, state_seed)?
            }
        };
        out.push(report);
    }
    Ok(out)
}

fn summarize(id: InequalityId, alpha: Option<f64>, reports: &[ResidualReport]) -> AlphaSummary {
    let mut summary = AlphaSummary {
        inequality_id: id,
        alpha,
        checks: reports.len(),
        min_residual: f64::NAN,
        mean_residual: f64::NAN,
        violations: 0,
        numerical_zeros: 0,
        worst_seed: 0,
        worst_focus: 0,
    };
    if reports.is_empty() {
        return summary;
    }
    let mut sum = 0.0;
    let mut min = f64::INFINITY;
    for r in reports {
        sum += r.residual;
        if r.residual < min {
            min = r.residual;
            summary.worst_seed = r.state_seed;
            summary.worst_focus = r.focus;
        }
        if r.is_violation() {
            summary.violations += 1;
        } else if r.residual < 0.0 {
            summary.numerical_zeros += 1;
        }
    }
    summary.min_residual = min;
    summary.mean_residual = sum / reports.len() as f64;
    summary
}

/// Runs one inequality over `n_samples` Haar-random states for each
/// alpha in `alphas` (ignored for the alpha-free inequalities) and
/// returns one summary row per alpha.
pub fn batch_check(
    id: InequalityId,
    alphas: &[f64],
    cfg: &BatchConfig,
) -> Result<Vec<AlphaSummary>> {
    Ok(batch_check_with_violations(id, alphas, cfg)?.0)
}

/// Like [`batch_check`] but also returns every violating report, for
/// sidecar dumps and replay.
pub fn batch_check_with_violations(
    id: InequalityId,
    alphas: &[f64],
    cfg: &BatchConfig,
) -> Result<(Vec<AlphaSummary>, Vec<ResidualReport>)> {
    if !(2..=4).contains(&cfg.n_qubits) {
        return Err(Error::arg(format!(
            "batch checks support 2 to 4 qubits, got {}",
            cfg.n_qubits
        )));
    }
    let alpha_slots: Vec<Option<f64>> = if id.uses_alpha() {
        if alphas.is_empty() {
            return Err(Error::arg(format!(
                "{} requires at least one alpha",
                id.name()
            )));
        }
        alphas.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };
    let mut summaries = Vec::with_capacity(alpha_slots.len());
    let mut violations = Vec::new();
    for slot in alpha_slots {
        let alpha_param = slot.map(AlphaParam::new).transpose()?;
        let reports: Vec<Vec<ResidualReport>> = (0..cfg.n_samples as u64)
            .into_par_iter()
            .map(|index| {
                let state_seed = sample_seed(cfg.seed, index);
                let psi = haar_random_pure(cfg.n_qubits, state_seed);
                residuals_for_sample(id, &psi, alpha_param.as_ref(), cfg, state_seed)
            })
            .collect::<Result<_>>()?;
        let flat: Vec<ResidualReport> = reports.into_iter().flatten().collect();
        summaries.push(summarize(id, slot, &flat));
        violations.extend(flat.into_iter().filter(|r| r.is_violation()));
    }
    Ok((summaries, violations))
}
