//! The scalar bridge functions between concurrence and Renyi-alpha
//! entanglement: `f_alpha` and its derivatives, the superadditivity
//! defect `h_alpha`, the proof-machinery functions `l_alpha` and
//! `m_alpha`, and the analytic two-qubit entanglement formulas.
//!
//! `f_alpha(x) = log2[((1-t)/2)^a + ((1+t)/2)^a] / (1-a)` with
//! `t = sqrt(1-x^2)`. Everything here is evaluated through the small
//! quantity `p = (1-t)/2 = x^2 / (2(1+t))` and `expm1`/`ln_1p`, which
//! keeps the results accurate to a few ulps even where `h_alpha` lives
//! at the 1e-12 scale near the origin.

use std::f64::consts::LN_2;

use crate::concurrence::{concurrence_of_assistance, pure_concurrence, wootters_concurrence};
use crate::entropy::{quantum_renyi_entropy, AlphaParam};
use crate::linalg::{partial_trace, DensityMatrix, PureState};
use crate::{Error, Result};

/// Default validity floor for the analytic two-qubit formula below
/// alpha = 1; convexity of `f_alpha` is proven for alpha >= 1 and
/// numerically observed down to about 0.83.
pub const DEFAULT_CONJECTURE_ALPHA_FLOOR: f64 = 0.83;

/// How to treat alpha values below the conjecture floor.
#[derive(Debug, Clone, Copy)]
pub struct ConjecturePolicy {
    pub alpha_floor: f64,
    /// Reject below-floor alphas instead of returning a flagged value.
    pub strict: bool,
}

impl Default for ConjecturePolicy {
    fn default() -> ConjecturePolicy {
        ConjecturePolicy {
            alpha_floor: DEFAULT_CONJECTURE_ALPHA_FLOOR,
            strict: true,
        }
    }
}

/// A measure value together with a flag marking whether it rests on the
/// conjectured (rather than proven) range of alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureValue {
    pub value: f64,
    pub conjectural: bool,
}

fn clamp_unit(x: f64, what: &str) -> Result<f64> {
    if !x.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::arg(format!("{what} = {x} outside [0, 1]")));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// `t = sqrt(1-x^2)` and the smaller eigenvalue `p = (1-t)/2`, computed
/// as `x^2 / (2(1+t))` to avoid cancellation for small x.
fn half_split(x: f64) -> (f64, f64) {
    let t = (1.0 - x * x).max(0.0).sqrt();
    let p = x * x / (2.0 * (1.0 + t));
    (t, p)
}

/// Binary entropy `H(p)` in bits with `0 log 0 := 0`, `p` the smaller
/// eigenvalue.
fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    let q = 1.0 - p;
    // ln(1-p) via ln_1p keeps precision when p is tiny.
    (-p * p.ln() - q * (-p).ln_1p()) / LN_2
}

/// `p_plus^a + p_minus^a - 1` for the halved eigenvalues of a state
/// with concurrence x; small and exactly representable near x = 0.
fn power_sum_excess(x: f64, alpha: f64) -> f64 {
    let (_, p) = half_split(x);
    let plus_term = (alpha * (-p).ln_1p()).exp_m1();
    if p > 0.0 {
        plus_term + (alpha * p.ln()).exp()
    } else {
        plus_term
    }
}

/// The bridge function `f_alpha(x)` in bits; `f_alpha(0) = 0`,
/// `f_alpha(1) = 1` for every alpha > 0. On the near-1 branch this is
/// the binary-entropy curve `E(x) = H((1 + sqrt(1-x^2)) / 2)`.
pub fn f_alpha(x: f64, a: &AlphaParam) -> Result<f64> {
    let x = clamp_unit(x, "x")?;
    if a.near_one() {
        let (_, p) = half_split(x);
        return Ok(binary_entropy(p));
    }
    let alpha = a.value();
    let e = power_sum_excess(x, alpha);
    Ok(e.ln_1p() / ((1.0 - alpha) * LN_2))
}

/// Binomial-series coefficient `C(beta, k)` for real beta.
fn binom(beta: f64, k: u32) -> f64 {
    let mut num = 1.0;
    for i in 0..k {
        num *= beta - i as f64;
    }
    let mut den = 1.0;
    for i in 1..=k {
        den *= i as f64;
    }
    num / den
}

/// `(A1^b - A2^b) / t` with `A1 = 1+t`, `A2 = 1-t`, evaluated by series
/// when t is small enough for the direct difference to cancel.
fn power_diff_over_t(t: f64, a2: f64, beta: f64) -> f64 {
    if t < 1e-5 {
        2.0 * (beta + binom(beta, 3) * t * t + binom(beta, 5) * t.powi(4))
    } else {
        ((1.0 + t).powf(beta) - a2.powf(beta)) / t
    }
}

/// The ratio function `l_alpha` from the critical-point analysis:
/// `(A1^(a-1) - A2^(a-1)) / (t (A1^a + A2^a))`, continuously extended
/// to `l_alpha(1) = alpha - 1`. Requires alpha > 1 and 0 < x <= 1.
pub fn l_alpha(x: f64, a: &AlphaParam) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0 + 1e-12) {
        return Err(Error::domain(format!("l_alpha needs 0 < x <= 1, got {x}")));
    }
    let alpha = a.value();
    if alpha <= 1.0 {
        return Err(Error::domain(format!(
            "l_alpha is defined for alpha > 1, got {alpha}"
        )));
    }
    let x = x.min(1.0);
    let t = (1.0 - x * x).max(0.0).sqrt();
    let a2 = x * x / (1.0 + t);
    let s = (1.0 + t).powf(alpha) + a2.powf(alpha);
    Ok(power_diff_over_t(t, a2, alpha - 1.0) / s)
}

/// First derivative of `f_alpha` with respect to x, in bits.
pub fn f_alpha_d1(x: f64, a: &AlphaParam) -> Result<f64> {
    let x = clamp_unit(x, "x")?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let alpha = a.value();
    if a.near_one() {
        // dE/dx = (x / 2t) log2((1+t)/(1-t)), with 1-t = x^2/(1+t).
        let t = (1.0 - x * x).max(0.0).sqrt();
        if t < 1e-8 {
            return Ok((1.0 + t * t / 3.0) / LN_2);
        }
        let log_ratio = 2.0 * (t.ln_1p() - x.ln());
        return Ok(x / (2.0 * t) * log_ratio / LN_2);
    }
    // d f/dx = (1/((a-1) ln 2)) dg/dx with dg/dx = a x l_a(x) in natural log;
    // the same expression holds for 0 < alpha < 1.
    let t = (1.0 - x * x).max(0.0).sqrt();
    let a2 = x * x / (1.0 + t);
    let s = (1.0 + t).powf(alpha) + a2.powf(alpha);
    let l = power_diff_over_t(t, a2, alpha - 1.0) / s;
    Ok(alpha * x * l / ((alpha - 1.0) * LN_2))
}

/// Second derivative of `f_alpha` on the open interval (0, 1).
///
/// Away from alpha = 1 this transcribes the analytic second derivative
/// of `g_alpha` and scales it by `1/((alpha-1) ln 2)`; on the near-1
/// branch it falls back to central finite differences of `E(x)`.
pub fn f_alpha_d2(x: f64, a: &AlphaParam) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!(
            "f_alpha_d2 is defined on the open interval (0, 1), got {x}"
        )));
    }
    let alpha = a.value();
    if a.near_one() {
        // E''(x) = (L / (2 t^3) - 1 / t^2) / ln 2 with L = ln((1+t)/(1-t)),
        // expanded in series when t is small: (1/3 + t^2/5 + ...) / ln 2.
        let t = (1.0 - x * x).max(0.0).sqrt();
        if t < 1e-4 {
            return Ok((1.0 / 3.0 + t * t / 5.0 + t.powi(4) / 7.0) / LN_2);
        }
        let l = t.ln_1p() - (-t).ln_1p();
        return Ok((l / (2.0 * t * t * t) - 1.0 / (t * t)) / LN_2);
    }
    let beta = alpha - 1.0;
    let t = (1.0 - x * x).max(0.0).sqrt();
    let a2 = x * x / (1.0 + t);
    let s = (1.0 + t).powf(alpha) + a2.powf(alpha);
    let diff_over_t = power_diff_over_t(t, a2, beta);
    let gamma1 = diff_over_t * s;
    let gamma2 = x * x * diff_over_t * diff_over_t * t * t;
    let b = alpha / (t * t * s * s);
    let bracket = gamma1 + gamma2 - 4.0 * beta * x.powf(2.0 * beta);
    Ok(b * bracket / (beta * LN_2))
}

/// Superadditivity defect `h_alpha(x, y) = f(sqrt(x^2+y^2)) - f(x) - f(y)`
/// on the quarter disk `x, y >= 0`, `x^2 + y^2 <= 1`.
///
/// Evaluated through `ln_1p` of the power-sum excesses so the result is
/// trustworthy at the 1e-12 scale near the origin.
pub fn h_alpha(x: f64, y: f64, a: &AlphaParam) -> Result<f64> {
    if !(x >= 0.0 && y >= 0.0) {
        return Err(Error::arg(format!(
            "h_alpha needs x, y >= 0, got ({x}, {y})"
        )));
    }
    let rr = x * x + y * y;
    if rr > 1.0 + 1e-12 {
        return Err(Error::arg(format!(
            "h_alpha needs x^2 + y^2 <= 1, got {rr}"
        )));
    }
    if x == 0.0 || y == 0.0 {
        return Ok(0.0);
    }
    let c = rr.min(1.0).sqrt();
    if a.near_one() {
        let (_, pc) = half_split(c);
        let (_, px) = half_split(x);
        let (_, py) = half_split(y);
        return Ok(binary_entropy(pc) - binary_entropy(px) - binary_entropy(py));
    }
    let alpha = a.value();
    let ec = power_sum_excess(c, alpha).ln_1p();
    let ex = power_sum_excess(x, alpha).ln_1p();
    let ey = power_sum_excess(y, alpha).ln_1p();
    Ok((ec - ex - ey) / ((1.0 - alpha) * LN_2))
}

/// Restriction of `h_alpha` to the boundary arc `x^2 + y^2 = 1`:
/// `m_alpha(x) = h_alpha(x, sqrt(1-x^2))`, written out as the closed
/// form from the boundary analysis. Requires alpha > 1.
pub fn m_alpha(x: f64, a: &AlphaParam) -> Result<f64> {
    let x = clamp_unit(x, "x")?;
    let alpha = a.value();
    if alpha <= 1.0 {
        return Err(Error::domain(format!(
            "m_alpha is defined for alpha > 1, got {alpha}"
        )));
    }
    let t = (1.0 - x * x).max(0.0).sqrt();
    let a2 = x * x / (1.0 + t); // 1 - t
                                // Symmetric in x <-> sqrt(1-x^2), so the only critical point is at
                                // x = 1/sqrt(2).
    let first = (1.0 + x).powf(alpha) + (1.0 - x).powf(alpha);
    let second = a2.powf(alpha) + (1.0 + t).powf(alpha);
    Ok(1.0 - 2.0 * alpha / (alpha - 1.0) + (first.log2() + second.log2()) / (alpha - 1.0))
}

/// Point evaluation of `f_alpha` bundled with both derivatives; only
/// defined on the open interval where the derivative formulas hold.
#[derive(Debug, Clone, Copy)]
pub struct FAlphaEval {
    pub x: f64,
    pub alpha: AlphaParam,
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl FAlphaEval {
    pub fn new(x: f64, a: &AlphaParam) -> Result<FAlphaEval> {
        Ok(FAlphaEval {
            x,
            alpha: *a,
            value: f_alpha(x, a)?,
            d1: f_alpha_d1(x, a)?,
            d2: f_alpha_d2(x, a)?,
        })
    }
}

/// Renyi-alpha entanglement of a pure state across a bipartition: the
/// Renyi entropy of the reduced state on the smaller side.
pub fn renyi_entanglement_pure(
    psi: &PureState,
    partition: &[usize],
    a: &AlphaParam,
) -> Result<f64> {
    let n = psi.n_qubits();
    if partition.is_empty() || partition.len() >= n {
        return Err(Error::arg(
            "partition must be a nonempty proper subset of the qubits".to_string(),
        ));
    }
    let keep: Vec<usize> = if partition.len() <= n - partition.len() {
        partition.to_vec()
    } else {
        (0..n).filter(|q| !partition.contains(q)).collect()
    };
    let reduced = partial_trace(&psi.to_density(), &keep)?;
    quantum_renyi_entropy(&reduced, a)
}

fn gate_alpha(a: &AlphaParam, policy: &ConjecturePolicy) -> Result<bool> {
    let alpha = a.value();
    if alpha < policy.alpha_floor {
        if policy.strict {
            return Err(Error::domain(format!(
                "alpha = {alpha} is below the conjecture floor {}; the analytic \
                 two-qubit formula is unsupported there",
                policy.alpha_floor
            )));
        }
        return Ok(true);
    }
    Ok(alpha < 1.0)
}

/// Analytic Renyi-alpha entanglement of a two-qubit mixed state:
/// `E_alpha(rho) = f_alpha(C(rho))`. Exact for alpha >= 1, conjectural
/// (flagged) between the configured floor and 1.
pub fn renyi_entanglement_two_qubit(
    rho: &DensityMatrix,
    a: &AlphaParam,
    policy: &ConjecturePolicy,
) -> Result<MeasureValue> {
    let conjectural = gate_alpha(a, policy)?;
    let c = wootters_concurrence(rho)?;
    Ok(MeasureValue {
        value: f_alpha(c, a)?,
        conjectural,
    })
}

/// Certified lower bound on the Renyi-alpha entanglement of assistance:
/// `f_alpha(C^a(rho)) <= E^a_alpha(rho)` by convexity of `f_alpha`.
pub fn reoa_lower_bound(
    rho: &DensityMatrix,
    a: &AlphaParam,
    policy: &ConjecturePolicy,
) -> Result<MeasureValue> {
    let conjectural = gate_alpha(a, policy)?;
    let ca = concurrence_of_assistance(rho)?;
    Ok(MeasureValue {
        value: f_alpha(ca, a)?,
        conjectural,
    })
}

/// Binary-entropy relation `E(x)`: the alpha -> 1 limit of `f_alpha`.
pub fn entanglement_binary_entropy(x: f64) -> Result<f64> {
    let x = clamp_unit(x, "x")?;
    let (_, p) = half_split(x);
    Ok(binary_entropy(p))
}

/// Consistency helper for pure two-qubit states used by callers that
/// need the concurrence route explicitly.
pub fn renyi_entanglement_pure_via_concurrence(
    psi: &PureState,
    partition: &[usize],
    a: &AlphaParam,
) -> Result<f64> {
    let c = pure_concurrence(psi, partition)?;
    f_alpha(c, a)
}
