//! Classical and quantum Renyi-alpha entropy, base-2 logarithms
//! throughout. The alpha -> 1 singularity is removable; inside a small
//! window around 1 the Shannon / von Neumann branch is used instead of
//! the `1/(1-alpha)` prefactor, which loses about six digits there.

use crate::linalg::DensityMatrix;
use crate::{Error, Result};

/// Default half-width of the alpha ~ 1 window that routes to the
/// Shannon branch.
pub const DEFAULT_ONE_TOLERANCE: f64 = 1e-6;

/// Eigenvalues below this are treated as exact zeros before
/// exponentiation, so `0^alpha` cannot inject noise for alpha < 1.
const ZERO_PROB: f64 = 1e-15;

/// Validated Renyi order alpha > 0 with its near-1 handling policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParam {
    alpha: f64,
    one_tolerance: f64,
}

impl AlphaParam {
    pub fn new(alpha: f64) -> Result<AlphaParam> {
        AlphaParam::with_tolerance(alpha, DEFAULT_ONE_TOLERANCE)
    }

    pub fn with_tolerance(alpha: f64, one_tolerance: f64) -> Result<AlphaParam> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::arg(format!("alpha must be positive, got {alpha}")));
        }
        if !one_tolerance.is_finite() || one_tolerance <= 0.0 {
            return Err(Error::arg("one_tolerance must be positive".to_string()));
        }
        Ok(AlphaParam {
            alpha,
            one_tolerance,
        })
    }

    pub fn value(&self) -> f64 {
        self.alpha
    }

    /// True when the Shannon / von Neumann branch applies.
    pub fn near_one(&self) -> bool {
        (self.alpha - 1.0).abs() < self.one_tolerance
    }
}

/// Probability vector: entries in [0, 1] after clipping negatives above
/// -1e-12, summing to 1 within 1e-10.
#[derive(Debug, Clone)]
pub struct ProbabilityVector {
    probs: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(probs: Vec<f64>) -> Result<ProbabilityVector> {
        if probs.is_empty() {
            return Err(Error::arg("probability vector is empty".to_string()));
        }
        let mut clipped = Vec::with_capacity(probs.len());
        for &p in &probs {
            if !p.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&p) {
                return Err(Error::arg(format!("invalid probability {p}")));
            }
            clipped.push(p.clamp(0.0, 1.0));
        }
        let sum: f64 = clipped.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::arg(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(ProbabilityVector { probs: clipped })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Classical Renyi-alpha entropy in bits:
/// `H_a(P) = log2(sum p_i^a) / (1 - a)`, Shannon on the near-1 branch.
pub fn renyi_entropy(p: &ProbabilityVector, a: &AlphaParam) -> f64 {
    let alpha = a.value();
    if a.near_one() {
        return shannon_entropy(p.probs());
    }
    let sum: f64 = p
        .probs()
        .iter()
        .filter(|&&pi| pi > ZERO_PROB)
        .map(|&pi| pi.powf(alpha))
        .sum();
    let h = sum.log2() / (1.0 - alpha);
    h.max(0.0)
}

/// Shannon entropy in bits with `0 log 0 := 0`.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    let h: f64 = probs
        .iter()
        .filter(|&&pi| pi > ZERO_PROB)
        .map(|&pi| -pi * pi.log2())
        .sum();
    h.max(0.0)
}

/// Quantum Renyi-alpha entropy: the classical entropy of the spectrum.
pub fn quantum_renyi_entropy(rho: &DensityMatrix, a: &AlphaParam) -> Result<f64> {
    let spectrum = rho.spectrum();
    // Renormalize rounding in the spectrum before validation.
    let p = ProbabilityVector::new(spectrum)?;
    Ok(renyi_entropy(&p, a))
}
