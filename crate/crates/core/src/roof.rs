//! Convex-roof optimization oracle for two-qubit states.
//!
//! Ensembles of a mixed state are parametrized through the
//! Hughston-Jozsa-Wootters freedom: every decomposition arises from an
//! m x r isometry applied to the scaled eigenvectors of the state. The
//! roof value (min or max of the average pure-state measure) is then a
//! derivative-free optimization over that isometry, run as multi-start
//! Nelder-Mead on the underlying real parameters. The result is an
//! upper bound for minimization and a lower bound for maximization;
//! the closed forms it validates are exact, so agreement within a few
//! 1e-3 certifies both sides.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::entropy::{renyi_entropy, AlphaParam, ProbabilityVector};
use crate::linalg::{herm_eig, ComplexMatrix, DensityMatrix, PureState};
use crate::{Error, Result};

/// Eigenvalues above this count toward the rank of the target state.
const RANK_TOL: f64 = 1e-10;

/// Pure-state functional being averaged over the ensemble.
#[derive(Debug, Clone, Copy)]
pub enum PureMeasure {
    Concurrence,
    Renyi(AlphaParam),
}

impl PureMeasure {
    /// Evaluates the measure on a normalized two-qubit pure state given
    /// by its four amplitudes. The Renyi branch goes through the reduced
    /// one-qubit spectrum, independent of the `f_alpha` closed form.
    fn eval(&self, amps: &[Complex64; 4]) -> f64 {
        match self {
            PureMeasure::Concurrence => 2.0 * (amps[0] * amps[3] - amps[1] * amps[2]).norm(),
            PureMeasure::Renyi(a) => {
                // Reduced state of qubit 0: rho00 = |a0|^2 + |a2|^2, etc.
                let r00 = amps[0].norm_sqr() + amps[2].norm_sqr();
                let r11 = amps[1].norm_sqr() + amps[3].norm_sqr();
                let r01 = amps[0] * amps[1].conj() + amps[2] * amps[3].conj();
                let half_gap = (0.25 * (r00 - r11) * (r00 - r11) + r01.norm_sqr())
                    .max(0.0)
                    .sqrt();
                let mid = 0.5 * (r00 + r11);
                let hi = (mid + half_gap).clamp(0.0, 1.0);
                let lo = (mid - half_gap).clamp(0.0, 1.0);
                let p = ProbabilityVector::new(vec![hi / (hi + lo), lo / (hi + lo)])
                    .expect("reduced spectrum is a probability vector");
                renyi_entropy(&p, a)
            }
        }
    }
}

/// A pure-state ensemble consistent with a target density matrix.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub weights: ProbabilityVector,
    pub states: Vec<PureState>,
}

impl Decomposition {
    /// Max entrywise residual of `sum_i p_i |psi_i><psi_i| - rho`.
    pub fn reconstruction_residual(&self, rho: &DensityMatrix) -> f64 {
        let dim = rho.dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, psi) in self.weights.probs().iter().zip(&self.states) {
            let amps = psi.amplitudes();
            for i in 0..dim {
                for j in 0..dim {
                    acc[(i, j)] += amps[i] * amps[j].conj() * *w;
                }
            }
        }
        acc.sub(rho.matrix()).max_abs()
    }
}

/// Optimizer settings. `m_max` caps the ensemble size; rank^2 members
/// suffice for two-qubit roofs, so the default of 8 is conservative for
/// the rank-2 targets the acceptance runs use.
#[derive(Debug, Clone, Copy)]
pub struct RoofBudget {
    pub restarts: usize,
    pub max_iters: usize,
    pub spread_tol: f64,
    pub m_max: usize,
    pub seed: u64,
}

impl Default for RoofBudget {
    fn default() -> RoofBudget {
        RoofBudget {
            restarts: 64,
            max_iters: 2000,
            spread_tol: 1e-9,
            m_max: 8,
            seed: 0,
        }
    }
}

/// Best value found plus a convergence flag; `converged = false` marks
/// a best-effort result whose winning restart hit the iteration cap.
#[derive(Debug, Clone, Copy)]
pub struct RoofResult {
    pub value: f64,
    pub converged: bool,
}

struct SpectralData {
    /// Columns `sqrt(lambda_j) |e_j>` for eigenvalues above the rank cut.
    scaled_vectors: Vec<Vec<Complex64>>,
    dim: usize,
}

fn spectral_data(rho: &DensityMatrix) -> Result<SpectralData> {
    let (evals, vecs) = herm_eig(rho.matrix())?;
    let dim = rho.dim();
    let mut scaled_vectors = Vec::new();
    for (j, &l) in evals.iter().enumerate() {
        if l > RANK_TOL {
            let s = l.sqrt();
            scaled_vectors.push((0..dim).map(|i| vecs[(i, j)] * s).collect());
        }
    }
    if scaled_vectors.is_empty() {
        return Err(Error::state("state has numerical rank zero".to_string()));
    }
    Ok(SpectralData {
        scaled_vectors,
        dim,
    })
}

/// Orthonormalizes the columns of an m x r complex matrix (given as
/// column-major slices) by modified Gram-Schmidt. Degenerate columns
/// fall back to canonical basis vectors so the result is always an
/// isometry.
fn orthonormalize(cols: &mut [Vec<Complex64>]) {
    fn project_out(basis: &[Vec<Complex64>], col: &mut [Complex64]) {
        for b in basis {
            let proj: Complex64 = b.iter().zip(col.iter()).map(|(u, v)| u.conj() * v).sum();
            for (v, u) in col.iter_mut().zip(b) {
                *v -= proj * u;
            }
        }
    }
    let m = cols[0].len();
    for j in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(j);
        let col = &mut rest[0];
        project_out(done, col);
        let norm: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            col.fill(Complex64::new(0.0, 0.0));
            col[j % m] = Complex64::new(1.0, 0.0);
            // Re-orthogonalize the fallback column.
            project_out(done, col);
            let n2: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n2 > 1e-12 {
                for z in col.iter_mut() {
                    *z /= n2;
                }
            }
        } else {
            for z in col.iter_mut() {
                *z /= norm;
            }
        }
    }
}

/// Average measure of the ensemble generated by the isometry packed in
/// `params` (2 m r reals -> m x r complex, column-orthonormalized).
fn ensemble_average(params: &[f64], m: usize, data: &SpectralData, measure: &PureMeasure) -> f64 {
    let r = data.scaled_vectors.len();
    let mut cols: Vec<Vec<Complex64>> = (0..r)
        .map(|j| {
            (0..m)
                .map(|i| {
                    let base = 2 * (j * m + i);
                    Complex64::new(params[base], params[base + 1])
                })
                .collect()
        })
        .collect();
    orthonormalize(&mut cols);

    let mut total = 0.0;
    for i in 0..m {
        let mut member = [Complex64::new(0.0, 0.0); 4];
        for (j, col) in cols.iter().enumerate() {
            let u = col[i];
            for (k, slot) in member.iter_mut().enumerate().take(data.dim) {
                *slot += u * data.scaled_vectors[j][k];
            }
        }
        let w: f64 = member.iter().map(|z| z.norm_sqr()).sum();
        if w > 1e-14 {
            let inv = 1.0 / w.sqrt();
            for z in member.iter_mut() {
                *z *= inv;
            }
            total += w * measure.eval(&member);
        }
    }
    total
}

/// The ensemble `|psi_i> ~ sum_j u_ij sqrt(lambda_j) |e_j>` generated by
/// an m x r matrix with orthonormal columns; reconstructs the target by
/// the HJW theorem.
pub fn ensemble_from_isometry(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<Decomposition> {
    let data = spectral_data(rho)?;
    let r = data.scaled_vectors.len();
    let m = u.rows();
    if u.cols() != r {
        return Err(Error::arg(format!(
            "isometry has {} columns, state has rank {}",
            u.cols(),
            r
        )));
    }
    if m < r {
        return Err(Error::arg(format!(
            "isometry needs at least {r} rows, got {m}"
        )));
    }
    for a in 0..r {
        for b in 0..r {
            let dot: Complex64 = (0..m).map(|i| u[(i, a)].conj() * u[(i, b)]).sum();
            let expect = if a == b { 1.0 } else { 0.0 };
            if (dot - Complex64::new(expect, 0.0)).norm() > 1e-9 {
                return Err(Error::arg(
                    "matrix columns are not orthonormal within 1e-9".to_string(),
                ));
            }
        }
    }

    let n_qubits = rho.dim().trailing_zeros() as usize;
    if 1usize << n_qubits != rho.dim() {
        return Err(Error::arg(
            "state dimension is not a power of two".to_string(),
        ));
    }
    let mut weights = Vec::new();
    let mut states = Vec::new();
    for i in 0..m {
        let mut member = vec![Complex64::new(0.0, 0.0); rho.dim()];
        for j in 0..r {
            let uij = u[(i, j)];
            for (mk, vk) in member.iter_mut().zip(&data.scaled_vectors[j]) {
                *mk += uij * vk;
            }
        }
        let w: f64 = member.iter().map(|z| z.norm_sqr()).sum();
        if w > 1e-14 {
            weights.push(w);
            states.push(PureState::normalized(n_qubits, member)?);
        }
    }
    let total: f64 = weights.iter().sum();
    let weights = ProbabilityVector::new(weights.iter().map(|w| w / total).collect())?;
    Ok(Decomposition { weights, states })
}

/// Plain Nelder-Mead; returns the best value and whether the simplex
/// spread fell below `tol` within the iteration cap.
fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    step: f64,
    max_iters: usize,
    tol: f64,
) -> (f64, bool) {
    let dim = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let mut converged = false;
    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let spread = simplex[dim].1 - simplex[0].1;
        if spread.abs() < tol {
            converged = true;
            break;
        }
        let centroid: Vec<f64> = (0..dim)
            .map(|k| simplex[..dim].iter().map(|(x, _)| x[k]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let reflect: Vec<f64> = (0..dim)
            .map(|k| centroid[k] + (centroid[k] - worst.0[k]))
            .collect();
        let f_reflect = f(&reflect);

        if f_reflect < simplex[0].1 {
            let expand: Vec<f64> = (0..dim)
                .map(|k| centroid[k] + 2.0 * (centroid[k] - worst.0[k]))
                .collect();
            let f_expand = f(&expand);
            simplex[dim] = if f_expand < f_reflect {
                (expand, f_expand)
            } else {
                (reflect, f_reflect)
            };
        } else if f_reflect < simplex[dim - 1].1 {
            simplex[dim] = (reflect, f_reflect);
        } else {
            let contract: Vec<f64> = (0..dim)
                .map(|k| centroid[k] + 0.5 * (worst.0[k] - centroid[k]))
                .collect();
            let f_contract = f(&contract);
            if f_contract < worst.1 {
                simplex[dim] = (contract, f_contract);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    for (x, b) in entry.0.iter_mut().zip(&best) {
                        *x = b + 0.5 * (*x - b);
                    }
                    entry.1 = f(&entry.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    (simplex[0].1, converged)
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// RNG stream for one restart, derived from the run seed.
pub(crate) fn derived_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(index)))
}

fn optimize(
    rho: &DensityMatrix,
    measure: &PureMeasure,
    budget: &RoofBudget,
    maximize: bool,
) -> Result<RoofResult> {
    if rho.dims() != [2, 2] {
        return Err(Error::arg(format!(
            "roof optimization expects a two-qubit state, got dims {:?}",
            rho.dims()
        )));
    }
    if budget.restarts == 0 || budget.max_iters == 0 {
        return Err(Error::arg(
            "budget must allow at least one restart and iteration".to_string(),
        ));
    }
    let data = spectral_data(rho)?;
    let r = data.scaled_vectors.len();
    let m_max = budget.m_max.max(r);
    let sign = if maximize { -1.0 } else { 1.0 };

    let results: Vec<(f64, bool)> = (0..budget.restarts)
        .into_par_iter()
        .map(|restart| {
            // Cycle ensemble sizes across restarts; small ensembles keep
            // the search space low-dimensional and often suffice.
            let m = r + restart % (m_max - r + 1);
            let dim = 2 * m * r;
            let mut rng = derived_rng(budget.seed, restart as u64);
            let x0: Vec<f64> = if restart == 0 {
                // Identity start: the spectral decomposition itself.
                let mut x = vec![0.0; dim];
                for j in 0..r {
                    x[2 * (j * m + j)] = 1.0;
                }
                x
            } else {
                (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
            };
            let objective = |params: &[f64]| sign * ensemble_average(params, m, &data, measure);
            let (best, converged) =
                nelder_mead(objective, &x0, 0.5, budget.max_iters, budget.spread_tol);
            (sign * best, converged)
        })
        .collect();

    let mut best = results[0];
    for &(v, c) in &results[1..] {
        let better = if maximize { v > best.0 } else { v < best.0 };
        if better {
            best = (v, c);
        }
    }
    Ok(RoofResult {
        value: best.0,
        converged: best.1,
    })
}

/// Best found minimum of the average pure-state measure over ensembles
/// of `rho`: an upper bound on the convex-roof value.
pub fn convex_roof_min(
    rho: &DensityMatrix,
    measure: PureMeasure,
    budget: &RoofBudget,
) -> Result<RoofResult> {
    optimize(rho, &measure, budget, false)
}

/// Best found maximum: a lower bound on the assisted value.
pub fn roof_max(
    rho: &DensityMatrix,
    measure: PureMeasure,
    budget: &RoofBudget,
) -> Result<RoofResult> {
    optimize(rho, &measure, budget, true)
}

/// Ensemble average over the spectral decomposition itself; sits between
/// the roof minimum and maximum for any budget.
pub fn spectral_average(rho: &DensityMatrix, measure: PureMeasure) -> Result<f64> {
    let data = spectral_data(rho)?;
    let r = data.scaled_vectors.len();
    let mut params = vec![0.0; 2 * r * r];
    for j in 0..r {
        params[2 * (j * r + j)] = 1.0;
    }
    Ok(ensemble_average(&params, r, &data, &measure))
}
