//! Dense complex linear algebra for matrices up to 16x16, plus Haar
//! sampling of pure qubit states.
//!
//! The eigensolver is a cyclic Jacobi iteration for Hermitian matrices;
//! at these dimensions it is both fast enough and unconditionally
//! stable, so no external linear-algebra backend is needed.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result};

/// Hermiticity / trace tolerance used when validating density matrices.
pub const STATE_TOL: f64 = 1e-12;
/// Eigenvalues of reduced states may dip this far below zero before the
/// state is rejected; anything in `[-CLIP_TOL, 0)` is clipped to 0.
pub const CLIP_TOL: f64 = 1e-10;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ComplexMatrix {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<ComplexMatrix> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::arg(format!(
                "entry count {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Convenience constructor from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<ComplexMatrix> {
        let entries = data.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        ComplexMatrix::from_entries(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must match");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn conjugate(&self) -> ComplexMatrix {
        let data = self.data.iter().map(|z| z.conj()).collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: f64) -> ComplexMatrix {
        let data = self.data.iter().map(|z| z * s).collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus, used for tolerance checks.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max entrywise |M - M^dagger|.
    pub fn hermiticity_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.rows == self.cols && self.hermiticity_defect() <= tol
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Tensor (Kronecker) product, `(a.rows*b.rows) x (a.cols*b.cols)`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Normalized pure state of `n_qubits` qubits; qubit 0 is the least
/// significant bit of the amplitude index.
#[derive(Debug, Clone)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<PureState> {
        if amplitudes.len() != 1usize << n_qubits {
            return Err(Error::arg(format!(
                "expected {} amplitudes for {} qubits, got {}",
                1usize << n_qubits,
                n_qubits,
                amplitudes.len()
            )));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > STATE_TOL {
            return Err(Error::state(format!(
                "state norm^2 = {norm_sq} is not 1 within {STATE_TOL}"
            )));
        }
        Ok(PureState {
            n_qubits,
            amplitudes,
        })
    }

    /// Normalizes an arbitrary nonzero amplitude vector.
    pub fn normalized(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<PureState> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::state("cannot normalize the zero vector".to_string()));
        }
        let inv = 1.0 / norm_sq.sqrt();
        let amplitudes = amplitudes.into_iter().map(|a| a * inv).collect();
        PureState::new(n_qubits, amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Projector |psi><psi| as a density matrix with one qubit per subsystem.
    pub fn to_density(&self) -> DensityMatrix {
        let dim = self.amplitudes.len();
        let mut m = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        DensityMatrix::new(vec![2; self.n_qubits], m)
            .expect("projector of a normalized state is a valid density matrix")
    }
}

/// Hermitian, PSD, unit-trace matrix with subsystem-dimension metadata.
/// Subsystem 0 is the least significant factor of the composite index.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<DensityMatrix> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || dims.iter().any(|&d| d < 1) {
            return Err(Error::arg("subsystem dimensions must be >= 1".to_string()));
        }
        if matrix.rows() != total || matrix.cols() != total {
            return Err(Error::arg(format!(
                "matrix is {}x{}, dims require {}x{}",
                matrix.rows(),
                matrix.cols(),
                total,
                total
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > STATE_TOL {
            return Err(Error::state(format!(
                "matrix is not Hermitian: defect {defect:.3e}"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::state(format!("trace {tr} is not 1")));
        }
        let dm = DensityMatrix { dims, matrix };
        let (evals, _) = herm_eig(&dm.matrix)?;
        if let Some(&min) = evals.last() {
            if min < -CLIP_TOL {
                return Err(Error::state(format!(
                    "matrix has negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(dm)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Spectrum in descending order with tiny negatives clipped to 0.
    pub fn spectrum(&self) -> Vec<f64> {
        let (evals, _) = herm_eig(&self.matrix).expect("density matrix is Hermitian");
        evals
            .into_iter()
            .map(|l| if l < 0.0 { 0.0 } else { l })
            .collect()
    }

    /// tr(rho^2), computed entrywise.
    pub fn purity(&self) -> f64 {
        self.matrix.entries().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Traces out every subsystem not listed in `keep`. The kept subsystems
/// stay in their original relative order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.dims().len();
    if keep.is_empty() {
        return Err(Error::arg("keep set must be nonempty".to_string()));
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() {
        return Err(Error::arg("keep set contains duplicates".to_string()));
    }
    if keep_sorted.iter().any(|&k| k >= n) {
        return Err(Error::arg(format!(
            "keep index out of range for {n} subsystems"
        )));
    }

    let dims = rho.dims();
    let keep_dims: Vec<usize> = keep_sorted.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = keep_dims.iter().product();
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);

    // Subsystem 0 varies fastest in the composite index.
    let full_dim = rho.dim();
    let decompose = |mut idx: usize| -> Vec<usize> {
        let mut parts = Vec::with_capacity(n);
        for &d in dims {
            parts.push(idx % d);
            idx /= d;
        }
        parts
    };
    let kept_index = |parts: &[usize]| -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (pos, &k) in keep_sorted.iter().enumerate() {
            idx += parts[k] * stride;
            stride *= keep_dims[pos];
        }
        idx
    };

    for i in 0..full_dim {
        let pi = decompose(i);
        for j in 0..full_dim {
            let pj = decompose(j);
            // traced subsystems must match on both sides
            let mut diagonal = true;
            for s in 0..n {
                if !keep_sorted.contains(&s) && pi[s] != pj[s] {
                    diagonal = false;
                    break;
                }
            }
            if diagonal {
                let r = kept_index(&pi);
                let c = kept_index(&pj);
                out[(r, c)] += rho.matrix()[(i, j)];
            }
        }
    }

    DensityMatrix::new(keep_dims, out)
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues sorted descending and the matching eigenvector
/// columns, with `h = V diag(lambda) V^dagger`.
pub fn herm_eig(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if h.rows() != h.cols() {
        return Err(Error::arg("matrix must be square".to_string()));
    }
    if !h.is_hermitian(1e-10) {
        return Err(Error::arg(format!(
            "matrix is not Hermitian: defect {:.3e}",
            h.hermiticity_defect()
        )));
    }
    let n = h.rows();
    let mut a = h.clone();
    // Symmetrize so rounding in the input cannot accumulate.
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);

    let scale = a.max_abs().max(1.0);
    let tol = 1e-13 * scale;
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[(i, j)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                // Phase e^{i phi} of the pivot and the Jacobi angle.
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phase * s; // s * e^{i phi}
                let spc = sp.conj();

                // A <- U^dagger A U with U[p,p]=c, U[p,q]=sp, U[q,p]=-spc, U[q,q]=c.
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * spc;
                    a[(k, q)] = akp * sp + akq * c;
                    a[(p, k)] = a[(k, p)].conj();
                    a[(q, k)] = a[(k, q)].conj();
                }
                let new_pp = app * c * c - 2.0 * r * s * c + aqq * s * s;
                let new_qq = app * s * s + 2.0 * r * s * c + aqq * c * c;
                a[(p, p)] = Complex64::new(new_pp, 0.0);
                a[(q, q)] = Complex64::new(new_qq, 0.0);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * spc;
                    v[(k, q)] = vkp * sp + vkq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let evals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok((evals, vectors))
}

/// Hermitian PSD square root `S` with `S * S = rho`.
///
/// Eigenvalues in `[-1e-10, 0)` are clipped to zero; anything below
/// `-1e-8` rejects the input.
pub fn psd_sqrt(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (evals, v) = herm_eig(rho)?;
    let n = rho.rows();
    if let Some(&min) = evals.last() {
        if min < -1e-8 {
            return Err(Error::state(format!(
                "matrix has significantly negative eigenvalue {min:.3e}"
            )));
        }
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let l = evals[k].max(0.0).sqrt();
        if l == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += v[(i, k)] * v[(j, k)].conj() * l;
            }
        }
    }
    Ok(out)
}

/// Haar-random pure state of `n_qubits` qubits: a normalized vector of
/// i.i.d. standard complex Gaussians, deterministic for a given seed.
pub fn haar_random_pure(n_qubits: usize, seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 1usize << n_qubits;
    let mut amplitudes = Vec::with_capacity(dim);
    for _ in 0..dim {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        amplitudes.push(Complex64::new(re, im));
    }
    PureState::normalized(n_qubits, amplitudes).expect("Gaussian vector is nonzero almost surely")
}

/// Pauli sigma_y, used to build the spin-flip operation.
pub fn sigma_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = Complex64::new(0.0, -1.0);
    m[(1, 0)] = Complex64::new(0.0, 1.0);
    m
}

/// Pauli sigma_x.
pub fn sigma_x() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = Complex64::new(1.0, 0.0);
    m[(1, 0)] = Complex64::new(1.0, 0.0);
    m
}

/// Pauli sigma_z.
pub fn sigma_z() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 0)] = Complex64::new(1.0, 0.0);
    m[(1, 1)] = Complex64::new(-1.0, 0.0);
    m
}
