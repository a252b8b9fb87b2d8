//! Named reference states: GHZ and W at 3 or 4 qubits, Werner states,
//! and Bell pairs. These are the fixed exemplars used by the inequality
//! checks (W saturates the CKW-type inequalities, GHZ maximizes the
//! residual).

use num_complex::Complex64;

use crate::linalg::{ComplexMatrix, DensityMatrix, PureState};
use crate::{Error, Result};

/// (|0...0> + |1...1>) / sqrt(2).
pub fn ghz(n_qubits: usize) -> Result<PureState> {
    if n_qubits < 2 {
        return Err(Error::arg("GHZ needs at least 2 qubits".to_string()));
    }
    let dim = 1usize << n_qubits;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let w = 1.0 / 2.0f64.sqrt();
    amps[0] = Complex64::new(w, 0.0);
    amps[dim - 1] = Complex64::new(w, 0.0);
    PureState::new(n_qubits, amps)
}

/// Equal superposition of the one-excitation basis states.
pub fn w_state(n_qubits: usize) -> Result<PureState> {
    if n_qubits < 2 {
        return Err(Error::arg("W needs at least 2 qubits".to_string()));
    }
    let dim = 1usize << n_qubits;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let w = 1.0 / (n_qubits as f64).sqrt();
    for q in 0..n_qubits {
        amps[1 << q] = Complex64::new(w, 0.0);
    }
    PureState::new(n_qubits, amps)
}

/// Bell state (|00> + |11>) / sqrt(2).
pub fn bell_phi_plus() -> PureState {
    ghz(2).expect("2-qubit GHZ is the Bell state")
}

/// Werner state `p |Phi+><Phi+| + (1-p) I/4` on two qubits.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("werner parameter {p} outside [0, 1]")));
    }
    let bell = bell_phi_plus().to_density();
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = bell.matrix()[(i, j)] * p;
        }
        m[(i, i)] += Complex64::new((1.0 - p) / 4.0, 0.0);
    }
    DensityMatrix::new(vec![2, 2], m)
}

/// Fully product computational basis state |0...0>.
pub fn product_zero(n_qubits: usize) -> PureState {
    let dim = 1usize << n_qubits;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = Complex64::new(1.0, 0.0);
    PureState::new(n_qubits, amps).expect("basis state is normalized")
}
