//! State specifications: named states (`ghz`, `w:4`, `werner:0.5`) or
//! JSON files holding either a pure state or a density matrix.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use renyi_lab::linalg::ComplexMatrix;
use renyi_lab::states::{ghz, w_state, werner};
use renyi_lab::{DensityMatrix, Error, PureState, Result};

pub enum LoadedState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl LoadedState {
    /// Density-matrix view: projector for pure inputs.
    pub fn density(&self) -> DensityMatrix {
        match self {
            LoadedState::Pure(psi) => psi.to_density(),
            LoadedState::Mixed(rho) => rho.clone(),
        }
    }

    pub fn pure(&self) -> Result<&PureState> {
        match self {
            LoadedState::Pure(psi) => Ok(psi),
            LoadedState::Mixed(_) => Err(Error::InvalidArgument(
                "this measure needs a pure state".to_string(),
            )),
        }
    }
}

/// Pure state file: amplitudes as [re, im] pairs in binary order with
/// qubit 0 least significant.
#[derive(Deserialize)]
struct PureStateFile {
    n_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// Density matrix file: `matrix` as nested rows of [re, im] pairs.
#[derive(Deserialize)]
struct DensityFile {
    n_qubits: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

fn parse_named(spec: &str) -> Option<Result<LoadedState>> {
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let parse_n = |arg: Option<&str>| -> Result<usize> {
        match arg {
            None => Ok(3),
            Some(s) => {
                let n: usize = s
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad qubit count '{s}'")))?;
                if !(3..=4).contains(&n) {
                    return Err(Error::InvalidArgument(format!(
                        "named states support 3 or 4 qubits, got {n}"
                    )));
                }
                Ok(n)
            }
        }
    };
    match name {
        "ghz" => Some(parse_n(arg).and_then(ghz).map(LoadedState::Pure)),
        "w" => Some(parse_n(arg).and_then(w_state).map(LoadedState::Pure)),
        "werner" => Some(match arg {
            None => Err(Error::InvalidArgument(
                "werner needs a parameter, e.g. werner:0.5".to_string(),
            )),
            Some(s) => s
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad werner parameter '{s}'")))
                .and_then(werner)
                .map(LoadedState::Mixed),
        }),
        _ => None,
    }
}

fn parse_file(path: &Path) -> Result<LoadedState> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    if let Ok(f) = serde_json::from_str::<PureStateFile>(&text) {
        let amps: Vec<Complex64> = f
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        return PureState::new(f.n_qubits, amps).map(LoadedState::Pure);
    }
    if let Ok(f) = serde_json::from_str::<DensityFile>(&text) {
        let dim = 1usize << f.n_qubits;
        let mut entries = Vec::with_capacity(dim * dim);
        if f.matrix.len() != dim || f.matrix.iter().any(|row| row.len() != dim) {
            return Err(Error::InvalidArgument(format!(
                "matrix in {} is not {dim}x{dim}",
                path.display()
            )));
        }
        for row in &f.matrix {
            for &[re, im] in row {
                entries.push(Complex64::new(re, im));
            }
        }
        let m = ComplexMatrix::from_entries(dim, dim, entries)?;
        return DensityMatrix::new(vec![2; f.n_qubits], m).map(LoadedState::Mixed);
    }
    Err(Error::InvalidArgument(format!(
        "{} is neither a pure-state nor a density-matrix JSON file",
        path.display()
    )))
}

pub fn parse_state_spec(spec: &str) -> Result<LoadedState> {
    if let Some(named) = parse_named(spec) {
        return named;
    }
    let path = Path::new(spec);
    if path.exists() {
        return parse_file(path);
    }
    Err(Error::InvalidArgument(format!(
        "unknown state '{spec}': not a named state (ghz, w, ghz:4, w:4, werner:p) \
         and no such file"
    )))
}
