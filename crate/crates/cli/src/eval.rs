use clap::{Args, ValueEnum};

use renyi_lab::concurrence::{concurrence_of_assistance, pure_concurrence, wootters_concurrence};
use renyi_lab::entropy::AlphaParam;
use renyi_lab::inequalities::{
    ckw_residual, coa_polygamy_residual, eoa_polygamy_residual, renyi_monogamy_residual,
    renyi_polygamy_residual, PolygamyConfig,
};
use renyi_lab::renyi_ent::{
    renyi_entanglement_pure, renyi_entanglement_two_qubit, reoa_lower_bound, ConjecturePolicy,
};
use renyi_lab::roof::RoofBudget;
use renyi_lab::{Error, Result};

use crate::state::{parse_state_spec, LoadedState};
use crate::VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    /// Renyi-alpha entanglement across the cut (bridge function for
    /// two-qubit mixed states).
    RenyiEnt,
    /// Concurrence (Wootters closed form for mixed states).
    Concurrence,
    /// Concurrence of assistance.
    Coa,
    /// Certified lower bound f_alpha(C^a) on the Renyi-alpha
    /// entanglement of assistance.
    ReoaLowerBound,
    /// CKW monogamy residual at the focus qubit.
    CkwResidual,
    /// Renyi-alpha monogamy residual at the focus qubit.
    RenyiMonogamyResidual,
    /// Squared-CoA polygamy residual at the focus qubit.
    CoaPolygamyResidual,
    /// EoA polygamy residual (roof oracle on the right-hand side).
    EoaPolygamyResidual,
    /// Renyi-alpha polygamy residual via the f_alpha(C^a) bound.
    RenyiPolygamyResidual,
}

impl Measure {
    fn needs_alpha(&self) -> bool {
        matches!(
            self,
            Measure::RenyiEnt
                | Measure::ReoaLowerBound
                | Measure::RenyiMonogamyResidual
                | Measure::RenyiPolygamyResidual
        )
    }
}

#[derive(Args)]
pub struct EvalArgs {
    /// Named state (ghz, w, ghz:4, w:4, werner:p) or a JSON file.
    #[arg(long)]
    pub state: String,

    #[arg(long, value_enum)]
    pub measure: Measure,

    /// Renyi order; required by the alpha-dependent measures.
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Focus qubit (residuals) or cut qubit (entanglement measures).
    #[arg(long, default_value_t = 0)]
    pub cut: usize,

    /// Conjecture floor for the analytic two-qubit formula.
    #[arg(long, default_value_t = 0.83)]
    pub floor: f64,

    /// Seed for the roof oracle where one is needed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

struct Evaluation {
    value: f64,
    branch: &'static str,
    conjectural: bool,
}

fn alpha_param(args: &EvalArgs) -> Result<AlphaParam> {
    let alpha = args
        .alpha
        .ok_or_else(|| Error::InvalidArgument("this measure requires --alpha".to_string()))?;
    AlphaParam::new(alpha)
}

fn evaluate(args: &EvalArgs, state: &LoadedState) -> Result<Evaluation> {
    let policy = ConjecturePolicy {
        alpha_floor: args.floor,
        strict: true,
    };
    let budget = RoofBudget {
        seed: args.seed,
        ..Default::default()
    };
    match args.measure {
        Measure::RenyiEnt => {
            let a = alpha_param(args)?;
            match state {
                LoadedState::Pure(psi) => Ok(Evaluation {
                    value: renyi_entanglement_pure(psi, &[args.cut], &a)?,
                    branch: "reduced-spectrum",
                    conjectural: false,
                }),
                LoadedState::Mixed(rho) => {
                    let m = renyi_entanglement_two_qubit(rho, &a, &policy)?;
                    Ok(Evaluation {
                        value: m.value,
                        branch: "bridge-function-wootters",
                        conjectural: m.conjectural,
                    })
                }
            }
        }
        Measure::Concurrence => match state {
            LoadedState::Pure(psi) if psi.n_qubits() > 2 => Ok(Evaluation {
                value: pure_concurrence(psi, &[args.cut])?,
                branch: "pure-purity-formula",
                conjectural: false,
            }),
            _ => Ok(Evaluation {
                value: wootters_concurrence(&state.density())?,
                branch: "wootters-closed-form",
                conjectural: false,
            }),
        },
        Measure::Coa => Ok(Evaluation {
            value: concurrence_of_assistance(&state.density())?,
            branch: "lambda-sum",
            conjectural: false,
        }),
        Measure::ReoaLowerBound => {
            let a = alpha_param(args)?;
            let m = reoa_lower_bound(&state.density(), &a, &policy)?;
            Ok(Evaluation {
                value: m.value,
                branch: "f-alpha-of-coa",
                conjectural: m.conjectural,
            })
        }
        Measure::CkwResidual => {
            let r = ckw_residual(state.pure()?, args.cut, 0)?;
            Ok(Evaluation {
                value: r.residual,
                branch: "residual",
                conjectural: r.conjectural,
            })
        }
        Measure::RenyiMonogamyResidual => {
            let a = alpha_param(args)?;
            let r = renyi_monogamy_residual(state.pure()?, args.cut, &a, &policy, 0)?;
            Ok(Evaluation {
                value: r.residual,
                branch: "residual",
                conjectural: r.conjectural,
            })
        }
        Measure::CoaPolygamyResidual => {
            let r = coa_polygamy_residual(state.pure()?, args.cut, 0)?;
            Ok(Evaluation {
                value: r.residual,
                branch: "residual",
                conjectural: r.conjectural,
            })
        }
        Measure::EoaPolygamyResidual => {
            let r = eoa_polygamy_residual(state.pure()?, args.cut, &budget, 0)?;
            Ok(Evaluation {
                value: r.residual,
                branch: "residual-roof-oracle",
                conjectural: r.conjectural,
            })
        }
        Measure::RenyiPolygamyResidual => {
            let a = alpha_param(args)?;
            let cfg = PolygamyConfig::default();
            let r = renyi_polygamy_residual(state.pure()?, args.cut, &a, &cfg, 0)?;
            Ok(Evaluation {
                value: r.residual,
                branch: "residual-coa-bound",
                conjectural: r.conjectural,
            })
        }
    }
}

pub fn run(args: &EvalArgs) -> Result<u8> {
    if args.measure.needs_alpha() && args.alpha.is_none() {
        return Err(Error::InvalidArgument(
            "this measure requires --alpha".to_string(),
        ));
    }
    let state = parse_state_spec(&args.state)?;
    let eval = evaluate(args, &state)?;
    // Keep values that round to zero from printing as -0.000000000000.
    let shown = if eval.value.abs() < 0.5e-12 {
        0.0
    } else {
        eval.value
    };
    println!("{shown:.12}");
    println!("branch: {}", eval.branch);
    println!("conjectural: {}", eval.conjectural);
    println!("version: {VERSION}");
    Ok(0)
}
