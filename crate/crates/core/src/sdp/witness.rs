use serde::{Deserialize, Serialize};

use super::program::{AffineExpr, BlockId, ConicProgram, LinearMap};
use super::solver::{ConicSolver, SolveStatus, SolverReport};
use crate::error::{Error, Result};
use crate::process::{lv_map, ProcessMatrix, PROCESS_TRACE};
use crate::tensor::{Operator, SpaceLayout, A_O, B_O};

pub const S_P: &str = "S_P";
pub const SIGMA_P: &str = "Sigma_P";
const MARGIN: &str = "t";

/// Largest margin accepted as feasible by [`verify_witness`].
pub const WITNESS_FEASIBILITY_TOL: f64 = 1e-7;

/// A Hermitian operator on the two-party space that is non-negative on every
/// causally separable process.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub op: Operator,
    /// Set when a decomposition `S = L_V(S_P)`, `𝟙/4 - S = L_V(Σ_P)` with the
    /// positivity side conditions was found for this operator.
    pub certified: bool,
}

impl Witness {
    pub fn uncertified(op: Operator) -> Self {
        Self { op, certified: false }
    }

    /// `tr(S W)`.
    pub fn evaluate(&self, w: &Operator) -> f64 {
        self.op.inner(w).re
    }
}

fn identity_over_outputs() -> Operator {
    Operator::identity(SpaceLayout::process()).scale(1.0 / PROCESS_TRACE)
}

fn lv() -> LinearMap {
    LinearMap::replace(lv_map())
}

/// Adds `S_P`, `Σ_P`, `L_V(Σ_P) + S - 𝟙/4 = 0` and the positivity side
/// conditions `Σ_P ⪰ t`, `tr_{A_O} S_P ⪰ t`, `tr_{B_O} S_P ⪰ t`, where `S` is
/// `L_V(S_P)` (pass `None`) or a fixed operator.
fn witness_constraints(p: &mut ConicProgram, fixed: Option<&Operator>, margin: bool) -> Result<BlockId> {
    let layout = SpaceLayout::process();
    let s_p = p.add_block(S_P, layout.clone())?;
    let sigma = p.add_block(SIGMA_P, layout.clone())?;
    let t = margin.then(|| p.add_scalar(MARGIN, None, Some(1.0)));

    let mut normalization = AffineExpr::new(layout.clone())
        .term(sigma, 1.0, lv())
        .constant(identity_over_outputs().scale(-1.0));
    match fixed {
        None => normalization = normalization.term(s_p, 1.0, lv()),
        Some(s) => {
            normalization = normalization.constant(s.clone());
            p.require_zero(
                "S = L_V(S_P)",
                AffineExpr::new(layout.clone())
                    .term(s_p, 1.0, lv())
                    .constant(s.scale(-1.0)),
            )?;
        }
    }
    p.require_zero("1/4 - S = L_V(Sigma_P)", normalization)?;

    let with_margin = |expr: AffineExpr| match t {
        Some(t) => {
            let id = Operator::identity(expr.layout().clone()).scale(-1.0);
            expr.scalar(t, id)
        }
        None => expr,
    };
    p.require_psd(
        "Sigma_P ⪰ 0",
        with_margin(AffineExpr::new(layout.clone()).block(sigma, 1.0)),
    )?;
    p.require_psd(
        "_{A_O} S_P ⪰ 0",
        with_margin(AffineExpr::new(layout.without(&[A_O])?).term(s_p, 1.0, LinearMap::identity().then_trace(&[A_O]))),
    )?;
    p.require_psd(
        "_{B_O} S_P ⪰ 0",
        with_margin(AffineExpr::new(layout.without(&[B_O])?).term(s_p, 1.0, LinearMap::identity().then_trace(&[B_O]))),
    )?;
    if let Some(t) = t {
        p.minimize_scalar(t, -1.0);
    }
    Ok(s_p)
}

/// minimize `tr(S W)` over witnesses `S = L_V(S_P)`.
pub fn witness_program(w: &Operator) -> Result<ConicProgram> {
    w.require_layout(&SpaceLayout::process())?;
    let mut p = ConicProgram::new();
    let s_p = witness_constraints(&mut p, None, false)?;
    // tr(L_V(S_P) W) = tr(S_P L_V(W)) since L_V is self-adjoint.
    let weight = lv_map().apply(w)?.hermitian_part();
    p.minimize_trace(s_p, weight)?;
    Ok(p)
}

/// Feasibility of the witness decomposition for a fixed `S`, as a margin
/// maximization: `t* ≥ 0` iff the decomposition exists.
pub fn verification_program(s: &Operator) -> Result<ConicProgram> {
    s.require_layout(&SpaceLayout::process())?;
    s.require_hermitian()?;
    let mut p = ConicProgram::new();
    witness_constraints(&mut p, Some(s), true)?;
    Ok(p)
}

#[derive(Clone, Debug)]
pub struct OptimalWitness {
    pub witness: Witness,
    /// `tr(S W)` at the optimum.
    pub value: f64,
    pub s_p: Operator,
    pub sigma_p: Operator,
    pub report: SolverReport,
}

/// Witness minimizing `tr(S W)`; negative value certifies non-separability.
pub fn optimal_witness(w: &ProcessMatrix, solver: &dyn ConicSolver) -> Result<OptimalWitness> {
    witness_of(w.op(), solver)
}

pub fn witness_of(w: &Operator, solver: &dyn ConicSolver) -> Result<OptimalWitness> {
    let program = witness_program(w)?;
    let report = program.solve(solver)?;
    report.require_optimal()?;
    let s_p = report.block(S_P)?.clone();
    let sigma_p = report.block(SIGMA_P)?.clone();
    let op = lv_map().apply(&s_p)?.hermitian_part();
    let value = op.inner(w).re;
    Ok(OptimalWitness {
        witness: Witness {
            op,
            // The returned (S_P, Σ_P) passed the independent residual check.
            certified: true,
        },
        value,
        s_p,
        sigma_p,
        report,
    })
}

#[derive(Clone, Debug)]
pub struct WitnessVerification {
    pub feasible: bool,
    /// Optimal margin; `None` when presolve or the solver proved infeasibility.
    pub margin: Option<f64>,
    pub report: SolverReport,
}

/// Re-derives a decomposition for `s` from scratch.
pub fn verify_witness_detailed(s: &Witness, solver: &dyn ConicSolver) -> Result<WitnessVerification> {
    let program = verification_program(&s.op)?;
    let report = program.solve(solver)?;
    match report.status {
        SolveStatus::Infeasible => Ok(WitnessVerification {
            feasible: false,
            margin: None,
            report,
        }),
        SolveStatus::Optimal => {
            let margin = report.scalar(MARGIN)?;
            Ok(WitnessVerification {
                feasible: margin >= -WITNESS_FEASIBILITY_TOL,
                margin: Some(margin),
                report,
            })
        }
        SolveStatus::Inaccurate => Err(Error::Solver(format!(
            "witness verification inaccurate ({}), residual {:.2e}, gap {:.2e}",
            report.detail, report.primal_residual, report.dual_gap
        ))),
    }
}

pub fn verify_witness(s: &Witness, solver: &dyn ConicSolver) -> Result<bool> {
    Ok(verify_witness_detailed(s, solver)?.feasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{parallel, w_ocb};
    use crate::sdp::ClarabelAdapter;

    #[test]
    fn ocb_witness_value_and_verification() {
        let solver = ClarabelAdapter::default();
        let ow = optimal_witness(&w_ocb(), &solver).unwrap();
        assert!((ow.value + (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-6, "{}", ow.value);
        assert!(ow.witness.evaluate(parallel().op()) >= -1e-9);
        assert!(verify_witness(&ow.witness, &solver).unwrap());
    }

    #[test]
    fn trivial_and_overreaching_witnesses() {
        let solver = ClarabelAdapter::default();
        let layout = SpaceLayout::process();
        assert!(verify_witness(&Witness::uncertified(Operator::zeros(layout.clone())), &solver).unwrap());
        assert!(!verify_witness(&Witness::uncertified(Operator::identity(layout).scale(-1.0)), &solver).unwrap());
    }
}
