use super::effect::{Effect, Povm};
use crate::process::{validity_report, Comb, ProcessMatrix, ValidityReport, PROCESS_TRACE, VALIDITY_TOL};
use crate::tensor::{Operator, SpaceLayout};
use crate::{Error, Result};

/// Outcomes below this probability are refused.
pub const NULL_OUTCOME: f64 = 1e-12;

/// The process obtained from one conditioning outcome.
#[derive(Clone, Debug)]
pub struct ConditionResult {
    pub probability: f64,
    /// Conditioned operator rescaled to trace 4.
    pub operator: Operator,
    pub validity: ValidityReport,
}

impl ConditionResult {
    /// The conditioned operator as a validated process matrix.
    pub fn process(&self) -> Result<ProcessMatrix> {
        ProcessMatrix::new(self.operator.clone())
    }

    /// `p · W`, the unnormalized contribution of this outcome, with
    /// `Σ_outcomes = tr_{C_I} Υ` up to the comb's trace.
    pub fn weighted(&self) -> Operator {
        self.operator.scale(self.probability)
    }
}

/// `tr_{C_I}[Υ (1_{AB} ⊗ E)]`, no transpose.
pub fn condition_raw(comb: &Comb, effect: &Effect) -> Result<Operator> {
    let n = comb.c_dim();
    if effect.dim() != n {
        return Err(Error::WrongLayout {
            expected: format!("C_I of dimension {n}"),
            found: effect.op().layout().to_string(),
        });
    }
    let mut raw = Operator::zeros(SpaceLayout::process());
    for i in 0..n {
        for j in 0..n {
            let e = effect.op().entry(j, i);
            if e.norm() > 0.0 {
                raw += &comb.block(i, j).scale_c(e);
            }
        }
    }
    Ok(raw.hermitian_part())
}

/// Conditions the comb on one effect: `p = tr(raw)/tr(Υ)`, process `raw`
/// rescaled to trace 4.
pub fn condition(comb: &Comb, effect: &Effect) -> Result<ConditionResult> {
    let raw = condition_raw(comb, effect)?;
    let probability = raw.trace_re() / comb.op().trace_re();
    if probability < NULL_OUTCOME {
        return Err(Error::NullOutcome(probability));
    }
    let operator = raw.scale(PROCESS_TRACE / raw.trace_re());
    let validity = validity_report(&operator, VALIDITY_TOL);
    Ok(ConditionResult {
        probability,
        operator,
        validity,
    })
}

/// Conditions on every effect of a POVM. Null outcomes are reported as `None`.
pub fn condition_all(comb: &Comb, povm: &Povm) -> Result<Vec<Option<ConditionResult>>> {
    povm.effects()
        .iter()
        .map(|e| match condition(comb, e) {
            Ok(r) => Ok(Some(r)),
            Err(Error::NullOutcome(_)) => Ok(None),
            Err(other) => Err(other),
        })
        .collect()
}

/// `|Σ_i p_i W_i - tr_{C_I} Υ|_F` over a POVM; zero by linearity.
pub fn completeness_residual(comb: &Comb, povm: &Povm) -> Result<f64> {
    let mut total = Operator::zeros(SpaceLayout::process());
    for r in condition_all(comb, povm)?.into_iter().flatten() {
        total += &r.weighted();
    }
    let marginal = comb.marginal();
    Ok(total.distance(marginal.op()))
}
