use rand::Rng;

use super::condition::{condition, ConditionResult};
use super::effect::{Effect, Povm};
use crate::process::random::{random_comb_over, random_ordered_comb, random_ordered_process, random_unitary};
use crate::process::{
    classical_channel_b_to_a, classify_operator, markovian_full_rank, parallel, success_probability, CausalClass,
    CausalOrder, Comb, CombOrder, ProcessMatrix, CAUSAL_TOL,
};
use crate::tensor::{c, pauli_operator, psd_inv_sqrt, CMatrix, Operator, SpaceLayout, C_I};
use crate::{Error, Result};

fn dyad(dim: usize, i: usize, j: usize) -> Operator {
    Operator::basis_dyad(SpaceLayout::new([(C_I, dim)]).expect("valid"), i, j)
}

/// Heralded realization: `Υ = pW⊗|0><0| + (1/4 - pW)⊗|1><1|` with
/// `p = 1/(4λ_max(W))`. Returns `p`, the comb and the complementary process
/// `W' = (1/4 - pW)/(1-p)` (absent when `p = 1`).
pub fn heralded_comb(w: &ProcessMatrix) -> Result<(f64, Comb, Option<ProcessMatrix>)> {
    let p = success_probability(w).min(1.0);
    let quarter = parallel();
    let rest = quarter.op() - &w.op().scale(p);
    let op = w.op().scale(p).kron(&dyad(2, 0, 0))? + rest.kron(&dyad(2, 1, 1))?;
    let comb = Comb::new(op, CombOrder::AParallelBThenC)?;
    let complement = if 1.0 - p > 1e-9 {
        Some(ProcessMatrix::new(rest.scale(1.0 / (1.0 - p)))?)
    } else {
        None
    };
    Ok((p, comb, complement))
}

/// Largest `p` with `A - pB ⪰ 0` by bisection to `tol`.
pub fn max_psd_weight(a: &Operator, b: &Operator, tol: f64) -> f64 {
    let ok = |p: f64| (a - &b.scale(p)).min_eigenvalue() >= -1e-12;
    let (mut lo, mut hi) = (0.0, 1.0);
    while ok(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return f64::INFINITY;
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `1/λ_max(A^{-1/2} B A^{-1/2})` for full-rank `A`.
pub fn max_psd_weight_closed_form(a: &Operator, b: &Operator) -> f64 {
    let inv = psd_inv_sqrt(a.matrix(), 1e-14);
    let m = Operator::new(a.layout().clone(), &inv * b.matrix() * &inv).expect("square");
    1.0 / m.hermitian_part().max_eigenvalue()
}

/// `Υ = p·W^{B≺A}⊗|0><0| + (W^{A≺B} - p·W^{B≺A})⊗|1><1|`, ordered A≺B≺C.
///
/// Conditioning on `|0>` returns `W^{B≺A}`; conditioning on `|+>` returns
/// `W^{A≺B}`.
pub fn opposing_orders_comb(w_ba: &ProcessMatrix, w_ab: &ProcessMatrix, p: f64) -> Result<Comb> {
    if !w_ab.classify().is_a_before_b() {
        return Err(Error::InvalidComb(format!("w_ab is {}", w_ab.classify())));
    }
    if !w_ba.classify().is_b_before_a() {
        return Err(Error::InvalidComb(format!("w_ba is {}", w_ba.classify())));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::OutOfRange(format!("p = {p}")));
    }
    let rest = w_ab.op() - &w_ba.op().scale(p);
    let min = rest.min_eigenvalue();
    if min < -1e-9 {
        return Err(Error::InvalidComb(format!(
            "W_ab - p W_ba has eigenvalue {min:.3e}; p = {p} is too large"
        )));
    }
    let op = w_ba.op().scale(p).kron(&dyad(2, 0, 0))? + rest.kron(&dyad(2, 1, 1))?;
    Comb::new(op, CombOrder::AThenBThenC)
}

/// Largest admissible weight for [`opposing_orders_comb`], by bisection.
pub fn max_opposing_weight(w_ba: &ProcessMatrix, w_ab: &ProcessMatrix) -> f64 {
    max_psd_weight(w_ab.op(), w_ba.op(), 1e-10).min(1.0)
}

/// The three conditioned processes of the opposing-orders comb built from
/// the Markovian example and its mirror.
#[derive(Clone, Debug)]
pub struct OpposingReport {
    pub r: f64,
    pub p: f64,
    pub zero: CausalClass,
    pub plus: CausalClass,
    pub one: CausalClass,
    /// `|W^{(+)} - W^{A≺B}|_F`.
    pub plus_deviation: f64,
}

pub fn opposing_markovian(r: f64) -> Result<(Comb, OpposingReport)> {
    let w_ab = markovian_full_rank(r)?;
    let w_ba = w_ab.mirror();
    let p = max_opposing_weight(&w_ba, &w_ab);
    let comb = opposing_orders_comb(&w_ba, &w_ab, p)?;
    let zero = condition(&comb, &Effect::basis(2, 0)?)?;
    let plus = condition(&comb, &Effect::pure_state(0.5, 0.0)?)?;
    let one = condition(&comb, &Effect::basis(2, 1)?)?;
    let class = |r: &ConditionResult| classify_operator(&r.operator, CAUSAL_TOL).expect("process layout");
    let report = OpposingReport {
        r,
        p,
        zero: class(&zero),
        plus: class(&plus),
        one: class(&one),
        plus_deviation: plus.operator.distance(w_ab.op()),
    };
    Ok((comb, report))
}

/// `Υ = ½(W⊗|0><0| + W̃⊗|1><1| + F⊗|1><0| + F^dag⊗|0><1|)` with
/// `W, W̃ = 1/4 ± α σ^x_{A_I}σ^x_{A_O}σ^x_{B_I}` and `F = β σ^x_{A_I}σ^x_{B_I}σ^x_{B_O}`.
///
/// Computational-basis outcomes are A≺B, `|±>` outcomes are B≺A.
pub fn delayed_choice_comb(alpha: f64, beta: f64) -> Result<Comb> {
    if alpha == 0.0 || beta == 0.0 || (alpha * alpha + beta * beta).sqrt() >= 0.25 {
        return Err(Error::OutOfRange(format!(
            "(α, β) = ({alpha}, {beta}) needs α, β ≠ 0 and √(α²+β²) < 1/4"
        )));
    }
    let layout = SpaceLayout::process();
    let w = pauli_operator(&layout, &[("0000", 0.25), ("xxx0", alpha)])?;
    let w_tilde = pauli_operator(&layout, &[("0000", 0.25), ("xxx0", -alpha)])?;
    let f = pauli_operator(&layout, &[("x0xx", beta)])?;
    let op = w.kron(&dyad(2, 0, 0))?
        + w_tilde.kron(&dyad(2, 1, 1))?
        + f.kron(&dyad(2, 1, 0))?
        + f.adjoint().kron(&dyad(2, 0, 1))?;
    Comb::new(op.scale(0.5), CombOrder::AParallelBThenC)
}

/// `(1/8)(1 - 4√(α² + β²))`.
pub fn delayed_choice_lambda_min(alpha: f64, beta: f64) -> f64 {
    0.125 * (1.0 - 4.0 * (alpha * alpha + beta * beta).sqrt())
}

/// Classes of the delayed-choice outcomes in both bases.
#[derive(Clone, Debug)]
pub struct DelayedChoiceReport {
    pub alpha: f64,
    pub beta: f64,
    pub lambda_min: f64,
    pub lambda_min_closed_form: f64,
    pub z_basis: [CausalClass; 2],
    pub x_basis: [CausalClass; 2],
    pub marginal: CausalClass,
}

impl DelayedChoiceReport {
    pub fn holds(&self) -> bool {
        self.z_basis.iter().all(CausalClass::strictly_a_before_b)
            && self.x_basis.iter().all(CausalClass::strictly_b_before_a)
            && self.marginal.order == CausalOrder::AParallelB
    }
}

pub fn delayed_choice_report(alpha: f64, beta: f64) -> Result<DelayedChoiceReport> {
    let comb = delayed_choice_comb(alpha, beta)?;
    let classes = |povm: &Povm| -> Result<[CausalClass; 2]> {
        let mut out = Vec::new();
        for e in povm.effects() {
            let r = condition(&comb, e)?;
            r.process()?;
            out.push(classify_operator(&r.operator, CAUSAL_TOL)?);
        }
        Ok([out[0].clone(), out[1].clone()])
    };
    Ok(DelayedChoiceReport {
        alpha,
        beta,
        lambda_min: comb.op().min_eigenvalue(),
        lambda_min_closed_form: delayed_choice_lambda_min(alpha, beta),
        z_basis: classes(&Povm::computational(2))?,
        x_basis: classes(&Povm::x_basis())?,
        marginal: comb.marginal().classify(),
    })
}

/// Three-outcome comb, all terms diagonal in the computational product basis:
/// `Υ = q W0⊗|0><0| + (1-q) p W1⊗|1><1| + (1-q)(1-p) W2⊗|2><2|` with
/// `W1 = 1_{A_O} ⊗ D_{A_I B_O} ⊗ |0><0|_{B_I}`, `p = 1/(4λ_max(W1))` and
/// `W2 = (1/4 - pW1)/(1-p)`. Outcome 0 is A≺B, outcomes 1 and 2 are B≺A.
pub fn three_outcome_classical(w0: &ProcessMatrix, q: f64) -> Result<Comb> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::OutOfRange(format!("q = {q}")));
    }
    let m = w0.op().matrix();
    let off_diagonal = (0..16)
        .flat_map(|i| (0..16).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| m[(i, j)].norm())
        .fold(0.0, f64::max);
    if off_diagonal > 1e-12 {
        return Err(Error::InvalidProcess(format!(
            "W0 is not diagonal (off-diagonal {off_diagonal:.3e})"
        )));
    }
    if !w0.classify().is_a_before_b() {
        return Err(Error::InvalidProcess(format!("W0 is {}", w0.classify())));
    }
    let w1 = classical_channel_b_to_a(0)?;
    let p = success_probability(&w1);
    let w2 = (parallel().op() - &w1.op().scale(p)).scale(1.0 / (1.0 - p));
    let op = w0.op().scale(q).kron(&dyad(3, 0, 0))?
        + w1.op().scale((1.0 - q) * p).kron(&dyad(3, 1, 1))?
        + w2.scale((1.0 - q) * (1.0 - p)).kron(&dyad(3, 2, 2))?;
    Comb::new(op, CombOrder::AThenBThenC)
}

/// Outcome of conditioning an ordered comb in one two-outcome basis.
#[derive(Clone, Debug)]
pub struct NoGoReport {
    pub probabilities: [f64; 2],
    /// `None` for a null outcome.
    pub classes: [Option<CausalClass>; 2],
    /// Both outcomes definite with strictly opposite orders.
    pub opposite: bool,
}

impl NoGoReport {
    pub fn both_definite(&self) -> bool {
        self.classes
            .iter()
            .all(|c| c.as_ref().is_some_and(CausalClass::is_definite))
    }
}

/// Conditions `comb` on the two columns of the unitary `basis` and checks the
/// outcomes do not carry strictly opposite causal orders.
pub fn no_go_check(comb: &Comb, basis: &CMatrix) -> Result<NoGoReport> {
    if comb.c_dim() != 2 || basis.nrows() != 2 || basis.ncols() != 2 {
        return Err(Error::WrongLayout {
            expected: "qubit C_I and a 2x2 basis".into(),
            found: format!("C_I of dimension {}", comb.c_dim()),
        });
    }
    let povm = Povm::from_basis(basis)?;
    let mut probabilities = [0.0; 2];
    let mut classes = [None, None];
    for (k, e) in povm.effects().iter().enumerate() {
        match condition(comb, e) {
            Ok(r) => {
                probabilities[k] = r.probability;
                classes[k] = Some(classify_operator(&r.operator, CAUSAL_TOL)?);
            }
            Err(Error::NullOutcome(p)) => probabilities[k] = p.max(0.0),
            Err(other) => return Err(other),
        }
    }
    let opposite = match (&classes[0], &classes[1]) {
        (Some(a), Some(b)) => {
            (a.strictly_a_before_b() && b.strictly_b_before_a()) || (a.strictly_b_before_a() && b.strictly_a_before_b())
        }
        _ => false,
    };
    Ok(NoGoReport {
        probabilities,
        classes,
        opposite,
    })
}

/// Tally of randomized no-go trials.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize)]
pub struct NoGoSummary {
    pub trials: usize,
    /// Trials where both outcomes were causally definite.
    pub both_definite: usize,
    /// Trials with strictly opposite orders; expected to be zero.
    pub violations: usize,
}

/// One random ordered comb, mixing generic entangled combs with the
/// structured families that come closest to the forbidden situation.
fn sample_trial_comb<R: Rng + ?Sized>(rng: &mut R) -> Result<Comb> {
    Ok(match rng.random_range(0..5) {
        0 | 1 => random_ordered_comb(rng, 2),
        2 => {
            // block-diagonal comb over an ordered marginal
            let gamma = random_ordered_process(rng, CausalOrder::ABeforeB);
            let w_ba = random_ordered_process(rng, CausalOrder::BBeforeA);
            let p = max_psd_weight(gamma.op(), w_ba.op(), 1e-6) * rng.random::<f64>();
            if p > 0.0 {
                opposing_orders_comb(&w_ba, &gamma, p.min(1.0))?
            } else {
                random_comb_over(rng, &gamma, CombOrder::AThenBThenC, 2)
            }
        }
        3 => {
            let r = rng.random_range(0.05..0.95);
            let w_ab = markovian_full_rank(r)?;
            let w_ba = w_ab.mirror();
            let p = max_opposing_weight(&w_ba, &w_ab) * rng.random_range(0.1..1.0);
            opposing_orders_comb(&w_ba, &w_ab, p)?
        }
        _ => {
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            let radius = rng.random_range(0.01..0.2499);
            delayed_choice_comb(radius * angle.cos(), radius * angle.sin())?
        }
    })
}

/// Runs `trials` random (comb, basis) pairs. A third of the bases are the
/// computational or `|±>` basis, where the structured families produce
/// definite orders; the rest are Haar random.
pub fn no_go_trials<R: Rng + ?Sized>(rng: &mut R, trials: usize) -> Result<NoGoSummary> {
    let mut summary = NoGoSummary::default();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for _ in 0..trials {
        let comb = sample_trial_comb(rng)?;
        let basis = match rng.random_range(0..6) {
            0 => CMatrix::identity(2, 2),
            1 => CMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]),
            _ => random_unitary(rng, 2),
        };
        let report = no_go_check(&comb, &basis)?;
        summary.trials += 1;
        summary.both_definite += report.both_definite() as usize;
        summary.violations += report.opposite as usize;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{w_ocb, w_sharp};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn heralded_ocb() {
        let (p, comb, complement) = heralded_comb(&w_ocb()).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        assert!(complement.unwrap().op().distance(w_sharp().op()) < 1e-12);
        assert!(comb.block(0, 1).frobenius_norm() == 0.0);
        assert!(comb.block(1, 0).frobenius_norm() == 0.0);
    }

    #[test]
    fn heralded_parallel_is_degenerate() {
        let (p, _, complement) = heralded_comb(&parallel()).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!(complement.is_none());
    }

    #[test]
    fn bisection_agrees_with_closed_form() {
        let w_ab = markovian_full_rank(0.5).unwrap();
        let w_ba = w_ab.mirror();
        let bis = max_psd_weight(w_ab.op(), w_ba.op(), 1e-10);
        let closed = max_psd_weight_closed_form(w_ab.op(), w_ba.op());
        assert!((bis - closed).abs() < 1e-9, "{bis} vs {closed}");
    }

    #[test]
    fn opposing_rejects_large_weight() {
        let w_ab = markovian_full_rank(0.5).unwrap();
        let w_ba = w_ab.mirror();
        let p = max_opposing_weight(&w_ba, &w_ab);
        assert!(opposing_orders_comb(&w_ba, &w_ab, (p * 1.01).min(1.0)).is_err());
    }

    #[test]
    fn delayed_choice_classes() {
        let report = delayed_choice_report(0.1, 0.1).unwrap();
        assert!(report.holds());
        assert!((report.lambda_min - report.lambda_min_closed_form).abs() < 1e-10);
    }

    #[test]
    fn no_go_small_run() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = no_go_trials(&mut rng, 40).unwrap();
        assert_eq!(s.violations, 0);
        assert!(s.both_definite > 0);
    }

    #[test]
    fn three_outcome_orders() {
        let comb = three_outcome_classical(&crate::process::classical_channel_a_to_b(), 0.5).unwrap();
        let povm = Povm::computational(3);
        let classes: Vec<_> = povm
            .effects()
            .iter()
            .map(|e| classify_operator(&condition(&comb, e).unwrap().operator, CAUSAL_TOL).unwrap())
            .collect();
        assert!(classes[0].strictly_a_before_b());
        assert!(classes[1].strictly_b_before_a());
        assert!(classes[2].strictly_b_before_a());
    }
}
