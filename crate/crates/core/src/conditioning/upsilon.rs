use super::coefficients::FCoefficients;
use super::condition::condition;
use super::effect::Effect;
use super::eigenbasis::eigenbasis_ocb;
use crate::process::{w_ocb, w_sharp, Comb, CombOrder, ProcessMatrix};
use crate::tensor::{c, CMatrix, Operator, SpaceLayout, C_I};
use crate::Result;

fn dyad(i: usize, j: usize) -> Operator {
    Operator::basis_dyad(SpaceLayout::qubits(&[C_I]), i, j)
}

/// `Υ^F = ½W_OCB⊗|0><0| + ½W#⊗|1><1| + F⊗|0><1| + F^dag⊗|1><0|`.
///
/// Refuses coefficients outside the positivity bound.
pub fn build_upsilon_f(cf: &FCoefficients) -> Result<Comb> {
    cf.require_bound()?;
    let f = cf.f_operator();
    let op = w_ocb().op().scale(0.5).kron(&dyad(0, 0))?
        + w_sharp().op().scale(0.5).kron(&dyad(1, 1))?
        + f.kron(&dyad(0, 1))?
        + f.adjoint().kron(&dyad(1, 0))?;
    Comb::new(op, CombOrder::AParallelBThenC)
}

/// `W(q,ϑ) = qW_OCB + (1-q)W# + 2√(q(1-q))(e^{iϑ}F + e^{-iϑ}F^dag)`.
pub fn conditioned_w(cf: &FCoefficients, q: f64, theta: f64) -> Result<ProcessMatrix> {
    cf.require_bound()?;
    if !(0.0..=1.0).contains(&q) {
        return Err(crate::Error::OutOfRange(format!("q = {q}")));
    }
    Ok(conditioned_w_with(&cf.f_operator(), q, theta))
}

/// [`conditioned_w`] for a precomputed `F`, skipping the bound check.
pub(crate) fn conditioned_w_with(f: &Operator, q: f64, theta: f64) -> ProcessMatrix {
    let cross = f.scale_c(c(theta.cos(), theta.sin()));
    let cross = &cross + &cross.adjoint();
    let op = w_ocb().op().scale(q) + w_sharp().op().scale(1.0 - q) + cross.scale(2.0 * (q * (1.0 - q)).sqrt());
    ProcessMatrix::new(op).expect("conditioned processes of in-bound combs are valid")
}

/// Conditioned process obtained by actually conditioning `Υ^F` on `|Φ(q,ϑ)>`.
pub fn condition_upsilon(cf: &FCoefficients, q: f64, theta: f64) -> Result<(f64, ProcessMatrix)> {
    let comb = build_upsilon_f(cf)?;
    let r = condition(&comb, &Effect::pure_state(q, theta)?)?;
    Ok((r.probability, r.process()?))
}

/// Isometry onto `span{|Ψ_i>|0>, |Ψ⊥_j>|1>}` (32×16).
pub fn coherent_sector() -> CMatrix {
    let basis = eigenbasis_ocb();
    let zero = crate::tensor::basis_vector(2, 0);
    let one = crate::tensor::basis_vector(2, 1);
    let cols: Vec<_> = basis
        .psi
        .iter()
        .map(|v| v.kronecker(&zero))
        .chain(basis.perp.iter().map(|v| v.kronecker(&one)))
        .collect();
    CMatrix::from_columns(&cols)
}

/// Smallest eigenvalue of `Υ` compressed to [`coherent_sector`].
///
/// `Υ^F` annihilates the complementary sector, so its full spectrum is this
/// compressed spectrum plus sixteen zeros.
pub fn coherent_sector_min_eigenvalue(comb: &Comb) -> f64 {
    let v = coherent_sector();
    let compressed = v.adjoint() * comb.op().matrix() * &v;
    let op = Operator::new(SpaceLayout::qubits(&["s0", "s1", "s2", "s3"]), compressed).expect("16x16");
    op.hermitian_part().min_eigenvalue()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::parallel;

    #[test]
    fn zero_coefficients_give_incoherent_comb() {
        let comb = build_upsilon_f(&FCoefficients::zero()).unwrap();
        assert!(comb.block(0, 1).frobenius_norm() == 0.0);
        assert!(comb.marginal().op().distance(parallel().op()) < 1e-14);
    }

    #[test]
    fn out_of_bound_refused() {
        assert!(build_upsilon_f(&FCoefficients::real(0.3, 0.0, 0.0)).is_err());
    }

    #[test]
    fn conditioned_matches_conditioning() {
        let cf = FCoefficients::preset("star").unwrap();
        for &(q, t) in &[(0.5, std::f64::consts::PI), (0.2, 1.0), (0.9, 4.0)] {
            let (p, w) = condition_upsilon(&cf, q, t).unwrap();
            assert!((p - 0.5).abs() < 1e-12);
            assert!(w.op().distance(conditioned_w(&cf, q, t).unwrap().op()) < 1e-10);
        }
    }

    #[test]
    fn complementary_sector_is_kernel() {
        let cf = FCoefficients::new(c(0.05, 0.02), c(0.03, -0.01), c(-0.04, 0.0));
        let comb = build_upsilon_f(&cf).unwrap();
        let v = coherent_sector();
        let proj = &v * v.adjoint();
        let rest = CMatrix::identity(32, 32) - proj;
        assert!((comb.op().matrix() * &rest).norm() < 1e-12);
        assert!((coherent_sector_min_eigenvalue(&comb) - cf.lambda_min_bound()).abs() < 1e-12);
    }
}
