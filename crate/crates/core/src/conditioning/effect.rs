use std::f64::consts::SQRT_2;

use crate::tensor::{c, CMatrix, CVector, Operator, SpaceLayout, C_I};
use crate::{Error, Result};

/// Tolerance for `0 ⪯ E ⪯ 1` and POVM completeness.
pub const EFFECT_TOL: f64 = 1e-12;

/// A measurement effect on the conditioning system.
#[derive(Clone, Debug, PartialEq)]
pub struct Effect {
    op: Operator,
    /// `(q, ϑ)` when the effect is `|Φ(q,ϑ)><Φ(q,ϑ)|`.
    pure: Option<(f64, f64)>,
}

impl Effect {
    /// Checks `0 ⪯ op ⪯ 1` on a `C_I` layout.
    pub fn new(op: Operator) -> Result<Self> {
        let dim = op.layout().dim_of(C_I)?;
        op.require_layout(&SpaceLayout::new([(C_I, dim)])?)?;
        op.require_hermitian()?;
        let e = op.eig_hermitian()?;
        if e.min() < -EFFECT_TOL {
            return Err(Error::NotPositive(e.min()));
        }
        if e.max() > 1.0 + EFFECT_TOL {
            return Err(Error::OutOfRange(format!("effect eigenvalue {} exceeds 1", e.max())));
        }
        Ok(Self { op, pure: None })
    }

    /// Projector onto `√q|0> + √(1-q) e^{iϑ}|1>`.
    pub fn pure_state(q: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) || !theta.is_finite() {
            return Err(Error::OutOfRange(format!("(q, ϑ) = ({q}, {theta})")));
        }
        let v = phi_state(q, theta);
        let op = Operator::projector(SpaceLayout::qubits(&[C_I]), &v)?;
        Ok(Self {
            op,
            pure: Some((q, theta)),
        })
    }

    /// Projector onto a normalized vector of any dimension.
    pub fn projector(v: &CVector) -> Result<Self> {
        let layout = SpaceLayout::new([(C_I, v.len())])?;
        Self::new(Operator::projector(layout, v)?)
    }

    /// `|k><k|` in the computational basis of a `dim`-level system.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        Self::projector(&crate::tensor::basis_vector(dim, k))
    }

    /// `1/d`, the effect of a trivial two-outcome POVM on a qubit.
    pub fn trivial_half() -> Self {
        Self::new(Operator::identity(SpaceLayout::qubits(&[C_I])).scale(0.5)).expect("valid")
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn pure_parameters(&self) -> Option<(f64, f64)> {
        self.pure
    }
}

/// `√q|0> + √(1-q) e^{iϑ}|1>`.
pub fn phi_state(q: f64, theta: f64) -> CVector {
    let b = (1.0 - q).sqrt();
    CVector::from_vec(vec![c(q.sqrt(), 0.0), c(b * theta.cos(), b * theta.sin())])
}

/// A complete set of effects.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    effects: Vec<Effect>,
}

impl Povm {
    /// Checks that the effects sum to the identity.
    pub fn new(effects: Vec<Effect>) -> Result<Self> {
        let first = effects.first().ok_or_else(|| Error::OutOfRange("empty POVM".into()))?;
        let mut total = Operator::zeros(first.op().layout().clone());
        for e in &effects {
            total += e.op();
        }
        let defect = total.distance(&Operator::identity(total.layout().clone()));
        if defect > EFFECT_TOL * 10.0 {
            return Err(Error::OutOfRange(format!("POVM completeness defect {defect:.3e}")));
        }
        Ok(Self { effects })
    }

    /// Rank-one projective measurement in the basis given by the columns of `u`.
    pub fn from_basis(u: &CMatrix) -> Result<Self> {
        Self::new(
            (0..u.ncols())
                .map(|k| Effect::projector(&u.column(k).into_owned()))
                .collect::<Result<_>>()?,
        )
    }

    /// Computational basis of a `dim`-level system.
    pub fn computational(dim: usize) -> Self {
        Self::from_basis(&CMatrix::identity(dim, dim)).expect("identity is unitary")
    }

    /// `{|+>, |->}`.
    pub fn x_basis() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_basis(&CMatrix::from_row_slice(
            2,
            2,
            &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)],
        ))
        .expect("Hadamard is unitary")
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    /// `|Σ E - 1|_F`.
    pub fn completeness_defect(&self) -> f64 {
        let mut total = Operator::zeros(self.effects[0].op().layout().clone());
        for e in &self.effects {
            total += e.op();
        }
        total.distance(&Operator::identity(total.layout().clone()))
    }
}

/// `E0 = κ|0><0|`, `E1 = κ|+><+|`, `E2 = 1 - E0 - E1` with `κ = √2/(1+√2)`,
/// the largest weight for which `E2 ⪰ 0`.
pub fn two_basis_povm() -> Povm {
    let kappa = SQRT_2 / (1.0 + SQRT_2);
    let layout = SpaceLayout::qubits(&[C_I]);
    let e0 = Operator::basis_dyad(layout.clone(), 0, 0).scale(kappa);
    let plus = CVector::from_vec(vec![c(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2]);
    let e1 = Operator::projector(layout.clone(), &plus)
        .expect("dimension 2")
        .scale(kappa);
    let e2 = &(&Operator::identity(layout) - &e0) - &e1;
    Povm::new(vec![
        Effect::new(e0).expect("valid"),
        Effect::new(e1).expect("valid"),
        // E2 has a zero eigenvalue; clip rounding noise before validating
        Effect::new(e2.hermitian_part()).expect("valid"),
    ])
    .expect("complete")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_state_effect_is_projector() {
        let e = Effect::pure_state(0.3, 1.1).unwrap();
        assert!((e.op().trace_re() - 1.0).abs() < 1e-15);
        assert!(e.op().compose(e.op()).distance(e.op()) < 1e-15);
        assert!(Effect::pure_state(1.5, 0.0).is_err());
    }

    #[test]
    fn two_basis_povm_is_complete_and_positive() {
        let povm = two_basis_povm();
        assert!(povm.completeness_defect() < 1e-12);
        let min = povm.effects()[2].op().min_eigenvalue();
        assert!((-1e-12..1e-12).contains(&min), "E2 is on the boundary, min = {min}");
    }

    #[test]
    fn incomplete_povm_rejected() {
        let e = Effect::basis(2, 0).unwrap();
        assert!(Povm::new(vec![e]).is_err());
    }
}
