use super::ProcessMatrix;
use crate::tensor::{CMatrix, Operator, SpaceLayout};
use crate::{Error, Result};

/// Tolerance on negative eigenvalues of instrument elements.
pub const CP_TOL: f64 = 1e-9;

/// `tr[W (M_A ⊗ M_B)]` with `M_A` on Alice's labels and `M_B` on Bob's, in
/// any order; no transpose is applied.
pub fn born_rule(w: &ProcessMatrix, ma: &Operator, mb: &Operator) -> Result<f64> {
    for m in [ma, mb] {
        m.require_hermitian()?;
        let min = m.min_eigenvalue();
        if min < -CP_TOL {
            return Err(Error::NotPositive(min));
        }
    }
    let joint = ma.kron(mb)?;
    let labels: Vec<&str> = w.op().layout().labels().collect();
    let joint = joint.permute(&labels)?;
    Ok(w.op().inner(&joint).re)
}

/// Unnormalized maximally entangled operator `Σ_ij |ii><jj|` on two labels
/// of equal dimension.
pub fn phi_plus(input: &str, output: &str, dim: usize) -> Operator {
    let layout = SpaceLayout::new([(input, dim), (output, dim)]).expect("distinct labels");
    Operator::from_fn(layout, |r, s| {
        let (i, ii) = (r / dim, r % dim);
        let (j, jj) = (s / dim, s % dim);
        if i == ii && j == jj {
            crate::tensor::c(1.0, 0.0)
        } else {
            crate::tensor::c(0.0, 0.0)
        }
    })
}

/// Choi operator `Σ_ij |i><j| ⊗ Φ(|i><j|)` of a channel given by Kraus
/// operators (each `d_out x d_in`).
pub fn choi_from_kraus(input: &str, output: &str, kraus: &[CMatrix]) -> Result<Operator> {
    let d_out = kraus[0].nrows();
    let d_in = kraus[0].ncols();
    let layout = SpaceLayout::new([(input, d_in), (output, d_out)])?;
    let mut m = CMatrix::zeros(d_in * d_out, d_in * d_out);
    for k in kraus {
        // column vector Σ_i |i> ⊗ K|i>
        let mut v = crate::tensor::CVector::zeros(d_in * d_out);
        for i in 0..d_in {
            for o in 0..d_out {
                v[i * d_out + o] = k[(o, i)];
            }
        }
        m += &v * v.adjoint();
    }
    Operator::new(layout, m)
}

/// Choi of the channel that discards its input and prepares `rho`.
pub fn replacement_choi(input: &str, d_in: usize, output: &str, rho: &Operator) -> Result<Operator> {
    let id = Operator::identity(SpaceLayout::new([(input, d_in)])?);
    let rho = Operator::new(SpaceLayout::new([(output, rho.dim())])?, rho.matrix().clone())?;
    id.kron(&rho)
}

/// `|tr_out M - 1_in|_F`: zero for Choi operators of trace-preserving maps.
pub fn trace_preservation_defect(choi: &Operator, output: &str) -> Result<f64> {
    let reduced = choi.partial_trace(&[output])?;
    Ok(reduced.distance(&Operator::identity(reduced.layout().clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::library::parallel;
    use crate::tensor::{A_I, A_O, B_I, B_O};

    #[test]
    fn identity_channels_on_parallel_process() {
        let w = parallel();
        let p = born_rule(&w, &phi_plus(A_I, A_O, 2), &phi_plus(B_I, B_O, 2)).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bob_first_order_is_accepted() {
        let w = parallel();
        let p = born_rule(&w, &phi_plus(B_O, B_I, 2), &phi_plus(A_I, A_O, 2)).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negative_element_rejected() {
        let w = parallel();
        let bad = phi_plus(A_I, A_O, 2).scale(-1.0);
        assert!(matches!(
            born_rule(&w, &bad, &phi_plus(B_I, B_O, 2)),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn kraus_identity_gives_phi_plus() {
        let choi = choi_from_kraus(A_I, A_O, &[CMatrix::identity(2, 2)]).unwrap();
        assert!(choi.distance(&phi_plus(A_I, A_O, 2)) < 1e-15);
        assert!(trace_preservation_defect(&choi, A_O).unwrap() < 1e-15);
    }
}
