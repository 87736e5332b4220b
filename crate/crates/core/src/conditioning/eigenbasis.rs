use crate::process::w_ocb;
use crate::tensor::{c, CMatrix, CVector};

/// `(A_I, A_O, B_O)` bits of the slice holding `|Ψ_i>` and `|Ψ⊥_i>`, for `i = 1..8`.
pub const SLICES: [(usize, usize, usize); 8] = [
    (1, 1, 1),
    (1, 1, 0),
    (1, 0, 1),
    (1, 0, 0),
    (0, 1, 1),
    (0, 1, 0),
    (0, 0, 1),
    (0, 0, 0),
];

/// Eigenvectors of `W_OCB` (`|Ψ_i>`, eigenvalue ½) and of `W#`
/// (`|Ψ⊥_i>`, eigenvalue ½, i.e. the kernel of `W_OCB`).
///
/// `W_OCB` only couples `B_I`, so each pair lives on the two basis states
/// `|a b 0 d>`, `|a b 1 d>` of one `(A_I, A_O, B_O)` slice. Phases make the
/// `B_I = 1` amplitude real and positive.
#[derive(Clone, Debug)]
pub struct OcbEigenbasis {
    pub psi: Vec<CVector>,
    pub perp: Vec<CVector>,
}

fn flat(a: usize, b: usize, bi: usize, d: usize) -> usize {
    (a << 3) | (b << 2) | (bi << 1) | d
}

pub fn eigenbasis_ocb() -> OcbEigenbasis {
    let w = w_ocb();
    let mut psi = Vec::with_capacity(8);
    let mut perp = Vec::with_capacity(8);
    for &(a, b, d) in &SLICES {
        let idx = [flat(a, b, 0, d), flat(a, b, 1, d)];
        let block = CMatrix::from_fn(2, 2, |r, s| w.op().entry(idx[r], idx[s]));
        let eig = crate::tensor::eig_hermitian(
            &crate::tensor::Operator::new(crate::tensor::SpaceLayout::qubits(&["x"]), block).expect("2x2"),
        )
        .expect("Hermitian block");
        // ascending: kernel vector first, then eigenvalue ½
        for (k, out) in [(1, &mut psi), (0, &mut perp)] {
            let local = eig.vector(k);
            let phase = local[1] / c(local[1].norm(), 0.0);
            let mut v = CVector::zeros(16);
            v[idx[0]] = local[0] / phase;
            v[idx[1]] = local[1] / phase;
            out.push(v);
        }
    }
    OcbEigenbasis { psi, perp }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::w_sharp;
    use std::f64::consts::SQRT_2;

    #[test]
    fn orthonormal_and_reconstructs() {
        let basis = eigenbasis_ocb();
        let all: Vec<&CVector> = basis.psi.iter().chain(basis.perp.iter()).collect();
        for (i, u) in all.iter().enumerate() {
            for (j, v) in all.iter().enumerate() {
                let ip = u.dotc(v);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - c(want, 0.0)).norm() < 1e-12);
            }
        }
        let mut ocb = CMatrix::zeros(16, 16);
        let mut sharp = CMatrix::zeros(16, 16);
        for k in 0..8 {
            ocb += &basis.psi[k] * basis.psi[k].adjoint() * c(0.5, 0.0);
            sharp += &basis.perp[k] * basis.perp[k].adjoint() * c(0.5, 0.0);
        }
        assert!((ocb - w_ocb().op().matrix()).norm() < 1e-12);
        assert!((sharp - w_sharp().op().matrix()).norm() < 1e-12);
    }

    #[test]
    fn first_vector_support_and_ratio() {
        let basis = eigenbasis_ocb();
        let v = &basis.psi[0];
        // |1101> = 13, |1111> = 15
        for k in 0..16 {
            if k != 13 && k != 15 {
                assert_eq!(v[k].norm(), 0.0);
            }
        }
        let ratio = v[13] / v[15];
        assert!((ratio - c(SQRT_2 - 1.0, 0.0)).norm() < 1e-12);
        let norm_sq = 1.0 / (4.0 - 2.0 * SQRT_2);
        // unnormalized (√2-1, 1) has squared norm 4-2√2
        assert!((v[15].re - (norm_sq).sqrt()).abs() < 1e-12);
    }
}
