use nalgebra::SymmetricEigen;

use super::operator::{CMatrix, CVector, Operator};
use crate::error::Result;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// (columns of `vectors`).
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> CVector {
        self.vectors.column(k).into_owned()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    /// `Σ λ_i v_i v_i^dag`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.vectors.nrows();
        let mut m = CMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vectors.column(k);
            m += (v * v.adjoint()) * num_complex::Complex64::new(lambda, 0.0);
        }
        m
    }
}

pub fn eig_hermitian(m: &Operator) -> Result<HermitianEigen> {
    m.require_hermitian()?;
    Ok(decompose(m.hermitian_part().matrix()))
}

pub(crate) fn eigenvalues(m: &Operator) -> Vec<f64> {
    let mut values: Vec<f64> = SymmetricEigen::new(m.matrix().clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

pub(crate) fn decompose(m: &CMatrix) -> HermitianEigen {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_columns(
        &order
            .iter()
            .map(|&k| eig.eigenvectors.column(k).into_owned())
            .collect::<Vec<_>>(),
    );
    HermitianEigen { values, vectors }
}

/// Positive square root of a positive semidefinite matrix (negative
/// eigenvalues from rounding are clipped to zero).
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let e = decompose(&((m + m.adjoint()) * num_complex::Complex64::new(0.5, 0.0)));
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (k, &lambda) in e.values.iter().enumerate() {
        let v = e.vectors.column(k);
        out += (v * v.adjoint()) * num_complex::Complex64::new(lambda.max(0.0).sqrt(), 0.0);
    }
    out
}

/// Inverse square root on the support; eigenvalues below `cutoff` map to zero.
pub fn psd_inv_sqrt(m: &CMatrix, cutoff: f64) -> CMatrix {
    let e = decompose(&((m + m.adjoint()) * num_complex::Complex64::new(0.5, 0.0)));
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (k, &lambda) in e.values.iter().enumerate() {
        if lambda > cutoff {
            let v = e.vectors.column(k);
            out += (v * v.adjoint()) * num_complex::Complex64::new(1.0 / lambda.sqrt(), 0.0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::tensor::layout::SpaceLayout;
    use crate::tensor::operator::c;

    #[test]
    fn maximally_mixed_spectrum() {
        let m = Operator::identity(SpaceLayout::process()).scale(0.25);
        let e = m.eig_hermitian().unwrap();
        assert!(e.values.iter().all(|v| (v - 0.25).abs() < 1e-14));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Operator::basis_dyad(SpaceLayout::qubits(&["a"]), 0, 1);
        assert!(matches!(m.eig_hermitian(), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn ascending_and_reconstructs() {
        let m = Operator::hermitian(
            SpaceLayout::qubits(&["a"]),
            CMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(-1.0, 0.0)]),
        )
        .unwrap();
        let e = m.eig_hermitian().unwrap();
        assert!(e.values[0] < e.values[1]);
        assert!((e.reconstruct() - m.matrix()).norm() < 1e-12);
    }
}
