//! Dense complex linear algebra over labeled tensor-product spaces.

mod eig;
mod layout;
mod operator;
mod pauli;
mod replace;

pub use eig::{eig_hermitian, psd_inv_sqrt, psd_sqrt, HermitianEigen};
pub use layout::{SpaceLayout, Subsystem, A_I, A_O, B_I, B_O, CANONICAL_ORDER, C_I};
pub use operator::{basis_vector, CMatrix, CVector, Operator, HERMITICITY_TOL};
pub use pauli::{
    pauli_assemble, pauli_expand, pauli_from_terms, pauli_operator, single_qubit, PauliCoefficients, PauliString,
};
pub use replace::ReplaceMap;

pub use operator::c;
