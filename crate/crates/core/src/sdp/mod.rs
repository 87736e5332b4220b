//! Causal robustness and causal witness semidefinite programs.

mod program;
mod robustness;
mod solver;
mod witness;

pub use program::{
    from_orthonormal_coords, orthonormal_coords, svec_index, AffineExpr, Block, BlockId, Cone, ConicProgram,
    Constraint, ConstraintKind, LinearMap, Objective, Scalar, ScalarId, StandardForm, Triplets,
};
pub use robustness::{
    audit_certificates, causal_robustness, robustness_of, robustness_program, CertificateAudit, Robustness, T_AB, T_BA,
};
pub use solver::{
    ClarabelAdapter, ConicSolver, RawSolution, RawStatus, SolveStatus, SolverReport, CERTIFICATE_TOL, SOLVER_TOL,
};
pub use witness::{
    optimal_witness, verification_program, verify_witness, verify_witness_detailed, witness_of, witness_program,
    OptimalWitness, Witness, WitnessVerification, SIGMA_P, S_P, WITNESS_FEASIBILITY_TOL,
};
