//! Conditioning combs on a later measured system, the coherent `Υ^F`
//! family and the constructions built on top of it.

mod coefficients;
mod condition;
mod constructions;
mod effect;
mod eigenbasis;
mod upsilon;

pub use coefficients::{
    all_relations, dyad_index, r_matrix, solve_coefficient_nullspace, FCoefficients, Free, NullspaceSolution, Relation,
    BOUND_TOL, LISTED_RELATIONS, OMITTED_RELATION,
};
pub use condition::{completeness_residual, condition, condition_all, condition_raw, ConditionResult, NULL_OUTCOME};
pub use constructions::{
    delayed_choice_comb, delayed_choice_lambda_min, delayed_choice_report, heralded_comb, max_opposing_weight,
    max_psd_weight, max_psd_weight_closed_form, no_go_check, no_go_trials, opposing_markovian, opposing_orders_comb,
    three_outcome_classical, DelayedChoiceReport, NoGoReport, NoGoSummary, OpposingReport,
};
pub use effect::{phi_state, two_basis_povm, Effect, Povm, EFFECT_TOL};
pub use eigenbasis::{eigenbasis_ocb, OcbEigenbasis, SLICES};
pub(crate) use upsilon::conditioned_w_with;
pub use upsilon::{build_upsilon_f, coherent_sector, coherent_sector_min_eigenvalue, condition_upsilon, conditioned_w};
