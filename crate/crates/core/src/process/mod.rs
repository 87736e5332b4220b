//! Process matrices, combs and their causal structure.

mod born;
mod causal;
mod library;
mod matrix;
pub mod random;
mod validity;

pub use born::{born_rule, choi_from_kraus, phi_plus, replacement_choi, trace_preservation_defect, CP_TOL};
pub use causal::{
    a_before_b_map, b_before_a_map, classify_causal_order, classify_operator, CausalClass, CausalOrder, CAUSAL_TOL,
    STRICT_GAP,
};
pub use library::{
    classical_channel_a_to_b, classical_channel_b_to_a, dephasing_choi, markovian_full_rank, named_process, parallel,
    success_probability, w_ocb, w_sharp,
};
pub use matrix::{Comb, CombOrder, ProcessMatrix};
pub use validity::{
    forbidden_strings, forbidden_term_check, is_valid_process, lv_map, project_lv, support_name, validity_report,
    ForbiddenTerm, ValidityReport, FORBIDDEN_SUPPORTS, PROCESS_TRACE, VALIDITY_TOL,
};
