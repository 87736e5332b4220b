//! Two-party process matrices, conditioning on a later measured system, and
//! the semidefinite programs for causal robustness and causal witnesses.
//!
//! The crate is organised in layers:
//!
//! * [`tensor`]: dense operators on labeled tensor-product spaces, partial
//!   traces, trace-and-replace maps and Pauli expansions.
//! * [`process`]: validity of process matrices, causal-order
//!   classification and named example processes.
//! * [`conditioning`]: combs with a conditioning system, the `Υ^F` family
//!   and the worked constructions built from it.
//! * [`sdp`]: conic programs and the robustness / witness problems.
//! * [`explore`]: parameter sweeps, heatmaps and witness coverage.

use openblas_src as _;

pub mod conditioning;
pub mod error;
pub mod explore;
pub mod process;
pub mod sdp;
pub mod tensor;

pub use error::{Error, Result};
