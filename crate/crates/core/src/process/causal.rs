use serde::{Deserialize, Serialize};

use crate::tensor::{Operator, ReplaceMap, SpaceLayout, A_I, A_O, B_I, B_O};
use crate::Result;

/// Default Frobenius tolerance for structural tests.
pub const CAUSAL_TOL: f64 = 1e-9;

/// The opposite-order distance a class needs to count as strict.
pub const STRICT_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalOrder {
    ABeforeB,
    BBeforeA,
    AParallelB,
    /// Neither ordered form; the process may still be a mixture of orders.
    NoneOfThese,
}

impl std::fmt::Display for CausalOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CausalOrder::ABeforeB => "A≺B",
            CausalOrder::BBeforeA => "B≺A",
            CausalOrder::AParallelB => "A∥B",
            CausalOrder::NoneOfThese => "none",
        })
    }
}

/// Projector onto operators of the form `1_{B_O} ⊗ W_{A B_I}` whose
/// `B_I`-marginal is `1_{A_O} ⊗ ρ_{A_I}`:
/// `_{B_O} - _{B_I B_O} + _{A_O B_I B_O}`.
pub fn a_before_b_map() -> ReplaceMap {
    ReplaceMap::new()
        .plus(1.0, &[B_O])
        .plus(-1.0, &[B_I, B_O])
        .plus(1.0, &[A_O, B_I, B_O])
}

/// Mirror of [`a_before_b_map`]: `_{A_O} - _{A_I A_O} + _{A_I A_O B_O}`.
pub fn b_before_a_map() -> ReplaceMap {
    ReplaceMap::new()
        .plus(1.0, &[A_O])
        .plus(-1.0, &[A_I, A_O])
        .plus(1.0, &[A_I, A_O, B_O])
}

/// Structural class together with the distances it was decided from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CausalClass {
    pub order: CausalOrder,
    /// `|W - P_{A≺B}(W)|_F`, zero iff both A≺B conditions hold.
    pub distance_ab: f64,
    /// `|W - P_{B≺A}(W)|_F`.
    pub distance_ba: f64,
    pub tol: f64,
}

impl CausalClass {
    pub fn is_a_before_b(&self) -> bool {
        self.distance_ab <= self.tol
    }

    pub fn is_b_before_a(&self) -> bool {
        self.distance_ba <= self.tol
    }

    /// A≺B and clearly not B≺A.
    pub fn strictly_a_before_b(&self) -> bool {
        self.is_a_before_b() && self.distance_ba > STRICT_GAP
    }

    /// B≺A and clearly not A≺B.
    pub fn strictly_b_before_a(&self) -> bool {
        self.is_b_before_a() && self.distance_ab > STRICT_GAP
    }

    /// Ordered in at least one direction.
    pub fn is_definite(&self) -> bool {
        self.order != CausalOrder::NoneOfThese
    }
}

impl std::fmt::Display for CausalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} (d_AB = {:.3e}, d_BA = {:.3e})",
            self.order, self.distance_ab, self.distance_ba
        )
    }
}

/// Structural classification of any operator on `[A_I, A_O, B_I, B_O]`,
/// with no validity precondition.
pub fn classify_operator(w: &Operator, tol: f64) -> Result<CausalClass> {
    w.require_layout(&SpaceLayout::process())?;
    let distance_ab = a_before_b_map().apply(w)?.distance(w);
    let distance_ba = b_before_a_map().apply(w)?.distance(w);
    let order = match (distance_ab <= tol, distance_ba <= tol) {
        (true, true) => CausalOrder::AParallelB,
        (true, false) => CausalOrder::ABeforeB,
        (false, true) => CausalOrder::BBeforeA,
        (false, false) => CausalOrder::NoneOfThese,
    };
    Ok(CausalClass {
        order,
        distance_ab,
        distance_ba,
        tol,
    })
}

/// Classifies a validated process matrix.
pub fn classify_causal_order(w: &super::ProcessMatrix, tol: f64) -> CausalClass {
    classify_operator(w.op(), tol).expect("process layout is fixed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::PauliString;

    #[test]
    fn maps_are_projectors_onto_pauli_patterns() {
        let layout = SpaceLayout::process();
        for k in 0..256 {
            let s = PauliString::from_index(k, 4);
            let [_, beta, gamma, mu] = [s.0[0], s.0[1], s.0[2], s.0[3]];
            let ab = a_before_b_map().pauli_multiplier(&s, &layout).unwrap();
            let want_ab = mu == 0 && !(gamma == 0 && beta != 0);
            assert_eq!(ab, if want_ab { 1.0 } else { 0.0 }, "{s}");
            let alpha = s.0[0];
            let ba = b_before_a_map().pauli_multiplier(&s, &layout).unwrap();
            let want_ba = beta == 0 && !(alpha == 0 && mu != 0);
            assert_eq!(ba, if want_ba { 1.0 } else { 0.0 }, "{s}");
        }
    }

    #[test]
    fn maximally_mixed_is_parallel() {
        let w = Operator::identity(SpaceLayout::process()).scale(0.25);
        assert_eq!(
            classify_operator(&w, CAUSAL_TOL).unwrap().order,
            CausalOrder::AParallelB
        );
    }
}
