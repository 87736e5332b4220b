use serde::{Deserialize, Serialize};

use super::causal::{classify_operator, CausalClass, CausalOrder, CAUSAL_TOL};
use super::validity::{validity_report, ValidityReport, VALIDITY_TOL};
use crate::tensor::{Operator, SpaceLayout, C_I};
use crate::{Error, Result};

/// A validated two-party process matrix on `[A_I, A_O, B_I, B_O]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessMatrix {
    op: Operator,
}

impl ProcessMatrix {
    /// Canonicalizes the subsystem order and validates.
    pub fn new(op: Operator) -> Result<Self> {
        let op = op.canonicalize();
        op.require_layout(&SpaceLayout::process())?;
        let report = validity_report(&op, VALIDITY_TOL);
        if !report.is_valid() {
            return Err(Error::InvalidProcess(report.failures()));
        }
        Ok(Self { op })
    }

    /// Rescales to trace 4 before validating.
    pub fn normalized(op: Operator) -> Result<Self> {
        let tr = op.trace_re();
        if tr.abs() < 1e-15 {
            return Err(Error::InvalidProcess("zero trace".into()));
        }
        Self::new(op.scale(super::validity::PROCESS_TRACE / tr))
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn into_op(self) -> Operator {
        self.op
    }

    pub fn validity(&self) -> ValidityReport {
        validity_report(&self.op, VALIDITY_TOL)
    }

    pub fn classify(&self) -> CausalClass {
        super::causal::classify_causal_order(self, CAUSAL_TOL)
    }

    /// Swaps Alice and Bob.
    pub fn mirror(&self) -> ProcessMatrix {
        use crate::tensor::{A_I, A_O, B_I, B_O};
        let op = self
            .op
            .relabel(&[(A_I, B_I), (A_O, B_O), (B_I, A_I), (B_O, A_O)])
            .expect("relabeling is a bijection");
        Self { op }
    }
}

/// Causal order declared for the `A`, `B` part of a comb; the conditioning
/// system always comes last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombOrder {
    AThenBThenC,
    BThenAThenC,
    AParallelBThenC,
}

impl CombOrder {
    fn admits(self, class: &CausalClass) -> bool {
        match self {
            CombOrder::AThenBThenC => class.is_a_before_b(),
            CombOrder::BThenAThenC => class.is_b_before_a(),
            CombOrder::AParallelBThenC => class.order == CausalOrder::AParallelB,
        }
    }
}

impl std::fmt::Display for CombOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CombOrder::AThenBThenC => "A≺B≺C",
            CombOrder::BThenAThenC => "B≺A≺C",
            CombOrder::AParallelBThenC => "A∥B≺C",
        })
    }
}

/// A validated comb on `[A_I, A_O, B_I, B_O, C_I]`.
///
/// Validity means `Υ ⪰ 0` and that `tr_{C_I} Υ` is a valid process matrix
/// of the declared order.
#[derive(Clone, Debug, PartialEq)]
pub struct Comb {
    op: Operator,
    declared_order: CombOrder,
}

impl Comb {
    pub fn new(op: Operator, declared_order: CombOrder) -> Result<Self> {
        let op = op.canonicalize();
        let c_dim = op
            .layout()
            .dim_of(C_I)
            .map_err(|_| Error::InvalidComb("missing C_I".into()))?;
        op.require_layout(&SpaceLayout::comb(c_dim))?;
        op.require_hermitian()?;
        let min = op.min_eigenvalue();
        if min < -VALIDITY_TOL {
            return Err(Error::InvalidComb(format!("min eigenvalue {min:.3e}")));
        }
        let marginal = op.partial_trace(&[C_I])?;
        let report = validity_report(&marginal, VALIDITY_TOL);
        if !report.is_valid() {
            return Err(Error::InvalidComb(format!(
                "marginal is not a process: {}",
                report.failures()
            )));
        }
        let class = classify_operator(&marginal, CAUSAL_TOL)?;
        if !declared_order.admits(&class) {
            return Err(Error::InvalidComb(format!(
                "declared {declared_order} but marginal is {class}"
            )));
        }
        Ok(Self { op, declared_order })
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn declared_order(&self) -> CombOrder {
        self.declared_order
    }

    pub fn c_dim(&self) -> usize {
        self.op.layout().dim_of(C_I).expect("validated")
    }

    /// `tr_{C_I} Υ`.
    pub fn marginal(&self) -> ProcessMatrix {
        ProcessMatrix::new(self.op.partial_trace(&[C_I]).expect("validated")).expect("validated marginal")
    }

    /// Block `<i|Υ|j>` on `C_I`, an operator on `A B`.
    pub fn block(&self, i: usize, j: usize) -> Operator {
        let n = self.c_dim();
        let layout = SpaceLayout::process();
        Operator::from_fn(layout, |r, s| self.op.entry(r * n + i, s * n + j))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Wire {
    Process {
        #[serde(flatten)]
        op: Operator,
    },
    Comb {
        declared_order: CombOrder,
        #[serde(flatten)]
        op: Operator,
    },
}

impl Serialize for ProcessMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire::Process { op: self.op.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProcessMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match Wire::deserialize(d)? {
            Wire::Process { op } => ProcessMatrix::new(op).map_err(D::Error::custom),
            Wire::Comb { .. } => Err(D::Error::custom("expected kind `process`, got `comb`")),
        }
    }
}

impl Serialize for Comb {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire::Comb {
            declared_order: self.declared_order,
            op: self.op.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Comb {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match Wire::deserialize(d)? {
            Wire::Comb { declared_order, op } => Comb::new(op, declared_order).map_err(D::Error::custom),
            Wire::Process { .. } => Err(D::Error::custom("expected kind `comb`, got `process`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn process_json_roundtrip() {
        let w = ProcessMatrix::new(Operator::identity(SpaceLayout::process()).scale(0.25)).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        assert!(text.contains("\"kind\":\"process\""));
        let back: ProcessMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<Comb>(&text).is_err());
    }

    #[test]
    fn unnormalized_rejected() {
        let op = Operator::identity(SpaceLayout::process());
        assert!(matches!(ProcessMatrix::new(op.clone()), Err(Error::InvalidProcess(_))));
        assert!(ProcessMatrix::normalized(op).is_ok());
    }

    #[test]
    fn block_extraction() {
        let w = Operator::identity(SpaceLayout::process()).scale(0.25);
        let zero = Operator::basis_dyad(SpaceLayout::qubits(&[C_I]), 0, 0);
        let comb = Comb::new(w.kron(&zero).unwrap(), CombOrder::AParallelBThenC).unwrap();
        assert!(comb.block(0, 0).distance(&w) < 1e-15);
        assert!(comb.block(1, 1).frobenius_norm() < 1e-15);
        assert!(comb.block(0, 1).frobenius_norm() < 1e-15);
    }
}
