use super::layout::SpaceLayout;
use super::operator::Operator;
use super::pauli::PauliString;
use crate::error::Result;

/// A real linear combination of trace-and-replace maps, `Σ_k a_k · _{X_k}`.
///
/// Every such map is diagonal in the Pauli basis: `_X P` is `P` when the
/// string acts trivially on `X` and zero otherwise.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReplaceMap {
    terms: Vec<(f64, Vec<String>)>,
}

impl ReplaceMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// The identity map (trace-and-replace over nothing).
    pub fn identity() -> Self {
        Self::new().plus(1.0, &[])
    }

    /// A single `_X`.
    pub fn single(labels: &[&str]) -> Self {
        Self::new().plus(1.0, labels)
    }

    /// Adds `coeff · _X`.
    pub fn plus(mut self, coeff: f64, labels: &[&str]) -> Self {
        self.terms.push((coeff, labels.iter().map(|s| s.to_string()).collect()));
        self
    }

    /// `self - other`.
    pub fn minus(mut self, other: &ReplaceMap) -> Self {
        self.terms.extend(other.terms.iter().map(|(a, x)| (-a, x.clone())));
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (f64, Vec<&str>)> + '_ {
        self.terms
            .iter()
            .map(|(a, x)| (*a, x.iter().map(String::as_str).collect()))
    }

    pub fn apply(&self, op: &Operator) -> Result<Operator> {
        let mut out = Operator::zeros(op.layout().clone());
        for (a, labels) in self.terms() {
            out += &op.trace_and_replace(&labels)?.scale(a);
        }
        Ok(out)
    }

    /// Eigenvalue of the map on the Pauli string `s` over `layout`.
    pub fn pauli_multiplier(&self, s: &PauliString, layout: &SpaceLayout) -> Result<f64> {
        let mut total = 0.0;
        for (a, labels) in self.terms() {
            let mut survives = true;
            for label in labels {
                if s.0[layout.position(label)?] != 0 {
                    survives = false;
                    break;
                }
            }
            if survives {
                total += a;
            }
        }
        Ok(total)
    }
}
