use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Alice's input space.
pub const A_I: &str = "A_I";
/// Alice's output space.
pub const A_O: &str = "A_O";
/// Bob's input space.
pub const B_I: &str = "B_I";
/// Bob's output space.
pub const B_O: &str = "B_O";
/// The conditioning system measured last.
pub const C_I: &str = "C_I";

/// Global subsystem order. Constructors and serializers normalize to it.
pub const CANONICAL_ORDER: [&str; 5] = [A_I, A_O, B_I, B_O, C_I];

/// A labeled tensor factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
}

/// Ordered list of labeled subsystems. The first subsystem is the most
/// significant digit of the flat index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceLayout {
    subsystems: Vec<Subsystem>,
}

impl SpaceLayout {
    pub fn new<S: Into<String>>(subsystems: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let subsystems: Vec<Subsystem> = subsystems
            .into_iter()
            .map(|(label, dim)| Subsystem {
                label: label.into(),
                dim,
            })
            .collect();
        for (k, s) in subsystems.iter().enumerate() {
            if s.dim == 0 {
                return Err(Error::InvalidDimension {
                    label: s.label.clone(),
                    dim: s.dim,
                });
            }
            if subsystems[..k].iter().any(|t| t.label == s.label) {
                return Err(Error::DuplicateLabel(s.label.clone()));
            }
        }
        Ok(Self { subsystems })
    }

    /// The empty layout (a scalar).
    pub fn scalar() -> Self {
        Self { subsystems: Vec::new() }
    }

    /// `[A_I, A_O, B_I, B_O]`, all qubits.
    pub fn process() -> Self {
        Self::qubits(&[A_I, A_O, B_I, B_O])
    }

    /// `[A_I, A_O, B_I, B_O, C_I]` with a conditioning system of dimension `c_dim`.
    pub fn comb(c_dim: usize) -> Self {
        let mut layout = Self::process();
        layout.subsystems.push(Subsystem {
            label: C_I.to_string(),
            dim: c_dim,
        });
        layout
    }

    /// Layout made of qubits with the given labels.
    pub fn qubits(labels: &[&str]) -> Self {
        Self::new(labels.iter().map(|l| (*l, 2))).expect("static labels are unique")
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.subsystems.iter().map(|s| s.label.as_str())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subsystems.iter().map(|s| s.dim).collect()
    }

    /// Total Hilbert-space dimension.
    pub fn total_dim(&self) -> usize {
        self.subsystems.iter().map(|s| s.dim).product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.subsystems
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.subsystems.iter().any(|s| s.label == label)
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.subsystems[self.position(label)?].dim)
    }

    /// Concatenation of two layouts; fails on a label collision.
    pub fn concat(&self, other: &SpaceLayout) -> Result<Self> {
        Self::new(
            self.subsystems
                .iter()
                .chain(other.subsystems.iter())
                .map(|s| (s.label.clone(), s.dim)),
        )
    }

    /// Layout without the given labels, preserving order.
    pub fn without(&self, drop: &[&str]) -> Result<Self> {
        for label in drop {
            self.position(label)?;
        }
        Ok(Self {
            subsystems: self
                .subsystems
                .iter()
                .filter(|s| !drop.contains(&s.label.as_str()))
                .cloned()
                .collect(),
        })
    }

    /// True when every subsystem is a qubit.
    pub fn is_qubit(&self) -> bool {
        self.subsystems.iter().all(|s| s.dim == 2)
    }

    /// Fails unless every subsystem is a qubit.
    pub fn require_qubits(&self) -> Result<()> {
        match self.subsystems.iter().find(|s| s.dim != 2) {
            Some(s) => Err(Error::NonQubit {
                label: s.label.clone(),
                dim: s.dim,
            }),
            None => Ok(()),
        }
    }

    /// The same subsystems sorted into [`CANONICAL_ORDER`]; unknown labels keep
    /// their relative order after the canonical ones.
    pub fn canonical(&self) -> Self {
        let rank = |label: &str| {
            CANONICAL_ORDER
                .iter()
                .position(|c| *c == label)
                .unwrap_or(CANONICAL_ORDER.len())
        };
        let mut subsystems = self.subsystems.clone();
        subsystems.sort_by_key(|s| rank(&s.label));
        Self { subsystems }
    }

    /// Digits of a flat index, most significant subsystem first.
    pub fn digits(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.subsystems.len()];
        for (k, s) in self.subsystems.iter().enumerate().rev() {
            out[k] = flat % s.dim;
            flat /= s.dim;
        }
        out
    }

    /// Flat index of a digit tuple.
    pub fn flat(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.subsystems)
            .fold(0, |acc, (d, s)| acc * s.dim + d)
    }
}

impl std::fmt::Display for SpaceLayout {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (k, s) in self.subsystems.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", s.label, s.dim)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_dimension_is_product() {
        let l = SpaceLayout::new([("a", 2), ("b", 3), ("c", 2)]).unwrap();
        assert_eq!(l.total_dim(), 12);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(matches!(
            SpaceLayout::new([("a", 2), ("a", 2)]),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn digits_roundtrip() {
        let l = SpaceLayout::new([("a", 2), ("b", 3), ("c", 2)]).unwrap();
        for flat in 0..12 {
            assert_eq!(l.flat(&l.digits(flat)), flat);
        }
        // big-endian: first subsystem is most significant
        assert_eq!(l.digits(6), vec![1, 0, 0]);
    }

    #[test]
    fn canonical_sorts_known_labels() {
        let l = SpaceLayout::qubits(&[C_I, B_O, A_I, A_O, B_I]);
        let labels: Vec<_> = l.canonical().labels().map(str::to_string).collect();
        assert_eq!(labels, vec![A_I, A_O, B_I, B_O, C_I]);
    }
}
