//! Pauli-basis expansion of operators on qubit layouts.
//!
//! Coefficients follow `w_s = tr(M P_s) / 2^n`, so that `M = Σ_s w_s P_s`.
//! For a process matrix normalized to `tr W = d_{A_O} d_{B_O} = 4` this gives
//! `w_0000 = 1/4`; the alternative `w_0000 = 1/(d_{A_I} d_{A_O})` reading is
//! the same number for qubits.

use num_complex::Complex64;

use super::layout::SpaceLayout;
use super::operator::{c, CMatrix, Operator};
use crate::error::{Error, Result};

/// Single-qubit Pauli matrix: 0 = identity, 1 = x, 2 = y, 3 = z.
pub fn single_qubit(index: u8) -> CMatrix {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match index {
        0 => CMatrix::from_row_slice(2, 2, &[l, o, o, l]),
        1 => CMatrix::from_row_slice(2, 2, &[o, l, l, o]),
        2 => CMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        3 => CMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        _ => panic!("Pauli index {index} out of range"),
    }
}

/// A tensor product of single-qubit Paulis, one letter per subsystem.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString(pub Vec<u8>);

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Decodes a base-4 index (first subsystem most significant).
    pub fn from_index(mut index: usize, n: usize) -> Self {
        let mut letters = vec![0u8; n];
        for slot in letters.iter_mut().rev() {
            *slot = (index % 4) as u8;
            index /= 4;
        }
        Self(letters)
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &p| acc * 4 + p as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positions carrying a non-identity Pauli.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != 0)
            .map(|(k, _)| k)
            .collect()
    }

    /// Parses strings like `"0zz0"` or `"IXYZ"`.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(|ch| match ch.to_ascii_lowercase() {
                '0' | 'i' => Ok(0),
                '1' | 'x' => Ok(1),
                '2' | 'y' => Ok(2),
                '3' | 'z' => Ok(3),
                other => Err(Error::Parse(format!("bad Pauli letter `{other}`"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Self)
    }

    /// Dense matrix of the string.
    pub fn matrix(&self) -> CMatrix {
        self.0
            .iter()
            .fold(CMatrix::identity(1, 1), |acc, &p| acc.kronecker(&single_qubit(p)))
    }

    /// The string as an operator on `layout` (which must have matching length).
    pub fn operator(&self, layout: &SpaceLayout) -> Result<Operator> {
        layout.require_qubits()?;
        if layout.len() != self.len() {
            return Err(Error::WrongLayout {
                expected: layout.to_string(),
                found: self.to_string(),
            });
        }
        Operator::new(layout.clone(), self.matrix())
    }

    /// Monomial action: column index and phase of the single nonzero entry in
    /// row `row`, i.e. `P[row, col] = phase`.
    pub(crate) fn row_entry(&self, row: usize) -> (usize, Complex64) {
        let n = self.0.len();
        let mut col = 0usize;
        let mut phase = c(1.0, 0.0);
        for (k, &p) in self.0.iter().enumerate() {
            let bit = (row >> (n - 1 - k)) & 1;
            let (cbit, ph) = match p {
                0 => (bit, c(1.0, 0.0)),
                1 => (bit ^ 1, c(1.0, 0.0)),
                // Y = [[0, -i], [i, 0]]
                2 => (bit ^ 1, if bit == 0 { c(0.0, -1.0) } else { c(0.0, 1.0) }),
                3 => (bit, if bit == 0 { c(1.0, 0.0) } else { c(-1.0, 0.0) }),
                _ => unreachable!(),
            };
            col = (col << 1) | cbit;
            phase *= ph;
        }
        (col, phase)
    }

    /// `tr(M P)` without forming `P`.
    pub fn trace_with(&self, m: &CMatrix) -> Complex64 {
        // tr(M P) = Σ_r Σ_s M[s, r] P[r, s]
        (0..m.nrows())
            .map(|r| {
                let (s, ph) = self.row_entry(r);
                m[(s, r)] * ph
            })
            .sum()
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &p in &self.0 {
            write!(f, "{}", ['0', 'x', 'y', 'z'][p as usize])?;
        }
        Ok(())
    }
}

/// Coefficients `w_s` of an operator in the Pauli basis, indexed by the
/// base-4 value of the string.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliCoefficients {
    layout: SpaceLayout,
    coeffs: Vec<Complex64>,
}

impl PauliCoefficients {
    /// Wraps `4^n` coefficients indexed by string value.
    pub fn from_vec(layout: &SpaceLayout, coeffs: Vec<Complex64>) -> Result<Self> {
        layout.require_qubits()?;
        let expected = 4usize.pow(layout.len() as u32);
        if coeffs.len() != expected {
            return Err(Error::Parse(format!(
                "{} coefficients for {expected} strings",
                coeffs.len()
            )));
        }
        Ok(Self {
            layout: layout.clone(),
            coeffs,
        })
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn n_qubits(&self) -> usize {
        self.layout.len()
    }

    pub fn get(&self, s: &PauliString) -> Complex64 {
        self.coeffs[s.index()]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn iter(&self) -> impl Iterator<Item = (PauliString, Complex64)> + '_ {
        let n = self.n_qubits();
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, w)| (PauliString::from_index(k, n), *w))
    }

    /// Strings whose coefficient exceeds `tol` in modulus.
    pub fn nonzero(&self, tol: f64) -> Vec<(PauliString, Complex64)> {
        self.iter().filter(|(_, w)| w.norm() > tol).collect()
    }

    /// Largest imaginary part in modulus; zero for Hermitian input.
    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|w| w.im.abs()).fold(0.0, f64::max)
    }
}

/// `w_s = tr(M P_s)/2^n` for every Pauli string `s`.
pub fn pauli_expand(m: &Operator) -> Result<PauliCoefficients> {
    let layout = m.layout().clone();
    layout.require_qubits()?;
    let n = layout.len();
    let norm = (1usize << n) as f64;
    let coeffs = (0..4usize.pow(n as u32))
        .map(|k| PauliString::from_index(k, n).trace_with(m.matrix()) / norm)
        .collect();
    Ok(PauliCoefficients { layout, coeffs })
}

/// `Σ_s w_s P_s`.
pub fn pauli_assemble(coeffs: &PauliCoefficients) -> Operator {
    let n = coeffs.n_qubits();
    let dim = 1usize << n;
    let mut mat = CMatrix::zeros(dim, dim);
    for (s, w) in coeffs.iter() {
        if w == c(0.0, 0.0) {
            continue;
        }
        for r in 0..dim {
            let (col, ph) = s.row_entry(r);
            mat[(r, col)] += w * ph;
        }
    }
    Operator::new(coeffs.layout.clone(), mat).expect("dimension from layout")
}

/// Builds coefficients from explicit `(string, value)` pairs.
pub fn pauli_from_terms(layout: &SpaceLayout, terms: &[(&str, f64)]) -> Result<PauliCoefficients> {
    layout.require_qubits()?;
    let n = layout.len();
    let mut coeffs = vec![c(0.0, 0.0); 4usize.pow(n as u32)];
    for (text, w) in terms {
        let s = PauliString::parse(text)?;
        if s.len() != n {
            return Err(Error::Parse(format!(
                "`{text}` has {} letters, layout has {n}",
                s.len()
            )));
        }
        coeffs[s.index()] += c(*w, 0.0);
    }
    Ok(PauliCoefficients {
        layout: layout.clone(),
        coeffs,
    })
}

/// Operator `Σ w P` from explicit terms, e.g. `[("0000", 0.25), ("0zz0", 0.1)]`.
pub fn pauli_operator(layout: &SpaceLayout, terms: &[(&str, f64)]) -> Result<Operator> {
    Ok(pauli_assemble(&pauli_from_terms(layout, terms)?))
}
