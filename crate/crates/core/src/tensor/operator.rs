use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::layout::SpaceLayout;
use crate::error::{Error, Result};

/// Tolerance on `|M - M^dag|_F` for an operator to count as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Shorthand for `Complex64::new`.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A dense square complex matrix acting on a labeled tensor-product space.
///
/// Most operators in this crate are Hermitian (process matrices, combs,
/// effects), but cross terms such as `F` or dyads `|a><b|` are not, so the
/// type itself does not enforce Hermiticity; [`Operator::hermitian`] does.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    layout: SpaceLayout,
    mat: CMatrix,
}

/// For every flat index: its index in the kept factor and in the dropped factor.
struct Split {
    kept: Vec<usize>,
    dropped: Vec<usize>,
    kept_dim: usize,
    dropped_dim: usize,
}

fn split(layout: &SpaceLayout, drop: &[&str]) -> Result<Split> {
    let mut is_dropped = vec![false; layout.len()];
    for label in drop {
        is_dropped[layout.position(label)?] = true;
    }
    let dims = layout.dims();
    let kept_dim: usize = dims
        .iter()
        .zip(&is_dropped)
        .filter(|(_, d)| !**d)
        .map(|(n, _)| n)
        .product();
    let dropped_dim = layout.total_dim() / kept_dim;
    let n = layout.total_dim();
    let mut kept = Vec::with_capacity(n);
    let mut dropped = Vec::with_capacity(n);
    for flat in 0..n {
        let digits = layout.digits(flat);
        let (mut k, mut d) = (0, 0);
        for ((digit, dim), drop) in digits.iter().zip(&dims).zip(&is_dropped) {
            if *drop {
                d = d * dim + digit;
            } else {
                k = k * dim + digit;
            }
        }
        kept.push(k);
        dropped.push(d);
    }
    Ok(Split {
        kept,
        dropped,
        kept_dim,
        dropped_dim,
    })
}

impl Operator {
    pub fn new(layout: SpaceLayout, mat: CMatrix) -> Result<Self> {
        let n = layout.total_dim();
        if mat.nrows() != n || mat.ncols() != n {
            return Err(Error::ShapeMismatch {
                rows: mat.nrows(),
                cols: mat.ncols(),
                expected: n,
            });
        }
        Ok(Self { layout, mat })
    }

    /// Like [`Operator::new`] but also checks Hermiticity.
    pub fn hermitian(layout: SpaceLayout, mat: CMatrix) -> Result<Self> {
        let op = Self::new(layout, mat)?;
        op.require_hermitian()?;
        Ok(op)
    }

    pub fn zeros(layout: SpaceLayout) -> Self {
        let n = layout.total_dim();
        Self {
            layout,
            mat: CMatrix::zeros(n, n),
        }
    }

    pub fn identity(layout: SpaceLayout) -> Self {
        let n = layout.total_dim();
        Self {
            layout,
            mat: CMatrix::identity(n, n),
        }
    }

    pub fn from_fn(layout: SpaceLayout, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let n = layout.total_dim();
        Self {
            layout,
            mat: CMatrix::from_fn(n, n, f),
        }
    }

    /// Real diagonal operator.
    pub fn diagonal(layout: SpaceLayout, diag: &[f64]) -> Result<Self> {
        let n = layout.total_dim();
        if diag.len() != n {
            return Err(Error::ShapeMismatch {
                rows: diag.len(),
                cols: diag.len(),
                expected: n,
            });
        }
        Ok(Self::from_fn(layout, |i, j| {
            if i == j {
                c(diag[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        }))
    }

    /// `|a><b|`.
    pub fn outer(layout: SpaceLayout, a: &CVector, b: &CVector) -> Result<Self> {
        Self::new(layout, a * b.adjoint())
    }

    /// `|v><v|`.
    pub fn projector(layout: SpaceLayout, v: &CVector) -> Result<Self> {
        Self::outer(layout, v, v)
    }

    /// `|i><j|` in the computational basis.
    pub fn basis_dyad(layout: SpaceLayout, i: usize, j: usize) -> Self {
        Self::from_fn(layout, |r, s| if r == i && s == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// Real part of the trace.
    pub fn trace_re(&self) -> f64 {
        self.mat.trace().re
    }

    pub fn adjoint(&self) -> Self {
        Self {
            layout: self.layout.clone(),
            mat: self.mat.adjoint(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_c(c(s, 0.0))
    }

    pub fn scale_c(&self, s: Complex64) -> Self {
        Self {
            layout: self.layout.clone(),
            mat: &self.mat * s,
        }
    }

    /// `(M + M^dag)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self {
            layout: self.layout.clone(),
            mat: (&self.mat + self.mat.adjoint()) * c(0.5, 0.0),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|self - other|_F`; layouts must agree.
    pub fn distance(&self, other: &Operator) -> f64 {
        assert_eq!(self.layout, other.layout, "layout mismatch");
        (&self.mat - &other.mat)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `|M - M^dag|_F`.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.mat - self.mat.adjoint())
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= HERMITICITY_TOL
    }

    pub fn require_hermitian(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(())
    }

    /// Hilbert–Schmidt inner product `tr(self^dag other)`.
    pub fn inner(&self, other: &Operator) -> Complex64 {
        assert_eq!(self.layout, other.layout, "layout mismatch");
        self.mat.iter().zip(other.mat.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    /// Matrix product; layouts must agree.
    pub fn compose(&self, other: &Operator) -> Operator {
        assert_eq!(self.layout, other.layout, "layout mismatch");
        Self {
            layout: self.layout.clone(),
            mat: &self.mat * &other.mat,
        }
    }

    /// `self ⊗ other` with concatenated layouts.
    pub fn kron(&self, other: &Operator) -> Result<Operator> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(Self {
            layout,
            mat: self.mat.kronecker(&other.mat),
        })
    }

    /// Partial trace over `drop`; the result keeps the remaining labels in order.
    pub fn partial_trace(&self, drop: &[&str]) -> Result<Operator> {
        let layout = self.layout.without(drop)?;
        let sp = split(&self.layout, drop)?;
        let n = self.dim();
        let mut out = CMatrix::zeros(sp.kept_dim, sp.kept_dim);
        for i in 0..n {
            for j in 0..n {
                if sp.dropped[i] == sp.dropped[j] {
                    out[(sp.kept[i], sp.kept[j])] += self.mat[(i, j)];
                }
            }
        }
        Ok(Self { layout, mat: out })
    }

    /// `(1_X / d_X) ⊗ tr_X(M)` for the set of labels `X`, re-inflated into the
    /// original layout and ordering. The empty set is the identity map.
    pub fn trace_and_replace(&self, labels: &[&str]) -> Result<Operator> {
        let sp = split(&self.layout, labels)?;
        let reduced = self.partial_trace(labels)?;
        let scale = 1.0 / sp.dropped_dim as f64;
        let n = self.dim();
        let mat = CMatrix::from_fn(n, n, |i, j| {
            if sp.dropped[i] == sp.dropped[j] {
                reduced.mat[(sp.kept[i], sp.kept[j])] * scale
            } else {
                c(0.0, 0.0)
            }
        });
        Ok(Self {
            layout: self.layout.clone(),
            mat,
        })
    }

    /// Reorders subsystems so that the labels appear in `order`, which must be
    /// a permutation of the current labels.
    pub fn permute(&self, order: &[&str]) -> Result<Operator> {
        if order.len() != self.layout.len() {
            return Err(Error::WrongLayout {
                expected: self.layout.to_string(),
                found: format!("{order:?}"),
            });
        }
        let source: Vec<usize> = order.iter().map(|l| self.layout.position(l)).collect::<Result<_>>()?;
        let new_layout = SpaceLayout::new(source.iter().map(|&k| {
            (
                self.layout.subsystems()[k].label.clone(),
                self.layout.subsystems()[k].dim,
            )
        }))?;
        let n = self.dim();
        // new flat index -> old flat index
        let map: Vec<usize> = (0..n)
            .map(|flat| {
                let new_digits = new_layout.digits(flat);
                let mut old = vec![0; new_digits.len()];
                for (pos, &k) in source.iter().enumerate() {
                    old[k] = new_digits[pos];
                }
                self.layout.flat(&old)
            })
            .collect();
        let mat = CMatrix::from_fn(n, n, |i, j| self.mat[(map[i], map[j])]);
        Ok(Self {
            layout: new_layout,
            mat,
        })
    }

    /// Reorders into the global canonical order `A_I, A_O, B_I, B_O, C_I`.
    pub fn canonicalize(&self) -> Operator {
        let canonical = self.layout.canonical();
        let labels: Vec<&str> = canonical.labels().collect();
        self.permute(&labels).expect("canonical order is a permutation")
    }

    /// Renames subsystems (e.g. swapping Alice and Bob); `mapping` pairs old
    /// label with new label. The result is canonicalized.
    pub fn relabel(&self, mapping: &[(&str, &str)]) -> Result<Operator> {
        let layout = SpaceLayout::new(self.layout.subsystems().iter().map(|s| {
            let label = mapping
                .iter()
                .find(|(from, _)| *from == s.label)
                .map(|(_, to)| to.to_string())
                .unwrap_or_else(|| s.label.clone());
            (label, s.dim)
        }))?;
        Ok(Self {
            layout,
            mat: self.mat.clone(),
        }
        .canonicalize())
    }

    /// `self ⊗ 1` on the labels of `target` that `self` lacks, reordered to `target`.
    pub fn embed(&self, target: &SpaceLayout) -> Result<Operator> {
        let missing: Vec<(String, usize)> = target
            .subsystems()
            .iter()
            .filter(|s| !self.layout.contains(&s.label))
            .map(|s| (s.label.clone(), s.dim))
            .collect();
        for s in self.layout.subsystems() {
            if target.dim_of(&s.label)? != s.dim {
                return Err(Error::WrongLayout {
                    expected: target.to_string(),
                    found: self.layout.to_string(),
                });
            }
        }
        let extended = self.kron(&Operator::identity(SpaceLayout::new(missing)?))?;
        let labels: Vec<&str> = target.labels().collect();
        extended.permute(&labels)
    }

    /// Fails unless the layout equals `expected`.
    pub fn require_layout(&self, expected: &SpaceLayout) -> Result<()> {
        if &self.layout != expected {
            return Err(Error::WrongLayout {
                expected: expected.to_string(),
                found: self.layout.to_string(),
            });
        }
        Ok(())
    }

    /// Hermitian eigendecomposition, eigenvalues ascending.
    pub fn eig_hermitian(&self) -> Result<super::eig::HermitianEigen> {
        super::eig::eig_hermitian(self)
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        super::eig::eigenvalues(&self.hermitian_part())[0]
    }

    /// Largest eigenvalue of the Hermitian part.
    pub fn max_eigenvalue(&self) -> f64 {
        *super::eig::eigenvalues(&self.hermitian_part())
            .last()
            .expect("non-empty")
    }

    /// Expectation `<v|M|v>`.
    pub fn expectation(&self, v: &CVector) -> Complex64 {
        (v.adjoint() * &self.mat * v)[(0, 0)]
    }

    /// Entry `(i, j)` in the flat computational basis.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }
}

impl Add<&Operator> for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.layout, rhs.layout, "layout mismatch");
        Operator {
            layout: self.layout.clone(),
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        &self + &rhs
    }
}

impl AddAssign<&Operator> for Operator {
    fn add_assign(&mut self, rhs: &Operator) {
        assert_eq!(self.layout, rhs.layout, "layout mismatch");
        self.mat += &rhs.mat;
    }
}

impl Sub<&Operator> for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.layout, rhs.layout, "layout mismatch");
        Operator {
            layout: self.layout.clone(),
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        &self - &rhs
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: f64) -> Operator {
        self.scale(rhs)
    }
}

impl Mul<f64> for Operator {
    type Output = Operator;
    fn mul(self, rhs: f64) -> Operator {
        self.scale(rhs)
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(-1.0)
    }
}

/// Wire form: `{layout: [[label, dim], ...], entries: [[re, im], ...]}`, row-major.
#[derive(Serialize, Deserialize)]
struct OperatorWire {
    layout: Vec<(String, usize)>,
    entries: Vec<[f64; 2]>,
}

impl Serialize for Operator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.mat[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        OperatorWire {
            layout: self
                .layout
                .subsystems()
                .iter()
                .map(|s| (s.label.clone(), s.dim))
                .collect(),
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Operator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = OperatorWire::deserialize(deserializer)?;
        let layout = SpaceLayout::new(wire.layout).map_err(D::Error::custom)?;
        let n = layout.total_dim();
        if wire.entries.len() != n * n {
            return Err(D::Error::custom(format!(
                "expected {} entries, got {}",
                n * n,
                wire.entries.len()
            )));
        }
        let mat = CMatrix::from_fn(n, n, |i, j| {
            let [re, im] = wire.entries[i * n + j];
            c(re, im)
        });
        Operator::new(layout, mat).map_err(D::Error::custom)
    }
}

/// Computational basis vector `|index>` of dimension `dim`.
pub fn basis_vector(dim: usize, index: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[index] = c(1.0, 0.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::layout::{A_I, A_O, B_I, B_O, C_I};
    use crate::tensor::pauli::single_qubit;

    fn z() -> Operator {
        Operator::new(SpaceLayout::qubits(&["a"]), single_qubit(3)).unwrap()
    }

    #[test]
    fn kron_identities() {
        let i2 = Operator::identity(SpaceLayout::qubits(&["a"]));
        let j2 = Operator::identity(SpaceLayout::qubits(&["b"]));
        let k = i2.kron(&j2).unwrap();
        assert_eq!(k.matrix(), &CMatrix::identity(4, 4));
    }

    #[test]
    fn kron_zz_is_parity_diagonal() {
        let zb = Operator::new(SpaceLayout::qubits(&["b"]), single_qubit(3)).unwrap();
        let k = z().kron(&zb).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| k.entry(i, i).re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn kron_label_collision() {
        assert!(matches!(z().kron(&z()), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn partial_trace_of_product() {
        let rho = Operator::hermitian(
            SpaceLayout::qubits(&["a"]),
            CMatrix::from_row_slice(2, 2, &[c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)]),
        )
        .unwrap();
        let zero = Operator::basis_dyad(SpaceLayout::qubits(&[C_I]), 0, 0);
        let joint = rho.kron(&zero).unwrap();
        let back = joint.partial_trace(&[C_I]).unwrap();
        assert!(back.distance(&rho) < 1e-15);
    }

    #[test]
    fn partial_trace_unknown_label() {
        assert!(matches!(z().partial_trace(&["nope"]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let mut v = CVector::zeros(4);
        v[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        v[3] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let phi = Operator::projector(SpaceLayout::qubits(&["a", "b"]), &v).unwrap();
        let marginal = phi.partial_trace(&["b"]).unwrap();
        let expected = Operator::identity(SpaceLayout::qubits(&["a"])).scale(0.5);
        assert!(marginal.distance(&expected) < 1e-15);
    }

    #[test]
    fn trace_and_replace_fixes_identity_and_kills_traceless() {
        let layout = SpaceLayout::process();
        let id = Operator::identity(layout.clone()).scale(0.25);
        assert!(id.trace_and_replace(&[A_O]).unwrap().distance(&id) < 1e-15);
        let z_ao = Operator::new(SpaceLayout::qubits(&[A_O]), single_qubit(3))
            .unwrap()
            .embed(&layout)
            .unwrap();
        assert!(z_ao.trace_and_replace(&[A_O]).unwrap().frobenius_norm() < 1e-15);
        assert!(z_ao.trace_and_replace(&[B_I]).unwrap().distance(&z_ao) < 1e-15);
    }

    #[test]
    fn permute_then_back() {
        let layout = SpaceLayout::qubits(&[A_I, A_O, B_I]);
        let op = Operator::from_fn(layout, |i, j| c((i * 8 + j) as f64, (i as f64) - (j as f64)));
        let p = op.permute(&[B_I, A_I, A_O]).unwrap();
        let back = p.permute(&[A_I, A_O, B_I]).unwrap();
        assert_eq!(back, op);
    }

    #[test]
    fn embed_places_factor_on_its_slot() {
        let layout = SpaceLayout::process();
        let zb = Operator::new(SpaceLayout::qubits(&[B_O]), single_qubit(3)).unwrap();
        let e = zb.embed(&layout).unwrap();
        // B_O is the least significant digit
        assert_eq!(e.entry(0, 0).re, 1.0);
        assert_eq!(e.entry(1, 1).re, -1.0);
        assert_eq!(e.entry(2, 2).re, 1.0);
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let layout = SpaceLayout::qubits(&[A_I, B_I]);
        let op = Operator::from_fn(layout, |i, j| c(1.0 / (1.0 + i as f64), (j as f64).sqrt()));
        let text = serde_json::to_string(&op).unwrap();
        let back: Operator = serde_json::from_str(&text).unwrap();
        assert!(back.distance(&op) <= 1e-15);
        assert_eq!(back.layout(), op.layout());
    }
}
