use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigenbasis::{eigenbasis_ocb, OcbEigenbasis};
use crate::process::forbidden_strings;
use crate::tensor::{c, CMatrix, Operator, SpaceLayout};
use crate::{Error, Result};

/// Slack on the positivity bound `N + √(N² - 4|P|²) ≤ 1/8`.
pub const BOUND_TOL: f64 = 1e-12;

/// Which free parameter a coefficient copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Free {
    C11,
    C15,
    C51,
}

/// `c_ij = sign · free`, with `i, j` 1-based.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Relation {
    pub i: usize,
    pub j: usize,
    pub source: Free,
    pub sign: f64,
}

const fn rel(i: usize, j: usize, source: Free, sign: f64) -> Relation {
    Relation { i, j, source, sign }
}

/// The twelve dependent coefficients listed alongside the free parameters.
pub const LISTED_RELATIONS: [Relation; 12] = [
    rel(2, 2, Free::C11, -1.0),
    rel(2, 6, Free::C15, -1.0),
    rel(3, 7, Free::C15, 1.0),
    rel(4, 4, Free::C11, -1.0),
    rel(4, 8, Free::C15, -1.0),
    rel(5, 5, Free::C11, -1.0),
    rel(6, 2, Free::C51, -1.0),
    rel(6, 6, Free::C11, 1.0),
    rel(7, 3, Free::C51, 1.0),
    rel(7, 7, Free::C11, -1.0),
    rel(8, 4, Free::C51, -1.0),
    rel(8, 8, Free::C11, 1.0),
];

/// A thirteenth relation the nullspace also enforces but the list omits.
pub const OMITTED_RELATION: Relation = rel(3, 3, Free::C11, 1.0);

/// Every nonzero coefficient: the three free ones and the thirteen relations.
pub fn all_relations() -> Vec<Relation> {
    let mut out = vec![
        rel(1, 1, Free::C11, 1.0),
        rel(1, 5, Free::C15, 1.0),
        rel(5, 1, Free::C51, 1.0),
    ];
    out.extend(LISTED_RELATIONS);
    out.push(OMITTED_RELATION);
    out
}

/// Position of `c_ij` (1-based) in the flattened 64-vector.
pub fn dyad_index(i: usize, j: usize) -> usize {
    (i - 1) * 8 + (j - 1)
}

/// `r^Γ_ij = tr(σ^Γ |Ψ_i><Ψ⊥_j|) = <Ψ⊥_j|σ^Γ|Ψ_i>` for the 168 forbidden strings.
pub fn r_matrix(basis: &OcbEigenbasis) -> CMatrix {
    let strings = forbidden_strings();
    let mut r = CMatrix::zeros(strings.len(), 64);
    for (g, s) in strings.iter().enumerate() {
        let sigma = s.matrix();
        for i in 1..=8 {
            let image = &sigma * &basis.psi[i - 1];
            for j in 1..=8 {
                r[(g, dyad_index(i, j))] = basis.perp[j - 1].dotc(&image);
            }
        }
    }
    r
}

/// Nullspace of the coefficient system expressed in the free coordinates.
#[derive(Clone, Debug)]
pub struct NullspaceSolution {
    /// Singular values of the 168×64 system, descending.
    pub singular_values: Vec<f64>,
    pub dimension: usize,
    /// 64×3; column `k` is the nullspace vector with free coordinates
    /// `(c11, c15, c51) = e_k`.
    pub basis: CMatrix,
    /// Largest deviation from [`LISTED_RELATIONS`] over the basis columns.
    pub listed_residual: f64,
    /// Deviation from [`OMITTED_RELATION`].
    pub omitted_residual: f64,
    /// Largest coefficient outside the sixteen expected positions.
    pub spurious_residual: f64,
}

impl NullspaceSolution {
    pub fn coefficient(&self, i: usize, j: usize, free: Free) -> Complex64 {
        self.basis[(dyad_index(i, j), free as usize)]
    }
}

/// Solves `Σ_ij c_ij r^Γ_ij = 0`, checks the dimension is 3, pins the free
/// coordinates at `c11, c15, c51` and checks the relations.
pub fn solve_coefficient_nullspace() -> Result<NullspaceSolution> {
    let basis = eigenbasis_ocb();
    let r = r_matrix(&basis);
    let svd = r.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let singular_values: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let scale = singular_values[0];
    let null_rows: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&k| svd.singular_values[k] <= 1e-10 * scale)
        .collect();
    let dimension = null_rows.len();
    if dimension != 3 {
        return Err(Error::Nullspace(format!(
            "nullspace has dimension {dimension}, expected 3; check eigenvector ordering and phases"
        )));
    }
    // columns: conjugate rows of V^dag
    let null = CMatrix::from_fn(64, 3, |row, k| v_t[(null_rows[k], row)].conj());
    let pins = [dyad_index(1, 1), dyad_index(1, 5), dyad_index(5, 1)];
    let m = CMatrix::from_fn(3, 3, |r, k| null[(pins[r], k)]);
    let inv = m
        .try_inverse()
        .ok_or_else(|| Error::Nullspace("free coordinates c11, c15, c51 are not independent".into()))?;
    let pinned = &null * inv;

    let deviation = |rel: &Relation| -> f64 {
        (0..3)
            .map(|k| {
                let want = if rel.source as usize == k { rel.sign } else { 0.0 };
                (pinned[(dyad_index(rel.i, rel.j), k)] - c(want, 0.0)).norm()
            })
            .fold(0.0, f64::max)
    };
    let listed_residual = LISTED_RELATIONS.iter().map(deviation).fold(0.0, f64::max);
    let omitted_residual = deviation(&OMITTED_RELATION);
    let expected: Vec<usize> = all_relations().iter().map(|r| dyad_index(r.i, r.j)).collect();
    let spurious_residual = (0..64)
        .filter(|k| !expected.contains(k))
        .flat_map(|k| (0..3).map(move |f| (k, f)))
        .map(|(k, f)| pinned[(k, f)].norm())
        .fold(0.0, f64::max);
    Ok(NullspaceSolution {
        singular_values,
        dimension,
        basis: pinned,
        listed_residual,
        omitted_residual,
        spurious_residual,
    })
}

/// The three free complex parameters of the coherent cross term `F`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FCoefficients {
    pub c11: Complex64,
    pub c15: Complex64,
    pub c51: Complex64,
}

impl FCoefficients {
    pub fn new(c11: Complex64, c15: Complex64, c51: Complex64) -> Self {
        Self { c11, c15, c51 }
    }

    pub fn real(c11: f64, c15: f64, c51: f64) -> Self {
        Self::new(c(c11, 0.0), c(c15, 0.0), c(c51, 0.0))
    }

    pub fn zero() -> Self {
        Self::real(0.0, 0.0, 0.0)
    }

    /// Named presets: `zero`, `quarter`, `uniform`, `star`.
    pub fn preset(name: &str) -> Result<Self> {
        let u = 1.0 / (4.0 * SQRT_2);
        match name {
            "zero" => Ok(Self::zero()),
            "quarter" => Ok(Self::real(0.25, 0.0, 0.0)),
            "uniform" => Ok(Self::real(u, u, u)),
            "star" => Ok(Self::real(0.125, -0.125, 0.125)),
            other => Err(Error::Parse(format!(
                "unknown preset `{other}` (expected zero, quarter, uniform or star)"
            ))),
        }
    }

    pub const PRESETS: [&'static str; 4] = ["zero", "quarter", "uniform", "star"];

    fn free(&self, f: Free) -> Complex64 {
        match f {
            Free::C11 => self.c11,
            Free::C15 => self.c15,
            Free::C51 => self.c51,
        }
    }

    /// The full 8×8 table `c_ij`.
    pub fn matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(8, 8);
        for r in all_relations() {
            m[(r.i - 1, r.j - 1)] = self.free(r.source) * r.sign;
        }
        m
    }

    /// `N = 2|c11|² + |c15|² + |c51|²`.
    pub fn n(&self) -> f64 {
        2.0 * self.c11.norm_sqr() + self.c15.norm_sqr() + self.c51.norm_sqr()
    }

    /// `P = c11² + c15·c51`.
    pub fn p(&self) -> Complex64 {
        self.c11 * self.c11 + self.c15 * self.c51
    }

    /// `N + √(N² - 4|P|²)`; `Υ^F ⪰ 0` iff this is at most 1/8.
    pub fn positivity_measure(&self) -> f64 {
        let n = self.n();
        n + (n * n - 4.0 * self.p().norm_sqr()).max(0.0).sqrt()
    }

    pub fn within_bound(&self) -> bool {
        self.positivity_measure() <= 0.125 + BOUND_TOL
    }

    pub fn require_bound(&self) -> Result<()> {
        if !self.within_bound() {
            return Err(Error::PositivityBound(self.positivity_measure()));
        }
        Ok(())
    }

    /// `¼ - √(N + √(N² - 4|P|²)) / √2`, the smallest eigenvalue of `Υ^F` on
    /// the sector `span{|Ψ_i>|0>, |Ψ⊥_j>|1>}` it acts on.
    pub fn lambda_min_bound(&self) -> f64 {
        0.25 - (self.positivity_measure() / 2.0).sqrt()
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self::new(self.c11 * t, self.c15 * t, self.c51 * t)
    }

    /// Largest `t` with `t·self` inside the bound.
    pub fn max_scale(&self) -> f64 {
        let m = self.positivity_measure();
        if m == 0.0 {
            f64::INFINITY
        } else {
            (0.125 / m).sqrt()
        }
    }

    /// `F = Σ c_ij |Ψ_i><Ψ⊥_j|`.
    pub fn f_operator(&self) -> Operator {
        let basis = eigenbasis_ocb();
        let m = self.matrix();
        let mut f = CMatrix::zeros(16, 16);
        for i in 0..8 {
            for j in 0..8 {
                if m[(i, j)].norm() > 0.0 {
                    f += &basis.psi[i] * basis.perp[j].adjoint() * m[(i, j)];
                }
            }
        }
        Operator::new(SpaceLayout::process(), f).expect("16x16")
    }

    /// `[re c11, im c11, re c15, im c15, re c51, im c51]`.
    pub fn to_reals(&self) -> [f64; 6] {
        [
            self.c11.re,
            self.c11.im,
            self.c15.re,
            self.c15.im,
            self.c51.re,
            self.c51.im,
        ]
    }

    pub fn from_reals(x: [f64; 6]) -> Self {
        Self::new(c(x[0], x[1]), c(x[2], x[3]), c(x[4], x[5]))
    }
}

impl Serialize for FCoefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_reals().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FCoefficients {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Self::from_reals(<[f64; 6]>::deserialize(d)?))
    }
}

impl std::fmt::Display for FCoefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |z: Complex64| {
            if z.im == 0.0 {
                format!("{}", z.re)
            } else {
                format!("{}{:+}i", z.re, z.im)
            }
        };
        write!(f, "{{{}, {}, {}}}", show(self.c11), show(self.c15), show(self.c51))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::forbidden_term_check;

    #[test]
    fn nullspace_matches_relations() {
        let sol = solve_coefficient_nullspace().unwrap();
        assert_eq!(sol.dimension, 3);
        assert!(sol.listed_residual < 1e-9, "{}", sol.listed_residual);
        assert!(sol.omitted_residual < 1e-9, "{}", sol.omitted_residual);
        assert!(sol.spurious_residual < 1e-9, "{}", sol.spurious_residual);
        assert!(sol.coefficient(1, 2, Free::C11).norm() < 1e-9);
    }

    #[test]
    fn f_has_no_forbidden_terms_and_is_traceless() {
        let f = FCoefficients::new(c(0.03, 0.01), c(-0.02, 0.04), c(0.05, -0.01)).f_operator();
        assert!(f.trace().norm() < 1e-14);
        // real and imaginary Hermitian parts separately
        let re = f.hermitian_part();
        let im = (&f - &f.adjoint()).scale_c(c(0.0, -0.5));
        assert!(forbidden_term_check(&re, 1e-12).unwrap().0);
        assert!(forbidden_term_check(&im, 1e-12).unwrap().0);
    }

    #[test]
    fn presets_and_bounds() {
        assert_eq!(FCoefficients::preset("zero").unwrap().lambda_min_bound(), 0.25);
        for name in ["quarter", "uniform", "star"] {
            let cf = FCoefficients::preset(name).unwrap();
            assert!(cf.lambda_min_bound().abs() < 1e-12, "{name}");
            assert!(cf.within_bound());
        }
        assert!(!FCoefficients::real(0.26, 0.0, 0.0).within_bound());
        assert!(FCoefficients::preset("bogus").is_err());
    }

    #[test]
    fn reals_roundtrip() {
        let cf = FCoefficients::new(c(0.1, -0.2), c(0.3, 0.0), c(-0.05, 0.07));
        let text = serde_json::to_string(&cf).unwrap();
        assert_eq!(text, "[0.1,-0.2,0.3,0.0,-0.05,0.07]");
        assert_eq!(serde_json::from_str::<FCoefficients>(&text).unwrap(), cf);
    }
}
