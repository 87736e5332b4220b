//! Covering the `(q, ϑ)` plane with optimal witnesses built at anchor points.

use rayon::prelude::*;
use serde::Serialize;

use super::config::grid_points;
use super::sweep::worker_pool;
use crate::conditioning::{conditioned_w_with, FCoefficients};
use crate::error::{Error, Result};
use crate::process::{w_ocb, w_sharp};
use crate::sdp::{witness_of, ConicSolver, Witness};
use crate::tensor::Operator;

/// A cell counts as detected when `tr(S W) < -COVER_TOL`.
pub const COVER_TOL: f64 = 1e-9;

const ANCHORS: &str = include_str!("../../data/anchors.csv");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Anchor {
    pub label: String,
    pub q: f64,
    pub theta: f64,
}

/// Parses `label,q,theta` rows; ϑ may be written as `pi`.
pub fn parse_anchors(text: &str) -> Result<Vec<Anchor>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let field = |k: usize| {
            record
                .get(k)
                .map(str::trim)
                .ok_or_else(|| Error::Parse(format!("short row {record:?}")))
        };
        let num = |s: &str| -> Result<f64> {
            match s {
                "pi" => Ok(std::f64::consts::PI),
                _ => s.parse().map_err(|_| Error::Parse(format!("`{s}` is not a number"))),
            }
        };
        let anchor = Anchor {
            label: field(0)?.to_string(),
            q: num(field(1)?)?,
            theta: num(field(2)?)?,
        };
        if !(0.0..=1.0).contains(&anchor.q) {
            return Err(Error::OutOfRange(format!(
                "anchor {} has q = {}",
                anchor.label, anchor.q
            )));
        }
        out.push(anchor);
    }
    Ok(out)
}

/// The twenty anchors shipped in `data/anchors.csv`.
pub fn bundled_anchors() -> Vec<Anchor> {
    parse_anchors(ANCHORS).expect("bundled anchor table parses")
}

/// `tr(S W(q,ϑ))` as a function of `(q, ϑ)`, using linearity in the three
/// building blocks of `W(q,ϑ)`.
#[derive(Clone, Copy, Debug)]
pub struct WitnessSurface {
    pub on_ocb: f64,
    pub on_sharp: f64,
    /// `tr(S F)`.
    pub on_f: num_complex::Complex64,
}

impl WitnessSurface {
    pub fn new(s: &Operator, f: &Operator) -> Self {
        Self {
            on_ocb: s.inner(w_ocb().op()).re,
            on_sharp: s.inner(w_sharp().op()).re,
            on_f: s.inner(f),
        }
    }

    pub fn at(&self, q: f64, theta: f64) -> f64 {
        let phase = num_complex::Complex64::from_polar(1.0, theta);
        q * self.on_ocb + (1.0 - q) * self.on_sharp + 4.0 * (q * (1.0 - q)).sqrt() * (phase * self.on_f).re
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnchorRegion {
    pub anchor: Anchor,
    /// Identifier of the witness (the anchor label).
    pub witness_id: String,
    /// `tr(S W)` at the anchor itself.
    pub value_at_anchor: f64,
    /// Row-major over `(q index, ϑ index)`: `tr(S W(q,ϑ)) < -COVER_TOL`.
    pub mask: Vec<bool>,
    #[serde(skip)]
    pub witness: Witness,
    #[serde(skip)]
    pub surface: Option<WitnessSurface>,
}

impl AnchorRegion {
    pub fn covered_cells(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub grid_q: usize,
    pub grid_theta: usize,
    pub regions: Vec<AnchorRegion>,
    /// `(q index, ϑ index)` of cells no witness detects.
    pub uncovered: Vec<(usize, usize)>,
}

impl CoverageReport {
    pub fn is_complete(&self) -> bool {
        self.uncovered.is_empty()
    }

    pub fn region(&self, label: &str) -> Option<&AnchorRegion> {
        self.regions.iter().find(|r| r.anchor.label == label)
    }

    pub fn q_values(&self) -> Vec<f64> {
        grid_points(self.grid_q, 1.0)
    }

    pub fn theta_values(&self) -> Vec<f64> {
        grid_points(self.grid_theta, std::f64::consts::TAU)
    }
}

/// Optimal witness at each anchor, evaluated over the grid.
pub fn witness_cover(
    cf: &FCoefficients,
    anchors: &[Anchor],
    grid_q: usize,
    grid_theta: usize,
    solver: &dyn ConicSolver,
    jobs: usize,
) -> Result<CoverageReport> {
    cf.require_bound()?;
    if grid_q < 2 || grid_theta < 2 {
        return Err(Error::OutOfRange(format!("grid {grid_q}x{grid_theta}")));
    }
    let f = cf.f_operator();
    let qs = grid_points(grid_q, 1.0);
    let thetas = grid_points(grid_theta, std::f64::consts::TAU);
    let pool = worker_pool(jobs.max(1))?;
    let witnesses = pool.install(|| {
        anchors
            .par_iter()
            .map(|a| {
                let w = conditioned_w_with(&f, a.q, a.theta);
                witness_of(w.op(), solver)
                    .map_err(|e| Error::Solver(format!("anchor {} (q = {}, theta = {}): {e}", a.label, a.q, a.theta)))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut regions = Vec::with_capacity(anchors.len());
    for (anchor, ow) in anchors.iter().zip(witnesses) {
        let surface = WitnessSurface::new(&ow.witness.op, &f);
        let mask = qs
            .iter()
            .flat_map(|&q| thetas.iter().map(move |&t| (q, t)))
            .map(|(q, t)| surface.at(q, t) < -COVER_TOL)
            .collect();
        regions.push(AnchorRegion {
            anchor: anchor.clone(),
            witness_id: anchor.label.clone(),
            value_at_anchor: ow.value,
            mask,
            witness: ow.witness,
            surface: Some(surface),
        });
    }
    let uncovered = (0..grid_q)
        .flat_map(|i| (0..grid_theta).map(move |j| (i, j)))
        .filter(|&(i, j)| !regions.iter().any(|r| r.mask[i * grid_theta + j]))
        .collect();
    Ok(CoverageReport {
        grid_q,
        grid_theta,
        regions,
        uncovered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn bundled_table_has_twenty_rows() {
        let anchors = bundled_anchors();
        assert_eq!(anchors.len(), 20);
        assert_eq!(
            anchors[0],
            Anchor {
                label: "a".into(),
                q: 1.0,
                theta: 0.0
            }
        );
        assert_eq!(anchors[5].theta, std::f64::consts::PI);
        assert!(!anchors.iter().any(|a| a.label == "p" || a.label == "q"));
    }

    #[test]
    fn surface_matches_direct_evaluation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let cf = FCoefficients::preset("star").unwrap();
        let f = cf.f_operator();
        let s = crate::process::random::random_hermitian(&mut rng, &crate::tensor::SpaceLayout::process());
        let surface = WitnessSurface::new(&s, &f);
        for _ in 0..20 {
            let q = rng.random_range(0.0..=1.0);
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            let direct = s.inner(conditioned_w_with(&f, q, t).op()).re;
            assert!((surface.at(q, t) - direct).abs() < 1e-12);
        }
    }
}
