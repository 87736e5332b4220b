use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::SweepConfig;
use super::heatmap::heatmap_svg;
use crate::conditioning::conditioned_w_with;
use crate::error::{Error, Result};
use crate::sdp::{robustness_of, ClarabelAdapter, ConicSolver, SolveStatus};
use crate::tensor::Operator;

/// Robustness above this counts as non-separable when locating zero crossings.
pub const CROSSING_THRESHOLD: f64 = 1e-6;

/// One row of the sweep CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub q: f64,
    pub theta: f64,
    pub robustness: f64,
    pub status: SolveStatus,
    pub wall_ms: f64,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub config: SweepConfig,
    /// Row-major over `(q index, ϑ index)`.
    pub cells: Vec<SweepCell>,
}

pub(crate) fn worker_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Solver(format!("worker pool: {e}")))
}

/// Robustness of `W(q,ϑ)` on the configured grid. Any failed cell aborts
/// the sweep and is named in the error.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    sweep_with(cfg, &ClarabelAdapter::with_tol(cfg.tol))
}

pub fn sweep_with(cfg: &SweepConfig, solver: &dyn ConicSolver) -> Result<SweepResult> {
    cfg.validate()?;
    let f = cfg.coefficients.f_operator();
    let qs = cfg.q_values();
    let thetas = cfg.theta_values();
    let grid: Vec<(usize, usize)> = (0..qs.len())
        .flat_map(|i| (0..thetas.len()).map(move |j| (i, j)))
        .collect();
    let pool = worker_pool(cfg.jobs)?;
    let cells = pool.install(|| {
        grid.par_iter()
            .map(|&(i, j)| solve_cell(&f, qs[i], thetas[j], solver).map_err(|e| cell_error(i, j, qs[i], thetas[j], e)))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SweepResult {
        config: cfg.clone(),
        cells,
    })
}

fn cell_error(i: usize, j: usize, q: f64, theta: f64, e: Error) -> Error {
    Error::Solver(format!("cell ({i}, {j}) at q = {q}, theta = {theta}: {e}"))
}

fn solve_cell(f: &Operator, q: f64, theta: f64, solver: &dyn ConicSolver) -> Result<SweepCell> {
    let start = Instant::now();
    let w = conditioned_w_with(f, q, theta);
    let r = robustness_of(w.op(), solver)?;
    Ok(SweepCell {
        q,
        theta,
        robustness: r.value,
        status: r.report.status,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

impl SweepResult {
    pub fn grid_q(&self) -> usize {
        self.config.grid_q
    }

    pub fn grid_theta(&self) -> usize {
        self.config.grid_theta
    }

    pub fn cell(&self, i: usize, j: usize) -> &SweepCell {
        &self.cells[i * self.grid_theta() + j]
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.cell(i, j).robustness
    }

    pub fn all_optimal(&self) -> bool {
        self.cells.iter().all(|c| c.status == SolveStatus::Optimal)
    }

    pub fn min(&self) -> &SweepCell {
        self.cells
            .iter()
            .min_by(|a, b| a.robustness.total_cmp(&b.robustness))
            .expect("non-empty grid")
    }

    pub fn max(&self) -> &SweepCell {
        self.cells
            .iter()
            .max_by(|a, b| a.robustness.total_cmp(&b.robustness))
            .expect("non-empty grid")
    }

    /// `max_ϑ C_R - min_ϑ C_R` for every q row.
    pub fn theta_variation(&self) -> Vec<f64> {
        (0..self.grid_q())
            .map(|i| {
                let row: Vec<f64> = (0..self.grid_theta()).map(|j| self.value(i, j)).collect();
                let hi = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let lo = row.iter().copied().fold(f64::INFINITY, f64::min);
                hi - lo
            })
            .collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for cell in &self.cells {
            w.serialize(cell).map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_svg(&self) -> String {
        let values: Vec<f64> = self.cells.iter().map(|c| c.robustness).collect();
        let title = format!("Causal robustness, preset {}", self.config.label());
        heatmap_svg(
            &title,
            self.grid_q(),
            self.grid_theta(),
            &self.config.q_values(),
            &self.config.theta_values(),
            &values,
        )
    }

    /// Writes `<label>.csv` and `<label>.svg` into the output directory.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let csv_path = dir.join(format!("{}.csv", self.config.label()));
        let svg_path = dir.join(format!("{}.svg", self.config.label()));
        std::fs::write(&csv_path, self.to_csv()?)?;
        std::fs::write(&svg_path, self.to_svg())?;
        Ok((csv_path, svg_path))
    }

    /// Zero crossings of `C_R` along q at the ϑ column `j`: grid brackets
    /// refined by bisection on `C_R > threshold`.
    pub fn zero_crossings(&self, j: usize, solver: &dyn ConicSolver, q_tol: f64) -> Result<Vec<f64>> {
        let f = self.config.coefficients.f_operator();
        let theta = self.config.theta_values()[j];
        let positive = |v: f64| v > CROSSING_THRESHOLD;
        let mut out = Vec::new();
        for i in 0..self.grid_q() - 1 {
            let (a, b) = (self.cell(i, j), self.cell(i + 1, j));
            if positive(a.robustness) != positive(b.robustness) {
                out.push(refine_crossing(
                    &f,
                    theta,
                    (a.q, a.robustness),
                    (b.q, b.robustness),
                    solver,
                    q_tol,
                )?);
            }
        }
        Ok(out)
    }
}

fn refine_crossing(
    f: &Operator,
    theta: f64,
    (mut lo, v_lo): (f64, f64),
    (mut hi, _): (f64, f64),
    solver: &dyn ConicSolver,
    q_tol: f64,
) -> Result<f64> {
    let lo_positive = v_lo > CROSSING_THRESHOLD;
    while hi - lo > q_tol {
        let mid = 0.5 * (lo + hi);
        let v = robustness_of(conditioned_w_with(f, mid, theta).op(), solver)?.value;
        if (v > CROSSING_THRESHOLD) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Reads back a sweep CSV.
pub fn read_csv(text: &str) -> Result<Vec<SweepCell>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let cells = vec![
            SweepCell {
                q: 0.0,
                theta: 1.0 / 3.0,
                robustness: 0.171572875253809,
                status: SolveStatus::Optimal,
                wall_ms: 12.5,
            },
            SweepCell {
                q: 1.0,
                theta: 0.0,
                robustness: 0.0,
                status: SolveStatus::Inaccurate,
                wall_ms: 3.0,
            },
        ];
        let result = SweepResult {
            config: SweepConfig::default().with_grid(2, 1),
            cells: cells.clone(),
        };
        let text = result.to_csv().unwrap();
        assert!(text.starts_with("q,theta,robustness,status,wall_ms\n"));
        assert_eq!(read_csv(&text).unwrap(), cells);
    }
}
