//! Sweep configuration and its flat `key = value` file format.
//!
//! Grammar, one entry per line:
//!
//! ```text
//! line    := blank | comment | entry
//! comment := '#' anything
//! entry   := key '=' value
//! key     := preset | c11 | c15 | c51 | grid | out | tol | jobs | long
//! ```
//!
//! `c11`, `c15`, `c51` take `re,im` (or a bare real); `grid` takes `NxM`
//! (q points by ϑ points); `long` takes `true`/`false`. Explicit coefficients
//! override the corresponding entry of the preset. Later entries win.

use std::path::PathBuf;

use num_complex::Complex64;

use crate::conditioning::FCoefficients;
use crate::error::{Error, Result};
use crate::sdp::SOLVER_TOL;

pub const DEFAULT_GRID: usize = 20;
pub const LONG_GRID: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    /// Preset the coefficients started from, if any.
    pub preset: Option<String>,
    pub coefficients: FCoefficients,
    pub grid_q: usize,
    pub grid_theta: usize,
    pub tol: f64,
    pub out_dir: PathBuf,
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            preset: Some("star".into()),
            coefficients: FCoefficients::preset("star").expect("known preset"),
            grid_q: DEFAULT_GRID,
            grid_theta: DEFAULT_GRID,
            tol: SOLVER_TOL,
            out_dir: PathBuf::from("out"),
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SweepConfig {
    pub fn preset(name: &str) -> Result<Self> {
        Ok(Self {
            preset: Some(name.to_string()),
            coefficients: FCoefficients::preset(name)?,
            ..Self::default()
        })
    }

    pub fn with_grid(mut self, grid_q: usize, grid_theta: usize) -> Self {
        self.grid_q = grid_q;
        self.grid_theta = grid_theta;
        self
    }

    /// Parses a config file on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", n + 1)))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "preset" => {
                self.coefficients = FCoefficients::preset(value)?;
                self.preset = Some(value.to_string());
            }
            "c11" => self.coefficients.c11 = parse_complex(value)?,
            "c15" => self.coefficients.c15 = parse_complex(value)?,
            "c51" => self.coefficients.c51 = parse_complex(value)?,
            "grid" => (self.grid_q, self.grid_theta) = parse_grid(value)?,
            "out" => self.out_dir = PathBuf::from(value),
            "tol" => self.tol = parse_num(value)?,
            "jobs" => {
                self.jobs = value
                    .parse()
                    .map_err(|_| Error::Parse(format!("jobs: `{value}` is not a positive integer")))?
            }
            "long" => {
                if parse_bool(value)? {
                    self.grid_q = LONG_GRID;
                    self.grid_theta = LONG_GRID;
                }
            }
            other => return Err(Error::Parse(format!("unknown key `{other}`"))),
        }
        if matches!(key, "c11" | "c15" | "c51") {
            self.preset = None;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_q < 2 || self.grid_theta < 2 {
            return Err(Error::OutOfRange(format!(
                "grid {}x{} must be at least 2x2",
                self.grid_q, self.grid_theta
            )));
        }
        if self.jobs == 0 {
            return Err(Error::OutOfRange("jobs must be positive".into()));
        }
        if !(self.tol > 0.0 && self.tol < 1e-3) {
            return Err(Error::OutOfRange(format!("solver tolerance {}", self.tol)));
        }
        self.coefficients.require_bound()
    }

    /// `q_i = i/(N-1)`, endpoints included.
    pub fn q_values(&self) -> Vec<f64> {
        grid_points(self.grid_q, 1.0)
    }

    /// `ϑ_j = 2πj/(M-1)`, endpoints included.
    pub fn theta_values(&self) -> Vec<f64> {
        grid_points(self.grid_theta, std::f64::consts::TAU)
    }

    /// Name used for output files.
    pub fn label(&self) -> String {
        match &self.preset {
            Some(p) => p.clone(),
            None => "custom".to_string(),
        }
    }
}

pub fn grid_points(n: usize, span: f64) -> Vec<f64> {
    (0..n).map(|i| span * i as f64 / (n - 1) as f64).collect()
}

fn parse_num(text: &str) -> Result<f64> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{text}` is not a number")))
}

/// `re,im` or a bare real.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    match text.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_num(re)?, parse_num(im)?)),
        None => Ok(Complex64::new(parse_num(text)?, 0.0)),
    }
}

/// `NxM`.
pub fn parse_grid(text: &str) -> Result<(usize, usize)> {
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| Error::Parse(format!("grid `{text}` is not of the form NxM")))?;
    let n = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("grid `{text}` is not of the form NxM")))
    };
    Ok((n(a)?, n(b)?))
}

fn parse_bool(text: &str) -> Result<bool> {
    match text {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(Error::Parse(format!("`{other}` is not a boolean"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_with_overrides() {
        let cfg =
            SweepConfig::parse("# comment\npreset = zero\n\ngrid = 5x7\nc15 = 0.01,-0.02\njobs = 2\nout = results\n")
                .unwrap();
        assert_eq!((cfg.grid_q, cfg.grid_theta), (5, 7));
        assert_eq!(cfg.coefficients.c15, Complex64::new(0.01, -0.02));
        assert_eq!(cfg.preset, None);
        assert_eq!(cfg.jobs, 2);
        assert_eq!(cfg.out_dir, PathBuf::from("results"));
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(SweepConfig::parse("grid = 1x5").is_err());
        assert!(SweepConfig::parse("colour = red").is_err());
        assert!(SweepConfig::parse("c11 = 0.3").is_err());
        assert!(SweepConfig::parse("just words").is_err());
    }

    #[test]
    fn grid_includes_endpoints() {
        let cfg = SweepConfig::default().with_grid(3, 5);
        assert_eq!(cfg.q_values(), vec![0.0, 0.5, 1.0]);
        let t = cfg.theta_values();
        assert_eq!(t[0], 0.0);
        assert!((t[4] - std::f64::consts::TAU).abs() < 1e-15);
    }
}
