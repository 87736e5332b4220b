//! Parameter sweeps, witness coverage and the constructive demos.

mod config;
mod cover;
mod demo;
mod heatmap;
mod sweep;

pub use config::{grid_points, parse_complex, parse_grid, SweepConfig, DEFAULT_GRID, LONG_GRID};
pub use cover::{
    bundled_anchors, parse_anchors, witness_cover, Anchor, AnchorRegion, CoverageReport, WitnessSurface, COVER_TOL,
};
pub use demo::{demo, DemoReport, DEMOS, NOGO_SEED, NOGO_TRIALS};
pub use heatmap::{heatmap_svg, parse_heatmap, parse_legend};
pub use sweep::{read_csv, sweep, sweep_with, SweepCell, SweepResult, CROSSING_THRESHOLD};
