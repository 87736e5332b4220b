// The witness optimal at (q, ϑ) = (1/2, π) as a function over the whole plane.

use std::f64::consts::{PI, TAU};

use procmat::conditioning::{conditioned_w, FCoefficients};
use procmat::explore::grid_points;
use procmat::sdp::{optimal_witness, ClarabelAdapter};

fn main() -> procmat::Result<()> {
    let cf = FCoefficients::preset("star")?;
    let ow = optimal_witness(&conditioned_w(&cf, 0.5, PI)?, &ClarabelAdapter::default())?;
    println!("tr(S W(1/2, π)) = {:.6}", ow.value);
    let mut worst: f64 = 0.0;
    for q in grid_points(20, 1.0) {
        for theta in grid_points(20, TAU) {
            let value = ow.witness.evaluate(conditioned_w(&cf, q, theta)?.op());
            let model = 0.25 + 0.604 * (q * (1.0 - q)).sqrt() * theta.cos();
            worst = worst.max((value - model).abs());
        }
    }
    println!("max |tr(S W) - (0.25 + 0.604 √(q(1-q)) cos ϑ)| over 20x20 = {worst:.4}");
    Ok(())
}
