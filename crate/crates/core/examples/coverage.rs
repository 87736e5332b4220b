// Covering the (q, ϑ) plane with witnesses optimal at the anchor points.

use procmat::conditioning::FCoefficients;
use procmat::explore::{bundled_anchors, witness_cover};
use procmat::sdp::ClarabelAdapter;

fn main() -> procmat::Result<()> {
    let cf = FCoefficients::preset("star")?;
    let report = witness_cover(&cf, &bundled_anchors(), 20, 20, &ClarabelAdapter::default(), 1)?;
    for r in &report.regions {
        println!(
            "{:>2} ({:.2}, {:.3}) detects {:>3} cells",
            r.witness_id,
            r.anchor.q,
            r.anchor.theta,
            r.covered_cells()
        );
    }
    println!("uncovered: {}", report.uncovered.len());
    Ok(())
}
