// Conditioning the coherent comb on `|Φ(q,ϑ)>` and the closed form `W(q,ϑ)`.

use procmat::conditioning::{build_upsilon_f, condition_upsilon, conditioned_w, FCoefficients};

fn main() -> procmat::Result<()> {
    let cf = FCoefficients::preset("star")?;
    let comb = build_upsilon_f(&cf)?;
    println!(
        "Υ^F for {cf}: order {}, λ_min = {:.6}",
        comb.declared_order(),
        comb.op().min_eigenvalue()
    );
    for (q, theta) in [(0.5, 0.0), (0.5, std::f64::consts::PI), (0.26, 2.15), (0.9, 4.0)] {
        let (p, w) = condition_upsilon(&cf, q, theta)?;
        let closed = conditioned_w(&cf, q, theta)?;
        let report = w.validity();
        println!(
            "q = {q:<4} ϑ = {theta:<6.4} p = {p:.4}  valid = {}  |W - W(q,ϑ)| = {:.1e}  class {}",
            report.is_valid(),
            w.op().distance(closed.op()),
            w.classify().order
        );
    }
    Ok(())
}
