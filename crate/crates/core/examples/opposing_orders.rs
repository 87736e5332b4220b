// A comb whose outcomes are ordered oppositely although the marginal is ordered.

use procmat::conditioning::opposing_markovian;

fn main() -> procmat::Result<()> {
    let (comb, report) = opposing_markovian(0.5)?;
    println!("r = {}, mixing weight p = {:.10}", report.r, report.p);
    println!("marginal: {}", comb.marginal().classify());
    println!("|0>: {}", report.zero);
    println!("|+>: {}", report.plus);
    println!("|1>: {}", report.one);
    println!("|W(+) - W_ab| = {:.2e}", report.plus_deviation);
    Ok(())
}
