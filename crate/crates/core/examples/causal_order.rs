// Causal-order classification of the library processes.

use procmat::process::{named_process, CAUSAL_TOL};

fn main() -> procmat::Result<()> {
    for name in [
        "w_ocb",
        "w_sharp",
        "parallel",
        "markovian:r=0.5",
        "markovian_mirror:r=0.5",
        "classical_ab",
        "classical_ba:b=0",
    ] {
        let w = named_process(name)?;
        let class = w.classify();
        println!(
            "{name:<24} {:<5} |W - P_AB W| = {:.2e}  |W - P_BA W| = {:.2e}",
            class.order.to_string(),
            class.distance_ab,
            class.distance_ba
        );
    }
    println!("tolerance {CAUSAL_TOL:e}");
    Ok(())
}
