// Heralding the OCB process out of an equal mixture with its complement.

use procmat::conditioning::{condition_all, heralded_comb, Povm};
use procmat::process::w_ocb;

fn main() -> procmat::Result<()> {
    let (p, comb, complement) = heralded_comb(&w_ocb())?;
    println!("largest heralding probability p = {p:.6}");
    if let Some(w) = complement {
        println!(
            "complement: {}, class {}",
            if w.op().distance(procmat::process::w_sharp().op()) < 1e-9 {
                "W#"
            } else {
                "other"
            },
            w.classify().order
        );
    }
    for (k, r) in condition_all(&comb, &Povm::computational(2))?.into_iter().enumerate() {
        if let Some(r) = r {
            println!("outcome {k}: p = {:.6}, valid {}", r.probability, r.validity.is_valid());
        }
    }
    Ok(())
}
