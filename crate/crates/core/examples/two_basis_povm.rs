// A three-element POVM mixing two bases, applied to the opposing-orders comb.

use procmat::conditioning::{completeness_residual, condition_all, opposing_markovian, two_basis_povm};
use procmat::process::{classify_operator, CAUSAL_TOL};

fn main() -> procmat::Result<()> {
    let povm = two_basis_povm();
    println!(
        "{} effects, completeness defect {:.1e}",
        povm.len(),
        povm.completeness_defect()
    );
    let (comb, _) = opposing_markovian(0.5)?;
    for (k, r) in condition_all(&comb, &povm)?.into_iter().enumerate() {
        match r {
            Some(r) => println!(
                "E{k}: p = {:.6}, {}",
                r.probability,
                classify_operator(&r.operator, CAUSAL_TOL)?
            ),
            None => println!("E{k}: null outcome"),
        }
    }
    println!("Σ p_k W_k vs marginal: {:.2e}", completeness_residual(&comb, &povm)?);
    Ok(())
}
