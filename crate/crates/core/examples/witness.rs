// Optimal causal witness for W_OCB and its independent verification.

use procmat::process::{w_ocb, w_sharp};
use procmat::sdp::{optimal_witness, verify_witness_detailed, ClarabelAdapter, Witness};
use procmat::tensor::{Operator, SpaceLayout};

fn main() -> procmat::Result<()> {
    let solver = ClarabelAdapter::default();
    let ow = optimal_witness(&w_ocb(), &solver)?;
    println!("tr(S W_OCB) = {:.8}", ow.value);
    println!("tr(S W#)    = {:.8}", ow.witness.evaluate(w_sharp().op()));

    let check = verify_witness_detailed(&ow.witness, &solver)?;
    println!(
        "solved witness is feasible: {} (margin {:+.2e})",
        check.feasible,
        check.margin.unwrap_or(f64::NAN)
    );

    let minus_one = Witness::uncertified(Operator::identity(SpaceLayout::process()).scale(-1.0));
    let check = verify_witness_detailed(&minus_one, &solver)?;
    println!(
        "S = -1 is feasible: {} (margin {:+.2e})",
        check.feasible,
        check.margin.unwrap_or(f64::NAN)
    );
    Ok(())
}
