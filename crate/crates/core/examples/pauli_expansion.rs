// Pauli expansion of the OCB process and the forbidden strings.

use procmat::process::{forbidden_strings, forbidden_term_check, w_ocb, FORBIDDEN_SUPPORTS};
use procmat::tensor::{pauli_assemble, pauli_expand, pauli_operator, SpaceLayout};

fn main() -> procmat::Result<()> {
    let w = w_ocb();
    let coeffs = pauli_expand(w.op())?;
    println!("W_OCB = 1/4 [");
    for (s, v) in coeffs.nonzero(1e-12) {
        println!("  {:+.6}  {s}", 4.0 * v.re);
    }
    println!("]");
    let back = pauli_assemble(&coeffs);
    println!("reassembly error = {:.2e}", back.distance(w.op()));

    println!(
        "{} forbidden strings over {} support patterns",
        forbidden_strings().len(),
        FORBIDDEN_SUPPORTS.len()
    );
    let (ok, _) = forbidden_term_check(w.op(), 1e-10)?;
    println!("W_OCB free of forbidden terms: {ok}");

    // Z_AI Z_BO is B-to-A signalling and allowed; Z_AO Z_BO is a loop
    for (label, string) in [("Z_AI Z_BO", "ZIIZ"), ("Z_AO Z_BO", "IZIZ")] {
        let w = pauli_operator(&SpaceLayout::process(), &[("IIII", 0.25), (string, 0.1)])?;
        let (ok, terms) = forbidden_term_check(&w, 1e-10)?;
        println!("1/4 + 0.1 {label} free of forbidden terms: {ok}");
        for t in terms {
            println!("  {} ({}) coefficient {:.3}", t.string, t.kind, t.coefficient);
        }
    }
    Ok(())
}
