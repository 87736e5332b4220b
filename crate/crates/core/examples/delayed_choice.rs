// The measurement basis on the conditioning system picks the causal order.

use procmat::conditioning::delayed_choice_report;

fn main() -> procmat::Result<()> {
    let r = delayed_choice_report(0.1, 0.1)?;
    println!("α = {}, β = {}", r.alpha, r.beta);
    println!("z basis: {} / {}", r.z_basis[0], r.z_basis[1]);
    println!("x basis: {} / {}", r.x_basis[0], r.x_basis[1]);
    println!("marginal: {}", r.marginal);
    println!(
        "λ_min = {:.12} (closed form {:.12})",
        r.lambda_min, r.lambda_min_closed_form
    );
    Ok(())
}
