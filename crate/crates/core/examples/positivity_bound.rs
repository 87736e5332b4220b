// Closed-form smallest eigenvalue of the coherent comb against the numeric one.

use procmat::conditioning::{build_upsilon_f, coherent_sector_min_eigenvalue, FCoefficients};

fn main() -> procmat::Result<()> {
    let s = 1.0 / (4.0 * 2f64.sqrt());
    for (label, cf) in [
        ("(1/4, 0, 0)", FCoefficients::real(0.25, 0.0, 0.0)),
        ("(1/(4√2)) x 3", FCoefficients::real(s, s, s)),
        ("star", FCoefficients::preset("star")?),
        ("zero", FCoefficients::zero()),
    ] {
        let comb = build_upsilon_f(&cf)?;
        println!(
            "{label:<14} N + √(N² - 4|P|²) = {:.6}  closed form {:+.10}  numeric {:+.10}",
            cf.positivity_measure(),
            cf.lambda_min_bound(),
            coherent_sector_min_eigenvalue(&comb)
        );
    }
    let outside = FCoefficients::real(0.3, 0.0, 0.0);
    println!("(0.3, 0, 0): {}", build_upsilon_f(&outside).unwrap_err());
    Ok(())
}
