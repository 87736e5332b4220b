// The cross-term coefficients allowed by validity of every conditioned process.

use procmat::conditioning::{solve_coefficient_nullspace, Free, LISTED_RELATIONS, OMITTED_RELATION};

fn main() -> procmat::Result<()> {
    let sol = solve_coefficient_nullspace()?;
    let tail: Vec<String> = sol
        .singular_values
        .iter()
        .rev()
        .take(5)
        .map(|s| format!("{s:.2e}"))
        .collect();
    println!(
        "nullspace dimension {}; smallest singular values {}",
        sol.dimension,
        tail.join(" ")
    );
    for rel in LISTED_RELATIONS.iter().chain([&OMITTED_RELATION]) {
        let free = match rel.source {
            Free::C11 => "c11",
            Free::C15 => "c15",
            Free::C51 => "c51",
        };
        let got = sol.coefficient(rel.i, rel.j, rel.source);
        println!("c{}{} = {:+} {free}   (solved: {:+.3})", rel.i, rel.j, rel.sign, got.re);
    }
    println!(
        "residuals: listed {:.1e}, c33 {:.1e}, elsewhere {:.1e}",
        sol.listed_residual, sol.omitted_residual, sol.spurious_residual
    );
    Ok(())
}
