// Building the robustness program and inspecting its standard form.

use procmat::process::w_ocb;
use procmat::sdp::{robustness_program, ClarabelAdapter};

fn main() -> procmat::Result<()> {
    let program = robustness_program(w_ocb().op())?;
    let form = program.scalarize()?;
    println!(
        "{} variables after presolve ({} fixed), {} rows",
        form.n(),
        form.fixed.len(),
        form.m()
    );
    for cone in &form.cones {
        println!("  {cone:?}");
    }
    let json = program.to_json()?;
    println!("JSON export: {} bytes", json.len());

    let report = program.solve(&ClarabelAdapter::default())?;
    println!(
        "status {}  objective {:.8}  residual {:.1e}  gap {:.1e}  {} iterations",
        report.status, report.objective, report.primal_residual, report.dual_gap, report.iterations
    );
    for (name, v) in &report.violations {
        println!("  {name}: {v:.1e}");
    }
    Ok(())
}
