// Validity checks and the projector onto the valid subspace.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use procmat::process::random::random_hermitian;
use procmat::process::{is_valid_process, named_process, project_lv, validity_report, VALIDITY_TOL};
use procmat::tensor::{Operator, SpaceLayout};

fn main() -> procmat::Result<()> {
    for name in ["w_ocb", "w_sharp", "parallel", "markovian:r=0.5", "classical_ab"] {
        let w = named_process(name)?;
        let (valid, report) = is_valid_process(w.op());
        println!(
            "{name:<16} valid = {valid}  λ_min = {:+.4}  tr = {:.6}  |L_V(W) - W| = {:.1e}",
            report.min_eigenvalue, report.trace, report.lv_residual
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let layout = SpaceLayout::process();
    let h = random_hermitian(&mut rng, &layout);
    let raw = Operator::identity(layout).scale(0.25) + h.scale(0.01);
    let report = validity_report(&raw, VALIDITY_TOL);
    println!("perturbed 1/4: {}", report.failures());
    let projected = project_lv(&raw)?;
    let twice = project_lv(&projected)?;
    println!("after L_V: |L_V(L_V X) - L_V X| = {:.1e}", twice.distance(&projected));
    Ok(())
}
