// Causal robustness of named processes, with the certificate audit.

use procmat::process::named_process;
use procmat::sdp::{causal_robustness, ClarabelAdapter};

fn main() -> procmat::Result<()> {
    let solver = ClarabelAdapter::default();
    for name in ["w_ocb", "w_sharp", "markovian:r=0.5", "parallel"] {
        let w = named_process(name)?;
        let r = causal_robustness(&w, &solver)?;
        println!(
            "{name:<16} C_R = {:.8}  status {}  gap {:.1e}  audit {:.1e}  {:.0} ms",
            r.value,
            r.report.status,
            r.report.dual_gap,
            r.audit.worst(),
            r.report.solve_ms
        );
    }
    println!("3 - 2√2 = {:.8}", 3.0 - 2.0 * 2f64.sqrt());
    Ok(())
}
