// A small robustness sweep written as CSV and SVG.

use procmat::explore::{parse_heatmap, read_csv, sweep, SweepConfig};

fn main() -> procmat::Result<()> {
    let mut cfg = SweepConfig::preset("star")?.with_grid(5, 4);
    cfg.out_dir = std::env::temp_dir().join("procmat-sweep-example");
    let result = sweep(&cfg)?;
    for i in 0..result.grid_q() {
        let row: Vec<String> = (0..result.grid_theta())
            .map(|j| format!("{:.5}", result.value(i, j)))
            .collect();
        println!("q = {:.2}: {}", result.cell(i, 0).q, row.join("  "));
    }
    let (csv, svg) = result.write(&cfg.out_dir)?;
    let rows = read_csv(&std::fs::read_to_string(&csv)?)?;
    let cells = parse_heatmap(&std::fs::read_to_string(&svg)?)?;
    println!(
        "{} rows in {}, {} cells in {}",
        rows.len(),
        csv.display(),
        cells.len(),
        svg.display()
    );
    Ok(())
}
