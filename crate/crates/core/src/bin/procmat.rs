use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use procmat::explore::{bundled_anchors, demo, parse_grid, sweep, witness_cover, SweepConfig, DEMOS};
use procmat::process::named_process;
use procmat::sdp::{causal_robustness, optimal_witness, ClarabelAdapter};

#[derive(Parser)]
#[command(
    name = "procmat",
    version,
    about = "Process-matrix experiments: robustness sweeps, witness coverage, demos"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Causal robustness heatmap of W(q,ϑ) over a grid.
    Sweep(SweepArgs),
    /// Witness coverage of the (q,ϑ) grid from the bundled anchor table.
    Cover(SweepArgs),
    /// Causal robustness and optimal witness value of a named process.
    Robustness {
        /// w_ocb, w_sharp, parallel, markovian:r=0.5, classical_ab, ...
        name: String,
    },
    /// Run one of the constructive demos (or `all`).
    Demo { name: String },
}

#[derive(Args)]
struct SweepArgs {
    /// Config file of `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Coefficient preset: zero, quarter, uniform or star.
    #[arg(long)]
    preset: Option<String>,
    /// `re,im`
    #[arg(long, allow_hyphen_values = true)]
    c11: Option<String>,
    /// `re,im`
    #[arg(long, allow_hyphen_values = true)]
    c15: Option<String>,
    /// `re,im`
    #[arg(long, allow_hyphen_values = true)]
    c51: Option<String>,
    /// `NxM`: q points by ϑ points.
    #[arg(long)]
    grid: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Solver tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// 100x100 grid.
    #[arg(long)]
    long: bool,
}

impl SweepArgs {
    fn config(&self) -> procmat::Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::load(path)?,
            None => SweepConfig::default(),
        };
        if self.long {
            cfg.set("long", "true")?;
        }
        let pairs = [
            ("preset", self.preset.clone()),
            ("c11", self.c11.clone()),
            ("c15", self.c15.clone()),
            ("c51", self.c51.clone()),
            ("grid", self.grid.clone()),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
            ("tol", self.tol.map(|t| t.to_string())),
            ("jobs", self.jobs.map(|j| j.to_string())),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
        }
        if let Some(g) = &self.grid {
            parse_grid(g)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> procmat::Result<bool> {
    match cli.command {
        Command::Sweep(args) => {
            let cfg = args.config()?;
            let result = sweep(&cfg)?;
            let (csv, svg) = result.write(&cfg.out_dir)?;
            let (lo, hi) = (result.min(), result.max());
            println!("{} cells, all optimal: {}", result.cells.len(), result.all_optimal());
            println!(
                "min C_R = {:.6} at (q, ϑ) = ({:.4}, {:.4})",
                lo.robustness, lo.q, lo.theta
            );
            println!(
                "max C_R = {:.6} at (q, ϑ) = ({:.4}, {:.4})",
                hi.robustness, hi.q, hi.theta
            );
            let variation = result.theta_variation().into_iter().fold(0.0, f64::max);
            println!("max ϑ variation of C_R within a q row = {variation:.3e}");
            if result.all_optimal() {
                let solver = ClarabelAdapter::with_tol(cfg.tol);
                let crossings = result.zero_crossings(0, &solver, 1e-4)?;
                let shown: Vec<String> = crossings.iter().map(|q| format!("{q:.4}")).collect();
                println!("zero crossings along q at ϑ = 0: [{}]", shown.join(", "));
            }
            println!("wrote {} and {}", csv.display(), svg.display());
            Ok(result.all_optimal())
        }
        Command::Cover(args) => {
            let cfg = args.config()?;
            let solver = ClarabelAdapter::with_tol(cfg.tol);
            let report = witness_cover(
                &cfg.coefficients,
                &bundled_anchors(),
                cfg.grid_q,
                cfg.grid_theta,
                &solver,
                cfg.jobs,
            )?;
            for r in &report.regions {
                println!(
                    "{:>2}  q = {:<5} ϑ = {:<8.4} tr(SW) = {:+.6}  cells = {}",
                    r.witness_id,
                    r.anchor.q,
                    r.anchor.theta,
                    r.value_at_anchor,
                    r.covered_cells()
                );
            }
            println!("uncovered cells: {}", report.uncovered.len());
            std::fs::create_dir_all(&cfg.out_dir)?;
            let path = cfg.out_dir.join(format!("{}_coverage.json", cfg.label()));
            std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
            println!("wrote {}", path.display());
            Ok(report.is_complete())
        }
        Command::Robustness { name } => {
            let w = named_process(&name)?;
            let solver = ClarabelAdapter::default();
            let r = causal_robustness(&w, &solver)?;
            let ow = optimal_witness(&w, &solver)?;
            println!("class: {}", w.classify());
            println!(
                "C_R = {:.8} (raw {:.3e}, {} iterations, {:.1} ms)",
                r.value, r.raw, r.report.iterations, r.report.solve_ms
            );
            println!("min tr(SW) = {:.8}", ow.value);
            println!("certificate audit worst violation = {:.3e}", r.audit.worst());
            Ok(true)
        }
        Command::Demo { name } => {
            let names: Vec<&str> = if name == "all" {
                DEMOS.to_vec()
            } else {
                vec![name.as_str()]
            };
            let mut ok = true;
            for n in names {
                let report = demo(n)?;
                println!("{report}");
                ok &= report.passed;
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    // Clarabel panics on LAPACK failures; the adapter catches those and
    // retries, so they are not reported here.
    let report = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        if !info.location().is_some_and(|l| l.file().contains("clarabel")) {
            report(info);
        }
    }));
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
