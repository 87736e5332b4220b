//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use procmat::conditioning::{
    build_upsilon_f, coherent_sector_min_eigenvalue, completeness_residual, condition_upsilon, conditioned_w,
    delayed_choice_report, no_go_trials, opposing_markovian, solve_coefficient_nullspace, Effect, FCoefficients, Povm,
};
use procmat::explore::{bundled_anchors, grid_points, sweep, witness_cover, SweepConfig};
use procmat::process::random::{random_cptp_choi, random_hermitian, random_ordered_comb, random_process, random_psd};
use procmat::process::{
    born_rule, forbidden_term_check, project_lv, validity_report, w_ocb, CausalOrder, VALIDITY_TOL,
};
use procmat::sdp::{causal_robustness, optimal_witness, ClarabelAdapter};
use procmat::tensor::{psd_inv_sqrt, Operator, SpaceLayout, A_I, A_O, B_I, B_O, C_I};
use procmat::Result;

struct Outcome {
    passed: bool,
    detail: String,
}

type Check = fn() -> Result<Outcome>;

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn random_in_bound(rng: &mut ChaCha8Rng) -> FCoefficients {
    let cf = FCoefficients::from_reals(std::array::from_fn(|_| rng.random_range(-1.0..1.0)));
    let fill = if rng.random_bool(0.1) { 1.0 } else { rng.random::<f64>() };
    cf.scaled(cf.max_scale() * fill * (1.0 - 1e-12))
}

fn ocb_robustness() -> Result<Outcome> {
    let start = Instant::now();
    let r = causal_robustness(&w_ocb(), &ClarabelAdapter::default())?;
    let secs = start.elapsed().as_secs_f64();
    outcome(
        (r.value - 0.17).abs() <= 0.01 && secs < 5.0,
        format!("C_R(W_OCB) = {:.8} in {secs:.2} s", r.value),
    )
}

fn star_sweep() -> Result<Outcome> {
    let start = Instant::now();
    let result = sweep(&SweepConfig::preset("star")?)?;
    let secs = start.elapsed().as_secs_f64();
    let min = result.min();
    outcome(
        result.all_optimal() && min.robustness >= 0.0517 - 1e-3 && secs < 900.0,
        format!(
            "{} SDPs, all optimal {}, min C_R = {:.6} at (q, ϑ) = ({:.4}, {:.4}), {secs:.0} s",
            result.cells.len(),
            result.all_optimal(),
            min.robustness,
            min.q,
            min.theta
        ),
    )
}

fn zero_sweep() -> Result<Outcome> {
    let result = sweep(&SweepConfig::preset("zero")?)?;
    let crossings = result.zero_crossings(0, &ClarabelAdapter::default(), 1e-4)?;
    let variation = result.theta_variation().into_iter().fold(0.0, f64::max);
    let near = |target: f64| crossings.iter().any(|q| (q - target).abs() <= 0.01);
    outcome(
        result.all_optimal() && crossings.len() == 2 && near(0.15) && near(0.85) && variation < 1e-4,
        format!("zero crossings {crossings:.4?}, max ϑ variation {variation:.1e}"),
    )
}

fn positivity_bounds() -> Result<Outcome> {
    let s = 1.0 / (4.0 * 2f64.sqrt());
    let mut edge: f64 = 0.0;
    for cf in [FCoefficients::real(0.25, 0.0, 0.0), FCoefficients::real(s, s, s)] {
        edge = edge.max(coherent_sector_min_eigenvalue(&build_upsilon_f(&cf)?).abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let cf = random_in_bound(&mut rng);
        let numeric = coherent_sector_min_eigenvalue(&build_upsilon_f(&cf)?);
        worst = worst.max((numeric - cf.lambda_min_bound()).abs());
    }
    outcome(
        edge < 1e-8 && worst < 1e-9,
        format!("|λ_min| on the bound {edge:.1e}; closed form vs numeric over 1000 triples {worst:.1e}"),
    )
}

fn nullspace() -> Result<Outcome> {
    let sol = solve_coefficient_nullspace()?;
    outcome(
        sol.dimension == 3 && sol.listed_residual < 1e-9,
        format!(
            "dimension {}, worst relation residual {:.1e}",
            sol.dimension, sol.listed_residual
        ),
    )
}

fn witness_surface_and_cover() -> Result<Outcome> {
    let solver = ClarabelAdapter::default();
    let cf = FCoefficients::preset("star")?;
    let ow = optimal_witness(&conditioned_w(&cf, 0.5, PI)?, &solver)?;
    let mut worst: f64 = 0.0;
    for q in grid_points(20, 1.0) {
        for theta in grid_points(20, TAU) {
            let value = ow.witness.evaluate(conditioned_w(&cf, q, theta)?.op());
            worst = worst.max((value - (0.25 + 0.604 * ((1.0 - q) * q).sqrt() * theta.cos())).abs());
        }
    }
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let report = witness_cover(&cf, &bundled_anchors(), 20, 20, &solver, jobs)?;
    outcome(
        worst <= 0.005 && report.regions.len() == 20 && report.is_complete(),
        format!(
            "surface deviation {worst:.4}; {} uncovered cells with 20 anchors",
            report.uncovered.len()
        ),
    )
}

fn delayed_choice() -> Result<Outcome> {
    let r = delayed_choice_report(0.1, 0.1)?;
    let expected = (1.0 - 4.0 * 0.02f64.sqrt()) / 8.0;
    let ok = r.z_basis.iter().all(|c| c.strictly_a_before_b())
        && r.x_basis.iter().all(|c| c.strictly_b_before_a())
        && r.marginal.order == CausalOrder::AParallelB
        && (r.lambda_min - expected).abs() < 1e-10;
    outcome(
        ok,
        format!(
            "z: {}, {}; x: {}, {}; marginal {}; λ_min = {:.12}",
            r.z_basis[0].order,
            r.z_basis[1].order,
            r.x_basis[0].order,
            r.x_basis[1].order,
            r.marginal.order,
            r.lambda_min
        ),
    )
}

fn opposing() -> Result<Outcome> {
    let (_, r) = opposing_markovian(0.5)?;
    outcome(
        r.zero.order == CausalOrder::BBeforeA
            && r.plus.order == CausalOrder::ABeforeB
            && r.one.order != CausalOrder::ABeforeB,
        format!("|0>: {}, |+>: {}, |1>: {}", r.zero.order, r.plus.order, r.one.order),
    )
}

fn no_go() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let s = no_go_trials(&mut rng, 500)?;
    outcome(
        s.trials == 500 && s.violations == 0,
        format!(
            "{} trials, {} with both outcomes definite, {} opposite",
            s.trials, s.both_definite, s.violations
        ),
    )
}

fn random_povm(rng: &mut ChaCha8Rng, outcomes: usize) -> Result<Povm> {
    let layout = SpaceLayout::qubits(&[C_I]);
    let parts: Vec<Operator> = (0..outcomes).map(|_| random_psd(rng, &layout, 2)).collect();
    let mut total = Operator::zeros(layout.clone());
    for p in &parts {
        total += p;
    }
    let k = psd_inv_sqrt(total.matrix(), 1e-300);
    let mut effects = Vec::new();
    for p in &parts {
        effects.push(Effect::new(
            Operator::new(layout.clone(), &k * p.matrix() * &k)?.hermitian_part(),
        )?);
    }
    Povm::new(effects)
}

fn property_suites() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let layout = SpaceLayout::process();
    let mut failures = Vec::new();

    let mut lv: f64 = 0.0;
    for _ in 0..200 {
        let x = random_hermitian(&mut rng, &layout);
        let y = random_hermitian(&mut rng, &layout);
        let px = project_lv(&x)?;
        lv = lv.max(project_lv(&px)?.distance(&px));
        lv = lv.max((x.inner(&project_lv(&y)?) - px.inner(&y)).norm());
    }
    if lv > 1e-12 {
        failures.push(format!("L_V idempotence/self-adjointness {lv:.1e}"));
    }

    let mut mismatches = 0;
    for k in 0..1000 {
        let mut h = random_hermitian(&mut rng, &layout);
        if k % 2 == 0 {
            h = project_lv(&h)?;
        }
        let fixed = project_lv(&h)?.distance(&h) < 1e-10;
        let (clean, _) = forbidden_term_check(&h, 1e-10)?;
        mismatches += usize::from(fixed != clean || fixed != (k % 2 == 0));
    }
    if mismatches > 0 {
        failures.push(format!("{mismatches} L_V/forbidden mismatches"));
    }

    let mut born: f64 = 0.0;
    for _ in 0..100 {
        let w = random_process(&mut rng);
        let p = born_rule(
            &w,
            &random_cptp_choi(&mut rng, A_I, A_O),
            &random_cptp_choi(&mut rng, B_I, B_O),
        )?;
        born = born.max((p - 1.0).abs());
    }
    if born > 1e-9 {
        failures.push(format!("Born normalization {born:.1e}"));
    }

    let mut invalid = 0;
    for _ in 0..500 {
        let cf = random_in_bound(&mut rng);
        let (q, theta) = (rng.random::<f64>(), rng.random_range(0.0..TAU));
        let (_, w) = condition_upsilon(&cf, q, theta)?;
        invalid += usize::from(!validity_report(w.op(), VALIDITY_TOL).is_valid());
    }
    if invalid > 0 {
        failures.push(format!("{invalid} invalid conditioned processes"));
    }

    let mut completeness: f64 = 0.0;
    for k in 0..200 {
        let povm = random_povm(&mut rng, 2 + k % 3)?;
        let comb = if k % 2 == 0 {
            random_ordered_comb(&mut rng, 2)
        } else {
            build_upsilon_f(&random_in_bound(&mut rng))?
        };
        completeness = completeness.max(completeness_residual(&comb, &povm)?);
    }
    if completeness > 1e-9 {
        failures.push(format!("POVM reconstruction {completeness:.1e}"));
    }

    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("L_V {lv:.1e}, Born {born:.1e}, reconstruction {completeness:.1e}, 0 mismatches, 0 invalid")
        } else {
            failures.join("; ")
        },
    )
}

fn main() {
    // Clarabel panics on LAPACK failures that the adapter catches and retries.
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        if !info.location().is_some_and(|l| l.file().contains("clarabel")) {
            default_hook(info);
        }
    }));
    let criteria: [(&str, Check); 10] = [
        ("causal robustness of W_OCB", ocb_robustness),
        ("star preset sweep", star_sweep),
        ("zero preset sweep", zero_sweep),
        ("positivity bounds", positivity_bounds),
        ("coefficient nullspace", nullspace),
        ("witness surface and coverage", witness_surface_and_cover),
        ("delayed choice", delayed_choice),
        ("opposing orders", opposing),
        ("no-go", no_go),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (passed, detail) = match check() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!passed);
        println!(
            "{} criterion {:>2} {name}: {detail} [{:.1} s]",
            if passed { "PASS" } else { "FAIL" },
            k + 1,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
