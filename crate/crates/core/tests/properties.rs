use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use procmat::conditioning::{
    build_upsilon_f, coherent_sector_min_eigenvalue, completeness_residual, condition_upsilon, conditioned_w, Effect,
    FCoefficients, Povm,
};
use procmat::process::random::{random_cptp_choi, random_hermitian, random_ordered_comb, random_process, random_psd};
use procmat::process::{born_rule, forbidden_strings, forbidden_term_check, lv_map, project_lv, VALIDITY_TOL};
use procmat::tensor::{c, pauli_expand, psd_inv_sqrt, Operator, SpaceLayout, A_I, A_O, B_I, B_O, C_I};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex coefficients drawn uniformly in a box, then scaled to a random
/// fraction of the largest in-bound multiple; a tenth land on the boundary.
fn random_in_bound(rng: &mut ChaCha8Rng) -> FCoefficients {
    let mut x = [0.0; 6];
    for v in &mut x {
        *v = rng.random_range(-1.0..1.0);
    }
    let cf = FCoefficients::from_reals(x);
    let fill = if rng.random_bool(0.1) { 1.0 } else { rng.random::<f64>() };
    cf.scaled(cf.max_scale() * fill * (1.0 - 1e-12))
}

fn random_povm(rng: &mut ChaCha8Rng, outcomes: usize) -> Povm {
    let layout = SpaceLayout::qubits(&[C_I]);
    let parts: Vec<Operator> = (0..outcomes).map(|_| random_psd(rng, &layout, 2)).collect();
    let mut total = Operator::zeros(layout.clone());
    for p in &parts {
        total += p;
    }
    let k = psd_inv_sqrt(total.matrix(), 1e-300);
    let effects = parts
        .iter()
        .map(|p| {
            let e = Operator::new(layout.clone(), &k * p.matrix() * &k)
                .unwrap()
                .hermitian_part();
            Effect::new(e).unwrap()
        })
        .collect();
    Povm::new(effects).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lv_is_idempotent_and_self_adjoint(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let layout = SpaceLayout::process();
        let x = random_hermitian(&mut rng, &layout);
        let y = random_hermitian(&mut rng, &layout);
        let px = project_lv(&x).unwrap();
        let py = project_lv(&y).unwrap();
        prop_assert!(project_lv(&px).unwrap().distance(&px) < 1e-12);
        prop_assert!((x.inner(&py) - px.inner(&y)).norm() < 1e-12);
        prop_assert!(px.hermiticity_defect() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// A Hermitian operator is an `L_V` fixed point exactly when its
    /// forbidden Pauli coefficients vanish; half the draws are projected first.
    #[test]
    fn lv_fixed_points_are_forbidden_free(seed in any::<u64>(), project in any::<bool>()) {
        let mut rng = rng(seed);
        let mut h = random_hermitian(&mut rng, &SpaceLayout::process());
        if project {
            h = project_lv(&h).unwrap();
        }
        let fixed = project_lv(&h).unwrap().distance(&h) < 1e-10;
        let (clean, _) = forbidden_term_check(&h, 1e-10).unwrap();
        prop_assert_eq!(fixed, clean);
        prop_assert_eq!(fixed, project);
    }

    #[test]
    fn closed_form_lambda_min_matches_numeric(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cf = random_in_bound(&mut rng);
        let comb = build_upsilon_f(&cf).unwrap();
        let numeric = coherent_sector_min_eigenvalue(&comb);
        prop_assert!((numeric - cf.lambda_min_bound()).abs() < 1e-9, "{} vs {}", numeric, cf.lambda_min_bound());
        prop_assert!(comb.op().min_eigenvalue() >= -1e-9);
    }
}

/// The projector acts on each Pauli string by keeping or removing it, and it
/// removes exactly the 168 forbidden ones.
#[test]
fn lv_keeps_allowed_strings_and_removes_forbidden_ones() {
    let layout = SpaceLayout::process();
    let forbidden = forbidden_strings();
    assert_eq!(forbidden.len(), 168);
    let map = lv_map();
    let mut kept = 0;
    for index in 0..256 {
        let s = procmat::tensor::PauliString::from_index(index, 4);
        let m = map.pauli_multiplier(&s, &layout).unwrap();
        if forbidden.contains(&s) {
            assert!(m.abs() < 1e-12, "{s} should be removed, multiplier {m}");
        } else {
            assert!((m - 1.0).abs() < 1e-12, "{s} should be kept, multiplier {m}");
            kept += 1;
        }
    }
    assert_eq!(kept, 88);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn born_rule_sums_to_one_for_channels(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let w = random_process(&mut rng);
        prop_assert!(w.validity().is_valid());
        let ma = random_cptp_choi(&mut rng, A_I, A_O);
        let mb = random_cptp_choi(&mut rng, B_I, B_O);
        let p = born_rule(&w, &ma, &mb).unwrap();
        prop_assert!((p - 1.0).abs() < 1e-9, "p = {}", p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// Conditioning the comb on `|Φ(q,ϑ)>` reproduces the closed form, which
    /// is a valid process.
    #[test]
    fn conditioned_processes_are_valid(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cf = random_in_bound(&mut rng);
        let q = if rng.random_bool(0.1) { rng.random_range(0..2) as f64 } else { rng.random::<f64>() };
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let w = conditioned_w(&cf, q, theta).unwrap();
        let report = procmat::process::validity_report(w.op(), VALIDITY_TOL);
        prop_assert!(report.is_valid(), "{}", report.failures());
        let (p, conditioned) = condition_upsilon(&cf, q, theta).unwrap();
        prop_assert!((p - 0.5).abs() < 1e-12);
        prop_assert!(conditioned.op().distance(w.op()) < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// `Σ_k p_k W_k` over any POVM gives back the marginal.
    #[test]
    fn povm_outcomes_reconstruct_the_marginal(seed in any::<u64>(), outcomes in 2usize..5) {
        let mut rng = rng(seed);
        let povm = random_povm(&mut rng, outcomes);
        prop_assert!(povm.completeness_defect() < 1e-12);
        let comb = if rng.random_bool(0.5) {
            random_ordered_comb(&mut rng, 2)
        } else {
            build_upsilon_f(&random_in_bound(&mut rng)).unwrap()
        };
        prop_assert!(completeness_residual(&comb, &povm).unwrap() < 1e-9);
    }
}

#[test]
fn out_of_bound_coefficients_are_refused() {
    let cf = FCoefficients::new(c(0.25, 0.05), c(0.0, 0.0), c(0.0, 0.0));
    assert!(!cf.within_bound());
    assert!(build_upsilon_f(&cf).is_err());
    assert!(conditioned_w(&cf, 0.5, 0.0).is_err());
}

#[test]
fn pauli_expansion_of_a_projected_operator_has_no_forbidden_terms() {
    let mut rng = rng(11);
    let h = project_lv(&random_hermitian(&mut rng, &SpaceLayout::process())).unwrap();
    let coeffs = pauli_expand(&h).unwrap();
    for s in forbidden_strings() {
        assert!(coeffs.get(&s).norm() < 1e-12);
    }
}
