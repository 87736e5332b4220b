//! Every example under `examples/` builds and runs to completion.

macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));

            #[test]
            fn runs() {
                main().expect(concat!($file, " should run"));
            }
        }
    };
}

example!(pauli_expansion, "pauli_expansion.rs");
example!(validity, "validity.rs");
example!(causal_order, "causal_order.rs");
example!(born_rule, "born_rule.rs");
example!(conditioning, "conditioning.rs");
example!(coefficient_nullspace, "coefficient_nullspace.rs");
example!(positivity_bound, "positivity_bound.rs");
example!(robustness, "robustness.rs");
example!(witness, "witness.rs");
example!(witness_surface, "witness_surface.rs");
example!(sweep, "sweep.rs");
example!(coverage, "coverage.rs");
example!(conic_program, "conic_program.rs");
example!(heralded, "heralded.rs");
example!(opposing_orders, "opposing_orders.rs");
example!(delayed_choice, "delayed_choice.rs");
example!(no_go, "no_go.rs");
example!(three_outcome, "three_outcome.rs");
example!(two_basis_povm, "two_basis_povm.rs");
