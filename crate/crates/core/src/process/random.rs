//! Seeded samplers for property tests and randomized demos.

use rand::Rng;
use rand_distr::StandardNormal;

use super::causal::{a_before_b_map, b_before_a_map, CausalOrder};
use super::validity::lv_map;
use super::{Comb, CombOrder, ProcessMatrix};
use crate::tensor::{c, psd_inv_sqrt, psd_sqrt, CMatrix, CVector, Operator, ReplaceMap, SpaceLayout, C_I};
use crate::Result;

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        c(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    })
}

/// Random Hermitian operator (GUE-like, unit-variance entries).
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, layout: &SpaceLayout) -> Operator {
    let n = layout.total_dim();
    let g = ginibre(rng, n, n);
    Operator::new(layout.clone(), (&g + g.adjoint()) * c(0.5, 0.0)).expect("square")
}

/// Random positive semidefinite operator `G G^dag` of the given rank.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, layout: &SpaceLayout, rank: usize) -> Operator {
    let n = layout.total_dim();
    let g = ginibre(rng, n, rank.max(1));
    Operator::new(layout.clone(), &g * g.adjoint()).expect("square")
}

/// Haar-random unit vector.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    let g = ginibre(rng, dim, 1);
    let v: CVector = g.column(0).into_owned();
    let norm = v.norm();
    v / c(norm, 0.0)
}

/// Haar-random orthonormal basis (columns of a unitary).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let q = ginibre(rng, dim, dim).qr();
    let (q, r) = (q.q(), q.r());
    // fix column phases so the distribution is Haar
    let mut u = q;
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / c(d.norm(), 0.0)
        } else {
            c(1.0, 0.0)
        };
        let mut col = u.column_mut(k);
        col *= phase;
    }
    u
}

/// `(Y^{-1/2} ⊗ 1) X (Y^{-1/2} ⊗ 1)` with `Y = tr_out X`, so that the result
/// has `tr_out = 1`. `out` must be the trailing subsystems of `X`, and `X`
/// must have rank at least `dim Y` so that `Y` is invertible.
fn normalize_trailing(x: &Operator, out: &[&str]) -> Result<Operator> {
    let y = x.partial_trace(out)?;
    let inv = psd_inv_sqrt(y.matrix(), 1e-300);
    let rest: usize = out
        .iter()
        .map(|l| x.layout().dim_of(l))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .product();
    let k = inv.kronecker(&CMatrix::identity(rest, rest));
    Operator::new(x.layout().clone(), &k * x.matrix() * &k)
}

/// Choi operator of a random CPTP map from `input` to `output` (qubits).
pub fn random_cptp_choi<R: Rng + ?Sized>(rng: &mut R, input: &str, output: &str) -> Operator {
    let layout = SpaceLayout::qubits(&[input, output]);
    let rank = rng.random_range(2..=4);
    normalize_trailing(&random_psd(rng, &layout, rank), &[output]).expect("labels present")
}

/// A random instrument with `outcomes` elements; the sum is CPTP.
pub fn random_instrument<R: Rng + ?Sized>(rng: &mut R, input: &str, output: &str, outcomes: usize) -> Vec<Operator> {
    let layout = SpaceLayout::qubits(&[input, output]);
    let parts: Vec<Operator> = (0..outcomes).map(|_| random_psd(rng, &layout, 2)).collect();
    let mut total = Operator::zeros(layout.clone());
    for p in &parts {
        total += p;
    }
    let y = total.partial_trace(&[output]).expect("label present");
    let inv = psd_inv_sqrt(y.matrix(), 1e-300);
    let k = inv.kronecker(&CMatrix::identity(2, 2));
    parts
        .iter()
        .map(|p| Operator::new(layout.clone(), &k * p.matrix() * &k).expect("square"))
        .collect()
}

/// `1/4 + s·H` with `H` a random traceless element of the image of `map`,
/// and `s` a uniformly random fraction `fill` of the largest step that keeps
/// the operator positive.
fn random_in_subspace<R: Rng + ?Sized>(rng: &mut R, map: &ReplaceMap, fill: f64) -> Operator {
    let layout = SpaceLayout::process();
    let id = Operator::identity(layout.clone());
    let h = map.apply(&random_hermitian(rng, &layout)).expect("process layout");
    let h = &h - &id.scale(h.trace_re() / 16.0);
    let lambda_min = h.min_eigenvalue();
    let s_max = if lambda_min < 0.0 { 0.25 / -lambda_min } else { 1.0 };
    let s = fill * rng.random::<f64>() * s_max;
    &id.scale(0.25) + &h.scale(s)
}

/// Random valid process matrix (generically causally non-separable or mixed).
pub fn random_process<R: Rng + ?Sized>(rng: &mut R) -> ProcessMatrix {
    ProcessMatrix::new(random_in_subspace(rng, &lv_map(), 0.999)).expect("valid by construction")
}

/// Random valid process of the given order (`AParallelB` gives `1_{A_O B_O} ⊗ ρ`).
pub fn random_ordered_process<R: Rng + ?Sized>(rng: &mut R, order: CausalOrder) -> ProcessMatrix {
    let map = match order {
        CausalOrder::ABeforeB => a_before_b_map(),
        CausalOrder::BBeforeA => b_before_a_map(),
        CausalOrder::AParallelB => ReplaceMap::single(&[crate::tensor::A_O, crate::tensor::B_O]),
        CausalOrder::NoneOfThese => lv_map(),
    };
    ProcessMatrix::new(random_in_subspace(rng, &map, 0.999)).expect("valid by construction")
}

/// Random comb with marginal `gamma`:
/// `Υ = (√Γ ⊗ 1) T (√Γ ⊗ 1)` with `T ⪰ 0` and `tr_{C_I} T = 1`.
/// Generic draws are entangled across `AB : C_I`.
pub fn random_comb_over<R: Rng + ?Sized>(rng: &mut R, gamma: &ProcessMatrix, order: CombOrder, c_dim: usize) -> Comb {
    let layout = SpaceLayout::comb(c_dim);
    let rank = rng.random_range(16..=layout.total_dim());
    let t = normalize_trailing(&random_psd(rng, &layout, rank), &[C_I]).expect("C_I present");
    let root = psd_sqrt(gamma.op().matrix()).kronecker(&CMatrix::identity(c_dim, c_dim));
    let op = Operator::new(layout, &root * t.matrix() * &root).expect("square");
    Comb::new(op.hermitian_part(), order).expect("comb by construction")
}

/// Random causally ordered comb: the marginal order is drawn uniformly
/// from A≺B, B≺A and A∥B.
pub fn random_ordered_comb<R: Rng + ?Sized>(rng: &mut R, c_dim: usize) -> Comb {
    let (order, comb_order) = match rng.random_range(0..3) {
        0 => (CausalOrder::ABeforeB, CombOrder::AThenBThenC),
        1 => (CausalOrder::BBeforeA, CombOrder::BThenAThenC),
        _ => (CausalOrder::AParallelB, CombOrder::AParallelBThenC),
    };
    let gamma = random_ordered_process(rng, order);
    random_comb_over(rng, &gamma, comb_order, c_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::born::trace_preservation_defect;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_produce_valid_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            random_process(&mut rng);
            let ab = random_ordered_process(&mut rng, CausalOrder::ABeforeB);
            assert!(ab.classify().is_a_before_b());
            let ba = random_ordered_process(&mut rng, CausalOrder::BBeforeA);
            assert!(ba.classify().is_b_before_a());
            let comb = random_ordered_comb(&mut rng, 2);
            assert!(comb.op().min_eigenvalue() > -1e-9);
            let choi = random_cptp_choi(&mut rng, "x", "y");
            assert!(trace_preservation_defect(&choi, "y").unwrap() < 1e-10);
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_unitary(&mut rng, 3);
        assert!((&u * u.adjoint() - CMatrix::identity(3, 3)).norm() < 1e-12);
    }
}
