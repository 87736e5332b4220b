use std::f64::consts::FRAC_1_SQRT_2;

use super::ProcessMatrix;
use crate::tensor::{pauli_operator, Operator, SpaceLayout, A_I, A_O, B_I, B_O};
use crate::{Error, Result};

/// `¼[1 + (σ^z_{A_O}σ^z_{B_I} + σ^z_{A_I}σ^x_{B_I}σ^z_{B_O})/√2]`.
pub fn w_ocb() -> ProcessMatrix {
    let a = 0.25 * FRAC_1_SQRT_2;
    let op =
        pauli_operator(&SpaceLayout::process(), &[("0000", 0.25), ("0zz0", a), ("z0xz", a)]).expect("static terms");
    ProcessMatrix::new(op).expect("W_OCB is valid")
}

/// `W# = ½·1 - W_OCB`.
pub fn w_sharp() -> ProcessMatrix {
    let half = Operator::identity(SpaceLayout::process()).scale(0.5);
    ProcessMatrix::new(&half - w_ocb().op()).expect("W# is valid")
}

/// `1/4`, the parallel process with maximally mixed inputs.
pub fn parallel() -> ProcessMatrix {
    ProcessMatrix::new(Operator::identity(SpaceLayout::process()).scale(0.25)).expect("valid")
}

/// `½1_{A_I} ⊗ [r Φ̃⁺_{A_O B_I} + (1-r)/2 · 1_{A_O B_I}] ⊗ 1_{B_O}`, a
/// full-rank A≺B process.
pub fn markovian_full_rank(r: f64) -> Result<ProcessMatrix> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::OutOfRange(format!("r = {r} not in (0, 1)")));
    }
    let channel = &super::born::phi_plus(A_O, B_I, 2).scale(r)
        + &Operator::identity(SpaceLayout::qubits(&[A_O, B_I])).scale((1.0 - r) / 2.0);
    let op = Operator::identity(SpaceLayout::qubits(&[A_I]))
        .scale(0.5)
        .kron(&channel)?
        .kron(&Operator::identity(SpaceLayout::qubits(&[B_O])))?;
    ProcessMatrix::new(op)
}

/// `D = Σ_l |l><l| ⊗ |l><l|`, the Choi operator of the completely dephasing qubit channel.
pub fn dephasing_choi(input: &str, output: &str) -> Operator {
    Operator::diagonal(SpaceLayout::qubits(&[input, output]), &[1.0, 0.0, 0.0, 1.0]).expect("dimension 4")
}

/// `½1_{A_I} ⊗ D_{A_O B_I} ⊗ 1_{B_O}`: Alice's output reaches Bob through a
/// dephasing channel. Diagonal and A≺B.
pub fn classical_channel_a_to_b() -> ProcessMatrix {
    let op = Operator::identity(SpaceLayout::qubits(&[A_I]))
        .scale(0.5)
        .kron(&dephasing_choi(A_O, B_I))
        .and_then(|m| m.kron(&Operator::identity(SpaceLayout::qubits(&[B_O]))))
        .expect("distinct labels");
    ProcessMatrix::new(op).expect("valid")
}

/// `1_{A_O} ⊗ D_{A_I B_O} ⊗ |b><b|_{B_I}`: Bob prepares `b`'s partner
/// state and signals to Alice through a dephasing channel. Diagonal and B≺A.
pub fn classical_channel_b_to_a(b_input: usize) -> Result<ProcessMatrix> {
    if b_input > 1 {
        return Err(Error::OutOfRange(format!("B_I basis state {b_input}")));
    }
    let mut diag = [0.0; 2];
    diag[b_input] = 1.0;
    let op = Operator::identity(SpaceLayout::qubits(&[A_O]))
        .kron(&dephasing_choi(A_I, B_O))?
        .kron(&Operator::diagonal(SpaceLayout::qubits(&[B_I]), &diag)?)?;
    ProcessMatrix::new(op)
}

/// `p_C(0) = 1/(d_{A_I} d_{B_I} λ_max(W))`, the largest `p` with `1/4 - pW ⪰ 0`.
pub fn success_probability(w: &ProcessMatrix) -> f64 {
    1.0 / (4.0 * w.op().max_eigenvalue())
}

/// Builds a process from a name such as `w_ocb`, `w_sharp`, `parallel`,
/// `markovian:r=0.5`, `markovian_mirror:r=0.5`, `classical_ab` or
/// `classical_ba:b=0`.
pub fn named_process(text: &str) -> Result<ProcessMatrix> {
    let (name, args) = match text.split_once(':') {
        Some((n, a)) => (n.trim(), a.trim()),
        None => (text.trim(), ""),
    };
    let mut params = std::collections::BTreeMap::new();
    for pair in args.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{pair}`")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("`{v}` is not a number")))?;
        params.insert(k.trim().to_string(), v);
    }
    let get = |key: &str, default: f64| params.get(key).copied().unwrap_or(default);
    match name {
        "w_ocb" => Ok(w_ocb()),
        "w_sharp" => Ok(w_sharp()),
        "parallel" => Ok(parallel()),
        "markovian" => markovian_full_rank(get("r", 0.5)),
        "markovian_mirror" => Ok(markovian_full_rank(get("r", 0.5))?.mirror()),
        "classical_ab" => Ok(classical_channel_a_to_b()),
        "classical_ba" => classical_channel_b_to_a(get("b", 0.0) as usize),
        other => Err(Error::Parse(format!("unknown process `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::CausalOrder;

    #[test]
    fn ocb_and_sharp_are_orthogonal() {
        let prod = w_ocb().op().compose(w_sharp().op());
        assert!(prod.frobenius_norm() < 1e-12);
    }

    #[test]
    fn ocb_spectrum() {
        let e = w_ocb().op().eig_hermitian().unwrap();
        for (k, v) in e.values.iter().enumerate() {
            let want = if k < 8 { 0.0 } else { 0.5 };
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn markovian_is_strictly_a_before_b() {
        let w = markovian_full_rank(0.5).unwrap();
        let class = w.classify();
        assert_eq!(class.order, CausalOrder::ABeforeB);
        assert!(class.strictly_a_before_b());
        assert!(w.op().min_eigenvalue() > 0.0);
        let m = w.mirror().classify();
        assert!(m.strictly_b_before_a());
    }

    #[test]
    fn markovian_range() {
        assert!(markovian_full_rank(0.0).is_err());
        assert!(markovian_full_rank(1.0).is_err());
        assert!(markovian_full_rank(1.0 - 1e-6).unwrap().op().min_eigenvalue() > 0.0);
    }

    #[test]
    fn classical_processes() {
        assert!(classical_channel_a_to_b().classify().strictly_a_before_b());
        assert!(classical_channel_b_to_a(0).unwrap().classify().strictly_b_before_a());
    }

    #[test]
    fn success_probabilities() {
        assert!((success_probability(&w_ocb()) - 0.5).abs() < 1e-12);
        assert!((success_probability(&parallel()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn names() {
        assert_eq!(named_process("w_ocb").unwrap(), w_ocb());
        assert_eq!(
            named_process("markovian:r=0.25").unwrap(),
            markovian_full_rank(0.25).unwrap()
        );
        assert!(named_process("nope").is_err());
        assert!(named_process("markovian:r").is_err());
    }
}
