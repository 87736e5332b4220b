use crate::tensor::{pauli_expand, Operator, PauliString, ReplaceMap, SpaceLayout, A_I, A_O, B_I, B_O};

/// Default tolerance for validity checks.
pub const VALIDITY_TOL: f64 = 1e-9;

/// Normalization of a two-qubit-party process: `tr W = d_{A_O} d_{B_O}`.
pub const PROCESS_TRACE: f64 = 4.0;

/// The validity projector
/// `L_V = _{A_O} + _{B_O} - _{A_O B_O} - _{B_I B_O} + _{A_O B_I B_O} - _{A_I A_O} + _{A_I A_O B_O}`.
pub fn lv_map() -> ReplaceMap {
    ReplaceMap::new()
        .plus(1.0, &[A_O])
        .plus(1.0, &[B_O])
        .plus(-1.0, &[A_O, B_O])
        .plus(-1.0, &[B_I, B_O])
        .plus(1.0, &[A_O, B_I, B_O])
        .plus(-1.0, &[A_I, A_O])
        .plus(1.0, &[A_I, A_O, B_O])
}

/// Applies `L_V` to an operator on `[A_I, A_O, B_I, B_O]`.
pub fn project_lv(w: &Operator) -> crate::Result<Operator> {
    w.require_layout(&SpaceLayout::process())?;
    lv_map().apply(w)
}

/// Residuals of the three validity conditions.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ValidityReport {
    pub hermiticity_defect: f64,
    pub min_eigenvalue: f64,
    pub trace: f64,
    /// `|tr W - 4|`.
    pub trace_residual: f64,
    /// `|L_V(W) - W|_F`.
    pub lv_residual: f64,
    pub tol: f64,
}

impl ValidityReport {
    pub fn is_positive(&self) -> bool {
        self.min_eigenvalue >= -self.tol
    }

    pub fn is_normalized(&self) -> bool {
        self.trace_residual <= self.tol
    }

    pub fn in_valid_subspace(&self) -> bool {
        self.lv_residual <= self.tol
    }

    pub fn is_valid(&self) -> bool {
        self.hermiticity_defect <= crate::tensor::HERMITICITY_TOL
            && self.is_positive()
            && self.is_normalized()
            && self.in_valid_subspace()
    }

    /// One-line summary of the failed conditions, empty when valid.
    pub fn failures(&self) -> String {
        let mut out = Vec::new();
        if self.hermiticity_defect > crate::tensor::HERMITICITY_TOL {
            out.push(format!("not Hermitian ({:.3e})", self.hermiticity_defect));
        }
        if !self.is_positive() {
            out.push(format!("min eigenvalue {:.3e}", self.min_eigenvalue));
        }
        if !self.is_normalized() {
            out.push(format!("trace {:.12}", self.trace));
        }
        if !self.in_valid_subspace() {
            out.push(format!("L_V residual {:.3e}", self.lv_residual));
        }
        out.join(", ")
    }
}

/// Checks positivity, normalization and the `L_V` fixed point, each within `tol`.
///
/// Never fails: a wrong layout is reported as an infinite residual.
pub fn validity_report(w: &Operator, tol: f64) -> ValidityReport {
    let hermiticity_defect = w.hermiticity_defect();
    let trace = w.trace_re();
    let lv_residual = match project_lv(w) {
        Ok(p) => p.distance(w),
        Err(_) => f64::INFINITY,
    };
    ValidityReport {
        hermiticity_defect,
        min_eigenvalue: w.min_eigenvalue(),
        trace,
        trace_residual: (trace - PROCESS_TRACE).abs(),
        lv_residual,
        tol,
    }
}

/// `(valid, diagnostics)` at the default tolerance.
pub fn is_valid_process(w: &Operator) -> (bool, ValidityReport) {
    let report = validity_report(w, VALIDITY_TOL);
    (report.is_valid(), report)
}

/// Support patterns (positions in `A_I, A_O, B_I, B_O`) of the Pauli strings
/// that may not appear in a valid process matrix.
pub const FORBIDDEN_SUPPORTS: [&[usize]; 8] = [
    &[1],
    &[3],
    &[1, 3],
    &[0, 1],
    &[2, 3],
    &[0, 1, 3],
    &[1, 2, 3],
    &[0, 1, 2, 3],
];

/// Name of a forbidden support pattern, e.g. `A_OB_IB_O`.
pub fn support_name(support: &[usize]) -> String {
    support.iter().map(|&k| [A_I, A_O, B_I, B_O][k]).collect()
}

/// All forbidden four-qubit Pauli strings, in base-4 index order.
pub fn forbidden_strings() -> Vec<PauliString> {
    let strings: Vec<PauliString> = (0..256)
        .map(|k| PauliString::from_index(k, 4))
        .filter(|s| FORBIDDEN_SUPPORTS.contains(&s.support().as_slice()))
        .collect();
    assert_eq!(strings.len(), 168, "forbidden Pauli list must have 168 strings");
    strings
}

/// A forbidden string with a non-vanishing coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct ForbiddenTerm {
    pub string: PauliString,
    /// Support pattern name, e.g. `B_O` or `A_IA_O`.
    pub kind: String,
    pub coefficient: f64,
}

/// `(true, [])` when every forbidden coefficient vanishes within `tol`.
pub fn forbidden_term_check(w: &Operator, tol: f64) -> crate::Result<(bool, Vec<ForbiddenTerm>)> {
    w.require_layout(&SpaceLayout::process())?;
    let coeffs = pauli_expand(w)?;
    let violations: Vec<ForbiddenTerm> = forbidden_strings()
        .into_iter()
        .filter_map(|s| {
            let value = coeffs.get(&s);
            (value.norm() > tol).then(|| ForbiddenTerm {
                kind: support_name(&s.support()),
                coefficient: value.norm(),
                string: s,
            })
        })
        .collect();
    Ok((violations.is_empty(), violations))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forbidden_list_is_exactly_the_lv_kernel() {
        let layout = SpaceLayout::process();
        let map = lv_map();
        let forbidden = forbidden_strings();
        for k in 0..256 {
            let s = PauliString::from_index(k, 4);
            let m = map.pauli_multiplier(&s, &layout).unwrap();
            let expected = if forbidden.contains(&s) { 0.0 } else { 1.0 };
            assert!((m - expected).abs() < 1e-15, "string {s}: multiplier {m}");
        }
    }

    #[test]
    fn maximally_mixed_is_valid() {
        let w = Operator::identity(SpaceLayout::process()).scale(0.25);
        let (ok, report) = is_valid_process(&w);
        assert!(ok, "{}", report.failures());
    }

    #[test]
    fn output_term_is_forbidden() {
        let layout = SpaceLayout::process();
        let w = PauliString::parse("000z").unwrap().operator(&layout).unwrap();
        let (ok, terms) = forbidden_term_check(&w, 1e-9).unwrap();
        assert!(!ok);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].kind, "B_O");
    }

    #[test]
    fn wrong_layout_is_reported_not_thrown() {
        let w = Operator::identity(SpaceLayout::qubits(&[A_I, A_O]));
        let (ok, report) = is_valid_process(&w);
        assert!(!ok);
        assert!(report.lv_residual.is_infinite());
    }
}
