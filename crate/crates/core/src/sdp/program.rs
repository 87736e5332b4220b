//! Solver-agnostic semidefinite programs over Hermitian operator blocks.
//!
//! A [`ConicProgram`] has Hermitian matrix variables ("blocks"), optional real
//! scalars, and constraints on affine expressions of them: `expr = 0` or
//! `expr ⪰ 0`. Maps acting on blocks are [`LinearMap`]s, i.e. a
//! [`ReplaceMap`] optionally followed by a partial trace.
//!
//! [`ConicProgram::scalarize`] turns the program into the real standard form
//! `min cᵀx + offset  s.t.  A x + s = b,  s ∈ K`. Variables are coordinates in
//! the orthonormal Pauli basis `P_s / √d`, so every Hermitian block of
//! dimension `d` contributes `d²` real columns. A PSD constraint on a `d × d`
//! Hermitian expression `Y` becomes a real PSD triangle cone of order `2d` on
//! the embedding `[[Re Y, -Im Y], [Im Y, Re Y]]`, stored as the upper
//! triangle column by column with off-diagonal entries scaled by `√2`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{pauli_assemble, pauli_expand, Operator, PauliCoefficients, PauliString, ReplaceMap, SpaceLayout};

/// Sparse row as `(column, coefficient)` pairs.
type Row = Vec<(usize, f64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarId(pub usize);

/// `X ↦ tr_D(R(X))` for a replace map `R` and traced-out labels `D`.
#[derive(Clone, Debug, Default)]
pub struct LinearMap {
    replace: ReplaceMap,
    trace_out: Vec<String>,
}

impl LinearMap {
    pub fn identity() -> Self {
        Self::replace(ReplaceMap::identity())
    }

    pub fn replace(map: ReplaceMap) -> Self {
        Self {
            replace: map,
            trace_out: Vec::new(),
        }
    }

    /// Appends a partial trace over `labels`.
    pub fn then_trace(mut self, labels: &[&str]) -> Self {
        self.trace_out.extend(labels.iter().map(|s| s.to_string()));
        self
    }

    pub fn trace_out(&self) -> Vec<&str> {
        self.trace_out.iter().map(String::as_str).collect()
    }

    pub fn output_layout(&self, input: &SpaceLayout) -> Result<SpaceLayout> {
        input.without(&self.trace_out())
    }

    pub fn apply(&self, op: &Operator) -> Result<Operator> {
        let replaced = self.replace.apply(op)?;
        if self.trace_out.is_empty() {
            Ok(replaced)
        } else {
            replaced.partial_trace(&self.trace_out())
        }
    }

    /// Image of the orthonormal basis element `P_s/√d` as `(index of s', weight)`
    /// in the orthonormal basis of the output layout.
    fn pauli_image(&self, s: &PauliString, input: &SpaceLayout) -> Result<Option<(usize, f64)>> {
        let mult = self.replace.pauli_multiplier(s, input)?;
        if mult == 0.0 {
            return Ok(None);
        }
        let mut traced = Vec::with_capacity(self.trace_out.len());
        for label in &self.trace_out {
            traced.push(input.position(label)?);
        }
        if traced.iter().any(|&k| s.0[k] != 0) {
            return Ok(None);
        }
        let kept: Vec<u8> =
            s.0.iter()
                .enumerate()
                .filter(|(k, _)| !traced.contains(k))
                .map(|(_, &p)| p)
                .collect();
        let d_traced = (1usize << traced.len()) as f64;
        Ok(Some((PauliString(kept).index(), mult * d_traced.sqrt())))
    }
}

/// `Σ coeff · map(block) + Σ t · C + K` on a fixed output layout.
#[derive(Clone, Debug)]
pub struct AffineExpr {
    layout: SpaceLayout,
    terms: Vec<(BlockId, f64, LinearMap)>,
    scalars: Vec<(ScalarId, Operator)>,
    constant: Option<Operator>,
}

impl AffineExpr {
    pub fn new(layout: SpaceLayout) -> Self {
        Self {
            layout,
            terms: Vec::new(),
            scalars: Vec::new(),
            constant: None,
        }
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn term(mut self, block: BlockId, coeff: f64, map: LinearMap) -> Self {
        self.terms.push((block, coeff, map));
        self
    }

    pub fn block(self, block: BlockId, coeff: f64) -> Self {
        self.term(block, coeff, LinearMap::identity())
    }

    pub fn scalar(mut self, t: ScalarId, op: Operator) -> Self {
        self.scalars.push((t, op));
        self
    }

    pub fn constant(mut self, op: Operator) -> Self {
        self.constant = Some(match self.constant.take() {
            Some(k) => k + op,
            None => op,
        });
        self
    }

    /// Evaluates the expression at the given block and scalar values.
    pub fn evaluate(&self, blocks: &[Operator], scalars: &[f64]) -> Result<Operator> {
        let mut out = Operator::zeros(self.layout.clone());
        for (id, coeff, map) in &self.terms {
            out += &map.apply(&blocks[id.0])?.scale(*coeff);
        }
        for (id, op) in &self.scalars {
            out += &op.scale(scalars[id.0]);
        }
        if let Some(k) = &self.constant {
            out += k;
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    Zero,
    Psd,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub name: String,
    pub kind: ConstraintKind,
    pub expr: AffineExpr,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub name: String,
    pub layout: SpaceLayout,
}

#[derive(Clone, Debug)]
pub struct Scalar {
    pub name: String,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

/// Minimize `Σ tr(O_k X_k) + Σ d_m t_m + offset`.
#[derive(Clone, Debug, Default)]
pub struct Objective {
    pub blocks: Vec<(BlockId, Operator)>,
    pub scalars: Vec<(ScalarId, f64)>,
    pub offset: f64,
}

#[derive(Clone, Debug, Default)]
pub struct ConicProgram {
    blocks: Vec<Block>,
    scalars: Vec<Scalar>,
    constraints: Vec<Constraint>,
    objective: Objective,
}

impl ConicProgram {
    pub fn new() -> Self {
        Self::default()
    }

    /// A free Hermitian variable.
    pub fn add_block(&mut self, name: &str, layout: SpaceLayout) -> Result<BlockId> {
        layout.require_qubits()?;
        if self.blocks.iter().any(|b| b.name == name) {
            return Err(Error::Program(format!("duplicate block `{name}`")));
        }
        self.blocks.push(Block {
            name: name.to_string(),
            layout,
        });
        Ok(BlockId(self.blocks.len() - 1))
    }

    /// A Hermitian variable constrained to be positive semidefinite.
    pub fn add_psd_block(&mut self, name: &str, layout: SpaceLayout) -> Result<BlockId> {
        let id = self.add_block(name, layout.clone())?;
        self.require_psd(&format!("{name} ⪰ 0"), AffineExpr::new(layout).block(id, 1.0))?;
        Ok(id)
    }

    pub fn add_scalar(&mut self, name: &str, lower: Option<f64>, upper: Option<f64>) -> ScalarId {
        self.scalars.push(Scalar {
            name: name.to_string(),
            lower,
            upper,
        });
        ScalarId(self.scalars.len() - 1)
    }

    pub fn require_zero(&mut self, name: &str, expr: AffineExpr) -> Result<()> {
        self.push(name, ConstraintKind::Zero, expr)
    }

    pub fn require_psd(&mut self, name: &str, expr: AffineExpr) -> Result<()> {
        self.push(name, ConstraintKind::Psd, expr)
    }

    fn push(&mut self, name: &str, kind: ConstraintKind, expr: AffineExpr) -> Result<()> {
        self.check_expr(name, &expr)?;
        self.constraints.push(Constraint {
            name: name.to_string(),
            kind,
            expr,
        });
        Ok(())
    }

    fn check_expr(&self, name: &str, expr: &AffineExpr) -> Result<()> {
        expr.layout.require_qubits()?;
        for (id, _, map) in &expr.terms {
            let block = self
                .blocks
                .get(id.0)
                .ok_or_else(|| Error::Program(format!("`{name}`: unknown block {}", id.0)))?;
            let out = map.output_layout(&block.layout)?;
            if out != expr.layout {
                return Err(Error::Program(format!(
                    "`{name}`: block `{}` maps to {out}, expression lives on {}",
                    block.name, expr.layout
                )));
            }
        }
        for (id, op) in &expr.scalars {
            if id.0 >= self.scalars.len() {
                return Err(Error::Program(format!("`{name}`: unknown scalar {}", id.0)));
            }
            op.require_layout(&expr.layout)?;
            op.require_hermitian()?;
        }
        if let Some(k) = &expr.constant {
            k.require_layout(&expr.layout)?;
            k.require_hermitian()?;
        }
        Ok(())
    }

    pub fn minimize_trace(&mut self, block: BlockId, weight: Operator) -> Result<()> {
        weight.require_layout(&self.blocks[block.0].layout)?;
        weight.require_hermitian()?;
        self.objective.blocks.push((block, weight));
        Ok(())
    }

    pub fn minimize_scalar(&mut self, t: ScalarId, coeff: f64) {
        self.objective.scalars.push((t, coeff));
    }

    pub fn add_offset(&mut self, offset: f64) {
        self.objective.offset += offset;
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn scalars(&self) -> &[Scalar] {
        &self.scalars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    /// Objective value at the given point.
    pub fn objective_value(&self, blocks: &[Operator], scalars: &[f64]) -> f64 {
        let mut v = self.objective.offset;
        for (id, o) in &self.objective.blocks {
            v += o.inner(&blocks[id.0]).re;
        }
        for (id, d) in &self.objective.scalars {
            v += d * scalars[id.0];
        }
        v
    }

    /// Largest violation of any constraint or scalar bound at the given point:
    /// Frobenius norm for equalities, negative part of the smallest eigenvalue
    /// for PSD constraints.
    pub fn constraint_violations(&self, blocks: &[Operator], scalars: &[f64]) -> Result<Vec<(String, f64)>> {
        let mut out = Vec::with_capacity(self.constraints.len());
        for con in &self.constraints {
            let y = con.expr.evaluate(blocks, scalars)?;
            let v = match con.kind {
                ConstraintKind::Zero => y.frobenius_norm(),
                ConstraintKind::Psd => (-y.min_eigenvalue()).max(0.0),
            };
            out.push((con.name.clone(), v));
        }
        for (s, &t) in self.scalars.iter().zip(scalars) {
            let below = s.lower.map_or(0.0, |l| (l - t).max(0.0));
            let above = s.upper.map_or(0.0, |u| (t - u).max(0.0));
            out.push((format!("bounds on {}", s.name), below.max(above)));
        }
        Ok(out)
    }

    fn block_offsets(&self) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.blocks.len());
        let mut n = 0;
        for b in &self.blocks {
            offsets.push(n);
            n += b.layout.total_dim().pow(2);
        }
        (offsets, n)
    }

    /// Pauli coordinates of an affine expression: sparse rows per output
    /// string plus the constant part.
    fn expr_rows(&self, expr: &AffineExpr, offsets: &[usize], n_block_vars: usize) -> Result<(Vec<Row>, Vec<f64>)> {
        let n_out = expr.layout.len();
        let d_out = (1usize << n_out) as f64;
        let m = 4usize.pow(n_out as u32);
        let mut rows: Vec<Row> = vec![Vec::new(); m];
        for (id, coeff, map) in &expr.terms {
            let layout = &self.blocks[id.0].layout;
            let n_in = layout.len();
            for k in 0..4usize.pow(n_in as u32) {
                let s = PauliString::from_index(k, n_in);
                if let Some((row, w)) = map.pauli_image(&s, layout)? {
                    rows[row].push((offsets[id.0] + k, coeff * w));
                }
            }
        }
        for (id, op) in &expr.scalars {
            let coeffs = orthonormal_coords(op)?;
            for (row, v) in coeffs.iter().enumerate() {
                if *v != 0.0 {
                    rows[row].push((n_block_vars + id.0, *v));
                }
            }
        }
        let constant = match &expr.constant {
            Some(k) => orthonormal_coords(k)?,
            None => vec![0.0; m],
        };
        debug_assert!(constant.len() == m && d_out > 0.0);
        Ok((rows, constant))
    }

    /// Real standard form with singleton-row presolve.
    pub fn scalarize(&self) -> Result<StandardForm> {
        let (offsets, n_block_vars) = self.block_offsets();
        let n = n_block_vars + self.scalars.len();

        let mut c = vec![0.0; n];
        for (id, op) in &self.objective.blocks {
            for (k, v) in orthonormal_coords(op)?.into_iter().enumerate() {
                c[offsets[id.0] + k] += v;
            }
        }
        for (id, d) in &self.objective.scalars {
            c[n_block_vars + id.0] += d;
        }

        let mut eq_rows: Vec<(Row, f64, String)> = Vec::new();
        let mut cone_parts: Vec<ConePart> = Vec::new();
        for con in &self.constraints {
            let (rows, constant) = self.expr_rows(&con.expr, &offsets, n_block_vars)?;
            match con.kind {
                ConstraintKind::Zero => {
                    let n_out = con.expr.layout.len();
                    for (k, (row, k0)) in rows.into_iter().zip(constant).enumerate() {
                        let label = format!("{}[{}]", con.name, PauliString::from_index(k, n_out));
                        eq_rows.push((merge(row), -k0, label));
                    }
                }
                ConstraintKind::Psd => {
                    cone_parts.push(psd_rows(&con.expr.layout, &rows, &constant));
                }
            }
        }
        for (k, s) in self.scalars.iter().enumerate() {
            let var = n_block_vars + k;
            // t - l ≥ 0  and  u - t ≥ 0, written as  -t + s = -l  and  t + s = u.
            if let Some(l) = s.lower {
                cone_parts.push(ConePart::nonneg(vec![vec![(var, -1.0)]], vec![-l]));
            }
            if let Some(u) = s.upper {
                cone_parts.push(ConePart::nonneg(vec![vec![(var, 1.0)]], vec![u]));
            }
        }

        let mut names = Vec::with_capacity(n);
        for b in &self.blocks {
            let nq = b.layout.len();
            for k in 0..4usize.pow(nq as u32) {
                names.push(format!("{}[{}]", b.name, PauliString::from_index(k, nq)));
            }
        }
        names.extend(self.scalars.iter().map(|s| s.name.clone()));

        presolve(n, names, c, self.objective.offset, eq_rows, cone_parts)
    }

    /// Reassembles block operators and scalar values from full coordinates.
    pub fn unpack(&self, x: &[f64]) -> (Vec<Operator>, Vec<f64>) {
        let (offsets, n_block_vars) = self.block_offsets();
        let blocks = self
            .blocks
            .iter()
            .zip(&offsets)
            .map(|(b, &off)| {
                let d = b.layout.total_dim();
                let len = d * d;
                from_orthonormal_coords(&b.layout, &x[off..off + len])
            })
            .collect();
        (blocks, x[n_block_vars..].to_vec())
    }

    /// JSON export of the scalarized program.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.scalarize()?)?)
    }
}

/// `tr(M P_s)/√d` for every string `s` (real parts; `M` Hermitian).
pub fn orthonormal_coords(m: &Operator) -> Result<Vec<f64>> {
    let d = m.dim() as f64;
    let w = pauli_expand(m)?;
    Ok(w.as_slice().iter().map(|v| v.re * d.sqrt()).collect())
}

/// Inverse of [`orthonormal_coords`].
pub fn from_orthonormal_coords(layout: &SpaceLayout, x: &[f64]) -> Operator {
    let d = layout.total_dim() as f64;
    let coeffs = x.iter().map(|v| Complex64::new(v / d.sqrt(), 0.0)).collect();
    let coeffs = PauliCoefficients::from_vec(layout, coeffs).expect("one coordinate per string");
    pauli_assemble(&coeffs).hermitian_part()
}

fn merge(mut row: Vec<(usize, f64)>) -> Vec<(usize, f64)> {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, f64)> = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == j => last.1 += v,
            _ => out.push((j, v)),
        }
    }
    out.retain(|e| e.1 != 0.0);
    out
}

/// Column-wise upper-triangle index of `(i, j)`, `i ≤ j`.
pub fn svec_index(i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    j * (j + 1) / 2 + i
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cone {
    Zero {
        dim: usize,
    },
    Nonneg {
        dim: usize,
    },
    /// Real symmetric PSD cone of order `order`, triangle-vectorized.
    PsdTriangle {
        order: usize,
    },
}

impl Cone {
    pub fn rows(&self) -> usize {
        match self {
            Cone::Zero { dim } | Cone::Nonneg { dim } => *dim,
            Cone::PsdTriangle { order } => order * (order + 1) / 2,
        }
    }
}

/// Rows `s = b - A x` belonging to one cone.
struct ConePart {
    cone: Cone,
    rows: Vec<Row>,
    b: Vec<f64>,
}

impl ConePart {
    fn nonneg(rows: Vec<Row>, b: Vec<f64>) -> Self {
        Self {
            cone: Cone::Nonneg { dim: rows.len() },
            rows,
            b,
        }
    }
}

/// `svec(R(Y))` as `b - A x` where `Y = Σ_s (row_s · x + k_s) P_s/√d`.
fn psd_rows(layout: &SpaceLayout, rows: &[Vec<(usize, f64)>], constant: &[f64]) -> ConePart {
    let n = layout.len();
    let d = 1usize << n;
    let order = 2 * d;
    let len = order * (order + 1) / 2;
    let mut embed: Vec<Row> = vec![Vec::new(); len];
    let scale = 1.0 / (d as f64).sqrt();
    let r2 = std::f64::consts::SQRT_2;
    for (k, (row, k0)) in rows.iter().zip(constant).enumerate() {
        if row.is_empty() && *k0 == 0.0 {
            continue;
        }
        let s = PauliString::from_index(k, n);
        for r in 0..d {
            let (col, ph) = s.row_entry(r);
            if r <= col && ph.re != 0.0 {
                let w = ph.re * scale * if r == col { 1.0 } else { r2 };
                embed[svec_index(r, col)].push((k, w));
                embed[svec_index(r + d, col + d)].push((k, w));
            }
            if ph.im != 0.0 {
                embed[svec_index(r, col + d)].push((k, -ph.im * scale * r2));
            }
        }
    }
    let mut a_rows = Vec::with_capacity(len);
    let mut b = Vec::with_capacity(len);
    for entries in embed {
        let mut row = Vec::new();
        let mut bv = 0.0;
        for (k, w) in entries {
            row.extend(rows[k].iter().map(|&(j, v)| (j, -w * v)));
            bv += w * constant[k];
        }
        a_rows.push(merge(row));
        b.push(bv);
    }
    ConePart {
        cone: Cone::PsdTriangle { order },
        rows: a_rows,
        b,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Triplets {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)` with zero-based indices.
    pub entries: Vec<(usize, usize, f64)>,
}

/// `min cᵀx + offset  s.t.  A x + s = b,  s ∈ K` over the columns that
/// survive presolve.
#[derive(Clone, Debug, Serialize)]
pub struct StandardForm {
    /// Names of the surviving columns.
    pub variables: Vec<String>,
    pub cones: Vec<Cone>,
    pub a: Triplets,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub offset: f64,
    /// Number of coordinates before presolve.
    pub full_dim: usize,
    /// Original index of each surviving column.
    pub columns: Vec<usize>,
    /// Coordinates fixed by presolve.
    pub fixed: Vec<(usize, f64)>,
    /// Set when presolve found an equality with no variables and a nonzero
    /// right-hand side.
    pub inconsistent: Option<String>,
}

impl StandardForm {
    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }

    /// Full coordinate vector from a solution over the surviving columns.
    pub fn expand(&self, x: &[f64]) -> Vec<f64> {
        let mut full = vec![0.0; self.full_dim];
        for (k, &j) in self.columns.iter().enumerate() {
            full[j] = x[k];
        }
        for &(j, v) in &self.fixed {
            full[j] = v;
        }
        full
    }
}

/// Equalities that touch a single unfixed variable fix it; repeat until
/// nothing changes, then drop empty rows and unused columns.
const PRESOLVE_TOL: f64 = 1e-10;

fn presolve(
    n: usize,
    names: Vec<String>,
    c: Vec<f64>,
    offset: f64,
    eq_rows: Vec<(Row, f64, String)>,
    cone_parts: Vec<ConePart>,
) -> Result<StandardForm> {
    let mut value: Vec<Option<f64>> = vec![None; n];
    let mut done = vec![false; eq_rows.len()];
    let mut inconsistent = None;
    let rhs_of = |row: &[(usize, f64)], b: f64, value: &[Option<f64>]| {
        row.iter()
            .filter_map(|&(j, a)| value[j].map(|v| a * v))
            .fold(b, |acc, x| acc - x)
    };
    loop {
        let mut changed = false;
        for (k, (row, b, _)) in eq_rows.iter().enumerate() {
            if done[k] {
                continue;
            }
            let free: Vec<&(usize, f64)> = row.iter().filter(|(j, _)| value[*j].is_none()).collect();
            if free.len() == 1 {
                let (j, a) = *free[0];
                value[j] = Some(rhs_of(row, *b, &value) / a);
                done[k] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut kept_eq: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();
    for (k, (row, b, label)) in eq_rows.iter().enumerate() {
        if done[k] {
            continue;
        }
        let rhs = rhs_of(row, *b, &value);
        let free: Vec<(usize, f64)> = row.iter().copied().filter(|(j, _)| value[*j].is_none()).collect();
        if free.is_empty() {
            if rhs.abs() > PRESOLVE_TOL && inconsistent.is_none() {
                inconsistent = Some(format!("{label}: 0 = {rhs:.3e}"));
            }
            continue;
        }
        kept_eq.push((free, rhs));
    }
    // Rows already satisfied by fixed values are recorded as done; check them too.
    for (k, (row, b, label)) in eq_rows.iter().enumerate() {
        if done[k] {
            let r = rhs_of(row, *b, &value);
            if r.abs() > PRESOLVE_TOL * (1.0 + b.abs()) && inconsistent.is_none() {
                inconsistent = Some(format!("{label}: residual {r:.3e}"));
            }
        }
    }

    let mut used = vec![false; n];
    for (row, _) in &kept_eq {
        for &(j, _) in row {
            used[j] = true;
        }
    }
    for part in &cone_parts {
        for row in &part.rows {
            for &(j, _) in row {
                if value[j].is_none() {
                    used[j] = true;
                }
            }
        }
    }
    for j in 0..n {
        if value[j].is_none() && !used[j] {
            if c[j] != 0.0 {
                // Unconstrained with nonzero cost; keep so the solver reports it.
                used[j] = true;
            } else {
                value[j] = Some(0.0);
            }
        }
    }
    let columns: Vec<usize> = (0..n).filter(|&j| value[j].is_none()).collect();
    let mut new_index = vec![usize::MAX; n];
    for (k, &j) in columns.iter().enumerate() {
        new_index[j] = k;
    }
    let fixed: Vec<(usize, f64)> = (0..n).filter_map(|j| value[j].map(|v| (j, v))).collect();
    let offset = offset + fixed.iter().map(|&(j, v)| c[j] * v).sum::<f64>();

    let mut entries = Vec::new();
    let mut b = Vec::new();
    let mut cones = Vec::new();
    let push_row = |row: &[(usize, f64)], rhs: f64, entries: &mut Vec<(usize, usize, f64)>, b: &mut Vec<f64>| {
        let i = b.len();
        let mut r = rhs;
        for &(j, a) in row {
            match value[j] {
                Some(v) => r -= a * v,
                None => entries.push((i, new_index[j], a)),
            }
        }
        b.push(r);
    };
    if !kept_eq.is_empty() {
        cones.push(Cone::Zero { dim: kept_eq.len() });
        for (row, rhs) in &kept_eq {
            push_row(row, *rhs, &mut entries, &mut b);
        }
    }
    for part in &cone_parts {
        cones.push(part.cone.clone());
        for (row, rhs) in part.rows.iter().zip(&part.b) {
            push_row(row, *rhs, &mut entries, &mut b);
        }
    }
    Ok(StandardForm {
        variables: columns.iter().map(|&j| names[j].clone()).collect(),
        c: columns.iter().map(|&j| c[j]).collect(),
        a: Triplets {
            rows: b.len(),
            cols: columns.len(),
            entries,
        },
        b,
        cones,
        offset,
        full_dim: n,
        columns,
        fixed,
        inconsistent,
    })
}
