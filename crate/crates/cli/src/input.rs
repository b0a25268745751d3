//! The JSON input format and its translation into verified objects.
//!
//! Complex numbers are `[re, im]`; matrices are arrays of rows.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use coact_core::coaction::{Coaction, GroupAction};
use coact_core::cstar::{BlockAlgebra, StarAlgebra, StarAlgebraPresentation};
use coact_core::hopf::{FiniteGroup, HopfAlgebra, HopfData, HopfPair, PairKind};
use coact_core::linalg::{Matrix, ToleranceConfig, C64};

use crate::CliError;

pub type Complex = [f64; 2];
pub type MatrixRows = Vec<Vec<Complex>>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkbenchInput {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<ToleranceInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupInput>,
    /// Explicit Hopf algebra `H`; coactions are by its dual.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfInput>,
    /// Hopf algebra derived from `group`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf_from_group: Option<GroupHopf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coaction: Option<CoactionInput>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eq_tol: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// `group-algebra`: `H = CG` and coactions of `C(G)`, i.e. group actions.
/// `function-algebra`: `H = C(G)` and coactions of `CG`, i.e. gradings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupHopf {
    GroupAlgebra,
    FunctionAlgebra,
}

/// Either block sizes or explicit structure constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraInput {
    Blocks { blocks: Vec<usize> },
    Presentation(PresentationInput),
}

/// `mult` entries `[i, j, k, c]` mean `b_i b_j` contains `c b_k`. Column `j` of `involution`
/// holds the coordinates of `b_j*`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationInput {
    pub dim: usize,
    pub mult: Vec<(usize, usize, usize, Complex)>,
    pub involution: MatrixRows,
    pub unit: Vec<Complex>,
}

/// `comult` entries `[i, j, k, c]` mean `Δ(b_k)` contains `c b_i ⊗ b_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfInput {
    pub algebra: PresentationInput,
    pub comult: Vec<(usize, usize, usize, Complex)>,
    pub counit: Vec<Complex>,
    pub antipode: MatrixRows,
}

/// One coordinate matrix per group element, in the order of the group table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionInput {
    pub matrices: Vec<MatrixRows>,
}

/// `rho` has `dim A · N` rows and `dim A` columns; row `a * N + k` is the coefficient of
/// `b_a ⊗ φ_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoactionInput {
    pub rho: MatrixRows,
}

/// Objects built from an input, each verified.
#[derive(Debug)]
pub struct Workbench {
    pub name: String,
    pub cfg: ToleranceConfig,
    pub group: Option<FiniteGroup>,
    pub pair: Option<HopfPair>,
    pub algebra: Option<Arc<StarAlgebraPresentation>>,
    pub coaction: Option<Coaction>,
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Invalid(format!("{field}: {msg}"))
}

fn c(z: &Complex) -> C64 {
    C64::new(z[0], z[1])
}

fn vector(field: &str, v: &[Complex]) -> Result<Vec<C64>, CliError> {
    if v.iter().any(|z| !(z[0].is_finite() && z[1].is_finite())) {
        return Err(invalid(field, "non-finite number"));
    }
    Ok(v.iter().map(c).collect())
}

fn matrix(field: &str, rows: &MatrixRows, shape: (usize, usize)) -> Result<Matrix, CliError> {
    if rows.len() != shape.0 {
        return Err(invalid(field, format!("expected {} rows, found {}", shape.0, rows.len())));
    }
    let mut data = Vec::with_capacity(shape.0 * shape.1);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != shape.1 {
            return Err(invalid(field, format!("row {r} has {} entries, expected {}", row.len(), shape.1)));
        }
        data.extend(vector(&format!("{field} row {r}"), row)?);
    }
    Matrix::from_row_major(shape.0, shape.1, data).map_err(|e| invalid(field, e))
}

fn triples(
    field: &str,
    entries: &[(usize, usize, usize, Complex)],
    bound: (usize, usize, usize),
) -> Result<Vec<(usize, usize, usize, C64)>, CliError> {
    entries
        .iter()
        .enumerate()
        .map(|(n, (i, j, k, z))| {
            if *i >= bound.0 || *j >= bound.1 || *k >= bound.2 {
                return Err(invalid(field, format!("entry {n} index ({i}, {j}, {k}) out of range")));
            }
            if !(z[0].is_finite() && z[1].is_finite()) {
                return Err(invalid(field, format!("entry {n} is not finite")));
            }
            Ok((*i, *j, *k, c(z)))
        })
        .collect()
}

fn presentation(
    field: &str,
    p: &PresentationInput,
    cfg: &ToleranceConfig,
) -> Result<StarAlgebraPresentation, CliError> {
    let d = p.dim;
    let t = triples(&format!("{field}.mult"), &p.mult, (d, d, d))?;
    let invol = matrix(&format!("{field}.involution"), &p.involution, (d, d))?;
    let unit = vector(&format!("{field}.unit"), &p.unit)?;
    if unit.len() != d {
        return Err(invalid(&format!("{field}.unit"), format!("expected {d} entries, found {}", unit.len())));
    }
    StarAlgebraPresentation::new_verified(d, t, invol, unit, cfg).map_err(|e| invalid(field, e))
}

fn tolerance(t: Option<ToleranceInput>) -> Result<ToleranceConfig, CliError> {
    let d = ToleranceConfig::default();
    let Some(t) = t else { return Ok(d) };
    ToleranceConfig::new(t.rank_tol.unwrap_or(d.rank_tol), t.eq_tol.unwrap_or(d.eq_tol))
        .map_err(|e| invalid("tolerance", e))
}

/// Parse JSON text. Syntax errors carry line and column.
pub fn parse(text: &str) -> Result<WorkbenchInput, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("parse error: {e}")))
}

impl WorkbenchInput {
    /// Validate every object in dependency order; `cfg_override` replaces the tolerance.
    pub fn build(&self, cfg_override: Option<ToleranceConfig>) -> Result<Workbench, CliError> {
        let cfg = match cfg_override {
            Some(c) => c,
            None => tolerance(self.tolerance)?,
        };
        let group = match &self.group {
            Some(g) => {
                if g.table.len() != g.order {
                    return Err(invalid(
                        "group",
                        format!("order {} but the table has {} rows", g.order, g.table.len()),
                    ));
                }
                Some(FiniteGroup::with_names(g.table.clone(), g.names.clone()).map_err(|e| invalid("group", e))?)
            }
            None => None,
        };
        let pair = match (&self.hopf, self.hopf_from_group) {
            (Some(_), Some(_)) => return Err(invalid("hopf", "give either `hopf` or `hopf_from_group`, not both")),
            (Some(h), None) => {
                let algebra = presentation("hopf.algebra", &h.algebra, &cfg)?;
                let n = algebra.dim();
                let mut comult = Matrix::zeros(n * n, n);
                for (i, j, k, z) in triples("hopf.comult", &h.comult, (n, n, n))? {
                    comult[(i * n + j, k)] += z;
                }
                let counit = vector("hopf.counit", &h.counit)?;
                if counit.len() != n {
                    return Err(invalid("hopf.counit", format!("expected {n} entries, found {}", counit.len())));
                }
                let antipode = matrix("hopf.antipode", &h.antipode, (n, n))?;
                let data = HopfData { algebra, comult, counit, antipode };
                let hopf = HopfAlgebra::new(self.name.clone(), data, &cfg).map_err(|e| invalid("hopf", e))?;
                Some(HopfPair::from_acting(hopf, &cfg).map_err(|e| invalid("hopf", e))?)
            }
            (None, Some(kind)) => {
                let g = group.as_ref().ok_or_else(|| invalid("hopf_from_group", "requires `group`"))?;
                Some(match kind {
                    GroupHopf::GroupAlgebra => HopfPair::for_group_action(g),
                    GroupHopf::FunctionAlgebra => HopfPair::for_group_grading(g),
                })
            }
            (None, None) => None,
        };
        let (algebra, blocks) = match &self.algebra {
            Some(AlgebraInput::Blocks { blocks }) => {
                let b = BlockAlgebra::new(blocks.clone()).map_err(|e| invalid("algebra", e))?;
                (Some(Arc::new(b.presentation())), Some(b))
            }
            Some(AlgebraInput::Presentation(p)) => (Some(Arc::new(presentation("algebra", p, &cfg)?)), None),
            None => (None, None),
        };

        let coaction = match (&self.action, &self.coaction) {
            (Some(_), Some(_)) => return Err(invalid("action", "give either `action` or `coaction`, not both")),
            (Some(act), None) => {
                let g = group.as_ref().ok_or_else(|| invalid("action", "requires `group`"))?;
                let a = algebra.as_ref().ok_or_else(|| invalid("action", "requires `algebra`"))?;
                if act.matrices.len() != g.order() {
                    return Err(invalid(
                        "action",
                        format!("{} matrices for a group of order {}", act.matrices.len(), g.order()),
                    ));
                }
                let d = a.dim();
                let alphas = act
                    .matrices
                    .iter()
                    .enumerate()
                    .map(|(t, m)| matrix(&format!("action.matrices[{t}]"), m, (d, d)))
                    .collect::<Result<Vec<_>, _>>()?;
                let ga = match &blocks {
                    Some(b) => GroupAction::on_blocks(g.clone(), b, alphas, &cfg),
                    None => GroupAction::new(g.clone(), a.clone(), alphas, &cfg),
                }
                .map_err(|e| invalid("action", e))?;
                let pair = match &pair {
                    Some(p) if matches!(p.kind(), PairKind::FunctionAlgebraCoaction(_)) => p.clone(),
                    Some(_) => return Err(invalid("action", "a group action needs `hopf_from_group: group-algebra`")),
                    None => HopfPair::for_group_action(g),
                };
                let c = Coaction::from_group_action_with(self.name.clone(), &ga, pair, &cfg)
                    .map_err(|e| invalid("action", e))?;
                Some(c)
            }
            (None, Some(co)) => {
                let a = algebra.as_ref().ok_or_else(|| invalid("coaction", "requires `algebra`"))?;
                let p = pair.as_ref().ok_or_else(|| invalid("coaction", "requires `hopf` or `hopf_from_group`"))?;
                let (d, n) = (a.dim(), p.dim());
                let rho = matrix("coaction.rho", &co.rho, (d * n, d))?;
                let c = match &blocks {
                    Some(b) => Coaction::on_blocks(self.name.clone(), b, p.clone(), rho, &cfg),
                    None => Coaction::new(self.name.clone(), a.clone(), p.clone(), rho, &cfg),
                }
                .map_err(|e| invalid("coaction", e))?;
                Some(c)
            }
            (None, None) => None,
        };
        Ok(Workbench { name: self.name.clone(), cfg, group, pair, algebra, coaction })
    }
}

fn complex(z: C64) -> Complex {
    [z.re, z.im]
}

fn rows(m: &Matrix) -> MatrixRows {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&z| complex(z)).collect()).collect()
}

pub fn presentation_input(p: &StarAlgebraPresentation) -> PresentationInput {
    PresentationInput {
        dim: p.dim(),
        mult: p.triples().map(|(i, j, k, z)| (i, j, k, complex(z))).collect(),
        involution: rows(p.involution_matrix()),
        unit: p.unit().into_iter().map(complex).collect(),
    }
}

fn hopf_input(h: &HopfAlgebra) -> HopfInput {
    let n = h.dim();
    let mut comult = Vec::new();
    for k in 0..n {
        for (i, j, z) in h.delta_terms(k) {
            comult.push((i, j, k, complex(z)));
        }
    }
    HopfInput {
        algebra: presentation_input(h.algebra()),
        comult,
        counit: h.counit().iter().map(|&z| complex(z)).collect(),
        antipode: rows(h.antipode()),
    }
}

fn group_input(g: &FiniteGroup) -> GroupInput {
    let default = g.names().iter().enumerate().all(|(i, n)| *n == i.to_string());
    GroupInput { order: g.order(), table: g.table().to_vec(), names: (!default).then(|| g.names().to_vec()) }
}

/// Describe a coaction in the input format: as a group action when it is one, otherwise by
/// its structure constants.
pub fn emit_coaction(c: &Coaction) -> WorkbenchInput {
    let algebra = Some(match c.blocks() {
        Some(b) => AlgebraInput::Blocks { blocks: b.block_dims().to_vec() },
        None => AlgebraInput::Presentation(presentation_input(c.algebra())),
    });
    let mut out = WorkbenchInput { name: c.name().to_string(), algebra, ..Default::default() };
    match c.pair().kind() {
        PairKind::FunctionAlgebraCoaction(g) => {
            out.group = Some(group_input(g));
            out.hopf_from_group = Some(GroupHopf::GroupAlgebra);
            let n = g.order();
            out.action = Some(ActionInput { matrices: (0..n).map(|t| rows(&c.slice(t))).collect() });
        }
        PairKind::GroupAlgebraCoaction(g) => {
            out.group = Some(group_input(g));
            out.hopf_from_group = Some(GroupHopf::FunctionAlgebra);
            out.coaction = Some(CoactionInput { rho: rows(c.rho()) });
        }
        PairKind::General => {
            out.hopf = Some(hopf_input(c.pair().acting()));
            out.coaction = Some(CoactionInput { rho: rows(c.rho()) });
        }
    }
    out
}

/// Serialize with stable formatting: objects one key per line, arrays inline when short.
pub fn to_json(input: &WorkbenchInput) -> String {
    let value = serde_json::to_value(input).expect("serializable");
    let mut out = String::new();
    render(&value, 0, &mut out);
    out.push('\n');
    out
}

const INLINE_WIDTH: usize = 96;

fn render(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("string"));
                out.push_str(": ");
                render(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() => {
            let flat = serde_json::to_string(v).expect("serializable");
            if flat.len() <= INLINE_WIDTH && !flat.contains('{') {
                out.push_str(&flat.replace(',', ", "));
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("serializable")),
    }
}
