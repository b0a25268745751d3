//! Commands and their reports. Text output is fixed-format and free of timing unless asked for,
//! so identical inputs give identical bytes.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use coact_core::checks::{
    center_tau, exact_rokhlin_search, group_action_free, intertwiner_space, is_free_with, is_outer, is_saturated,
    theorem_suite, CellStatus, FreenessReport, GroupFreenessReport, OuterVerdict, RokhlinDiagnostic, SaturationReport,
    SuiteReport, SUITE_CHECKS,
};
use coact_core::coaction::{Coaction, CoactionReport};
use coact_core::crossed::{relative_commutant, CrossedProduct, E1Report};
use coact_core::cstar::{center, wedderburn, StarAlgebra};
use coact_core::hopf::PairKind;
use coact_core::linalg::{serde_complex, ToleranceConfig, C64};
use coact_core::{catalog, Error};

use crate::input::{emit_coaction, to_json, Workbench};
use crate::{load, require_coaction, CliError, EXIT_INTERNAL, EXIT_OK};

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Validate,
    Free,
    Outer,
    Saturated,
    Crossed { emit: Option<PathBuf> },
    Commutant,
    CondExp,
    RokhlinDiagnostic,
    Suite,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Free => "free",
            Command::Outer => "outer",
            Command::Saturated => "saturated",
            Command::Crossed { .. } => "crossed",
            Command::Commutant => "commutant",
            Command::CondExp => "cond-exp",
            Command::RokhlinDiagnostic => "rokhlin-diagnostic",
            Command::Suite => "suite",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub json: bool,
    pub timing: bool,
    /// Replaces the tolerance given in the input.
    pub tol: Option<ToleranceConfig>,
}

/// Rendered report and the exit code it implies.
#[derive(Clone, Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

#[derive(Serialize)]
struct VerdictReport<T: Serialize> {
    command: &'static str,
    input: String,
    tolerance: ToleranceConfig,
    result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    runtime_ms: Option<f64>,
}

#[derive(Serialize)]
struct ValidateResult {
    group_order: Option<usize>,
    hopf_dim: Option<usize>,
    algebra_dim: Option<usize>,
    algebra_blocks: Option<Vec<usize>>,
    coaction: Option<CoactionReport>,
}

#[derive(Serialize)]
struct FreeResult {
    #[serde(flatten)]
    report: FreenessReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    group_action: Option<GroupFreenessReport>,
    /// An intertwiner outside `Z(A) ⊗ ℂτ`, present when the coaction is not free.
    #[serde(with = "serde_complex", skip_serializing_if = "Vec::is_empty")]
    witness: Vec<C64>,
}

#[derive(Serialize)]
struct CrossedResult {
    dim: usize,
    blocks: Vec<usize>,
    product_rule_residual: f64,
    dual_coaction_verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    emitted: Option<String>,
}

#[derive(Serialize)]
struct CommutantResult {
    relative_commutant_dim: usize,
    center_dim: usize,
    /// `dim (A ⋊ H)′ ∩ (A ⋊ H ⋊ H⁰)`, computed on the iterated crossed product.
    iterated_commutant_dim: usize,
    dimensions_equal: bool,
}

#[derive(Serialize)]
struct CondExpResult {
    #[serde(flatten)]
    e1: E1Report,
    passed: bool,
    slice_dim: usize,
    unique: bool,
}

/// Run `cmd` on `sources` (files or catalog names). Invalid input and internal errors come back
/// as `Err`; completed computations give an [`Output`] with its exit code.
pub fn run(cmd: &Command, sources: &[String], opts: &Options) -> Result<Output, CliError> {
    let start = Instant::now();
    if *cmd == Command::Suite {
        return suite(sources, opts, start);
    }
    let [source] = sources else {
        return Err(CliError::Invalid(format!("`{}` takes exactly one input", cmd.name())));
    };
    let wb = load(source)?.build(opts.tol)?;
    let cfg = wb.cfg;
    macro_rules! finish {
        ($result:expr, $text:expr) => {{
            let result = $result;
            let mut text: String = $text(&wb, &result);
            let runtime_ms = opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            if opts.json {
                let r =
                    VerdictReport { command: cmd.name(), input: wb.name.clone(), tolerance: cfg, result, runtime_ms };
                text = serde_json::to_string_pretty(&r).expect("serializable");
                text.push('\n');
            } else if let Some(ms) = runtime_ms {
                let _ = writeln!(text, "runtime: {ms:.1} ms");
            }
            Ok(Output { text, code: EXIT_OK })
        }};
    }
    match cmd {
        Command::Validate => finish!(validate(&wb)?, validate_text),
        Command::Free => {
            let c = require_coaction(&wb)?;
            let cp = CrossedProduct::build(c, &cfg)?;
            finish!(free(c, &cp, &cfg)?, free_text)
        }
        Command::Outer => finish!(is_outer(require_coaction(&wb)?, &cfg)?, outer_text),
        Command::Saturated => finish!(is_saturated(require_coaction(&wb)?, &cfg)?, saturated_text),
        Command::Crossed { emit } => finish!(crossed(require_coaction(&wb)?, emit.as_deref(), &cfg)?, crossed_text),
        Command::Commutant => finish!(commutant(require_coaction(&wb)?, &cfg)?, commutant_text),
        Command::CondExp => finish!(cond_exp(require_coaction(&wb)?, &cfg)?, cond_exp_text),
        Command::RokhlinDiagnostic => {
            finish!(exact_rokhlin_search(require_coaction(&wb)?, &cfg)?, rokhlin_text)
        }
        Command::Suite => unreachable!(),
    }
}

fn validate(wb: &Workbench) -> Result<ValidateResult, CliError> {
    let blocks = match &wb.algebra {
        Some(a) => Some(wedderburn(a, &wb.cfg)?.block_sizes().to_vec()),
        None => None,
    };
    Ok(ValidateResult {
        group_order: wb.group.as_ref().map(|g| g.order()),
        hopf_dim: wb.pair.as_ref().map(|p| p.dim()).or(wb.coaction.as_ref().map(|c| c.dim_h())),
        algebra_dim: wb.algebra.as_ref().map(|a| a.dim()),
        algebra_blocks: blocks,
        coaction: wb.coaction.as_ref().map(|c| c.report().clone()),
    })
}

fn free(c: &Coaction, cp: &CrossedProduct, cfg: &ToleranceConfig) -> Result<FreeResult, Error> {
    let report = is_free_with(c, cp, cfg)?;
    let group_action = match c.pair().kind() {
        PairKind::FunctionAlgebraCoaction(_) => Some(group_action_free(&c.group_action(cfg)?, cfg)),
        _ => None,
    };
    let mut witness = Vec::new();
    if !report.free {
        let zt = center_tau(c, cfg)?;
        let space = intertwiner_space(c, cfg);
        let mut best = 0.0;
        for v in space.basis() {
            let r = zt.residual(v);
            if r > best {
                best = r;
                witness = v.clone();
            }
        }
    }
    Ok(FreeResult { report, group_action, witness })
}

fn crossed(c: &Coaction, emit: Option<&std::path::Path>, cfg: &ToleranceConfig) -> Result<CrossedResult, CliError> {
    let cp = CrossedProduct::build(c, cfg)?;
    let blocks = cp.wedderburn()?.block_sizes().to_vec();
    let product_rule_residual = cp.product_rule_residual()?;
    let dual = cp.dual_coaction()?;
    let emitted = match emit {
        Some(path) => {
            let mut out = emit_coaction(&dual);
            out.name = format!("{}-crossed", c.name());
            std::fs::write(path, to_json(&out))
                .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?;
            Some(path.display().to_string())
        }
        None => None,
    };
    Ok(CrossedResult { dim: cp.dim(), blocks, product_rule_residual, dual_coaction_verified: true, emitted })
}

fn commutant(c: &Coaction, cfg: &ToleranceConfig) -> Result<CommutantResult, Error> {
    let cp = CrossedProduct::build(c, cfg)?;
    let rc = relative_commutant(&cp, cfg).dim();
    let iterated = relative_commutant(&cp.iterate()?, cfg).dim();
    Ok(CommutantResult {
        relative_commutant_dim: rc,
        center_dim: center(c.algebra(), cfg).dim(),
        iterated_commutant_dim: iterated,
        dimensions_equal: rc == iterated,
    })
}

fn cond_exp(c: &Coaction, cfg: &ToleranceConfig) -> Result<CondExpResult, Error> {
    let cp = CrossedProduct::build(c, cfg)?;
    let e1 = cp.e1_report()?;
    let passed = e1.passed(cfg);
    let f = is_free_with(c, &cp, cfg)?;
    Ok(CondExpResult { e1, passed, slice_dim: f.slice_dim, unique: f.cond_exp_unique })
}

fn fmt_vec(v: &[C64]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|z| {
            let (re, im) = (clean(z.re), clean(z.im));
            if im == 0.0 {
                format!("{re:.6}")
            } else {
                format!("{re:.6}{im:+.6}i")
            }
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

// avoid printing -0.000000
fn clean(x: f64) -> f64 {
    if x.abs() < 5e-7 {
        0.0
    } else {
        x
    }
}

fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "  {key:<24}{value}");
}

fn validate_text(wb: &Workbench, r: &ValidateResult) -> String {
    let mut s = format!("{}: valid\n", wb.name);
    if let Some(n) = r.group_order {
        line(&mut s, "group order", n);
    }
    if let Some(n) = r.hopf_dim {
        line(&mut s, "hopf dim", n);
    }
    if let (Some(d), Some(b)) = (r.algebra_dim, &r.algebra_blocks) {
        line(&mut s, "algebra dim", d);
        line(&mut s, "algebra blocks", format!("{b:?}"));
    }
    if let Some(c) = &r.coaction {
        line(&mut s, "homomorphism residual", format!("{:.3e}", c.homomorphism.max_residual()));
        line(&mut s, "span", format!("{}/{}", c.span_dim, c.span_expected));
        line(&mut s, "counit residual", format!("{:.3e}", c.counit));
        line(&mut s, "coassociativity", format!("{:.3e}", c.coassociativity));
    }
    s
}

fn free_text(wb: &Workbench, r: &FreeResult) -> String {
    let f = &r.report;
    let mut s =
        format!("{}: free={} intertwiner dims {}/{}\n", wb.name, f.free, f.intertwiner_dim, f.expected_space_dim);
    line(&mut s, "containment residual", format!("{:.3e}", f.containment_residual));
    line(&mut s, "relative commutant dim", f.relative_commutant_dim);
    line(&mut s, "commutant route free", f.commutant_route_free);
    line(&mut s, "slice dim", f.slice_dim);
    line(&mut s, "E1 unique", f.cond_exp_unique);
    line(&mut s, "routes agree", f.agreement);
    if let Some(g) = &r.group_action {
        let dims: Vec<String> = g.intertwiner_dims.iter().map(|(t, d)| format!("{t}:{d}")).collect();
        line(&mut s, "group action free", g.free);
        line(&mut s, "per-element dims", dims.join(" "));
    }
    if !r.witness.is_empty() {
        line(&mut s, "witness", fmt_vec(&r.witness));
    }
    s
}

fn outer_text(wb: &Workbench, v: &OuterVerdict) -> String {
    let mut s = format!("{}: {}\n", wb.name, v.label());
    match v {
        OuterVerdict::Outer { reason } | OuterVerdict::Inconclusive { reason } => line(&mut s, "reason", reason),
        OuterVerdict::NotOuter { subgroup, witness, check } => {
            line(&mut s, "subgroup", format!("{subgroup:?}"));
            line(&mut s, "witness", fmt_vec(witness));
            line(&mut s, "conjugation residual", format!("{:.3e}", check.conjugation));
            line(&mut s, "cocycle residual", format!("{:.3e}", check.cocycle));
            line(&mut s, "witness check", if check.passed { "passed" } else { "failed" });
        }
    }
    s
}

fn saturated_text(wb: &Workbench, r: &SaturationReport) -> String {
    let mut s = format!("{}: saturated={}\n", wb.name, r.saturated);
    line(&mut s, "rank dual image", format!("{:?}", r.rank_dual_image));
    line(&mut s, "rank amplified", format!("{:?}", r.rank_amplified));
    s
}

fn crossed_text(wb: &Workbench, r: &CrossedResult) -> String {
    let mut s = format!("{}: crossed product of dim {}\n", wb.name, r.dim);
    line(&mut s, "blocks", format!("{:?}", r.blocks));
    line(&mut s, "product rule residual", format!("{:.3e}", r.product_rule_residual));
    line(&mut s, "dual coaction", if r.dual_coaction_verified { "verified" } else { "failed" });
    if let Some(p) = &r.emitted {
        line(&mut s, "emitted", p);
    }
    s
}

fn commutant_text(wb: &Workbench, r: &CommutantResult) -> String {
    let mut s = format!("{}: relative commutant dim {}\n", wb.name, r.relative_commutant_dim);
    line(&mut s, "center dim", r.center_dim);
    line(&mut s, "iterated commutant dim", r.iterated_commutant_dim);
    line(&mut s, "dimensions equal", r.dimensions_equal);
    s
}

fn cond_exp_text(wb: &Workbench, r: &CondExpResult) -> String {
    let mut s = format!("{}: E1 {}\n", wb.name, if r.passed { "passed" } else { "failed" });
    line(&mut s, "idempotence", format!("{:.3e}", r.e1.idempotence));
    line(&mut s, "bimodule", format!("{:.3e}", r.e1.bimodule));
    line(&mut s, "gram min eigenvalue", format!("{:.6e}", r.e1.gram_min_eigenvalue));
    line(&mut s, "gram hermiticity", format!("{:.3e}", r.e1.gram_hermiticity));
    line(&mut s, "gram cholesky", r.e1.gram_cholesky);
    line(&mut s, "slice dim", r.slice_dim);
    line(&mut s, "unique", r.unique);
    s
}

fn rokhlin_text(wb: &Workbench, r: &RokhlinDiagnostic) -> String {
    let mut s =
        format!("{}: {} (diagnostic only)\n", wb.name, if r.found() { "projection found" } else { "no projection" });
    line(&mut s, "minimal projections", r.minimal_projections);
    line(&mut s, "candidates tried", r.candidates_tried);
    if let Some(sub) = &r.subset {
        line(&mut s, "subset", format!("{sub:?}"));
        line(&mut s, "projection", fmt_vec(&r.projection));
    }
    s
}

fn suite(sources: &[String], opts: &Options, start: Instant) -> Result<Output, CliError> {
    let cfg = opts.tol.unwrap_or_default();
    let coactions = if sources.is_empty() {
        catalog::full()?
    } else {
        sources
            .iter()
            .map(|s| {
                let wb = load(s)?.build(opts.tol)?;
                require_coaction(&wb).cloned()
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let report = theorem_suite(&coactions, &cfg);
    let code = if report.all_passed { EXIT_OK } else { EXIT_INTERNAL };
    let runtime_ms = opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let mut text = if opts.json {
        let r = VerdictReport { command: "suite", input: "suite".into(), tolerance: cfg, result: &report, runtime_ms };
        let mut t = serde_json::to_string_pretty(&r).expect("serializable");
        t.push('\n');
        t
    } else {
        suite_text(&report)
    };
    if let (false, Some(ms)) = (opts.json, runtime_ms) {
        let _ = writeln!(text, "runtime: {ms:.1} ms");
    }
    Ok(Output { text, code })
}

fn status(s: CellStatus) -> &'static str {
    match s {
        CellStatus::Pass => "PASS",
        CellStatus::Fail => "FAIL",
        CellStatus::NotApplicable => "n/a",
    }
}

/// A matrix with one row per coaction and one lettered column per check, a legend, and the
/// details of any failing cell.
pub fn suite_text(report: &SuiteReport) -> String {
    let width = report.rows.iter().map(|r| r.coaction.len()).max().unwrap_or(0).max(8);
    let letters: Vec<char> = ('a'..).take(SUITE_CHECKS.len()).collect();
    let mut s = String::new();
    let _ = write!(s, "{:<width$}", "coaction");
    for l in &letters {
        let _ = write!(s, "  {l:<4}");
    }
    s.push('\n');
    for row in &report.rows {
        let _ = write!(s, "{:<width$}", row.coaction);
        for c in &row.cells {
            let _ = write!(s, "  {:<4}", status(c.status));
        }
        s.push('\n');
    }
    s.push('\n');
    for (l, name) in letters.iter().zip(SUITE_CHECKS) {
        let _ = writeln!(s, "{l}: {name}");
    }
    for row in &report.rows {
        for c in row.cells.iter().filter(|c| c.status == CellStatus::Fail) {
            let _ = writeln!(s, "FAIL {} {}: {}", row.coaction, c.check, c.detail);
        }
    }
    let _ = writeln!(s, "{}", if report.all_passed { "all checks passed" } else { "some checks failed" });
    s
}
