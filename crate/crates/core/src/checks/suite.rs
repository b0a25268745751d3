use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coaction::Coaction;
use crate::crossed::{relative_commutant, CrossedProduct};
use crate::cstar::{is_simple, wedderburn};
use crate::error::Result;
use crate::hopf::PairKind;
use crate::linalg::ToleranceConfig;

use super::freeness::{group_action_free, is_free, is_free_with};
use super::outer::{is_outer, OuterVerdict};

/// Seeds of the coboundary perturbations used for the invariance row.
pub const PERTURBATION_SEEDS: [u64; 2] = [11, 12];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCell {
    pub check: &'static str,
    pub status: CellStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRow {
    pub coaction: String,
    pub cells: Vec<SuiteCell>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub rows: Vec<SuiteRow>,
    pub all_passed: bool,
}

/// Labels of the suite columns, in output order.
pub const SUITE_CHECKS: [&str; 7] = [
    "group-freeness-agreement",
    "three-route-agreement",
    "free-implies-outer",
    "freeness-invariance",
    "simple-crossed-product",
    "watatani-dimension",
    "dual-freeness",
];

fn cell(check: &'static str, ok: bool, detail: String) -> SuiteCell {
    SuiteCell { check, status: if ok { CellStatus::Pass } else { CellStatus::Fail }, detail }
}

fn not_applicable(check: &'static str, detail: &str) -> SuiteCell {
    SuiteCell { check, status: CellStatus::NotApplicable, detail: detail.into() }
}

fn failed(check: &'static str, e: impl std::fmt::Display) -> SuiteCell {
    SuiteCell { check, status: CellStatus::Fail, detail: format!("error: {e}") }
}

/// Run every check on every coaction. Entries are evaluated in parallel and reported in input
/// order.
pub fn theorem_suite(catalog: &[Coaction], cfg: &ToleranceConfig) -> SuiteReport {
    let rows: Vec<SuiteRow> = catalog.par_iter().map(|c| suite_row(c, cfg)).collect();
    let all_passed = rows.iter().all(|r| r.cells.iter().all(|c| c.status != CellStatus::Fail));
    SuiteReport { rows, all_passed }
}

fn suite_row(c: &Coaction, cfg: &ToleranceConfig) -> SuiteRow {
    let [a, b, co, d, e, f, g] = SUITE_CHECKS;
    let mut cells = Vec::with_capacity(SUITE_CHECKS.len());
    let free = is_free(c, cfg);

    cells.push(match (c.pair().kind(), &free) {
        (PairKind::FunctionAlgebraCoaction(_), Ok(r)) => match c.group_action(cfg) {
            Ok(ga) => {
                let gf = group_action_free(&ga, cfg);
                cell(a, gf.free == r.free, format!("group action free={}, coaction free={}", gf.free, r.free))
            }
            Err(err) => failed(a, err),
        },
        (PairKind::FunctionAlgebraCoaction(_), Err(err)) => failed(a, err),
        _ => not_applicable(a, "not a group action"),
    });

    let report = match free {
        Ok(r) => {
            cells.push(cell(
                b,
                r.agreement,
                format!(
                    "free={} intertwiners {}/{}, relative commutant {}, slice {}",
                    r.free, r.intertwiner_dim, r.expected_space_dim, r.relative_commutant_dim, r.slice_dim
                ),
            ));
            r
        }
        Err(err) => {
            cells.push(failed(b, &err));
            for check in [co, d, e, f, g] {
                cells.push(failed(check, "freeness undecided"));
            }
            return SuiteRow { coaction: c.name().to_string(), cells };
        }
    };

    cells.push(match is_outer(c, cfg) {
        Ok(v) => {
            let bad = report.free && matches!(v, OuterVerdict::NotOuter { .. });
            cell(co, !bad, format!("free={}, verdict {}", report.free, v.label()))
        }
        Err(err) => failed(co, err),
    });

    cells.push(match invariance(c, cfg) {
        Ok(variants) => {
            let ok = variants.iter().all(|(_, f)| *f == report.free);
            let detail = variants.iter().map(|(n, f)| format!("{n}={f}")).collect::<Vec<_>>().join(", ");
            cell(d, ok, detail)
        }
        Err(err) => failed(d, err),
    });

    let cp = match CrossedProduct::build(c, cfg) {
        Ok(cp) => cp,
        Err(err) => {
            for check in [e, f, g] {
                cells.push(failed(check, &err));
            }
            return SuiteRow { coaction: c.name().to_string(), cells };
        }
    };
    let simple_a = match wedderburn(c.algebra(), cfg) {
        Ok(w) => is_simple(&w),
        Err(err) => {
            for check in [e, f, g] {
                cells.push(failed(check, &err));
            }
            return SuiteRow { coaction: c.name().to_string(), cells };
        }
    };

    cells.push(if simple_a && report.free {
        match cp.wedderburn() {
            Ok(w) => cell(e, is_simple(w), format!("crossed product blocks {:?}", w.block_sizes())),
            Err(err) => failed(e, err),
        }
    } else {
        not_applicable(e, "A is not simple or the coaction is not free")
    });

    let cp2 = cp.iterate();
    cells.push(match &cp2 {
        Ok(cp2) => {
            let lhs = relative_commutant(&cp, cfg).dim();
            let rhs = relative_commutant(cp2, cfg).dim();
            cell(f, lhs == rhs, format!("{lhs} = {rhs}"))
        }
        Err(err) => failed(f, err),
    });

    cells.push(if simple_a {
        match cp2.and_then(|cp2| Ok((cp.dual_coaction()?, cp2))) {
            Ok((dual, cp2)) => match is_free_with(&dual, &cp2, cfg) {
                Ok(dr) => {
                    cell(g, !report.free || dr.free, format!("coaction free={}, dual free={}", report.free, dr.free))
                }
                Err(err) => failed(g, err),
            },
            Err(err) => failed(g, err),
        }
    } else {
        not_applicable(g, "A is not simple")
    });

    SuiteRow { coaction: c.name().to_string(), cells }
}

/// Freeness of amplifications by `M_2`, `M_3` and of fixed-seed coboundary perturbations.
fn invariance(c: &Coaction, cfg: &ToleranceConfig) -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    for n in [2, 3] {
        out.push((format!("amplify({n})"), is_free(&c.amplify(n, cfg)?, cfg)?.free));
    }
    let w = wedderburn(c.algebra(), cfg)?;
    for seed in PERTURBATION_SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = Coaction::random_unitary(&w, &mut rng);
        let p = c.perturb(&c.coboundary(&v), cfg)?;
        out.push((format!("perturb(seed {seed})"), is_free(&p, cfg)?.free));
    }
    Ok(out)
}
