use serde::Serialize;

use crate::coaction::{Coaction, GroupAction};
use crate::cstar::{wedderburn, StarAlgebra, StarAlgebraPresentation, WedderburnData};
use crate::error::{Error, Result};
use crate::hopf::{FiniteGroup, HopfQuotient, PairKind, SUBGROUP_ORDER_BOUND};
use crate::linalg::{
    kron_vec, max_abs_diff, serde_complex, unit_vector, LinearSystem, Matrix, ToleranceConfig, C64, ONE, ZERO,
};

use super::freeness::is_free;

/// Residuals of the two conditions on an inner witness `u ∈ A ⊗ H⁰`.
#[derive(Clone, Debug, Serialize)]
pub struct InnerWitnessReport {
    /// `max_a |u (b_a ⊗ 1⁰) u* − ρ(b_a)|`.
    pub conjugation: f64,
    /// `|(u ⊗ 1⁰)(ρ_triv ⊗ id)(u) − (id ⊗ Δ⁰)(u)|`.
    pub cocycle: f64,
    pub passed: bool,
}

/// Check that `ρ = Ad(u) ∘ ρ_triv` and that `u` satisfies the cocycle identity for the
/// trivial coaction.
pub fn inner_witness_check(c: &Coaction, u: &[C64], cfg: &ToleranceConfig) -> Result<InnerWitnessReport> {
    let t = c.target();
    if u.len() != t.dim() {
        return Err(Error::Dimension(format!("witness has {} coordinates, expected {}", u.len(), t.dim())));
    }
    let r = t.unitary_residual(u);
    if r > cfg.eq_tol {
        return Err(Error::NotUnitary(r));
    }
    let us = t.adjoint(u);
    let mut conjugation: f64 = 0.0;
    for a in 0..c.dim_a() {
        let ba = c.algebra().basis_element(a);
        let lhs = t.mul(&t.mul(u, &c.embed_trivially(&ba)), &us);
        conjugation = conjugation.max(max_abs_diff(&lhs, &c.apply(&ba)));
    }
    let triv = Coaction::trivial_on("trivial", c.algebra_arc(), c.pair().clone());
    let cocycle = triv.cocycle_residual(u)?;
    Ok(InnerWitnessReport { conjugation, cocycle, passed: conjugation <= cfg.eq_tol && cocycle <= cfg.eq_tol })
}

/// Three-valued outerness verdict.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OuterVerdict {
    Outer {
        reason: String,
    },
    NotOuter {
        /// Subgroup `K ≤ G` whose quotient `C(G) → C(K)` makes the coaction inner.
        subgroup: Vec<usize>,
        /// `u = Σ_s u_s ⊗ δ_s` in `A ⊗ C(K)`, with `K` relabelled in sorted order.
        #[serde(with = "serde_complex")]
        witness: Vec<C64>,
        check: InnerWitnessReport,
    },
    Inconclusive {
        reason: String,
    },
}

impl OuterVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Outer { .. } => "outer",
            Self::NotOuter { .. } => "not_outer",
            Self::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Decide outerness.
///
/// A free coaction is outer. For coactions of `C(G)` every Hopf quotient is a restriction to a
/// subgroup `K`, and the restricted coaction is inner exactly when each `α_s` (`s ∈ K`) is inner
/// and, block by block, the phase cocycle of the implementing unitaries is a coboundary. The
/// cocycle is a coboundary iff the twisted group algebra has a one-dimensional representation,
/// read off from its Wedderburn blocks. Other Hopf algebras give an inconclusive verdict.
pub fn is_outer(c: &Coaction, cfg: &ToleranceConfig) -> Result<OuterVerdict> {
    if is_free(c, cfg)?.free {
        return Ok(OuterVerdict::Outer { reason: "free".into() });
    }
    let g = match c.pair().kind() {
        PairKind::FunctionAlgebraCoaction(g) => g.clone(),
        _ => {
            return Ok(OuterVerdict::Inconclusive {
                reason: "not free, and Hopf quotients are only enumerated for coactions of C(G)".into(),
            })
        }
    };
    let subgroups = match g.subgroups(SUBGROUP_ORDER_BOUND) {
        Ok(s) => s,
        Err(Error::Unsupported(msg)) => return Ok(OuterVerdict::Inconclusive { reason: msg }),
        Err(e) => return Err(e),
    };
    let ga = c.group_action(cfg)?;
    let wa = wedderburn(c.algebra(), cfg)?;
    for k in subgroups.iter().filter(|k| k.len() > 1) {
        let beta = ga.restrict(k, cfg)?;
        let Some(reps) = implementing_representation(&beta, &wa, cfg)? else {
            continue;
        };
        let u = group_like_witness(&reps);
        let q = HopfQuotient::restriction(c.pair(), k, cfg)?;
        let sigma = c.restrict_via_quotient(&q, cfg)?;
        let check = inner_witness_check(&sigma, &u, cfg)?;
        if !check.passed {
            return Err(Error::Inconsistency(format!(
                "assembled inner witness for subgroup {k:?} fails its check: {check:?}"
            )));
        }
        return Ok(OuterVerdict::NotOuter { subgroup: k.clone(), witness: u, check });
    }
    Ok(OuterVerdict::Outer { reason: "no nontrivial subgroup restriction is inner".into() })
}

/// A unitary representation `s ↦ u_s` of the group of `beta` with `β_s = Ad(u_s)`, if one
/// exists. Built block by block in the Wedderburn decomposition `wa` of `A`.
pub(super) fn implementing_representation(
    beta: &GroupAction,
    wa: &WedderburnData,
    cfg: &ToleranceConfig,
) -> Result<Option<Vec<Vec<C64>>>> {
    let k = beta.group();
    let m = k.order();
    let to = wa.to_blocks_matrix();
    let from = wa.from_blocks_matrix();
    let blocks = wa.block_algebra();
    let mut per_block: Vec<Vec<Matrix>> = Vec::new();
    for (i, &n) in wa.block_sizes().iter().enumerate() {
        let z = &wa.central_projections()[i];
        let mut vs = Vec::with_capacity(m);
        for s in 0..m {
            if max_abs_diff(&beta.alpha(s).mul_vec(z), z) > cfg.eq_tol {
                return Ok(None);
            }
            let image = |r: usize, col: usize| -> Matrix {
                let x = from.mul_vec(&unit_vector(wa.dim(), blocks.index(i, r, col)));
                let y = to.mul_vec(&beta.alpha(s).mul_vec(&x));
                Matrix::from_fn(n, n, |a, b| y[blocks.index(i, a, b)])
            };
            match block_intertwiner(n, image, cfg) {
                Some(v) => vs.push(v),
                None => return Ok(None),
            }
        }
        per_block.push(vs);
    }

    let mut chars: Vec<Vec<C64>> = Vec::new();
    for vs in &per_block {
        let n = vs[0].rows();
        let cocycle = |s: usize, t: usize| -> C64 {
            let w = vs[s].matmul(&vs[t]).matmul(&vs[k.mul(s, t)].adjoint());
            w.trace() / n as f64
        };
        match twisted_character(k, &cocycle, cfg)? {
            Some(chi) => chars.push(chi),
            None => return Ok(None),
        }
    }

    let reps = (0..m)
        .map(|s| {
            let el = crate::cstar::AlgElement {
                blocks: per_block.iter().zip(&chars).map(|(vs, chi)| vs[s].scale(ONE / chi[s])).collect(),
            };
            from.mul_vec(&blocks.coords(&el).expect("block shapes"))
        })
        .collect();
    Ok(Some(reps))
}

/// The unitary `v ∈ M_n`, unique up to phase, with `v x = β(x) v`, normalised so that its
/// largest entry is real positive. `None` if the automorphism of the block is not inner.
fn block_intertwiner(n: usize, image: impl Fn(usize, usize) -> Matrix, cfg: &ToleranceConfig) -> Option<Matrix> {
    let n2 = n * n;
    let mut sys = LinearSystem::new(n2);
    for r in 0..n {
        for col in 0..n {
            // v E_{r col} − Y v, entry (a, b), as a row over the entries of v
            let y = image(r, col);
            for a in 0..n {
                for b in 0..n {
                    let mut row = vec![ZERO; n2];
                    if b == col {
                        row[a * n + r] += ONE;
                    }
                    for a2 in 0..n {
                        row[a2 * n + b] -= y[(a, a2)];
                    }
                    sys.push_row(&row);
                }
            }
        }
    }
    let space = sys.null_space(cfg, 1.0);
    if space.dim() != 1 {
        return None;
    }
    let v = Matrix::from_row_major(n, n, space.basis()[0].clone()).expect("square");
    let lambda = v.adjoint().matmul(&v).trace().re / n as f64;
    let v = v.scale(C64::new(1.0 / lambda.sqrt(), 0.0));
    if v.adjoint().matmul(&v).max_abs_diff(&Matrix::identity(n)) > cfg.eq_tol {
        return None;
    }
    Some(v)
}

/// A function `χ` with `χ(s) χ(t) = c(s, t) χ(st)`, found as a one-dimensional block of the
/// twisted group algebra `ℂ_c[K]`.
fn twisted_character(
    k: &FiniteGroup,
    c: &dyn Fn(usize, usize) -> C64,
    cfg: &ToleranceConfig,
) -> Result<Option<Vec<C64>>> {
    let m = k.order();
    let mut triples = Vec::with_capacity(m * m);
    for s in 0..m {
        for t in 0..m {
            triples.push((s, t, k.mul(s, t), c(s, t)));
        }
    }
    let invol = Matrix::from_fn(m, m, |r, s| if r == k.inv(s) { c(s, k.inv(s)).conj() } else { ZERO });
    let alg = StarAlgebraPresentation::from_triples(m, triples, invol, unit_vector(m, k.identity()))?;
    alg.validate(cfg)?;
    let w = wedderburn(&alg, cfg)?;
    let Some(i) = w.block_sizes().iter().position(|&n| n == 1) else {
        return Ok(None);
    };
    Ok(Some((0..m).map(|s| w.trace(i, &unit_vector(m, s))).collect()))
}

/// `Σ_s u_s ⊗ δ_s` for a family in `A`; coordinates `a * m + s`.
pub fn group_like_witness(us: &[Vec<C64>]) -> Vec<C64> {
    let m = us.len();
    let mut out = vec![ZERO; us.first().map_or(0, |u| u.len()) * m];
    for (s, u) in us.iter().enumerate() {
        add_leg(&mut out, u, &unit_vector(m, s));
    }
    out
}

fn add_leg(acc: &mut [C64], a: &[C64], h: &[C64]) {
    for (x, y) in acc.iter_mut().zip(kron_vec(a, h)) {
        *x += y;
    }
}
