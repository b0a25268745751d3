use serde::Serialize;

use crate::coaction::{Coaction, GroupAction};
use crate::crossed::{relative_commutant, CrossedProduct};
use crate::cstar::{center, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{kron_vec, LinearSystem, Subspace, ToleranceConfig, C64};

/// `{x ∈ A ⊗ H⁰ : x ρ(a) = (a ⊗ 1⁰) x for all a}`.
pub fn intertwiner_space(c: &Coaction, cfg: &ToleranceConfig) -> Subspace {
    let t = c.target();
    let mut sys = LinearSystem::new(t.dim());
    for j in 0..c.dim_a() {
        let bj = c.algebra().basis_element(j);
        sys.push_matrix(&t.right_mul_matrix(&c.apply(&bj)).sub(&t.left_mul_matrix(&c.embed_trivially(&bj))));
    }
    sys.null_space(cfg, 1.0)
}

/// `Z(A) ⊗ ℂτ` as a subspace of `A ⊗ H⁰`.
pub fn center_tau(c: &Coaction, cfg: &ToleranceConfig) -> Result<Subspace> {
    let z = center(c.algebra(), cfg);
    let tau = c.pair().tau();
    let vecs: Vec<Vec<C64>> = z.basis().iter().map(|b| kron_vec(b, tau)).collect();
    Subspace::span(c.target().dim(), &vecs, cfg)
}

/// Outcome of the three freeness routes.
#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub intertwiner_dim: usize,
    /// `dim Z(A)`.
    pub expected_space_dim: usize,
    /// Largest distance of a basis vector of `Z(A) ⊗ ℂτ` from the intertwiner space.
    pub containment_residual: f64,
    pub free: bool,
    pub relative_commutant_dim: usize,
    pub commutant_route_free: bool,
    /// Dimension of `{z ∈ A′ ∩ (A ⋊ H) : E₁(z) = 0}`; zero iff `E₁` is the unique expectation.
    pub slice_dim: usize,
    pub cond_exp_unique: bool,
    pub agreement: bool,
}

/// Freeness by the intertwiner space, cross-checked against the relative commutant and
/// uniqueness of the conditional expectation. The routes must agree; otherwise the
/// report is returned inside an [`Error::Inconsistency`].
pub fn is_free(c: &Coaction, cfg: &ToleranceConfig) -> Result<FreenessReport> {
    let cp = CrossedProduct::build(c, cfg)?;
    is_free_with(c, &cp, cfg)
}

/// As [`is_free`] for a crossed product that is already built.
pub fn is_free_with(c: &Coaction, cp: &CrossedProduct, cfg: &ToleranceConfig) -> Result<FreenessReport> {
    let space = intertwiner_space(c, cfg);
    let zt = center_tau(c, cfg)?;
    let containment_residual = space.containment_residual(&zt)?;
    if containment_residual > cfg.eq_tol {
        return Err(Error::Inconsistency(format!(
            "Z(A) ⊗ τ is not contained in the intertwiner space of {} (residual {containment_residual:.3e})",
            c.name()
        )));
    }
    let expected = zt.dim();
    let free = space.dim() == expected;

    let rc = relative_commutant(cp, cfg);
    let z = center(c.algebra(), cfg);
    let emb: Vec<Vec<C64>> = z.basis().iter().map(|b| cp.embed_a(b)).collect();
    let emb_z = Subspace::span(cp.dim(), &emb, cfg)?;
    let commutant_route_free = rc.equals(&emb_z)?;

    // E₁ maps the relative commutant into Z(A) and fixes 1, so the affine slice
    // E₁(z) = 1 is a point exactly when E₁ is injective on it.
    let mut sys = LinearSystem::new(rc.dim());
    if rc.dim() > 0 {
        sys.push_matrix(&cp.e1_matrix().matmul(&rc.as_matrix()));
    }
    let slice_dim = sys.null_space(cfg, 1.0).dim();
    let cond_exp_unique = slice_dim == 0;

    let report = FreenessReport {
        intertwiner_dim: space.dim(),
        expected_space_dim: expected,
        containment_residual,
        free,
        relative_commutant_dim: rc.dim(),
        commutant_route_free,
        slice_dim,
        cond_exp_unique,
        agreement: free == commutant_route_free && free == cond_exp_unique,
    };
    if !report.agreement {
        return Err(Error::Inconsistency(format!("freeness routes disagree for {}: {report:?}", c.name())));
    }
    Ok(report)
}

/// Per-element intertwiner dimensions `dim {x ∈ A : x α_t(a) = a x}`.
#[derive(Clone, Debug, Serialize)]
pub struct GroupFreenessReport {
    /// One entry per group element other than the identity: `(t, dimension)`.
    pub intertwiner_dims: Vec<(usize, usize)>,
    pub free: bool,
}

pub fn group_action_free(ga: &GroupAction, cfg: &ToleranceConfig) -> GroupFreenessReport {
    let g = ga.group();
    let a = ga.algebra();
    let dims: Vec<(usize, usize)> = (0..g.order())
        .filter(|&t| t != g.identity())
        .map(|t| {
            let mut sys = LinearSystem::new(a.dim());
            for j in 0..a.dim() {
                let bj = a.basis_element(j);
                let image = ga.alpha(t).mul_vec(&bj);
                sys.push_matrix(&a.right_mul_matrix(&image).sub(&a.left_mul_matrix(&bj)));
            }
            (t, sys.null_space(cfg, 1.0).dim())
        })
        .collect();
    let free = dims.iter().all(|&(_, d)| d == 0);
    GroupFreenessReport { intertwiner_dims: dims, free }
}
