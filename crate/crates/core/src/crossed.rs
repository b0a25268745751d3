//! Crossed products `A ⋊_ρ H` as structure-constant *-algebras, with the canonical
//! conditional expectation, the dual coaction and iterated crossed products.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::coaction::Coaction;
use crate::cstar::{wedderburn, StarAlgebra, StarAlgebraPresentation, WedderburnData};
use crate::error::{Error, Result};
use crate::hopf::{comatrix_units, HopfAlgebra};
use crate::linalg::{
    add_scaled, cholesky, hermitian_eigen, kron, kron_vec, max_abs_diff, Matrix, Subspace, ToleranceConfig, C64, ONE,
    ZERO,
};

/// `A ⋊_ρ H` with basis `b_i ⋊ h_k` at coordinate `i * N + k`.
///
/// Product `(a⋊h)(b⋊k) = a (h₍₁₎·b) ⋊ h₍₂₎ k`, involution `(a⋊h)* = (h*₍₁₎·a*) ⋊ h*₍₂₎`.
#[derive(Debug)]
pub struct CrossedProduct {
    source: Coaction,
    carrier: Arc<StarAlgebraPresentation>,
    cfg: ToleranceConfig,
    wedderburn: OnceLock<std::result::Result<WedderburnData, Error>>,
}

/// Sparse `ρ_p(b_j)` for all `p`, `j`: index `p * dA + j`.
fn action_terms(c: &Coaction) -> Vec<Vec<(usize, C64)>> {
    let (d, n) = (c.dim_a(), c.dim_h());
    let rho = c.rho();
    let mut out = vec![Vec::new(); n * d];
    for j in 0..d {
        for r in 0..d * n {
            let v = rho[(r, j)];
            if v != ZERO {
                out[(r % n) * d + j].push((r / n, v));
            }
        }
    }
    out
}

fn sparse(v: &[C64]) -> Vec<(usize, C64)> {
    v.iter().enumerate().filter(|(_, c)| **c != ZERO).map(|(i, c)| (i, *c)).collect()
}

impl CrossedProduct {
    pub fn build(source: &Coaction, cfg: &ToleranceConfig) -> Result<Self> {
        let a = source.algebra();
        let h: &HopfAlgebra = source.pair().acting();
        let (d, n) = (a.dim(), h.dim());
        let dim = d * n;
        let acts = action_terms(source);
        let delta: Vec<Vec<(usize, usize, C64)>> = (0..n).map(|k| h.delta_terms(k)).collect();
        let a_prod: Vec<Vec<Vec<(usize, C64)>>> = (0..d)
            .map(|i| (0..d).map(|j| a.basis_product(i, j).iter().map(|&(_, k, c)| (k as usize, c)).collect()).collect())
            .collect();
        let h_alg = h.algebra();
        let h_prod: Vec<Vec<Vec<(usize, C64)>>> = (0..n)
            .map(|q| {
                (0..n).map(|l| h_alg.basis_product(q, l).iter().map(|&(_, k, c)| (k as usize, c)).collect()).collect()
            })
            .collect();

        let mut triples = Vec::new();
        let mut acc = vec![ZERO; dim];
        let mut touched: Vec<usize> = Vec::new();
        for i in 0..d {
            for k in 0..n {
                for j in 0..d {
                    for l in 0..n {
                        for &(p, q, c) in &delta[k] {
                            for &(a1, c1) in &acts[p * d + j] {
                                for &(a2, c2) in &a_prod[i][a1] {
                                    for &(hq, c3) in &h_prod[q][l] {
                                        let idx = a2 * n + hq;
                                        if acc[idx] == ZERO {
                                            touched.push(idx);
                                        }
                                        acc[idx] += c * c1 * c2 * c3;
                                    }
                                }
                            }
                        }
                        for &idx in &touched {
                            triples.push((i * n + k, j * n + l, idx, acc[idx]));
                            acc[idx] = ZERO;
                        }
                        touched.clear();
                    }
                }
            }
        }

        let mut invol = Matrix::zeros(dim, dim);
        let h_star = h_alg.involution_matrix();
        for i in 0..d {
            let ai_star = a.adjoint(&a.basis_element(i));
            for k in 0..n {
                let hk_star = h_star.column(k);
                let dh = h.comultiply(&hk_star);
                for (pq, c) in sparse(&dh) {
                    let (p, q) = (pq / n, pq % n);
                    let moved = source.slice(p).mul_vec(&ai_star);
                    for (a1, c1) in sparse(&moved) {
                        invol[(a1 * n + q, i * n + k)] += c * c1;
                    }
                }
            }
        }
        let unit = kron_vec(&a.unit(), &h_alg.unit());
        let carrier = StarAlgebraPresentation::from_triples(dim, triples, invol, unit)?;
        if let Err(e) = carrier.validate(cfg) {
            return Err(Error::Inconsistency(format!("crossed product carrier: {e}")));
        }
        let cp = Self { source: source.clone(), carrier: Arc::new(carrier), cfg: *cfg, wedderburn: OnceLock::new() };
        let r = cp.product_rule_residual()?;
        if r > cfg.eq_tol {
            return Err(Error::Inconsistency(format!(
                "crossed product disagrees with the comatrix-unit product rule, residual {r:.3e}"
            )));
        }
        Ok(cp)
    }

    pub fn source(&self) -> &Coaction {
        &self.source
    }

    pub fn carrier(&self) -> &StarAlgebraPresentation {
        &self.carrier
    }

    pub fn carrier_arc(&self) -> Arc<StarAlgebraPresentation> {
        self.carrier.clone()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    fn n(&self) -> usize {
        self.source.dim_h()
    }

    /// Wedderburn data of the carrier, computed once.
    pub fn wedderburn(&self) -> Result<&WedderburnData> {
        self.wedderburn.get_or_init(|| wedderburn(&self.carrier, &self.cfg)).as_ref().map_err(Clone::clone)
    }

    /// `a ↦ a ⋊ 1`.
    pub fn embed_a_matrix(&self) -> Matrix {
        let one_h = self.source.pair().acting().algebra().unit();
        let col = Matrix::from_columns(one_h.len(), &[one_h]);
        kron(&Matrix::identity(self.source.dim_a()), &col)
    }

    pub fn embed_a(&self, a: &[C64]) -> Vec<C64> {
        kron_vec(a, &self.source.pair().acting().algebra().unit())
    }

    /// `h ↦ 1 ⋊ h`.
    pub fn embed_h(&self, h: &[C64]) -> Vec<C64> {
        kron_vec(&self.source.algebra().unit(), h)
    }

    /// `a ⋊ h`.
    pub fn element(&self, a: &[C64], h: &[C64]) -> Vec<C64> {
        kron_vec(a, h)
    }

    /// Matrix of `E₁(a ⋊ h) = τ(h) a`.
    pub fn e1_matrix(&self) -> Matrix {
        let tau = self.source.pair().tau();
        let row = Matrix::from_row_major(1, tau.len(), tau.to_vec()).expect("sized");
        kron(&Matrix::identity(self.source.dim_a()), &row)
    }

    pub fn e1(&self, x: &[C64]) -> Vec<C64> {
        let (d, n) = (self.source.dim_a(), self.n());
        let tau = self.source.pair().tau();
        (0..d).map(|a| (0..n).map(|k| tau[k] * x[a * n + k]).sum()).collect()
    }

    /// The projection `1 ⋊ e`.
    pub fn haar_projection(&self) -> Vec<C64> {
        self.embed_h(self.source.pair().e())
    }

    /// Independent check of the product on comatrix units:
    /// `(a ⋊ w^k_{ij})(b ⋊ 1) = Σ_{j₁} a (w^k_{ij₁}·b) ⋊ w^k_{j₁j}`.
    pub fn product_rule_residual(&self) -> Result<f64> {
        let units = comatrix_units(self.source.pair())?;
        let a = self.source.algebra();
        let d = a.dim();
        let mut worst: f64 = 0.0;
        for (blk, ws) in units.comatrix_units.iter().enumerate() {
            let m = units.block_sizes[blk];
            let acts: Vec<Matrix> = ws.iter().map(|w| self.source.action_matrix(w)).collect();
            for i in 0..m {
                for j in 0..m {
                    let w_ij = &ws[i * m + j];
                    for ai in 0..d {
                        let ea = a.basis_element(ai);
                        let lhs_left = self.element(&ea, w_ij);
                        for bi in 0..d {
                            let eb = a.basis_element(bi);
                            let lhs = self.carrier.mul(&lhs_left, &self.embed_a(&eb));
                            let mut rhs = vec![ZERO; self.dim()];
                            for j1 in 0..m {
                                let moved = acts[i * m + j1].mul_vec(&eb);
                                let left = a.mul(&ea, &moved);
                                add_scaled(&mut rhs, ONE, &self.element(&left, &ws[j1 * m + j]));
                            }
                            worst = worst.max(max_abs_diff(&lhs, &rhs));
                        }
                    }
                }
            }
        }
        Ok(worst)
    }

    /// `ρ̂(a ⋊ h) = (a ⋊ h₍₁₎) ⊗ h₍₂₎`, a coaction of `H` on the carrier.
    pub fn dual_coaction(&self) -> Result<Coaction> {
        let (d, n) = (self.source.dim_a(), self.n());
        let h = self.source.pair().acting();
        let dim = d * n;
        let mut rho = Matrix::zeros(dim * n, dim);
        for k in 0..n {
            for (p, q, c) in h.delta_terms(k) {
                for i in 0..d {
                    rho[((i * n + p) * n + q, i * n + k)] += c;
                }
            }
        }
        Coaction::new(
            format!("dual coaction of {}", self.source.name()),
            self.carrier.clone(),
            self.source.pair().swapped(),
            rho,
            &self.cfg,
        )
        .map_err(|e| Error::Inconsistency(format!("dual coaction fails verification: {e}")))
    }

    /// `(A ⋊_ρ H) ⋊_ρ̂ H⁰`.
    pub fn iterate(&self) -> Result<CrossedProduct> {
        CrossedProduct::build(&self.dual_coaction()?, &self.cfg)
    }

    /// Residuals of the conditional-expectation properties of `E₁` on full bases.
    pub fn e1_report(&self) -> Result<E1Report> {
        let a = self.source.algebra();
        let d = a.dim();
        let dim = self.dim();
        let mut idempotence: f64 = 0.0;
        for i in 0..d {
            let ei = a.basis_element(i);
            idempotence = idempotence.max(max_abs_diff(&self.e1(&self.embed_a(&ei)), &ei));
        }
        let mut bimodule: f64 = 0.0;
        for x in 0..dim {
            let ex = self.carrier.basis_element(x);
            let e1x = self.e1(&ex);
            for i in 0..d {
                let ai = a.basis_element(i);
                let left = self.carrier.mul(&self.embed_a(&ai), &ex);
                bimodule = bimodule.max(max_abs_diff(&self.e1(&left), &a.mul(&ai, &e1x)));
                let right = self.carrier.mul(&ex, &self.embed_a(&ai));
                bimodule = bimodule.max(max_abs_diff(&self.e1(&right), &a.mul(&e1x, &ai)));
            }
        }
        // Gram matrix of ω∘E₁ with ω the uniform average of normalized block traces on A.
        let wa = wedderburn(a, &self.cfg)?;
        let m = wa.num_blocks() as f64;
        let omega = |v: &[C64]| -> C64 { (0..wa.num_blocks()).map(|b| wa.trace(b, v)).sum::<C64>() / m };
        let stars: Vec<Vec<C64>> = (0..dim).map(|x| self.carrier.adjoint(&self.carrier.basis_element(x))).collect();
        let mut gram = Matrix::zeros(dim, dim);
        for x in 0..dim {
            for y in 0..dim {
                let prod = self.carrier.mul(&stars[x], &self.carrier.basis_element(y));
                gram[(x, y)] = omega(&self.e1(&prod));
            }
        }
        let herm = gram.add(&gram.adjoint()).scale(C64::new(0.5, 0.0));
        let (vals, _) = hermitian_eigen(&herm)?;
        let min_eigenvalue = vals.first().copied().unwrap_or(0.0);
        let hermiticity = gram.max_abs_diff(&gram.adjoint());
        Ok(E1Report {
            idempotence,
            bimodule,
            gram_min_eigenvalue: min_eigenvalue,
            gram_hermiticity: hermiticity,
            gram_cholesky: cholesky(&herm).is_some(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct E1Report {
    pub idempotence: f64,
    pub bimodule: f64,
    pub gram_min_eigenvalue: f64,
    pub gram_hermiticity: f64,
    pub gram_cholesky: bool,
}

impl E1Report {
    pub fn passed(&self, cfg: &ToleranceConfig) -> bool {
        self.idempotence <= cfg.eq_tol
            && self.bimodule <= cfg.eq_tol
            && self.gram_hermiticity <= cfg.eq_tol
            && self.gram_min_eigenvalue > 1e-10
    }
}

/// `{a : ρ(a) = a ⊗ 1⁰}` with a certificate that it is a *-subalgebra.
#[derive(Clone, Debug)]
pub struct FixedPointAlgebra {
    pub subspace: Subspace,
    pub closure_residual: f64,
}

pub fn fixed_point_algebra(c: &Coaction, cfg: &ToleranceConfig) -> Result<FixedPointAlgebra> {
    let subspace = c.fixed_points(cfg);
    let a = c.algebra();
    let mut closure: f64 = 0.0;
    for u in subspace.basis() {
        closure = closure.max(subspace.residual(&a.adjoint(u)));
        for v in subspace.basis() {
            closure = closure.max(subspace.residual(&a.mul(u, v)));
        }
    }
    if closure > cfg.eq_tol {
        return Err(Error::Inconsistency(format!("fixed points are not a *-subalgebra, residual {closure:.3e}")));
    }
    Ok(FixedPointAlgebra { subspace, closure_residual: closure })
}

/// Outcome of comparing an iterated crossed product with `A ⊗ M_N`.
#[derive(Clone, Debug, Serialize)]
pub struct SecondDualComparison {
    pub iterated_blocks: Vec<usize>,
    pub expected_blocks: Vec<usize>,
    pub matches: bool,
}

/// Compare block sizes of `cp2` with those of `M_N(A)`; a necessary condition for the
/// isomorphism `M_N(A) ≅ A ⋊ H ⋊ H⁰`.
pub fn second_dual_compare(cp2: &CrossedProduct, a_blocks: &[usize], n: usize) -> Result<SecondDualComparison> {
    let mut iterated_blocks = cp2.wedderburn()?.block_sizes().to_vec();
    iterated_blocks.sort_unstable();
    let mut expected_blocks: Vec<usize> = a_blocks.iter().map(|b| b * n).collect();
    expected_blocks.sort_unstable();
    let matches = iterated_blocks == expected_blocks;
    Ok(SecondDualComparison { iterated_blocks, expected_blocks, matches })
}

/// Subspace spanned by the image of `A` in the carrier.
pub fn embedded_a_subspace(cp: &CrossedProduct, cfg: &ToleranceConfig) -> Result<Subspace> {
    let d = cp.source().dim_a();
    let vectors: Vec<Vec<C64>> = (0..d).map(|i| cp.embed_a(&cp.source().algebra().basis_element(i))).collect();
    Subspace::span(cp.dim(), &vectors, cfg)
}

/// `A' ∩ (A ⋊ H)`: carrier elements commuting with the image of `A`.
pub fn relative_commutant(cp: &CrossedProduct, cfg: &ToleranceConfig) -> Subspace {
    let d = cp.source().dim_a();
    let gens: Vec<Vec<C64>> = (0..d).map(|i| cp.embed_a(&cp.source().algebra().basis_element(i))).collect();
    crate::cstar::commutant_in(cp.carrier(), &gens, cfg)
}
