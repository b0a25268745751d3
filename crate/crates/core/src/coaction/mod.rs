//! Coactions `ρ: A → A ⊗ H⁰`, the induced `H`-actions, and the standard constructions.

mod group_action;

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

pub use group_action::GroupAction;

use crate::cstar::{BlockAlgebra, HomReport, StarAlgebra, StarAlgebraPresentation, StarHom, WedderburnData};
use crate::error::{Error, Result};
use crate::hopf::{HopfPair, HopfQuotient};
use crate::linalg::{
    add_scaled, kron_vec, max_abs_diff, random_unitary, LinearSystem, Matrix, Subspace, ToleranceConfig, C64, ZERO,
};

/// Residuals of the coaction conditions.
#[derive(Clone, Debug, Serialize)]
pub struct CoactionReport {
    pub homomorphism: HomReport,
    /// Dimension of the span of `ρ(A)(A ⊗ H⁰)`.
    pub span_dim: usize,
    pub span_expected: usize,
    pub counit: f64,
    pub coassociativity: f64,
}

impl CoactionReport {
    pub fn nondegenerate(&self) -> bool {
        self.span_dim == self.span_expected
    }

    pub fn passed(&self, cfg: &ToleranceConfig) -> bool {
        self.nondegenerate()
            && self.homomorphism.max_residual() <= cfg.eq_tol
            && self.counit <= cfg.eq_tol
            && self.coassociativity <= cfg.eq_tol
    }

    /// The first failing condition as an error.
    pub fn to_error(&self, cfg: &ToleranceConfig) -> Option<Error> {
        if self.homomorphism.max_residual() > cfg.eq_tol {
            return Some(Error::Coaction {
                condition: "*-homomorphism".into(),
                residual: self.homomorphism.max_residual(),
            });
        }
        if !self.nondegenerate() {
            return Some(Error::Coaction {
                condition: format!("nondegeneracy (span {} of {})", self.span_dim, self.span_expected),
                residual: (self.span_expected - self.span_dim.min(self.span_expected)) as f64,
            });
        }
        if self.counit > cfg.eq_tol {
            return Some(Error::Coaction { condition: "counit".into(), residual: self.counit });
        }
        if self.coassociativity > cfg.eq_tol {
            return Some(Error::Coaction { condition: "coassociativity".into(), residual: self.coassociativity });
        }
        None
    }
}

/// Residuals of the coaction conditions for data that need not be valid.
pub fn check_coaction(
    algebra: &StarAlgebraPresentation,
    pair: &HopfPair,
    rho: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<CoactionReport> {
    let d = algebra.dim();
    let n = pair.dim();
    if rho.rows() != d * n || rho.cols() != d {
        return Err(Error::Dimension(format!(
            "coaction matrix is {}x{}, expected {}x{d}",
            rho.rows(),
            rho.cols(),
            d * n
        )));
    }
    let target = algebra.tensor(pair.coacting().algebra());
    let homomorphism = StarHom::check(algebra, &target, rho)?;

    let mut sys = LinearSystem::new(d * n);
    for a in 0..d {
        sys.push_matrix(&target.left_mul_matrix(&rho.column(a)).transpose());
    }
    let span_dim = sys.rank(cfg, 1.0);

    let eps0 = pair.coacting().counit();
    let mut counit: f64 = 0.0;
    for a in 0..d {
        let mut v = vec![ZERO; d];
        for a2 in 0..d {
            for k in 0..n {
                v[a2] += rho[(a2 * n + k, a)] * eps0[k];
            }
        }
        counit = counit.max(max_abs_diff(&v, &algebra.basis_element(a)));
    }

    let coassociativity = coassociativity_residual(rho, d, pair);
    Ok(CoactionReport { homomorphism, span_dim, span_expected: d * n, counit, coassociativity })
}

fn column_terms(rho: &Matrix, a: usize) -> Vec<(usize, C64)> {
    (0..rho.rows()).filter_map(|r| (rho[(r, a)] != ZERO).then_some((r, rho[(r, a)]))).collect()
}

fn coassociativity_residual(rho: &Matrix, d: usize, pair: &HopfPair) -> f64 {
    let n = pair.dim();
    let h0 = pair.coacting();
    let delta: Vec<Vec<(usize, usize, C64)>> = (0..n).map(|k| h0.delta_terms(k)).collect();
    let cols: Vec<Vec<(usize, C64)>> = (0..d).map(|a| column_terms(rho, a)).collect();
    let mut worst: f64 = 0.0;
    for terms in &cols {
        let mut lhs = vec![ZERO; d * n * n];
        let mut rhs = vec![ZERO; d * n * n];
        for &(row, c) in terms {
            let (a1, k) = (row / n, row % n);
            for &(row2, c2) in &cols[a1] {
                lhs[row2 * n + k] += c * c2;
            }
            for &(m, l, c2) in &delta[k] {
                rhs[(a1 * n + m) * n + l] += c * c2;
            }
        }
        worst = worst.max(max_abs_diff(&lhs, &rhs));
    }
    worst
}

/// A verified coaction of `H⁰` on `A`.
///
/// `rho` is `(dim A · N) × dim A`; row `a' * N + k` of column `a` is the coefficient of
/// `b_{a'} ⊗ φ_k` in `ρ(b_a)`. Elements `h ∈ H` act by `h·a = (id ⊗ h)(ρ(a))` through the
/// coordinate pairing, which makes `A` a left `H`-module.
#[derive(Clone, Debug)]
pub struct Coaction {
    name: String,
    algebra: Arc<StarAlgebraPresentation>,
    blocks: Option<BlockAlgebra>,
    pair: HopfPair,
    rho: Matrix,
    target: Arc<StarAlgebraPresentation>,
    report: CoactionReport,
}

impl Coaction {
    /// Verify and wrap; the first failing condition becomes the error.
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<StarAlgebraPresentation>,
        pair: HopfPair,
        rho: Matrix,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        let report = check_coaction(&algebra, &pair, &rho, cfg)?;
        if let Some(e) = report.to_error(cfg) {
            return Err(e);
        }
        let target = Arc::new(algebra.tensor(pair.coacting().algebra()));
        Ok(Self { name: name.into(), algebra, blocks: None, pair, rho, target, report })
    }

    /// Coaction on a block algebra, keeping the block description.
    pub fn on_blocks(
        name: impl Into<String>,
        blocks: &BlockAlgebra,
        pair: HopfPair,
        rho: Matrix,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        let mut c = Self::new(name, Arc::new(blocks.presentation()), pair, rho, cfg)?;
        c.blocks = Some(blocks.clone());
        Ok(c)
    }

    /// `a ↦ a ⊗ 1⁰`.
    pub fn trivial(name: impl Into<String>, blocks: &BlockAlgebra, pair: HopfPair) -> Self {
        let mut c = Self::trivial_on(name, Arc::new(blocks.presentation()), pair);
        c.blocks = Some(blocks.clone());
        c
    }

    pub fn trivial_on(name: impl Into<String>, algebra: Arc<StarAlgebraPresentation>, pair: HopfPair) -> Self {
        let d = algebra.dim();
        let n = pair.dim();
        let one0 = pair.coacting_unit();
        let rho = Matrix::from_fn(d * n, d, |r, a| if r / n == a { one0[r % n] } else { ZERO });
        Self::new(name, algebra, pair, rho, &ToleranceConfig::default()).expect("trivial coaction")
    }

    /// `ρ_α(a) = Σ_t α_t(a) ⊗ δ_t`, a coaction of `C(G)`.
    pub fn from_group_action(name: impl Into<String>, ga: &GroupAction, cfg: &ToleranceConfig) -> Result<Self> {
        let pair = HopfPair::for_group_action(ga.group());
        Self::from_group_action_with(name, ga, pair, cfg)
    }

    /// As [`Self::from_group_action`], reusing an existing `(CG, C(G))` pair.
    pub fn from_group_action_with(
        name: impl Into<String>,
        ga: &GroupAction,
        pair: HopfPair,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        match pair.kind() {
            crate::hopf::PairKind::FunctionAlgebraCoaction(g) if g == ga.group() => {}
            _ => return Err(Error::Mismatch("group action needs the pair (CG, C(G)) of its group".into())),
        }
        let d = ga.algebra().dim();
        let n = ga.group().order();
        let rho = Matrix::from_fn(d * n, d, |r, a| ga.alpha(r % n)[(r / n, a)]);
        let mut c = Self::new(name, ga.algebra_arc(), pair, rho, cfg)?;
        c.blocks = ga.blocks().cloned();
        Ok(c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn algebra(&self) -> &StarAlgebraPresentation {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> Arc<StarAlgebraPresentation> {
        self.algebra.clone()
    }

    pub fn blocks(&self) -> Option<&BlockAlgebra> {
        self.blocks.as_ref()
    }

    pub fn pair(&self) -> &HopfPair {
        &self.pair
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    pub fn report(&self) -> &CoactionReport {
        &self.report
    }

    /// `A ⊗ H⁰` with coordinates `a * N + k`.
    pub fn target(&self) -> &StarAlgebraPresentation {
        &self.target
    }

    pub fn dim_a(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.pair.dim()
    }

    pub fn apply(&self, a: &[C64]) -> Vec<C64> {
        self.rho.mul_vec(a)
    }

    /// `a ⊗ 1⁰`.
    pub fn embed_trivially(&self, a: &[C64]) -> Vec<C64> {
        kron_vec(a, &self.pair.coacting_unit())
    }

    /// Slice `ρ_k`: `ρ(a) = Σ_k ρ_k(a) ⊗ φ_k`; it is the action of the basis element `b_k ∈ H`.
    pub fn slice(&self, k: usize) -> Matrix {
        let (d, n) = (self.dim_a(), self.dim_h());
        Matrix::from_fn(d, d, |r, a| self.rho[(r * n + k, a)])
    }

    /// Matrix of `a ↦ h·a`.
    pub fn action_matrix(&self, h: &[C64]) -> Matrix {
        let (d, n) = (self.dim_a(), self.dim_h());
        Matrix::from_fn(d, d, |r, a| (0..n).map(|k| h[k] * self.rho[(r * n + k, a)]).sum())
    }

    /// `h·a = (id ⊗ h)(ρ(a))`.
    pub fn induced_action(&self, h: &[C64], a: &[C64]) -> Vec<C64> {
        self.action_matrix(h).mul_vec(a)
    }

    /// `{a : ρ(a) = a ⊗ 1⁰}`.
    pub fn fixed_points(&self, cfg: &ToleranceConfig) -> Subspace {
        let (d, n) = (self.dim_a(), self.dim_h());
        let one0 = self.pair.coacting_unit();
        let m = Matrix::from_fn(d * n, d, |r, a| {
            let triv = if r / n == a { one0[r % n] } else { ZERO };
            self.rho[(r, a)] - triv
        });
        let mut sys = LinearSystem::new(d);
        sys.push_matrix(&m);
        sys.null_space(cfg, 1.0)
    }

    /// `{a : e·a = a}` for the distinguished projection `e ∈ H`.
    pub fn haar_fixed_points(&self, cfg: &ToleranceConfig) -> Subspace {
        let d = self.dim_a();
        let m = self.action_matrix(self.pair.e()).sub(&Matrix::identity(d));
        let mut sys = LinearSystem::new(d);
        sys.push_matrix(&m);
        sys.null_space(cfg, 1.0)
    }

    /// The coaction on `A ⊗ M_n` that is `ρ` on the first leg and the identity on `M_n`.
    pub fn amplify(&self, n: usize, cfg: &ToleranceConfig) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("amplification size must be positive".into()));
        }
        let mn = BlockAlgebra::new(vec![n])?;
        let algebra = Arc::new(self.algebra.tensor(&mn.presentation()));
        let (d, nh, n2) = (self.dim_a(), self.dim_h(), n * n);
        let mut rho = Matrix::zeros(d * n2 * nh, d * n2);
        for a in 0..d {
            for (row, c) in column_terms(&self.rho, a) {
                let (a1, k) = (row / nh, row % nh);
                for m in 0..n2 {
                    rho[((a1 * n2 + m) * nh + k, a * n2 + m)] = c;
                }
            }
        }
        let mut out = Self::new(format!("{} amplified by M_{n}", self.name), algebra, self.pair.clone(), rho, cfg)?;
        out.blocks = self.blocks.as_ref().map(|b| b.tensor(&mn));
        Ok(out)
    }

    /// Residual of `(w ⊗ 1⁰)(ρ ⊗ id)(w) = (id ⊗ Δ⁰)(w)` in `A ⊗ H⁰ ⊗ H⁰`.
    pub fn cocycle_residual(&self, w: &[C64]) -> Result<f64> {
        let (d, n) = (self.dim_a(), self.dim_h());
        if w.len() != d * n {
            return Err(Error::Dimension(format!("cocycle has {} coordinates, expected {}", w.len(), d * n)));
        }
        let h0 = self.pair.coacting();
        let triple = self.target.tensor(h0.algebra());
        let mut rho_w = vec![ZERO; d * n * n];
        let mut delta_w = vec![ZERO; d * n * n];
        for a in 0..d {
            for l in 0..n {
                let c = w[a * n + l];
                if c == ZERO {
                    continue;
                }
                for (row, c2) in column_terms(&self.rho, a) {
                    rho_w[row * n + l] += c * c2;
                }
                for (m, l2, c2) in h0.delta_terms(l) {
                    delta_w[(a * n + m) * n + l2] += c * c2;
                }
            }
        }
        let w1 = kron_vec(w, &self.pair.coacting_unit());
        let lhs = triple.mul(&w1, &rho_w);
        Ok(max_abs_diff(&lhs, &delta_w))
    }

    /// Exterior perturbation `Ad(w) ∘ ρ` by a unitary cocycle `w ∈ A ⊗ H⁰`.
    pub fn perturb(&self, w: &[C64], cfg: &ToleranceConfig) -> Result<Self> {
        let r = self.target.unitary_residual(w);
        if r > cfg.eq_tol {
            return Err(Error::NotUnitary(r));
        }
        let cr = self.cocycle_residual(w)?;
        if cr > cfg.eq_tol {
            return Err(Error::Cocycle(cr));
        }
        let ws = self.target.adjoint(w);
        let d = self.dim_a();
        let cols: Vec<Vec<C64>> =
            (0..d).map(|a| self.target.mul(&self.target.mul(w, &self.rho.column(a)), &ws)).collect();
        let rho = Matrix::from_columns(d * self.dim_h(), &cols);
        let mut out = Self::new(format!("{} perturbed", self.name), self.algebra.clone(), self.pair.clone(), rho, cfg)?;
        out.blocks = self.blocks.clone();
        Ok(out)
    }

    /// The coboundary `(v ⊗ 1⁰) ρ(v*)` of a unitary `v ∈ A`; it always satisfies the cocycle
    /// identity, and perturbing by it conjugates `ρ` by `v`.
    pub fn coboundary(&self, v: &[C64]) -> Vec<C64> {
        let vs = self.algebra.adjoint(v);
        self.target.mul(&self.embed_trivially(v), &self.apply(&vs))
    }

    /// A random unitary of `A`, drawn blockwise through the Wedderburn decomposition.
    pub fn random_unitary<R: Rng + ?Sized>(w: &WedderburnData, rng: &mut R) -> Vec<C64> {
        let blocks = w.block_algebra();
        let el =
            crate::cstar::AlgElement { blocks: blocks.block_dims().iter().map(|&n| random_unitary(n, rng)).collect() };
        w.from_block_coords(&blocks.coords(&el).expect("sized"))
    }

    /// `σ = (id ⊗ π⁰) ∘ ρ`, a coaction of the quotient `K⁰`.
    pub fn restrict_via_quotient(&self, q: &HopfQuotient, cfg: &ToleranceConfig) -> Result<Self> {
        let pi0 = q.pi0();
        if pi0.cols() != self.dim_h() {
            return Err(Error::Mismatch(format!(
                "quotient map starts from a Hopf algebra of dimension {}, coaction uses {}",
                pi0.cols(),
                self.dim_h()
            )));
        }
        let (d, n, m) = (self.dim_a(), self.dim_h(), pi0.rows());
        let mut rho = Matrix::zeros(d * m, d);
        for a in 0..d {
            for (row, c) in column_terms(&self.rho, a) {
                let (a1, k) = (row / n, row % n);
                for j in 0..m {
                    rho[(a1 * m + j, a)] += pi0[(j, k)] * c;
                }
            }
        }
        let mut out = Self::new(
            format!("{} restricted to a quotient", self.name),
            self.algebra.clone(),
            q.target().clone(),
            rho,
            cfg,
        )?;
        out.blocks = self.blocks.clone();
        Ok(out)
    }

    /// For coactions of `C(G)`, the underlying action `α_t = ρ_t`.
    pub fn group_action(&self, cfg: &ToleranceConfig) -> Result<GroupAction> {
        let g = match self.pair.kind() {
            crate::hopf::PairKind::FunctionAlgebraCoaction(g) => g.clone(),
            _ => return Err(Error::Unsupported("coaction is not a coaction of a function algebra C(G)".into())),
        };
        let alphas = (0..g.order()).map(|t| self.slice(t)).collect();
        GroupAction::new(g, self.algebra.clone(), alphas, cfg).map(|ga| match &self.blocks {
            Some(b) => ga.with_blocks(b.clone()),
            None => ga,
        })
    }

    /// Largest coordinate distance between two coactions on the same algebra and pair.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        if self.rho.rows() != other.rho.rows() || self.rho.cols() != other.rho.cols() {
            return Err(Error::AmbientDimension { left: self.rho.rows(), right: other.rho.rows() });
        }
        Ok(self.rho.max_abs_diff(&other.rho))
    }
}

/// Sum of `c_i x_i`; a small helper for assembling elements.
pub fn combination(terms: &[(C64, &[C64])], dim: usize) -> Vec<C64> {
    let mut out = vec![ZERO; dim];
    for (c, x) in terms {
        add_scaled(&mut out, *c, x);
    }
    out
}

/// `1 ⊗ 1⁰`, the unit of `A ⊗ H⁰`.
pub fn unit_cocycle(c: &Coaction) -> Vec<C64> {
    c.target().unit()
}
