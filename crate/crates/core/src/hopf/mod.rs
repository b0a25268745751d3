//! Finite-dimensional C*-Hopf algebras in a preferred basis, their duals, Haar projections,
//! comatrix units and the group-derived examples.

mod group;
mod quotient;
mod units;

use std::sync::Arc;

use serde::Serialize;

pub use group::{FiniteGroup, SUBGROUP_ORDER_BOUND};
pub use quotient::{enumerate_quotients, HopfQuotient};
pub use units::{comatrix_units, matrix_unit_residual, pairing_residual, ComatrixUnits};

use crate::cstar::{wedderburn, StarAlgebra, StarAlgebraPresentation, StarHom, WedderburnData};
use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, LinearSystem, Matrix, ToleranceConfig, C64, ONE, ZERO};

/// Raw Hopf structure in a basis `b_0..b_{N-1}`.
///
/// `comult` is `N² × N` with column `k` holding `Δ(b_k)` in the coordinates `i * N + j` of
/// `b_i ⊗ b_j`; `counit[k] = ε(b_k)`; column `k` of `antipode` is `S(b_k)`.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub algebra: StarAlgebraPresentation,
    pub comult: Matrix,
    pub counit: Vec<C64>,
    pub antipode: Matrix,
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub residual: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub dim: usize,
    pub axioms: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.axioms.iter().map(|a| a.residual).fold(0.0, f64::max)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.axioms.iter().find(|a| !a.passed)
    }
}

/// Where a Hopf algebra came from, when that is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HopfOrigin {
    /// `CG` in the basis `u_t`.
    GroupAlgebra(FiniteGroup),
    /// `C(G)` in the basis `δ_t`.
    FunctionAlgebra(FiniteGroup),
    Custom,
}

impl HopfData {
    fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.dim();
        if self.comult.rows() != n * n || self.comult.cols() != n {
            return Err(Error::Dimension(format!(
                "comultiplication is {}x{}, expected {}x{n}",
                self.comult.rows(),
                self.comult.cols(),
                n * n
            )));
        }
        if self.counit.len() != n {
            return Err(Error::Dimension(format!("counit has {} entries, expected {n}", self.counit.len())));
        }
        if self.antipode.rows() != n || self.antipode.cols() != n {
            return Err(Error::Dimension(format!(
                "antipode is {}x{}, expected {n}x{n}",
                self.antipode.rows(),
                self.antipode.cols()
            )));
        }
        Ok(())
    }

    /// Nonzero terms `(i, j, c)` of `Δ(b_k)`.
    fn delta_terms(&self, k: usize) -> Vec<(usize, usize, C64)> {
        let n = self.dim();
        (0..n * n)
            .filter_map(|r| {
                let c = self.comult[(r, k)];
                (c != ZERO).then_some((r / n, r % n, c))
            })
            .collect()
    }
}

/// Check every Hopf axiom on a full basis. Failures are reported, not raised.
pub fn verify_hopf_axioms(data: &HopfData, cfg: &ToleranceConfig) -> Result<HopfReport> {
    data.check_shapes()?;
    let n = data.dim();
    let alg = &data.algebra;
    let tol = cfg.eq_tol;
    let mut axioms = Vec::new();
    let mut push = |axiom: &str, residual: f64, detail: Option<String>| {
        let passed = residual <= tol && detail.is_none();
        axioms.push(AxiomCheck { axiom: axiom.to_string(), residual, passed, detail });
    };

    push("algebra", alg.verify().max_residual(), None);

    let hh = alg.tensor(alg);
    let hom = StarHom::check(alg, &hh, &data.comult)?;
    push("comultiplication is a unital *-homomorphism", hom.max_residual(), None);

    let terms: Vec<Vec<(usize, usize, C64)>> = (0..n).map(|k| data.delta_terms(k)).collect();

    // (Δ⊗id)Δ = (id⊗Δ)Δ in coordinates (i * N + j) * N + l
    let mut coassoc: f64 = 0.0;
    for t in &terms {
        let mut lhs = vec![ZERO; n * n * n];
        let mut rhs = vec![ZERO; n * n * n];
        for &(i, j, c) in t {
            for &(p, q, c2) in &terms[i] {
                lhs[(p * n + q) * n + j] += c * c2;
            }
            for &(p, q, c2) in &terms[j] {
                rhs[(i * n + p) * n + q] += c * c2;
            }
        }
        coassoc = coassoc.max(max_abs_diff(&lhs, &rhs));
    }
    push("coassociativity", coassoc, None);

    let mut counit: f64 = 0.0;
    for (k, t) in terms.iter().enumerate() {
        let mut left = vec![ZERO; n];
        let mut right = vec![ZERO; n];
        for &(i, j, c) in t {
            left[j] += c * data.counit[i];
            right[i] += c * data.counit[j];
        }
        let bk = alg.basis_element(k);
        counit = counit.max(max_abs_diff(&left, &bk)).max(max_abs_diff(&right, &bk));
    }
    push("counit", counit, None);

    let mut character: f64 = 0.0;
    let eps = |x: &[C64]| -> C64 { data.counit.iter().zip(x).map(|(a, b)| a * b).sum() };
    for i in 0..n {
        let bi = alg.basis_element(i);
        character = character.max((eps(&alg.adjoint(&bi)) - data.counit[i].conj()).norm());
        for j in 0..n {
            let prod = alg.mul(&bi, &alg.basis_element(j));
            character = character.max((eps(&prod) - data.counit[i] * data.counit[j]).norm());
        }
    }
    character = character.max((eps(&alg.unit()) - ONE).norm());
    push("counit is a *-character", character, None);

    let unit = alg.unit();
    let s_cols: Vec<Vec<C64>> = (0..n).map(|k| data.antipode.column(k)).collect();
    let mut antipode: f64 = 0.0;
    for (k, t) in terms.iter().enumerate() {
        let mut left = vec![ZERO; n];
        let mut right = vec![ZERO; n];
        for &(i, j, c) in t {
            let bj = alg.basis_element(j);
            let bi = alg.basis_element(i);
            crate::linalg::add_scaled(&mut left, c, &alg.mul(&s_cols[i], &bj));
            crate::linalg::add_scaled(&mut right, c, &alg.mul(&bi, &s_cols[j]));
        }
        let target: Vec<C64> = unit.iter().map(|u| u * data.counit[k]).collect();
        antipode = antipode.max(max_abs_diff(&left, &target)).max(max_abs_diff(&right, &target));
    }
    push("antipode", antipode, None);

    let mut s_star: f64 = 0.0;
    for (k, col) in s_cols.iter().enumerate() {
        let back = alg.adjoint(&data.antipode.mul_vec(&alg.adjoint(col)));
        s_star = s_star.max(max_abs_diff(&back, &alg.basis_element(k)));
    }
    push("S(S(x)*)* = x", s_star, None);

    match haar_projection(data, cfg) {
        Ok((_, r)) => push("haar projection", r, None),
        Err(e) => push("haar projection", 1.0, Some(e.to_string())),
    }

    Ok(HopfReport { dim: n, axioms })
}

/// The unique `e` with `h e = ε(h) e` and `ε(e) = 1`, with its projection residual.
fn haar_projection(data: &HopfData, cfg: &ToleranceConfig) -> Result<(Vec<C64>, f64)> {
    let n = data.dim();
    let alg = &data.algebra;
    let mut sys = LinearSystem::new(n);
    for k in 0..n {
        let l = alg.left_mul_matrix(&alg.basis_element(k));
        sys.push_matrix(&l.sub(&Matrix::identity(n).scale(data.counit[k])));
    }
    let space = sys.null_space(cfg, 1.0);
    if space.dim() != 1 {
        return Err(Error::HopfAxiom {
            axiom: format!("haar solution space has dimension {}", space.dim()),
            residual: 1.0,
        });
    }
    let v = &space.basis()[0];
    let ev: C64 = data.counit.iter().zip(v).map(|(a, b)| a * b).sum();
    if ev.norm() < cfg.eq_tol {
        return Err(Error::HopfAxiom { axiom: "haar element is annihilated by the counit".into(), residual: 1.0 });
    }
    let e: Vec<C64> = v.iter().map(|x| x / ev).collect();
    let mut res = alg.projection_residual(&e);
    for k in 0..n {
        let right = alg.mul(&e, &alg.basis_element(k));
        let expect: Vec<C64> = e.iter().map(|x| x * data.counit[k]).collect();
        res = res.max(max_abs_diff(&right, &expect));
    }
    Ok((e, res))
}

/// A verified finite-dimensional C*-Hopf algebra with its Haar projection and Wedderburn data.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    name: String,
    data: HopfData,
    haar: Vec<C64>,
    wedderburn: WedderburnData,
    origin: HopfOrigin,
}

impl HopfAlgebra {
    /// Verify all axioms; the first failing axiom becomes the error.
    pub fn new(name: impl Into<String>, data: HopfData, cfg: &ToleranceConfig) -> Result<Self> {
        Self::with_origin(name, data, HopfOrigin::Custom, cfg)
    }

    fn with_origin(name: impl Into<String>, data: HopfData, origin: HopfOrigin, cfg: &ToleranceConfig) -> Result<Self> {
        let report = verify_hopf_axioms(&data, cfg)?;
        if let Some(f) = report.first_failure() {
            return Err(Error::HopfAxiom {
                axiom: match &f.detail {
                    Some(d) => format!("{}: {d}", f.axiom),
                    None => f.axiom.clone(),
                },
                residual: f.residual,
            });
        }
        let (haar, _) = haar_projection(&data, cfg)?;
        let wedderburn = wedderburn(&data.algebra, cfg)?;
        Ok(Self { name: name.into(), data, haar, wedderburn, origin })
    }

    /// Group algebra `CG`: `u_s u_t = u_{st}`, `u_t* = u_{t⁻¹}`, `Δu_t = u_t ⊗ u_t`.
    pub fn group_algebra(g: &FiniteGroup) -> Self {
        let n = g.order();
        let triples = (0..n).flat_map(|s| (0..n).map(move |t| (s, t, g.mul(s, t), ONE)));
        let invol = Matrix::from_fn(n, n, |r, c| if r == g.inv(c) { ONE } else { ZERO });
        let mut unit = vec![ZERO; n];
        unit[g.identity()] = ONE;
        let algebra = StarAlgebraPresentation::from_triples(n, triples, invol.clone(), unit).expect("valid");
        let comult = Matrix::from_fn(n * n, n, |r, k| if r == k * n + k { ONE } else { ZERO });
        let data = HopfData { algebra, comult, counit: vec![ONE; n], antipode: invol };
        Self::with_origin(
            format!("group algebra of a group of order {n}"),
            data,
            HopfOrigin::GroupAlgebra(g.clone()),
            &ToleranceConfig::default(),
        )
        .expect("group algebra axioms")
    }

    /// Function algebra `C(G)`: `δ_s δ_t = [s=t] δ_s`, `Δδ_t = Σ_s δ_s ⊗ δ_{s⁻¹t}`.
    pub fn function_algebra(g: &FiniteGroup) -> Self {
        let n = g.order();
        let triples = (0..n).map(|s| (s, s, s, ONE));
        let algebra =
            StarAlgebraPresentation::from_triples(n, triples, Matrix::identity(n), vec![ONE; n]).expect("valid");
        let comult = Matrix::from_fn(n * n, n, |r, t| {
            let (s, s2) = (r / n, r % n);
            if s2 == g.mul(g.inv(s), t) {
                ONE
            } else {
                ZERO
            }
        });
        let counit = (0..n).map(|t| if t == g.identity() { ONE } else { ZERO }).collect();
        let antipode = Matrix::from_fn(n, n, |r, c| if r == g.inv(c) { ONE } else { ZERO });
        let data = HopfData { algebra, comult, counit, antipode };
        Self::with_origin(
            format!("function algebra of a group of order {n}"),
            data,
            HopfOrigin::FunctionAlgebra(g.clone()),
            &ToleranceConfig::default(),
        )
        .expect("function algebra axioms")
    }

    /// The dual Hopf algebra in the dual basis `φ_k(b_j) = δ_{jk}`.
    ///
    /// Product is the transpose of `Δ`, coproduct the transpose of the product, `ε⁰ = ev_1`,
    /// `S⁰ = Sᵀ`, and `φ*(h) = conj(φ(S(h)*))`. The pairing is the coordinate dot product.
    pub fn dual(&self, cfg: &ToleranceConfig) -> Result<Self> {
        let n = self.dim();
        let d = &self.data;
        let mut triples = Vec::new();
        for k in 0..n {
            for (i, j, c) in d.delta_terms(k) {
                triples.push((i, j, k, c));
            }
        }
        let alg = &d.algebra;
        // w_j = coordinates of S(b_j)*; coordinate k of φ_j* is conj(w_k[j])
        let w: Vec<Vec<C64>> = (0..n).map(|j| alg.adjoint(&d.antipode.column(j))).collect();
        let invol = Matrix::from_fn(n, n, |k, j| w[k][j].conj());
        let algebra = StarAlgebraPresentation::from_triples(n, triples, invol, d.counit.clone())?;
        let mut comult = Matrix::zeros(n * n, n);
        for (i, j, k, c) in alg.triples() {
            comult[(i * n + j, k)] += c;
        }
        let data = HopfData { algebra, comult, counit: alg.unit(), antipode: d.antipode.transpose() };
        let origin = match &self.origin {
            HopfOrigin::GroupAlgebra(g) => HopfOrigin::FunctionAlgebra(g.clone()),
            HopfOrigin::FunctionAlgebra(g) => HopfOrigin::GroupAlgebra(g.clone()),
            HopfOrigin::Custom => HopfOrigin::Custom,
        };
        let name = match &origin {
            HopfOrigin::Custom => format!("dual of {}", self.name),
            HopfOrigin::GroupAlgebra(g) => format!("group algebra of a group of order {}", g.order()),
            HopfOrigin::FunctionAlgebra(g) => format!("function algebra of a group of order {}", g.order()),
        };
        Self::with_origin(name, data, origin, cfg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn algebra(&self) -> &StarAlgebraPresentation {
        &self.data.algebra
    }

    pub fn data(&self) -> &HopfData {
        &self.data
    }

    pub fn comult(&self) -> &Matrix {
        &self.data.comult
    }

    pub fn counit(&self) -> &[C64] {
        &self.data.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.data.antipode
    }

    /// The distinguished projection: `h e = e h = ε(h) e`, `ε(e) = 1`.
    pub fn haar(&self) -> &[C64] {
        &self.haar
    }

    pub fn wedderburn(&self) -> &WedderburnData {
        &self.wedderburn
    }

    pub fn origin(&self) -> &HopfOrigin {
        &self.origin
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.origin {
            HopfOrigin::GroupAlgebra(g) | HopfOrigin::FunctionAlgebra(g) => Some(g),
            HopfOrigin::Custom => None,
        }
    }

    pub fn counit_of(&self, x: &[C64]) -> C64 {
        self.data.counit.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn comultiply(&self, x: &[C64]) -> Vec<C64> {
        self.data.comult.mul_vec(x)
    }

    pub fn antipode_of(&self, x: &[C64]) -> Vec<C64> {
        self.data.antipode.mul_vec(x)
    }

    /// Nonzero terms `(i, j, c)` of `Δ(b_k)`.
    pub fn delta_terms(&self, k: usize) -> Vec<(usize, usize, C64)> {
        self.data.delta_terms(k)
    }

    /// Largest coordinate difference of all structure maps against another Hopf algebra of
    /// the same dimension.
    pub fn structure_distance(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::AmbientDimension { left: self.dim(), right: other.dim() });
        }
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let bi = self.algebra().basis_element(i);
            for j in 0..n {
                let bj = self.algebra().basis_element(j);
                worst = worst.max(max_abs_diff(&self.algebra().mul(&bi, &bj), &other.algebra().mul(&bi, &bj)));
            }
        }
        worst = worst
            .max(self.algebra().involution_matrix().max_abs_diff(other.algebra().involution_matrix()))
            .max(max_abs_diff(&self.algebra().unit(), &other.algebra().unit()))
            .max(self.comult().max_abs_diff(other.comult()))
            .max(max_abs_diff(self.counit(), other.counit()))
            .max(self.antipode().max_abs_diff(other.antipode()));
        Ok(worst)
    }
}

/// Canonical pairing `⟨φ, h⟩` between `H⁰` and `H` in dual bases.
pub fn pairing(phi: &[C64], h: &[C64]) -> C64 {
    phi.iter().zip(h).map(|(a, b)| a * b).sum()
}

/// How a pair `(H, H⁰)` arose; group-derived pairs unlock group-specific checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// `H⁰ = C(G)`, `H = CG`: coactions are actions of `G`.
    FunctionAlgebraCoaction(FiniteGroup),
    /// `H⁰ = CG`, `H = C(G)`: coactions are `G`-gradings.
    GroupAlgebraCoaction(FiniteGroup),
    General,
}

/// A Hopf algebra `H` (acting on coaction targets) together with its dual `H⁰` (coacting).
#[derive(Clone, Debug)]
pub struct HopfPair {
    acting: Arc<HopfAlgebra>,
    coacting: Arc<HopfAlgebra>,
    kind: PairKind,
}

impl HopfPair {
    pub fn from_acting(h: HopfAlgebra, cfg: &ToleranceConfig) -> Result<Self> {
        let dual = h.dual(cfg)?;
        let kind = match h.origin() {
            HopfOrigin::GroupAlgebra(g) => PairKind::FunctionAlgebraCoaction(g.clone()),
            HopfOrigin::FunctionAlgebra(g) => PairKind::GroupAlgebraCoaction(g.clone()),
            HopfOrigin::Custom => PairKind::General,
        };
        Ok(Self { acting: Arc::new(h), coacting: Arc::new(dual), kind })
    }

    /// `H = CG`, `H⁰ = C(G)`.
    pub fn for_group_action(g: &FiniteGroup) -> Self {
        Self::from_acting(HopfAlgebra::group_algebra(g), &ToleranceConfig::default()).expect("verified")
    }

    /// `H = C(G)`, `H⁰ = CG`.
    pub fn for_group_grading(g: &FiniteGroup) -> Self {
        Self::from_acting(HopfAlgebra::function_algebra(g), &ToleranceConfig::default()).expect("verified")
    }

    /// The pair with roles exchanged, used for dual coactions.
    pub fn swapped(&self) -> Self {
        let kind = match &self.kind {
            PairKind::FunctionAlgebraCoaction(g) => PairKind::GroupAlgebraCoaction(g.clone()),
            PairKind::GroupAlgebraCoaction(g) => PairKind::FunctionAlgebraCoaction(g.clone()),
            PairKind::General => PairKind::General,
        };
        Self { acting: self.coacting.clone(), coacting: self.acting.clone(), kind }
    }

    pub fn acting(&self) -> &HopfAlgebra {
        &self.acting
    }

    pub fn coacting(&self) -> &HopfAlgebra {
        &self.coacting
    }

    pub fn kind(&self) -> &PairKind {
        &self.kind
    }

    /// `N = dim H = dim H⁰`.
    pub fn dim(&self) -> usize {
        self.acting.dim()
    }

    /// Distinguished projection `e ∈ H`.
    pub fn e(&self) -> &[C64] {
        self.acting.haar()
    }

    /// Distinguished projection `τ ∈ H⁰`, the Haar trace on `H`.
    pub fn tau(&self) -> &[C64] {
        self.coacting.haar()
    }

    /// `1⁰ ∈ H⁰`, whose coordinates are the counit of `H`.
    pub fn coacting_unit(&self) -> Vec<C64> {
        self.coacting.algebra().unit()
    }

    pub fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.acting, &other.acting)
            || (self.dim() == other.dim()
                && self.acting.structure_distance(&other.acting).map(|d| d < 1e-12).unwrap_or(false)
                && self.coacting.structure_distance(&other.coacting).map(|d| d < 1e-12).unwrap_or(false))
    }

    /// The group when both sides come from one.
    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.kind {
            PairKind::FunctionAlgebraCoaction(g) | PairKind::GroupAlgebraCoaction(g) => Some(g),
            PairKind::General => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn groups() -> Vec<FiniteGroup> {
        let z2 = FiniteGroup::cyclic(2);
        vec![z2.clone(), FiniteGroup::cyclic(3), FiniteGroup::direct_product(&z2, &z2), FiniteGroup::symmetric(3)]
    }

    #[test]
    fn group_and_function_algebras_pass() {
        for g in groups() {
            for h in [HopfAlgebra::group_algebra(&g), HopfAlgebra::function_algebra(&g)] {
                let r = verify_hopf_axioms(h.data(), &cfg()).unwrap();
                assert!(r.passed() && r.max_residual() < 1e-8, "{r:?}");
            }
        }
    }

    #[test]
    fn corrupted_comultiplication_breaks_coassociativity() {
        let h = HopfAlgebra::function_algebra(&FiniteGroup::cyclic(2));
        let mut data = h.data().clone();
        data.comult[(0, 0)] += c64(0.1, 0.0);
        let r = verify_hopf_axioms(&data, &cfg()).unwrap();
        let co = r.axioms.iter().find(|a| a.axiom == "coassociativity").unwrap();
        assert!(!co.passed && co.residual > 0.05);
        assert!(HopfAlgebra::new("bad", data, &cfg()).is_err());
    }

    #[test]
    fn function_algebra_z2_comultiplication() {
        let h = HopfAlgebra::function_algebra(&FiniteGroup::cyclic(2));
        // Δδ_0 = δ_0⊗δ_0 + δ_1⊗δ_1
        let col = h.comult().column(0);
        assert_eq!(col, vec![ONE, ZERO, ZERO, ONE]);
    }

    #[test]
    fn haar_projections() {
        let g = FiniteGroup::cyclic(2);
        let cg = HopfAlgebra::group_algebra(&g);
        assert!(max_abs_diff(cg.haar(), &[c64(0.5, 0.0), c64(0.5, 0.0)]) < 1e-12);
        for g in groups() {
            let cfun = HopfAlgebra::function_algebra(&g);
            let mut delta_e = vec![ZERO; g.order()];
            delta_e[g.identity()] = ONE;
            assert!(max_abs_diff(cfun.haar(), &delta_e) < 1e-12);
        }
    }

    #[test]
    fn dual_of_group_algebra_is_function_algebra() {
        for g in groups() {
            let dual = HopfAlgebra::group_algebra(&g).dual(&cfg()).unwrap();
            let fun = HopfAlgebra::function_algebra(&g);
            assert!(dual.structure_distance(&fun).unwrap() < 1e-12);
        }
    }

    #[test]
    fn dual_is_involutive() {
        for g in groups() {
            for h in [HopfAlgebra::group_algebra(&g), HopfAlgebra::function_algebra(&g)] {
                let dd = h.dual(&cfg()).unwrap().dual(&cfg()).unwrap();
                assert!(dd.structure_distance(&h).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn tau_is_normalized() {
        for g in groups() {
            let pair = HopfPair::for_group_action(&g);
            // τ(1) = ⟨τ, 1_H⟩ = 1
            let one = pair.acting().algebra().unit();
            assert!((pairing(pair.tau(), &one) - ONE).norm() < 1e-12);
            assert!((pair.coacting().counit_of(pair.tau()) - ONE).norm() < 1e-12);
        }
    }

    #[test]
    fn sweedler_evaluation() {
        let g = FiniteGroup::symmetric(3);
        let h = HopfAlgebra::group_algebra(&g);
        let hd = h.dual(&cfg()).unwrap();
        let n = h.dim();
        for k in 0..n {
            let hk = h.algebra().basis_element(k);
            let dk = h.comultiply(&hk);
            for a in 0..n {
                for b in 0..n {
                    let phi = hd.algebra().basis_element(a);
                    let psi = hd.algebra().basis_element(b);
                    let lhs = pairing(&hd.algebra().mul(&phi, &psi), &hk);
                    let rhs = dk[a * n + b];
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn swapped_pair_roles() {
        let g = FiniteGroup::cyclic(3);
        let pair = HopfPair::for_group_action(&g);
        let sw = pair.swapped();
        assert_eq!(sw.kind(), &PairKind::GroupAlgebraCoaction(g.clone()));
        assert!(sw.acting().structure_distance(pair.coacting()).unwrap() == 0.0);
        let grading = HopfPair::for_group_grading(&g);
        assert!(grading.acting().structure_distance(sw.acting()).unwrap() < 1e-12);
        assert!(grading.coacting().structure_distance(sw.coacting()).unwrap() < 1e-12);
    }
}
