use crate::cstar::StarHom;
use crate::error::{Error, Result};
use crate::linalg::{kron, rank, Matrix, ToleranceConfig, ONE};

use super::{HopfPair, PairKind};

/// A surjective Hopf *-homomorphism `π⁰: H⁰ → K⁰`, with the dual embedding `π: K → H`.
#[derive(Clone, Debug)]
pub struct HopfQuotient {
    subgroup: Option<Vec<usize>>,
    target: HopfPair,
    pi0: Matrix,
}

impl HopfQuotient {
    /// Restriction of functions `C(G) → C(K)` for a subgroup `K`.
    pub fn restriction(source: &HopfPair, subgroup: &[usize], cfg: &ToleranceConfig) -> Result<Self> {
        let g = match source.kind() {
            PairKind::FunctionAlgebraCoaction(g) => g,
            _ => return Err(Error::Unsupported("restriction quotients need a coacting function algebra C(G)".into())),
        };
        let k = g.subgroup_group(subgroup)?;
        let mut elems = subgroup.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let target = HopfPair::for_group_action(&k);
        let pi0 = Matrix::from_fn(elems.len(), g.order(), |r, c| if elems[r] == c { ONE } else { crate::linalg::ZERO });
        let mut q = Self::from_map(source, target, pi0, cfg)?;
        q.subgroup = Some(elems);
        Ok(q)
    }

    /// Verify a user-supplied `π⁰` (coordinates of `H⁰` to coordinates of `K⁰`).
    pub fn from_map(source: &HopfPair, target: HopfPair, pi0: Matrix, cfg: &ToleranceConfig) -> Result<Self> {
        let h0 = source.coacting();
        let k0 = target.coacting();
        StarHom::new(h0.algebra(), k0.algebra(), pi0.clone(), cfg, "quotient map")?;
        if rank(&pi0, cfg) != k0.dim() {
            return Err(Error::Homomorphism { what: "quotient surjectivity".into(), residual: 1.0 });
        }
        // (π⊗π)Δ = Δπ, επ = ε, Sπ = πS
        let comult = kron(&pi0, &pi0).matmul(h0.comult()).max_abs_diff(&k0.comult().matmul(&pi0));
        let counit_row = Matrix::from_row_major(1, k0.dim(), k0.counit().to_vec())?.matmul(&pi0);
        let counit = crate::linalg::max_abs_diff(counit_row.row(0), h0.counit());
        let antipode = k0.antipode().matmul(&pi0).max_abs_diff(&pi0.matmul(h0.antipode()));
        let worst = comult.max(counit).max(antipode);
        if worst > cfg.eq_tol {
            return Err(Error::Homomorphism { what: "Hopf quotient".into(), residual: worst });
        }
        Ok(Self { subgroup: None, target, pi0 })
    }

    pub fn subgroup(&self) -> Option<&[usize]> {
        self.subgroup.as_deref()
    }

    /// The quotient pair `(K, K⁰)`.
    pub fn target(&self) -> &HopfPair {
        &self.target
    }

    /// `π⁰: H⁰ → K⁰`.
    pub fn pi0(&self) -> &Matrix {
        &self.pi0
    }

    /// `π: K → H`, the transpose of `π⁰` under the pairings.
    pub fn embedding(&self) -> Matrix {
        self.pi0.transpose()
    }

    /// Whether the quotient is the trivial one-dimensional Hopf algebra.
    pub fn is_trivial(&self) -> bool {
        self.target.dim() == 1
    }
}

/// All restriction quotients of `C(G)`, one per subgroup, ordered by subgroup order.
pub fn enumerate_quotients(source: &HopfPair, bound: usize, cfg: &ToleranceConfig) -> Result<Vec<HopfQuotient>> {
    let g = match source.kind() {
        PairKind::FunctionAlgebraCoaction(g) => g,
        _ => {
            return Err(Error::Unsupported(
                "quotient enumeration is only available when the coacting algebra is C(G)".into(),
            ))
        }
    };
    g.subgroups(bound)?.iter().map(|k| HopfQuotient::restriction(source, k, cfg)).collect()
}
