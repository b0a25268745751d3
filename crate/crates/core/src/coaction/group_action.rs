use std::sync::Arc;

use crate::cstar::{BlockAlgebra, StarAlgebra, StarAlgebraPresentation, StarHom};
use crate::error::{Error, Result};
use crate::hopf::FiniteGroup;
use crate::linalg::{rank, Matrix, ToleranceConfig};

/// An action `t ↦ α_t` of a finite group by *-automorphisms, as coordinate matrices.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    algebra: Arc<StarAlgebraPresentation>,
    blocks: Option<BlockAlgebra>,
    alpha: Vec<Matrix>,
}

impl GroupAction {
    /// Checks that each `α_t` is a *-automorphism, `α_ı = id` and `α_s α_t = α_{st}`.
    pub fn new(
        group: FiniteGroup,
        algebra: Arc<StarAlgebraPresentation>,
        alpha: Vec<Matrix>,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        let d = algebra.dim();
        if alpha.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} automorphisms for a group of order {}",
                alpha.len(),
                group.order()
            )));
        }
        for (t, a) in alpha.iter().enumerate() {
            if a.rows() != d || a.cols() != d {
                return Err(Error::Dimension(format!(
                    "automorphism {t} is {}x{}, expected {d}x{d}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        for a in &alpha {
            StarHom::new(algebra.as_ref(), algebra.as_ref(), a.clone(), cfg, "automorphism")?;
            if rank(a, cfg) != d {
                return Err(Error::Homomorphism { what: "automorphism".into(), residual: 1.0 });
            }
        }
        let id_res = alpha[group.identity()].max_abs_diff(&Matrix::identity(d));
        let mut law: f64 = id_res;
        for s in 0..group.order() {
            for t in 0..group.order() {
                law = law.max(alpha[s].matmul(&alpha[t]).max_abs_diff(&alpha[group.mul(s, t)]));
            }
        }
        if law > cfg.eq_tol {
            return Err(Error::Homomorphism { what: "group action law".into(), residual: law });
        }
        Ok(Self { group, algebra, blocks: None, alpha })
    }

    pub fn on_blocks(
        group: FiniteGroup,
        blocks: &BlockAlgebra,
        alpha: Vec<Matrix>,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        Ok(Self::new(group, Arc::new(blocks.presentation()), alpha, cfg)?.with_blocks(blocks.clone()))
    }

    pub(crate) fn with_blocks(mut self, blocks: BlockAlgebra) -> Self {
        self.blocks = Some(blocks);
        self
    }

    /// `α_t = Ad(u_t)` on `M_n` for a unitary representation `t ↦ u_t` up to phases.
    pub fn inner(group: FiniteGroup, n: usize, unitaries: &[Matrix], cfg: &ToleranceConfig) -> Result<Self> {
        let blocks = BlockAlgebra::new(vec![n])?;
        let alpha = unitaries
            .iter()
            .map(|u| {
                let us = u.adjoint();
                Matrix::from_fn(n * n, n * n, |r, c| {
                    // (u e_{c0 c1} u*)_{r0 r1} = u_{r0 c0} conj(u_{r1 c1})
                    let (r0, r1, c0, c1) = (r / n, r % n, c / n, c % n);
                    u[(r0, c0)] * us[(c1, r1)]
                })
            })
            .collect();
        Self::on_blocks(group, &blocks, alpha, cfg)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
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

    pub fn alpha(&self, t: usize) -> &Matrix {
        &self.alpha[t]
    }

    pub fn alphas(&self) -> &[Matrix] {
        &self.alpha
    }

    /// The action restricted to a subgroup, relabelled as in [`FiniteGroup::subgroup_group`].
    pub fn restrict(&self, subgroup: &[usize], cfg: &ToleranceConfig) -> Result<Self> {
        let k = self.group.subgroup_group(subgroup)?;
        let mut elems = subgroup.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let alpha = elems.iter().map(|&t| self.alpha[t].clone()).collect();
        let out = Self::new(k, self.algebra.clone(), alpha, cfg)?;
        Ok(match &self.blocks {
            Some(b) => out.with_blocks(b.clone()),
            None => out,
        })
    }

    /// The identity action.
    pub fn trivial(group: FiniteGroup, blocks: &BlockAlgebra) -> Self {
        let d = blocks.coordinate_dim();
        let alpha = vec![Matrix::identity(d); group.order()];
        Self::on_blocks(group, blocks, alpha, &ToleranceConfig::default()).expect("identity action")
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Whether `α_t(a) = a` for all `a`.
    pub fn is_identity(&self, t: usize, cfg: &ToleranceConfig) -> bool {
        self.alpha[t].max_abs_diff(&Matrix::identity(self.algebra.dim())) <= cfg.eq_tol
    }
}
