use serde::Serialize;

use crate::coaction::Coaction;
use crate::crossed::CrossedProduct;
use crate::cstar::mvn_equivalent;
use crate::error::Result;
use crate::linalg::ToleranceConfig;

/// Rank vectors of `ρ̂(1 ⋊ e)` and `(1 ⋊ e) ⊗ 1` over the simple blocks of `(A ⋊ H) ⊗ H`.
#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    pub saturated: bool,
    pub rank_dual_image: Vec<usize>,
    pub rank_amplified: Vec<usize>,
}

/// Saturation as Murray–von Neumann equivalence of `ρ̂(1 ⋊ e)` and `(1 ⋊ e) ⊗ 1`.
pub fn is_saturated(c: &Coaction, cfg: &ToleranceConfig) -> Result<SaturationReport> {
    let cp = CrossedProduct::build(c, cfg)?;
    let dual = cp.dual_coaction()?;
    let e = cp.haar_projection();
    let p1 = dual.apply(&e);
    let p2 = dual.embed_trivially(&e);
    // ρ̂ coacts with H, whose block data is kept on the Hopf algebra itself
    let w = cp.wedderburn()?.tensor(dual.pair().coacting().wedderburn());
    let mvn = mvn_equivalent(dual.target(), &w, &p1, &p2, cfg)?;
    Ok(SaturationReport { saturated: mvn.equivalent, rank_dual_image: mvn.rank_p, rank_amplified: mvn.rank_q })
}
