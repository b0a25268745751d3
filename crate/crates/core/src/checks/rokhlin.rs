use serde::Serialize;

use crate::coaction::Coaction;
use crate::cstar::{wedderburn, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, max_abs_diff, scaled, serde_complex, ToleranceConfig, C64, ONE, ZERO};

/// Largest number of minimal central projections the search accepts.
pub const ROKHLIN_MAX_PROJECTIONS: usize = 20;

/// Result of the central-projection search. This is evidence only: the actual Rokhlin property
/// concerns central sequences and is not decided here.
#[derive(Clone, Debug, Serialize)]
pub struct RokhlinDiagnostic {
    pub minimal_projections: usize,
    pub candidates_tried: usize,
    /// Which minimal central projections make up the projection found.
    pub subset: Option<Vec<usize>>,
    #[serde(with = "serde_complex")]
    pub projection: Vec<C64>,
}

impl RokhlinDiagnostic {
    pub fn found(&self) -> bool {
        self.subset.is_some()
    }
}

/// Search central projections `p` of `A` with `e·p = (1/N) 1`, in Gray-code order.
pub fn exact_rokhlin_search(c: &Coaction, cfg: &ToleranceConfig) -> Result<RokhlinDiagnostic> {
    let w = wedderburn(c.algebra(), cfg)?;
    let z = w.central_projections();
    let m = z.len();
    if m > ROKHLIN_MAX_PROJECTIONS {
        return Err(Error::Unsupported(format!(
            "center has {m} minimal projections, the search handles at most {ROKHLIN_MAX_PROJECTIONS}"
        )));
    }
    let d = c.dim_a();
    let act = c.action_matrix(c.pair().e());
    let ez: Vec<Vec<C64>> = z.iter().map(|zi| act.mul_vec(zi)).collect();
    let target = scaled(&c.algebra().unit(), C64::new(1.0 / c.dim_h() as f64, 0.0));
    let mut p = vec![ZERO; d];
    let mut ep = vec![ZERO; d];
    let mut chosen = vec![false; m];
    let mut tried = 0;
    for step in 1..(1usize << m) {
        let bit = step.trailing_zeros() as usize;
        let sign = if chosen[bit] { -ONE } else { ONE };
        chosen[bit] = !chosen[bit];
        add_scaled(&mut p, sign, &z[bit]);
        add_scaled(&mut ep, sign, &ez[bit]);
        tried += 1;
        if max_abs_diff(&ep, &target) <= cfg.eq_tol {
            let subset = (0..m).filter(|&i| chosen[i]).collect();
            return Ok(RokhlinDiagnostic {
                minimal_projections: m,
                candidates_tried: tried,
                subset: Some(subset),
                projection: p,
            });
        }
    }
    Ok(RokhlinDiagnostic { minimal_projections: m, candidates_tried: tried, subset: None, projection: Vec::new() })
}
