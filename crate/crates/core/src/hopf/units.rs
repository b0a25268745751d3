use crate::cstar::StarAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, C64};

use super::{pairing, HopfPair};

/// Matrix units `φ^k_{ij}` of `H⁰` and the dual basis `w^k_{ij}` of `H` (comatrix units).
#[derive(Clone, Debug)]
pub struct ComatrixUnits {
    pub block_sizes: Vec<usize>,
    /// `φ^k_{ij}` as coordinates in `H⁰`, grouped by block, indexed `i * n_k + j`.
    pub matrix_units: Vec<Vec<Vec<C64>>>,
    /// `w^k_{ij}` as coordinates in `H`, same indexing.
    pub comatrix_units: Vec<Vec<Vec<C64>>>,
    /// Position `(k, i * n_k + j)` of the comatrix unit equal to `1_H`.
    pub unit_position: (usize, usize),
    /// Position of `τ` among the matrix units of `H⁰`.
    pub tau_position: (usize, usize),
}

impl ComatrixUnits {
    pub fn iter_pairs(&self) -> impl Iterator<Item = (&[C64], &[C64])> {
        self.matrix_units
            .iter()
            .zip(&self.comatrix_units)
            .flat_map(|(m, w)| m.iter().zip(w).map(|(a, b)| (a.as_slice(), b.as_slice())))
    }
}

/// Comatrix units of `H`: the dual basis of the matrix units of `H⁰` under the pairing.
///
/// With matrix units as the columns of `Φ`, the dual basis is the columns of `(Φᵀ)⁻¹`, which is
/// the transpose of the Wedderburn coordinate map of `H⁰`.
pub fn comatrix_units(pair: &HopfPair) -> Result<ComatrixUnits> {
    let h0 = pair.coacting();
    let w = h0.wedderburn();
    let to_blocks = w.to_blocks_matrix();
    let mut matrix_units = Vec::new();
    let mut comatrix = Vec::new();
    let mut flat = 0;
    for b in 0..w.num_blocks() {
        let units = w.matrix_units(b).to_vec();
        let duals: Vec<Vec<C64>> = (0..units.len()).map(|m| to_blocks.row(flat + m).to_vec()).collect();
        flat += units.len();
        matrix_units.push(units);
        comatrix.push(duals);
    }
    let one = pair.acting().algebra().unit();
    let tau = pair.tau();
    let mut unit_position = None;
    let mut tau_position = None;
    for (b, (mu, cu)) in matrix_units.iter().zip(&comatrix).enumerate() {
        for (m, (phi, wv)) in mu.iter().zip(cu).enumerate() {
            if max_abs_diff(wv, &one) < 1e-8 {
                unit_position = Some((b, m));
            }
            if max_abs_diff(phi, tau) < 1e-8 {
                tau_position = Some((b, m));
            }
        }
    }
    let unit_position =
        unit_position.ok_or_else(|| Error::Inconsistency("the unit of H is not a comatrix unit".into()))?;
    let tau_position = tau_position.ok_or_else(|| Error::Inconsistency("τ is not a matrix unit of H⁰".into()))?;
    Ok(ComatrixUnits {
        block_sizes: w.block_sizes().to_vec(),
        matrix_units,
        comatrix_units: comatrix,
        unit_position,
        tau_position,
    })
}

/// Largest deviation of the pairing matrix between `φ`'s and `w`'s from the identity.
pub fn pairing_residual(units: &ComatrixUnits) -> f64 {
    let pairs: Vec<(&[C64], &[C64])> = units.iter_pairs().collect();
    let mut worst: f64 = 0.0;
    for (a, (phi, _)) in pairs.iter().enumerate() {
        for (b, (_, w)) in pairs.iter().enumerate() {
            let expect = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((pairing(phi, w) - C64::new(expect, 0.0)).norm());
        }
    }
    worst
}

/// Check the matrix-unit relations of `H⁰` for a family grouped by blocks.
pub fn matrix_unit_residual<A: StarAlgebra + ?Sized>(alg: &A, units: &[Vec<Vec<C64>>], sizes: &[usize]) -> f64 {
    let d = alg.dim();
    let zero = vec![C64::new(0.0, 0.0); d];
    let mut worst: f64 = 0.0;
    let mut sum = zero.clone();
    for (k, block) in units.iter().enumerate() {
        let n = sizes[k];
        for i in 0..n {
            crate::linalg::add_scaled(&mut sum, C64::new(1.0, 0.0), &block[i * n + i]);
            for j in 0..n {
                let e = &block[i * n + j];
                worst = worst.max(max_abs_diff(&alg.adjoint(e), &block[j * n + i]));
                for (l, other) in units.iter().enumerate() {
                    let m = sizes[l];
                    for p in 0..m {
                        for q in 0..m {
                            let prod = alg.mul(e, &other[p * m + q]);
                            let expect = if k == l && j == p { &block[i * n + q] } else { &zero };
                            worst = worst.max(max_abs_diff(&prod, expect));
                        }
                    }
                }
            }
        }
    }
    worst.max(max_abs_diff(&sum, &alg.unit()))
}
