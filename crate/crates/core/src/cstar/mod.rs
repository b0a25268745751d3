//! Finite-dimensional C*-algebras: block direct sums, structure-constant presentations,
//! commutants, Wedderburn decomposition and Murray–von Neumann comparison.

mod block;
mod hom;
mod presentation;
mod wedderburn;

pub use block::{AlgElement, BlockAlgebra};
pub use hom::{HomReport, StarHom};
pub use presentation::{matrix_algebra, scalars, PresentationReport, StarAlgebraPresentation};
pub use wedderburn::{is_simple, mvn_equivalent, wedderburn, MvnReport, WedderburnData};

use crate::linalg::{unit_vector, LinearSystem, Matrix, Subspace, ToleranceConfig, C64};

/// A finite-dimensional *-algebra acting on coordinate vectors.
pub trait StarAlgebra {
    fn dim(&self) -> usize;
    fn mul(&self, x: &[C64], y: &[C64]) -> Vec<C64>;
    fn adjoint(&self, x: &[C64]) -> Vec<C64>;
    fn unit(&self) -> Vec<C64>;

    fn basis_element(&self, i: usize) -> Vec<C64> {
        unit_vector(self.dim(), i)
    }

    /// Matrix of `y ↦ x y`.
    fn left_mul_matrix(&self, x: &[C64]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<C64>> = (0..d).map(|j| self.mul(x, &unit_vector(d, j))).collect();
        Matrix::from_columns(d, &cols)
    }

    /// Matrix of `y ↦ y x`.
    fn right_mul_matrix(&self, x: &[C64]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<C64>> = (0..d).map(|j| self.mul(&unit_vector(d, j), x)).collect();
        Matrix::from_columns(d, &cols)
    }

    /// `x* x = x = x*` residual; zero exactly for projections.
    fn projection_residual(&self, x: &[C64]) -> f64 {
        let sq = self.mul(x, x);
        let adj = self.adjoint(x);
        crate::linalg::max_abs_diff(&sq, x).max(crate::linalg::max_abs_diff(&adj, x))
    }

    /// `u* u = 1 = u u*` residual.
    fn unitary_residual(&self, u: &[C64]) -> f64 {
        let us = self.adjoint(u);
        let one = self.unit();
        crate::linalg::max_abs_diff(&self.mul(&us, u), &one).max(crate::linalg::max_abs_diff(&self.mul(u, &us), &one))
    }
}

/// Solutions of `[x, g] = 0` for every generator `g`, as a subspace of the ambient coordinates.
pub fn commutant_in<A: StarAlgebra + ?Sized>(ambient: &A, generators: &[Vec<C64>], cfg: &ToleranceConfig) -> Subspace {
    let d = ambient.dim();
    let mut sys = LinearSystem::new(d);
    for g in generators {
        sys.push_matrix(&ambient.right_mul_matrix(g).sub(&ambient.left_mul_matrix(g)));
    }
    sys.null_space(cfg, 1.0)
}

/// The center: commutant of a full basis.
pub fn center<A: StarAlgebra + ?Sized>(alg: &A, cfg: &ToleranceConfig) -> Subspace {
    let basis: Vec<Vec<C64>> = (0..alg.dim()).map(|i| alg.basis_element(i)).collect();
    commutant_in(alg, &basis, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, ONE, ZERO};

    #[test]
    fn centers_of_small_algebras() {
        let cfg = ToleranceConfig::default();
        let m2 = BlockAlgebra::new(vec![2]).unwrap();
        assert_eq!(center(&m2, &cfg).dim(), 1);
        let c2 = BlockAlgebra::commutative(2).unwrap();
        assert_eq!(center(&c2, &cfg).dim(), 2);
        assert_eq!(center(&m2.presentation(), &cfg).dim(), 1);
    }

    #[test]
    fn commutant_of_diagonal_in_m2() {
        let cfg = ToleranceConfig::default();
        let m2 = BlockAlgebra::new(vec![2]).unwrap();
        let diag = vec![ONE, ZERO, ZERO, c64(-1.0, 0.0)];
        let comm = commutant_in(&m2, &[diag, m2.unit()], &cfg);
        assert_eq!(comm.dim(), 2);
        assert!(comm.contains(&[ONE, ZERO, ZERO, ZERO]));
        assert!(!comm.contains(&[ZERO, ONE, ZERO, ZERO]));
    }

    #[test]
    fn center_dimension_counts_blocks() {
        let cfg = ToleranceConfig::default();
        for dims in [vec![1], vec![1, 1, 1], vec![2, 1], vec![3, 2, 1]] {
            let a = BlockAlgebra::new(dims.clone()).unwrap();
            assert_eq!(center(&a, &cfg).dim(), dims.len());
        }
    }
}
