use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, Matrix, ToleranceConfig, C64};

use super::StarAlgebra;

/// A linear map between coordinate spaces, verified to be a unital *-homomorphism.
#[derive(Clone, Debug)]
pub struct StarHom {
    matrix: Matrix,
    report: HomReport,
}

/// Residuals of the homomorphism conditions on a full basis.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HomReport {
    pub multiplicative: f64,
    pub star: f64,
    pub unital: f64,
}

impl HomReport {
    pub fn max_residual(&self) -> f64 {
        self.multiplicative.max(self.star).max(self.unital)
    }
}

impl StarHom {
    /// Residuals of `φ(xy) = φ(x)φ(y)`, `φ(x*) = φ(x)*`, `φ(1) = 1` over basis elements.
    pub fn check<A, B>(domain: &A, codomain: &B, matrix: &Matrix) -> Result<HomReport>
    where
        A: StarAlgebra + ?Sized,
        B: StarAlgebra + ?Sized,
    {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::Dimension(format!(
                "map is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        let d = domain.dim();
        let images: Vec<Vec<C64>> = (0..d).map(|i| matrix.column(i)).collect();
        let mut mult: f64 = 0.0;
        let mut star: f64 = 0.0;
        for i in 0..d {
            let bi = domain.basis_element(i);
            let lhs = matrix.mul_vec(&domain.adjoint(&bi));
            star = star.max(max_abs_diff(&lhs, &codomain.adjoint(&images[i])));
            for j in 0..d {
                let prod = domain.mul(&bi, &domain.basis_element(j));
                let lhs = matrix.mul_vec(&prod);
                let rhs = codomain.mul(&images[i], &images[j]);
                mult = mult.max(max_abs_diff(&lhs, &rhs));
            }
        }
        let unital = max_abs_diff(&matrix.mul_vec(&domain.unit()), &codomain.unit());
        Ok(HomReport { multiplicative: mult, star, unital })
    }

    /// Verify and wrap; `what` names the map in error messages.
    pub fn new<A, B>(domain: &A, codomain: &B, matrix: Matrix, cfg: &ToleranceConfig, what: &str) -> Result<Self>
    where
        A: StarAlgebra + ?Sized,
        B: StarAlgebra + ?Sized,
    {
        let report = Self::check(domain, codomain, &matrix)?;
        let worst = report.max_residual();
        if worst > cfg.eq_tol {
            return Err(Error::Homomorphism { what: what.to_string(), residual: worst });
        }
        Ok(Self { matrix, report })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn report(&self) -> HomReport {
        self.report
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        self.matrix.mul_vec(x)
    }
}
