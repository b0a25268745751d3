use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, unit_vector, Matrix, ToleranceConfig, C64, ONE, ZERO};

use super::StarAlgebra;

/// Structure constants below this magnitude are dropped on construction.
const DROP: f64 = 1e-14;

/// Largest dimension for which associativity is checked on every basis triple; above it the
/// check uses fixed-seed random probes.
const FULL_ASSOCIATIVITY_DIM: usize = 64;

/// A finite-dimensional *-algebra given by structure constants in a fixed basis `b_0..b_{d-1}`.
///
/// Products are stored sparsely: for each left factor `b_i` the list of `(j, k, c)` with
/// `b_i b_j = Σ c b_k`. The involution is antilinear: `x* = J · conj(x)` where column `k` of
/// `J` holds the coordinates of `b_k*`.
#[derive(Clone, Debug)]
pub struct StarAlgebraPresentation {
    dim: usize,
    row_ptr: Vec<usize>,
    entries: Vec<(u32, u32, C64)>,
    invol: Matrix,
    unit: Vec<C64>,
}

/// Residuals of the presentation invariants.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub associativity: f64,
    pub unit: f64,
    pub involutive: f64,
    pub antimultiplicative: f64,
    pub full_basis_associativity: bool,
}

impl PresentationReport {
    pub fn max_residual(&self) -> f64 {
        self.associativity.max(self.unit).max(self.involutive).max(self.antimultiplicative)
    }

    pub fn passed(&self, cfg: &ToleranceConfig) -> bool {
        self.max_residual() <= cfg.eq_tol
    }
}

impl StarAlgebraPresentation {
    /// Build from `(i, j, k, c)` triples meaning `b_i b_j` contains `c b_k`. Duplicates are
    /// summed. Invariants are not checked here; see [`Self::verify`].
    pub fn from_triples(
        dim: usize,
        triples: impl IntoIterator<Item = (usize, usize, usize, C64)>,
        invol: Matrix,
        unit: Vec<C64>,
    ) -> Result<Self> {
        if invol.rows() != dim || invol.cols() != dim {
            return Err(Error::Dimension(format!(
                "involution is {}x{}, expected {dim}x{dim}",
                invol.rows(),
                invol.cols()
            )));
        }
        if unit.len() != dim {
            return Err(Error::Dimension(format!("unit has {} coordinates, expected {dim}", unit.len())));
        }
        let mut all: Vec<(usize, usize, usize, C64)> = Vec::new();
        for (i, j, k, c) in triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Dimension(format!(
                    "structure constant index ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidAlgebra("non-finite structure constant".into()));
            }
            all.push((i, j, k, c));
        }
        all.sort_by_key(|&(i, j, k, _)| (i, j, k));
        let mut merged: Vec<(usize, usize, usize, C64)> = Vec::with_capacity(all.len());
        for t in all {
            match merged.last_mut() {
                Some(last) if (last.0, last.1, last.2) == (t.0, t.1, t.2) => last.3 += t.3,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.3.norm() > DROP);
        let mut row_ptr = vec![0usize; dim + 1];
        for t in &merged {
            row_ptr[t.0 + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        let entries = merged.into_iter().map(|(_, j, k, c)| (j as u32, k as u32, c)).collect();
        Ok(Self { dim, row_ptr, entries, invol, unit })
    }

    /// Build from a basis product rule `f(i, j) -> coordinates of b_i b_j`.
    pub fn from_product_fn(
        dim: usize,
        mut f: impl FnMut(usize, usize) -> Vec<C64>,
        invol: Matrix,
        unit: Vec<C64>,
    ) -> Result<Self> {
        let mut triples = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                if v.len() != dim {
                    return Err(Error::Dimension("product vector length".into()));
                }
                for (k, c) in v.into_iter().enumerate() {
                    if c.norm() > DROP {
                        triples.push((i, j, k, c));
                    }
                }
            }
        }
        Self::from_triples(dim, triples, invol, unit)
    }

    /// Build and verify in one step.
    pub fn new_verified(
        dim: usize,
        triples: impl IntoIterator<Item = (usize, usize, usize, C64)>,
        invol: Matrix,
        unit: Vec<C64>,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        let p = Self::from_triples(dim, triples, invol, unit)?;
        p.validate(cfg)?;
        Ok(p)
    }

    pub fn involution_matrix(&self) -> &Matrix {
        &self.invol
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// All structure constants as `(i, j, k, c)`.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, C64)> + '_ {
        (0..self.dim).flat_map(move |i| self.row(i).iter().map(move |&(j, k, c)| (i, j as usize, k as usize, c)))
    }

    #[inline]
    fn row(&self, i: usize) -> &[(u32, u32, C64)] {
        &self.entries[self.row_ptr[i]..self.row_ptr[i + 1]]
    }

    /// Sparse coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(u32, u32, C64)] {
        let row = self.row(i);
        let start = row.partition_point(|e| (e.0 as usize) < j);
        let end = row.partition_point(|e| (e.0 as usize) <= j);
        &row[start..end]
    }

    /// `φ(b_k) = Tr L(b_k)`, the trace of the left regular representation. For a C*-algebra
    /// `⊕ M_{n_i}` this is `Σ n_i Tr_i`, a faithful positive trace.
    pub fn regular_trace(&self) -> Vec<C64> {
        (0..self.dim).map(|k| self.row(k).iter().filter(|e| e.0 == e.1).map(|e| e.2).sum()).collect()
    }

    /// Tensor product with coordinates `(i, j) -> i * other.dim + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let d2 = other.dim;
        let dim = self.dim * d2;
        let mut triples = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (i1, j1, k1, c1) in self.triples() {
            for (i2, j2, k2, c2) in other.triples() {
                triples.push((i1 * d2 + i2, j1 * d2 + j2, k1 * d2 + k2, c1 * c2));
            }
        }
        let invol = crate::linalg::kron(&self.invol, &other.invol);
        let unit = crate::linalg::kron_vec(&self.unit, &other.unit);
        Self::from_triples(dim, triples, invol, unit).expect("tensor of valid presentations")
    }

    /// Check associativity, unit laws, and that the involution is involutive and
    /// antimultiplicative.
    pub fn verify(&self) -> PresentationReport {
        let d = self.dim;
        let basis: Vec<Vec<C64>> = (0..d).map(|i| unit_vector(d, i)).collect();

        let mut unit_res: f64 = 0.0;
        for b in &basis {
            unit_res = unit_res.max(max_abs_diff(&self.mul(&self.unit, b), b));
            unit_res = unit_res.max(max_abs_diff(&self.mul(b, &self.unit), b));
        }

        let jj = self.invol.matmul(&self.invol.conj());
        let involutive = jj.max_abs_diff(&Matrix::identity(d));

        let mut anti: f64 = 0.0;
        let stars: Vec<Vec<C64>> = (0..d).map(|k| self.invol.column(k)).collect();
        for i in 0..d {
            for j in 0..d {
                let prod = self.basis_product_dense(i, j);
                let lhs = self.adjoint(&prod);
                let rhs = self.mul(&stars[j], &stars[i]);
                anti = anti.max(max_abs_diff(&lhs, &rhs));
            }
        }

        let full = d <= FULL_ASSOCIATIVITY_DIM;
        let assoc = if full { self.associativity_full() } else { self.associativity_probe(16) };

        PresentationReport {
            associativity: assoc,
            unit: unit_res,
            involutive,
            antimultiplicative: anti,
            full_basis_associativity: full,
        }
    }

    pub fn validate(&self, cfg: &ToleranceConfig) -> Result<()> {
        let r = self.verify();
        if !r.passed(cfg) {
            return Err(Error::InvalidAlgebra(format!(
                "presentation invariants fail (assoc {:.2e}, unit {:.2e}, invol {:.2e}, anti {:.2e})",
                r.associativity, r.unit, r.involutive, r.antimultiplicative
            )));
        }
        Ok(())
    }

    fn basis_product_dense(&self, i: usize, j: usize) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim];
        for &(_, k, c) in self.basis_product(i, j) {
            out[k as usize] += c;
        }
        out
    }

    fn associativity_full(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        let mut lhs = vec![ZERO; d];
        let mut rhs = vec![ZERO; d];
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for l in 0..d {
                    lhs.iter_mut().for_each(|z| *z = ZERO);
                    rhs.iter_mut().for_each(|z| *z = ZERO);
                    for &(_, m, c) in ij {
                        for &(_, k, c2) in self.basis_product(m as usize, l) {
                            lhs[k as usize] += c * c2;
                        }
                    }
                    for &(_, m, c) in self.basis_product(j, l) {
                        for &(_, k, c2) in self.basis_product(i, m as usize) {
                            rhs[k as usize] += c * c2;
                        }
                    }
                    worst = worst.max(max_abs_diff(&lhs, &rhs));
                }
            }
        }
        worst
    }

    fn associativity_probe(&self, probes: usize) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xA550C);
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for _ in 0..probes {
            let mut draw = || -> Vec<C64> {
                (0..d).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
            };
            let (x, y, z) = (draw(), draw(), draw());
            let lhs = self.mul(&self.mul(&x, &y), &z);
            let rhs = self.mul(&x, &self.mul(&y, &z));
            // probes have norm ~sqrt(d); scale the residual back to unit-size inputs
            let scale = (d as f64).powf(1.5).max(1.0);
            worst = worst.max(max_abs_diff(&lhs, &rhs) / scale);
        }
        worst
    }
}

impl StarAlgebra for StarAlgebraPresentation {
    fn dim(&self) -> usize {
        self.dim
    }

    fn mul(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let mut out = vec![ZERO; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            for &(j, k, c) in self.row(i) {
                let yj = y[j as usize];
                if yj != ZERO {
                    out[k as usize] += xi * yj * c;
                }
            }
        }
        out
    }

    fn adjoint(&self, x: &[C64]) -> Vec<C64> {
        let xc: Vec<C64> = x.iter().map(|z| z.conj()).collect();
        self.invol.mul_vec(&xc)
    }

    fn unit(&self) -> Vec<C64> {
        self.unit.clone()
    }

    fn left_mul_matrix(&self, x: &[C64]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            for &(j, k, c) in self.row(i) {
                m[(k as usize, j as usize)] += xi * c;
            }
        }
        m
    }

    fn right_mul_matrix(&self, y: &[C64]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for &(j, k, c) in self.row(i) {
                let yj = y[j as usize];
                if yj != ZERO {
                    m[(k as usize, i)] += yj * c;
                }
            }
        }
        m
    }
}

/// Presentation of the full matrix algebra `M_n` in its matrix-unit basis.
pub fn matrix_algebra(n: usize) -> StarAlgebraPresentation {
    super::BlockAlgebra::new(vec![n]).expect("positive size").presentation()
}

/// Presentation of the one-dimensional algebra `C`.
pub fn scalars() -> StarAlgebraPresentation {
    StarAlgebraPresentation::from_triples(1, [(0, 0, 0, ONE)], Matrix::identity(1), vec![ONE]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn matrix_algebra_passes_invariants() {
        let m2 = matrix_algebra(2);
        let r = m2.verify();
        assert!(r.passed(&ToleranceConfig::default()), "{r:?}");
        assert_eq!(m2.nnz(), 8);
    }

    #[test]
    fn broken_associativity_is_reported() {
        let m2 = matrix_algebra(2);
        let mut triples: Vec<_> = m2.triples().collect();
        triples[0].3 += c64(0.1, 0.0);
        let bad = StarAlgebraPresentation::from_triples(4, triples, m2.involution_matrix().clone(), m2.unit()).unwrap();
        assert!(bad.validate(&ToleranceConfig::default()).is_err());
    }

    #[test]
    fn tensor_dimension_and_unit() {
        let t = matrix_algebra(2).tensor(&scalars().tensor(&matrix_algebra(1)));
        assert_eq!(t.dim(), 4);
        assert!(t.verify().passed(&ToleranceConfig::default()));
    }
}
