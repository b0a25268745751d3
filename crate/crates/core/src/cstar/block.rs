use crate::error::{Error, Result};
use crate::linalg::{kron, Matrix, C64, ONE, ZERO};

use super::{StarAlgebra, StarAlgebraPresentation, WedderburnData};

/// `M_{n_1} ⊕ … ⊕ M_{n_m}`, with coordinates the concatenated row-major block entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAlgebra {
    block_dims: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
}

/// An element of a [`BlockAlgebra`]: one square matrix per block.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElement {
    pub blocks: Vec<Matrix>,
}

impl BlockAlgebra {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() || block_dims.contains(&0) {
            return Err(Error::InvalidAlgebra(format!(
                "block dimensions must be a non-empty list of positive integers, got {block_dims:?}"
            )));
        }
        let mut offsets = Vec::with_capacity(block_dims.len());
        let mut dim = 0;
        for &n in &block_dims {
            offsets.push(dim);
            dim += n * n;
        }
        Ok(Self { block_dims, offsets, dim })
    }

    /// `C^n`, the commutative algebra of `n` one-dimensional blocks.
    pub fn commutative(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn coordinate_dim(&self) -> usize {
        self.dim
    }

    pub fn num_blocks(&self) -> usize {
        self.block_dims.len()
    }

    /// Coordinate index of entry `(r, c)` of block `b`.
    pub fn index(&self, b: usize, r: usize, c: usize) -> usize {
        self.offsets[b] + r * self.block_dims[b] + c
    }

    pub fn element_from_coords(&self, x: &[C64]) -> Result<AlgElement> {
        if x.len() != self.dim {
            return Err(Error::Dimension(format!("{} coordinates, expected {}", x.len(), self.dim)));
        }
        let blocks = self
            .block_dims
            .iter()
            .zip(&self.offsets)
            .map(|(&n, &off)| Matrix::from_row_major(n, n, x[off..off + n * n].to_vec()).expect("sized"))
            .collect();
        Ok(AlgElement { blocks })
    }

    pub fn coords(&self, x: &AlgElement) -> Result<Vec<C64>> {
        self.check(x)?;
        Ok(x.blocks.iter().flat_map(|b| b.data().iter().copied()).collect())
    }

    fn check(&self, x: &AlgElement) -> Result<()> {
        let ok = x.blocks.len() == self.block_dims.len()
            && x.blocks.iter().zip(&self.block_dims).all(|(b, &n)| b.rows() == n && b.cols() == n);
        if ok {
            Ok(())
        } else {
            Err(Error::Mismatch("element does not belong to this block algebra".into()))
        }
    }

    pub fn unit_element(&self) -> AlgElement {
        AlgElement { blocks: self.block_dims.iter().map(|&n| Matrix::identity(n)).collect() }
    }

    pub fn zero_element(&self) -> AlgElement {
        AlgElement { blocks: self.block_dims.iter().map(|&n| Matrix::zeros(n, n)).collect() }
    }

    pub fn multiply(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(AlgElement { blocks: x.blocks.iter().zip(&y.blocks).map(|(a, b)| a * b).collect() })
    }

    pub fn adjoint_element(&self, x: &AlgElement) -> Result<AlgElement> {
        self.check(x)?;
        Ok(AlgElement { blocks: x.blocks.iter().map(Matrix::adjoint).collect() })
    }

    /// C*-norm: the largest singular value over all blocks.
    pub fn norm(&self, x: &AlgElement) -> Result<f64> {
        self.check(x)?;
        Ok(x.blocks.iter().map(Matrix::spectral_norm).fold(0.0, f64::max))
    }

    /// Block pairs `(i, j)` ordered with the first factor's index running fastest.
    pub fn tensor_pairs(&self, other: &Self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::with_capacity(self.num_blocks() * other.num_blocks());
        for j in 0..other.num_blocks() {
            for i in 0..self.num_blocks() {
                pairs.push((i, j));
            }
        }
        pairs
    }

    /// `A ⊗ B` at the level of block structure: one block `n_i m_j` for every pair.
    pub fn tensor(&self, other: &Self) -> Self {
        let dims = self.tensor_pairs(other).into_iter().map(|(i, j)| self.block_dims[i] * other.block_dims[j]);
        Self::new(dims.collect()).expect("positive")
    }

    /// Elementary tensor `x ⊗ y` in [`Self::tensor`]'s block order.
    pub fn tensor_element(&self, other: &Self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        self.check(x)?;
        other.check(y)?;
        Ok(AlgElement {
            blocks: self.tensor_pairs(other).into_iter().map(|(i, j)| kron(&x.blocks[i], &y.blocks[j])).collect(),
        })
    }

    /// Matrix units `e^b_{rc}` as coordinate vectors, grouped by block and indexed `r * n + c`.
    pub fn matrix_units(&self) -> Vec<Vec<Vec<C64>>> {
        self.block_dims
            .iter()
            .enumerate()
            .map(|(b, &n)| (0..n * n).map(|rc| crate::linalg::unit_vector(self.dim, self.offsets[b] + rc)).collect())
            .collect()
    }

    /// Structure-constant presentation in the matrix-unit basis; coordinates agree with
    /// [`Self::coords`].
    pub fn presentation(&self) -> StarAlgebraPresentation {
        let mut triples = Vec::new();
        let mut invol = Matrix::zeros(self.dim, self.dim);
        let mut unit = vec![ZERO; self.dim];
        for (b, &n) in self.block_dims.iter().enumerate() {
            for r in 0..n {
                unit[self.index(b, r, r)] = ONE;
                for c in 0..n {
                    invol[(self.index(b, c, r), self.index(b, r, c))] = ONE;
                    for c2 in 0..n {
                        // e_{rc} e_{c c2} = e_{r c2}
                        triples.push((self.index(b, r, c), self.index(b, c, c2), self.index(b, r, c2), ONE));
                    }
                }
            }
        }
        StarAlgebraPresentation::from_triples(self.dim, triples, invol, unit).expect("valid blocks")
    }

    /// Exact Wedderburn data; blocks keep their given order.
    pub fn wedderburn(&self) -> WedderburnData {
        WedderburnData::from_block_algebra(self)
    }
}

impl StarAlgebra for BlockAlgebra {
    fn dim(&self) -> usize {
        self.dim
    }

    fn mul(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let xe = self.element_from_coords(x).expect("coordinate length");
        let ye = self.element_from_coords(y).expect("coordinate length");
        self.coords(&self.multiply(&xe, &ye).expect("same parent")).expect("same parent")
    }

    fn adjoint(&self, x: &[C64]) -> Vec<C64> {
        let xe = self.element_from_coords(x).expect("coordinate length");
        self.coords(&self.adjoint_element(&xe).expect("same parent")).expect("same parent")
    }

    fn unit(&self) -> Vec<C64> {
        self.coords(&self.unit_element()).expect("same parent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn commutative_product_is_componentwise() {
        let c2 = BlockAlgebra::commutative(2).unwrap();
        let a = c2.element_from_coords(&[c64(2.0, 0.0), c64(3.0, 0.0)]).unwrap();
        let b = c2.element_from_coords(&[c64(5.0, 0.0), c64(7.0, 1.0)]).unwrap();
        let p = c2.coords(&c2.multiply(&a, &b).unwrap()).unwrap();
        assert_eq!(p, vec![c64(10.0, 0.0), c64(21.0, 3.0)]);
    }

    #[test]
    fn adjoint_of_unit_is_unit() {
        let a = BlockAlgebra::new(vec![2, 1]).unwrap();
        assert_eq!(a.adjoint_element(&a.unit_element()).unwrap(), a.unit_element());
    }

    #[test]
    fn norm_of_diagonal() {
        let m2 = BlockAlgebra::new(vec![2]).unwrap();
        let x = AlgElement { blocks: vec![Matrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -2.0]])] };
        assert!((m2.norm(&x).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_block_pairing() {
        let c1 = BlockAlgebra::commutative(1).unwrap();
        let a = BlockAlgebra::new(vec![2, 3]).unwrap();
        assert_eq!(c1.tensor(&a), a);
        let c2 = BlockAlgebra::commutative(2).unwrap();
        assert_eq!(c2.tensor(&c2).block_dims(), &[1, 1, 1, 1]);
        let m2 = BlockAlgebra::new(vec![2]).unwrap();
        assert_eq!(m2.tensor(&c2).block_dims(), &[2, 2]);
    }

    #[test]
    fn parent_mismatch_is_an_error() {
        let a = BlockAlgebra::new(vec![2]).unwrap();
        let b = BlockAlgebra::commutative(2).unwrap();
        assert!(a.multiply(&a.unit_element(), &b.unit_element()).is_err());
    }

    #[test]
    fn presentation_matches_block_product() {
        let a = BlockAlgebra::new(vec![2, 1]).unwrap();
        let p = a.presentation();
        let x: Vec<C64> = (0..5).map(|i| c64(i as f64, 1.0 - i as f64)).collect();
        let y: Vec<C64> = (0..5).map(|i| c64(0.5 * i as f64, 2.0)).collect();
        let direct = a.mul(&x, &y);
        let via = p.mul(&x, &y);
        assert!(crate::linalg::max_abs_diff(&direct, &via) < 1e-12);
        assert!(crate::linalg::max_abs_diff(&a.adjoint(&x), &p.adjoint(&x)) < 1e-12);
    }
}
