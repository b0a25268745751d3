//! Dense complex linear algebra with an explicit tolerance policy.
//!
//! Every rank decision in the crate goes through [`LinearSystem`], which compares singular
//! values against `rank_tol` times the largest singular value. The heavy decompositions (QR,
//! SVD, Hermitian eigenproblems, Cholesky) are delegated to `nalgebra`; everything else is
//! plain row-major arithmetic.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use nalgebra::Complex;

/// The scalar field.
pub type C64 = Complex<f64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Thresholds used for rank decisions and elementwise equality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Singular values below `rank_tol * sigma_max` count as zero.
    pub rank_tol: f64,
    /// Residual bound for equalities between computed quantities.
    pub eq_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { rank_tol: 1e-9, eq_tol: 1e-8 }
    }
}

impl ToleranceConfig {
    pub fn new(rank_tol: f64, eq_tol: f64) -> Result<Self> {
        let cfg = Self { rank_tol, eq_tol };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("rank_tol", self.rank_tol), ("eq_tol", self.eq_tol)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Tolerance(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(())
    }
}

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    /// Real matrix from nested rows; panics on ragged input (test and fixture helper).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| c64(rows[i][j], 0.0))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, z) in col.iter().enumerate() {
                m[(i, j)] = *z;
            }
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, z) in entries.iter().enumerate() {
            m[(i, i)] = *z;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[C64]) {
        assert_eq!(v.len(), self.rows);
        for (r, z) in v.iter().enumerate() {
            self[(r, c)] = *z;
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest elementwise deviation; `f64::INFINITY` on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return f64::INFINITY;
        }
        max_abs_diff(&self.data, &other.data)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.rows == 0 || self.cols == 0 {
            return Vec::new();
        }
        let mut s: Vec<f64> = self.to_nalgebra().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    pub fn spectral_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        self.to_nalgebra().try_inverse().map(|m| Self::from_nalgebra(&m))
    }

    pub fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

/// Kronecker product; `(a ⊗ b)(c ⊗ d) = ac ⊗ bd` whenever the shapes compose.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let s = a[(i, j)];
            if s == ZERO {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and matching eigenvector
/// columns.
pub fn hermitian_eigen(m: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if !m.is_square() {
        return Err(Error::Dimension("hermitian_eigen needs a square matrix".into()));
    }
    // Symmetrize to kill rounding asymmetry before handing to the solver.
    let h = m.add(&m.adjoint()).scale(c64(0.5, 0.0));
    let eig = SymmetricEigen::new(h.to_nalgebra());
    let mut order: Vec<usize> = (0..m.rows).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = Matrix::from_fn(m.rows, m.rows, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Lower-triangular `L` with `m = L Lᴴ`; `None` unless `m` is Hermitian positive definite.
pub fn cholesky(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    m.to_nalgebra().cholesky().map(|c| Matrix::from_nalgebra(&c.l()))
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Inner product, conjugate-linear in the first argument.
pub fn dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn max_abs_diff(u: &[C64], v: &[C64]) -> f64 {
    if u.len() != v.len() {
        return f64::INFINITY;
    }
    u.iter().zip(v).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

pub fn max_abs(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn add_scaled(acc: &mut [C64], s: C64, v: &[C64]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += s * b;
    }
}

pub fn sub(u: &[C64], v: &[C64]) -> Vec<C64> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scaled(v: &[C64], s: C64) -> Vec<C64> {
    v.iter().map(|z| z * s).collect()
}

pub fn unit_vector(n: usize, i: usize) -> Vec<C64> {
    let mut v = vec![ZERO; n];
    v[i] = ONE;
    v
}

/// Coordinate tensor `u ⊗ v` with index `i * v.len() + j`.
pub fn kron_vec(u: &[C64], v: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(a * b);
        }
    }
    out
}

/// A unitary `n × n` matrix from the QR factor of a random complex matrix.
pub fn random_unitary<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let m = Matrix::from_fn(n, n, |_, _| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    Matrix::from_nalgebra(&m.to_nalgebra().qr().q())
}

/// Homogeneous linear system `M x = 0` assembled row by row.
///
/// Tall systems are compressed on the fly with Householder QR, so memory stays at
/// `O(cols²)` no matter how many equations are pushed. The singular values of the compressed
/// factor equal those of the full matrix.
pub struct LinearSystem {
    cols: usize,
    pending: Vec<C64>,
    pending_rows: usize,
    factor: Option<DMatrix<C64>>,
}

impl LinearSystem {
    pub fn new(cols: usize) -> Self {
        Self { cols, pending: Vec::new(), pending_rows: 0, factor: None }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn push_row(&mut self, row: &[C64]) {
        assert_eq!(row.len(), self.cols, "equation length");
        self.pending.extend_from_slice(row);
        self.pending_rows += 1;
        if self.pending_rows >= (4 * self.cols).max(64) {
            self.compress();
        }
    }

    pub fn push_matrix(&mut self, m: &Matrix) {
        assert_eq!(m.cols(), self.cols, "equation block width");
        for r in 0..m.rows() {
            self.push_row(m.row(r));
        }
    }

    fn compress(&mut self) {
        if self.pending_rows == 0 {
            return;
        }
        let block = DMatrix::from_row_slice(self.pending_rows, self.cols, &self.pending);
        let stacked = match self.factor.take() {
            Some(f) => {
                let mut s = DMatrix::zeros(f.nrows() + block.nrows(), self.cols);
                s.rows_mut(0, f.nrows()).copy_from(&f);
                s.rows_mut(f.nrows(), block.nrows()).copy_from(&block);
                s
            }
            None => block,
        };
        self.factor = Some(if stacked.nrows() > self.cols { stacked.qr().r() } else { stacked });
        self.pending.clear();
        self.pending_rows = 0;
    }

    /// Singular values (descending) and the matching right singular vectors as rows of `Vᴴ`.
    fn decompose(mut self) -> (Vec<f64>, Option<DMatrix<C64>>) {
        self.compress();
        let n = self.cols;
        if n == 0 {
            return (Vec::new(), None);
        }
        let f = self.factor.take().unwrap_or_else(|| DMatrix::zeros(n, n));
        let square = if f.nrows() < n {
            let mut s = DMatrix::zeros(n, n);
            s.rows_mut(0, f.nrows()).copy_from(&f);
            s
        } else {
            f
        };
        let svd = square.svd(false, true);
        let v_t = svd.v_t.expect("requested V");
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let values = order.iter().map(|&i| svd.singular_values[i]).collect();
        let mut sorted = DMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            sorted.row_mut(dst).copy_from(&v_t.row(src));
        }
        (values, Some(sorted))
    }

    /// Null space with threshold `rank_tol * max(sigma_max, scale)`.
    ///
    /// `scale = 0` gives the purely relative rule; callers whose equations have a known
    /// natural size pass it so that an all-noise system is not mistaken for full rank.
    pub fn null_space(self, cfg: &ToleranceConfig, scale: f64) -> Subspace {
        let n = self.cols;
        let tol = cfg.eq_tol;
        let (values, v_t) = self.decompose();
        let Some(v_t) = v_t else {
            return Subspace::zero(0, tol);
        };
        let sigma_max = values.first().copied().unwrap_or(0.0);
        let threshold = cfg.rank_tol * sigma_max.max(scale);
        let basis = values
            .iter()
            .enumerate()
            .filter(|(_, &s)| s <= threshold)
            .map(|(i, _)| canonical_phase((0..n).map(|c| v_t[(i, c)].conj()).collect()))
            .collect();
        Subspace { ambient_dim: n, basis, tol }
    }

    pub fn rank(self, cfg: &ToleranceConfig, scale: f64) -> usize {
        let (values, _) = self.decompose();
        let sigma_max = values.first().copied().unwrap_or(0.0);
        let threshold = cfg.rank_tol * sigma_max.max(scale);
        values.iter().filter(|&&s| s > threshold).count()
    }
}

/// Rotate a vector so that its largest-magnitude entry is real and positive.
fn canonical_phase(mut v: Vec<C64>) -> Vec<C64> {
    let mut best = 0;
    let mut best_norm = 0.0;
    for (i, z) in v.iter().enumerate() {
        // strict comparison with a small margin keeps the choice stable under rounding
        if z.norm() > best_norm * (1.0 + 1e-9) {
            best = i;
            best_norm = z.norm();
        }
    }
    if best_norm > 0.0 {
        let phase = v[best].conj() / best_norm;
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
    v
}

/// Orthonormal basis of `{v : m v = 0}`; singular values at or below `rank_tol * sigma_max`
/// count as zero.
pub fn null_space(m: &Matrix, cfg: &ToleranceConfig) -> Subspace {
    let mut sys = LinearSystem::new(m.cols());
    sys.push_matrix(m);
    sys.null_space(cfg, 0.0)
}

pub fn rank(m: &Matrix, cfg: &ToleranceConfig) -> usize {
    let mut sys = LinearSystem::new(m.cols());
    sys.push_matrix(m);
    sys.rank(cfg, 0.0)
}

/// Linear subspace of a coordinate space, stored by an orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<C64>>,
    tol: f64,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, tol: f64) -> Self {
        Self { ambient_dim, basis: Vec::new(), tol }
    }

    pub fn full(ambient_dim: usize, tol: f64) -> Self {
        let basis = (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)).collect();
        Self { ambient_dim, basis, tol }
    }

    /// Span of arbitrary vectors. Directions with singular value below
    /// `rank_tol * max(sigma_max, 1)` are dropped.
    pub fn span(ambient_dim: usize, vectors: &[Vec<C64>], cfg: &ToleranceConfig) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::AmbientDimension { left: ambient_dim, right: v.len() });
            }
        }
        if vectors.is_empty() || ambient_dim == 0 {
            return Ok(Self::zero(ambient_dim, cfg.eq_tol));
        }
        let m = Matrix::from_columns(ambient_dim, vectors).to_nalgebra();
        let svd = m.svd(true, false);
        let u = svd.u.expect("requested U");
        let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let threshold = cfg.rank_tol * sigma_max.max(1.0);
        let mut idx: Vec<usize> =
            (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > threshold).collect();
        idx.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let basis = idx.into_iter().map(|i| canonical_phase((0..ambient_dim).map(|r| u[(r, i)]).collect())).collect();
        Ok(Self { ambient_dim, basis, tol: cfg.eq_tol })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn as_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    pub fn project(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.ambient_dim];
        for b in &self.basis {
            add_scaled(&mut out, dot(b, v), b);
        }
        out
    }

    /// Norm of the component of `v` orthogonal to the subspace.
    pub fn residual(&self, v: &[C64]) -> f64 {
        norm(&sub(v, &self.project(v)))
    }

    pub fn contains(&self, v: &[C64]) -> bool {
        v.len() == self.ambient_dim && self.residual(v) <= self.tol * norm(v).max(1.0)
    }

    /// Largest residual of `other`'s basis vectors against `self`.
    pub fn containment_residual(&self, other: &Subspace) -> Result<f64> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientDimension { left: self.ambient_dim, right: other.ambient_dim });
        }
        Ok(other.basis.iter().map(|b| self.residual(b)).fold(0.0, f64::max))
    }

    /// `other ⊆ self`.
    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        Ok(self.containment_residual(other)? <= self.tol)
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        Ok(self.contains_subspace(other)? && other.contains_subspace(self)?)
    }
}

/// Mutual containment of spans.
pub fn subspace_equal(u: &Subspace, v: &Subspace) -> Result<bool> {
    u.equals(v)
}

/// `inner ⊆ outer`.
pub fn subspace_contains(outer: &Subspace, inner: &Subspace) -> Result<bool> {
    outer.contains_subspace(inner)
}

/// Serde adapter writing complex vectors as `[[re, im], ...]`.
pub mod serde_complex {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::C64;

    pub fn serialize<S: Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<C64>, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(d)?;
        Ok(pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}
