use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    add_scaled, cholesky, hermitian_eigen, kron_vec, max_abs, max_abs_diff, scaled, LinearSystem, Matrix,
    ToleranceConfig, C64, I, ONE, ZERO,
};

use super::{center, AlgElement, BlockAlgebra, StarAlgebra, StarAlgebraPresentation};

const SEED: u64 = 0x5EED_0001;
const ATTEMPTS: u64 = 8;
/// Integer certification threshold for ranks and block sizes.
pub(crate) const INTEGER_TOL: f64 = 1e-6;

/// Wedderburn decomposition `A ≅ ⊕ M_{n_i}` of a finite-dimensional C*-algebra.
///
/// Besides the minimal central projections, block sizes and normalized traces, this keeps a
/// full system of matrix units and the resulting coordinate isomorphism onto the block algebra
/// with the same block sizes.
#[derive(Clone, Debug)]
pub struct WedderburnData {
    dim: usize,
    block_sizes: Vec<usize>,
    central_projections: Vec<Vec<C64>>,
    traces: Vec<Vec<C64>>,
    matrix_units: Vec<Vec<Vec<C64>>>,
    from_blocks: Matrix,
    to_blocks: Matrix,
}

/// Outcome of a Murray–von Neumann comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MvnReport {
    pub equivalent: bool,
    pub rank_p: Vec<usize>,
    pub rank_q: Vec<usize>,
}

impl WedderburnData {
    pub(crate) fn from_block_algebra(a: &BlockAlgebra) -> Self {
        let d = a.coordinate_dim();
        let units = a.matrix_units();
        let mut central = Vec::new();
        let mut traces = Vec::new();
        for (b, &n) in a.block_dims().iter().enumerate() {
            let mut z = vec![ZERO; d];
            let mut t = vec![ZERO; d];
            for r in 0..n {
                z[a.index(b, r, r)] = ONE;
                t[a.index(b, r, r)] = C64::new(1.0 / n as f64, 0.0);
            }
            central.push(z);
            traces.push(t);
        }
        Self {
            dim: d,
            block_sizes: a.block_dims().to_vec(),
            central_projections: central,
            traces,
            matrix_units: units,
            from_blocks: Matrix::identity(d),
            to_blocks: Matrix::identity(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn central_projections(&self) -> &[Vec<C64>] {
        &self.central_projections
    }

    /// Coefficients of the normalized trace on block `i`: `tr_i(x) = Σ t_k x_k`.
    pub fn trace_functional(&self, i: usize) -> &[C64] {
        &self.traces[i]
    }

    pub fn trace(&self, i: usize, x: &[C64]) -> C64 {
        self.traces[i].iter().zip(x).map(|(t, v)| t * v).sum()
    }

    /// Matrix units of block `i`, indexed `r * n_i + c`, as coordinate vectors.
    pub fn matrix_units(&self, i: usize) -> &[Vec<C64>] {
        &self.matrix_units[i]
    }

    pub fn block_algebra(&self) -> BlockAlgebra {
        BlockAlgebra::new(self.block_sizes.clone()).expect("positive sizes")
    }

    /// Coordinates in the block algebra of the image of `x`.
    pub fn to_block_coords(&self, x: &[C64]) -> Vec<C64> {
        self.to_blocks.mul_vec(x)
    }

    pub fn from_block_coords(&self, y: &[C64]) -> Vec<C64> {
        self.from_blocks.mul_vec(y)
    }

    pub fn to_block_element(&self, x: &[C64]) -> AlgElement {
        self.block_algebra().element_from_coords(&self.to_block_coords(x)).expect("sized")
    }

    /// Matrix of the isomorphism onto block coordinates.
    pub fn to_blocks_matrix(&self) -> &Matrix {
        &self.to_blocks
    }

    pub fn from_blocks_matrix(&self) -> &Matrix {
        &self.from_blocks
    }

    /// Rank vector `r_i = n_i tr_i(p)`, each certified to be a non-negative integer.
    pub fn rank_vector(&self, p: &[C64]) -> Result<Vec<usize>> {
        (0..self.num_blocks())
            .map(|i| {
                let v = self.trace(i, p) * self.block_sizes[i] as f64;
                let r = v.re.round();
                if v.im.abs() > INTEGER_TOL || (v.re - r).abs() > INTEGER_TOL || r < 0.0 {
                    return Err(Error::NonInteger { value: v.re, context: format!("rank of projection in block {i}") });
                }
                Ok(r as usize)
            })
            .collect()
    }

    /// Wedderburn data of `A ⊗ B` where `A`, `B` have coordinates combined as `a * d_B + b`.
    /// Blocks are ordered with this factor's index running fastest.
    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut sizes = Vec::new();
        let mut central = Vec::new();
        let mut traces = Vec::new();
        let mut units = Vec::new();
        let mut from_cols: Vec<Vec<C64>> = Vec::with_capacity(d);
        for j in 0..other.num_blocks() {
            for i in 0..self.num_blocks() {
                let (n, m) = (self.block_sizes[i], other.block_sizes[j]);
                let nm = n * m;
                sizes.push(nm);
                central.push(kron_vec(&self.central_projections[i], &other.central_projections[j]));
                traces.push(kron_vec(&self.traces[i], &other.traces[j]));
                let mut block_units = Vec::with_capacity(nm * nm);
                for row in 0..nm {
                    for col in 0..nm {
                        let (r, r2) = (row / m, row % m);
                        let (c, c2) = (col / m, col % m);
                        block_units
                            .push(kron_vec(&self.matrix_units[i][r * n + c], &other.matrix_units[j][r2 * m + c2]));
                    }
                }
                from_cols.extend(block_units.iter().cloned());
                units.push(block_units);
            }
        }
        let from_blocks = Matrix::from_columns(d, &from_cols);
        // The inverse is a row permutation of kron(to_A, to_B).
        let kt = crate::linalg::kron(&self.to_blocks, &other.to_blocks);
        let offs_a = offsets(&self.block_sizes);
        let offs_b = offsets(&other.block_sizes);
        let offs = offsets(&sizes);
        let mut to_blocks = Matrix::zeros(d, d);
        let mut pair = 0;
        for j in 0..other.num_blocks() {
            for i in 0..self.num_blocks() {
                let (n, m) = (self.block_sizes[i], other.block_sizes[j]);
                for r in 0..n {
                    for c in 0..n {
                        for r2 in 0..m {
                            for c2 in 0..m {
                                let alpha = offs_a[i] + r * n + c;
                                let beta = offs_b[j] + r2 * m + c2;
                                let target = offs[pair] + (r * m + r2) * (n * m) + (c * m + c2);
                                let src = alpha * db + beta;
                                for k in 0..d {
                                    to_blocks[(target, k)] = kt[(src, k)];
                                }
                            }
                        }
                    }
                }
                pair += 1;
            }
        }
        Self {
            dim: d,
            block_sizes: sizes,
            central_projections: central,
            traces,
            matrix_units: units,
            from_blocks,
            to_blocks,
        }
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &n in sizes {
        out.push(acc);
        acc += n * n;
    }
    out
}

pub fn is_simple(w: &WedderburnData) -> bool {
    w.num_blocks() == 1
}

/// Murray–von Neumann equivalence of projections via rank vectors.
pub fn mvn_equivalent<A: StarAlgebra + ?Sized>(
    alg: &A,
    w: &WedderburnData,
    p: &[C64],
    q: &[C64],
    cfg: &ToleranceConfig,
) -> Result<MvnReport> {
    for x in [p, q] {
        let r = alg.projection_residual(x);
        if r > cfg.eq_tol * (1.0 + max_abs(x)) {
            return Err(Error::NotProjection(r));
        }
    }
    let rank_p = w.rank_vector(p)?;
    let rank_q = w.rank_vector(q)?;
    Ok(MvnReport { equivalent: rank_p == rank_q, rank_p, rank_q })
}

/// Split eigenvalues (ascending) into clusters; `None` if the split is not clean.
fn clusters(vals: &[f64], expected: Option<usize>) -> Option<Vec<std::ops::Range<usize>>> {
    let scale = vals.iter().fold(1e-300_f64, |m, v| m.max(v.abs())).max(1e-12);
    let mut out = Vec::new();
    let mut start = 0;
    for k in 0..vals.len() {
        if k + 1 == vals.len() || vals[k + 1] - vals[k] > 1e-6 * scale {
            out.push(start..k + 1);
            start = k + 1;
        }
    }
    for w in out.windows(2) {
        if vals[w[1].start] - vals[w[0].end - 1] < 1e-4 * scale {
            return None;
        }
    }
    for r in &out {
        if vals[r.end - 1] - vals[r.start] > 1e-5 * scale {
            return None;
        }
    }
    match expected {
        Some(m) if out.len() != m => None,
        _ => Some(out),
    }
}

fn random_complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

struct Frame {
    r: Matrix,
    r_inv: Matrix,
}

impl Frame {
    /// Left multiplication by `x` in orthonormal coordinates.
    fn left(&self, p: &StarAlgebraPresentation, x: &[C64]) -> Matrix {
        self.r.matmul(&p.left_mul_matrix(x)).matmul(&self.r_inv)
    }

    /// Orthogonal projection onto span of `q` columns, applied to `x`.
    fn project(&self, q: &Matrix, x: &[C64]) -> Vec<C64> {
        let y = self.r.mul_vec(x);
        let coeff = q.adjoint().mul_vec(&y);
        self.r_inv.mul_vec(&q.mul_vec(&coeff))
    }
}

fn select_columns(m: &Matrix, range: std::ops::Range<usize>) -> Matrix {
    let cols: Vec<Vec<C64>> = range.map(|c| m.column(c)).collect();
    Matrix::from_columns(m.rows(), &cols)
}

/// Compute Wedderburn data of a C*-presentation.
///
/// The regular trace gives an inner product in which left multiplication by self-adjoint
/// elements is Hermitian; a random self-adjoint central element splits the algebra into its
/// simple summands, and a random self-adjoint element of each summand yields minimal
/// projections and then matrix units.
pub fn wedderburn(p: &StarAlgebraPresentation, cfg: &ToleranceConfig) -> Result<WedderburnData> {
    cfg.validate()?;
    let d = p.dim();
    let f = p.regular_trace();

    // G_jk = φ(b_j* b_k) = Σ_i J_ij φ(b_i b_k), since b_j* is column j of J
    let mut t = Matrix::zeros(d, d);
    for (i, j, k, c) in p.triples() {
        t[(i, j)] += c * f[k];
    }
    let g = p.involution_matrix().transpose().matmul(&t);
    let g = g.add(&g.adjoint()).scale(C64::new(0.5, 0.0));
    let l = cholesky(&g).ok_or_else(|| Error::NotCStar("regular trace is not positive definite".into()))?;
    let r = l.adjoint();
    let r_inv = r.inverse().ok_or_else(|| Error::NotCStar("regular trace Gram matrix is singular".into()))?;
    let frame = Frame { r, r_inv };

    let z = center(p, cfg);
    let m = z.dim();
    if m == 0 {
        return Err(Error::NotCStar("trivial center".into()));
    }

    let unit = p.unit();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    // Split into simple summands.
    let mut summands: Vec<(Vec<C64>, Matrix)> = Vec::new();
    if m == 1 {
        summands.push((unit.clone(), Matrix::identity(d)));
    } else {
        let mut found = None;
        for _ in 0..ATTEMPTS {
            let mut h = vec![ZERO; d];
            for zb in z.basis() {
                let zs = p.adjoint(zb);
                let s: Vec<C64> = zb.iter().zip(&zs).map(|(a, b)| (a + b) * 0.5).collect();
                let a: Vec<C64> = zb.iter().zip(&zs).map(|(a, b)| (a - b) / (I * 2.0)).collect();
                add_scaled(&mut h, C64::new(rng.random_range(-1.0..1.0), 0.0), &s);
                add_scaled(&mut h, C64::new(rng.random_range(-1.0..1.0), 0.0), &a);
            }
            let (vals, vecs) = hermitian_eigen(&frame.left(p, &h))?;
            if let Some(cl) = clusters(&vals, Some(m)) {
                found = Some(
                    cl.into_iter()
                        .map(|rg| {
                            let q = select_columns(&vecs, rg);
                            (frame.project(&q, &unit), q)
                        })
                        .collect::<Vec<_>>(),
                );
                break;
            }
        }
        summands =
            found.ok_or_else(|| Error::NotCStar("could not split the center into minimal projections".into()))?;
    }

    // Canonical order: descending lexicographic on rounded coordinates of z_i.
    let key = |z: &Vec<C64>| -> Vec<i64> {
        z.iter().flat_map(|c| [(c.re * 1e6).round() as i64, (c.im * 1e6).round() as i64]).collect()
    };
    summands.sort_by_key(|(z, _)| std::cmp::Reverse(key(z)));

    let mut sizes = Vec::with_capacity(m);
    for (_, q) in &summands {
        let s = q.cols();
        let n = (s as f64).sqrt().round() as usize;
        if n * n != s {
            return Err(Error::NotCStar(format!("summand of dimension {s} is not a full matrix algebra")));
        }
        sizes.push(n);
    }

    let scale = 1.0 + max_abs(&unit);
    let mut units = Vec::with_capacity(m);
    for ((zi, q), &n) in summands.iter().zip(&sizes) {
        units.push(block_matrix_units(p, &frame, zi, q, n, &mut rng, cfg.eq_tol * scale)?);
    }

    let traces = trace_functionals(p, &summands.iter().map(|(z, _)| z.clone()).collect::<Vec<_>>(), cfg)?;

    let from_cols: Vec<Vec<C64>> = units.iter().flatten().cloned().collect();
    let from_blocks = Matrix::from_columns(d, &from_cols);
    let to_blocks = from_blocks.inverse().ok_or_else(|| Error::NotCStar("matrix units are not a basis".into()))?;

    Ok(WedderburnData {
        dim: d,
        block_sizes: sizes,
        central_projections: summands.into_iter().map(|(z, _)| z).collect(),
        traces,
        matrix_units: units,
        from_blocks,
        to_blocks,
    })
}

fn block_matrix_units(
    p: &StarAlgebraPresentation,
    frame: &Frame,
    zi: &[C64],
    q: &Matrix,
    n: usize,
    rng: &mut ChaCha8Rng,
    tol: f64,
) -> Result<Vec<Vec<C64>>> {
    if n == 1 {
        return Ok(vec![zi.to_vec()]);
    }
    let d = p.dim();
    let phi = p.regular_trace();
    let phi_of = |x: &[C64]| -> C64 { phi.iter().zip(x).map(|(a, b)| a * b).sum() };
    for _ in 0..ATTEMPTS {
        let x: Vec<C64> = (0..d).map(|_| random_complex(rng)).collect();
        let xs = p.adjoint(&x);
        let sa: Vec<C64> = x.iter().zip(&xs).map(|(a, b)| a + b).collect();
        let y = p.mul(zi, &p.mul(&sa, zi));
        let compressed = q.adjoint().matmul(&frame.left(p, &y)).matmul(q);
        let (vals, vecs) = hermitian_eigen(&compressed)?;
        let Some(cl) = clusters(&vals, Some(n)) else { continue };
        if cl.iter().any(|r| r.len() != n) {
            continue;
        }
        let minimal: Vec<Vec<C64>> = cl
            .into_iter()
            .map(|rg| {
                let w = q.matmul(&select_columns(&vecs, rg));
                frame.project(&w, zi)
            })
            .collect();
        // e_{0r}: largest of e_0 b_k e_r over basis elements, normalized so that e_{0r} e_{0r}* = e_0.
        let mut first_row = vec![minimal[0].clone()];
        let phi_e0 = phi_of(&minimal[0]).re;
        let mut ok = true;
        for er in minimal.iter().skip(1) {
            let mut best: Option<(f64, Vec<C64>)> = None;
            for k in 0..d {
                let v = p.mul(&p.mul(&minimal[0], &p.basis_element(k)), er);
                let lam = phi_of(&p.mul(&v, &p.adjoint(&v))).re / phi_e0;
                if best.as_ref().is_none_or(|(b, _)| lam > *b) {
                    best = Some((lam, v));
                }
            }
            let (lam, v) = best.expect("non-empty basis");
            if lam <= 1e-8 {
                ok = false;
                break;
            }
            first_row.push(scaled(&v, C64::new(1.0 / lam.sqrt(), 0.0)));
        }
        if !ok {
            continue;
        }
        let mut units = Vec::with_capacity(n * n);
        for r in 0..n {
            let er0 = p.adjoint(&first_row[r]);
            for c in 0..n {
                units.push(p.mul(&er0, &first_row[c]));
            }
        }
        if matrix_unit_residual(p, &units, zi, n) <= tol {
            return Ok(units);
        }
    }
    Err(Error::NotCStar("could not construct matrix units for a simple summand".into()))
}

fn matrix_unit_residual(p: &StarAlgebraPresentation, units: &[Vec<C64>], zi: &[C64], n: usize) -> f64 {
    let d = p.dim();
    let zero = vec![ZERO; d];
    let mut worst: f64 = 0.0;
    let mut sum = vec![ZERO; d];
    for r in 0..n {
        add_scaled(&mut sum, ONE, &units[r * n + r]);
        for c in 0..n {
            let e = &units[r * n + c];
            worst = worst.max(max_abs_diff(&p.adjoint(e), &units[c * n + r]));
            for r2 in 0..n {
                for c2 in 0..n {
                    let prod = p.mul(e, &units[r2 * n + c2]);
                    let expect = if c == r2 { &units[r * n + c2] } else { &zero };
                    worst = worst.max(max_abs_diff(&prod, expect));
                }
            }
        }
    }
    worst.max(max_abs_diff(&sum, zi))
}

/// Traces vanish on commutators; normalize against the central projections.
fn trace_functionals(
    p: &StarAlgebraPresentation,
    central: &[Vec<C64>],
    cfg: &ToleranceConfig,
) -> Result<Vec<Vec<C64>>> {
    let d = p.dim();
    let mut sys = LinearSystem::new(d);
    for j in 0..d {
        for k in (j + 1)..d {
            let mut row = vec![ZERO; d];
            for &(_, m, c) in p.basis_product(j, k) {
                row[m as usize] += c;
            }
            for &(_, m, c) in p.basis_product(k, j) {
                row[m as usize] -= c;
            }
            if row.iter().any(|c| *c != ZERO) {
                sys.push_row(&row);
            }
        }
    }
    let space = sys.null_space(cfg, 1.0);
    let m = central.len();
    if space.dim() != m {
        return Err(Error::NotCStar(format!(
            "trace space has dimension {} but the center has {m} minimal projections",
            space.dim()
        )));
    }
    // Coefficients c with Σ_l c_l basis_l(z_k) = δ_ik.
    let eval = Matrix::from_fn(m, m, |k, l| space.basis()[l].iter().zip(&central[k]).map(|(a, b)| a * b).sum());
    let inv = eval.inverse().ok_or_else(|| Error::NotCStar("traces do not separate central projections".into()))?;
    Ok((0..m)
        .map(|i| {
            let mut t = vec![ZERO; d];
            for l in 0..m {
                add_scaled(&mut t, inv[(l, i)], &space.basis()[l]);
            }
            t
        })
        .collect())
}
