//! Invariants under randomized inputs.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coact_core::catalog;
use coact_core::checks::{is_free, is_saturated};
use coact_core::coaction::Coaction;
use coact_core::crossed::{relative_commutant, CrossedProduct};
use coact_core::cstar::{mvn_equivalent, wedderburn, AlgElement, BlockAlgebra, StarAlgebra, StarAlgebraPresentation};
use coact_core::hopf::{HopfAlgebra, HopfData, HopfPair, HopfQuotient};
use coact_core::linalg::{kron, random_unitary, Matrix, ToleranceConfig, C64, ONE, ZERO};

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

const SHAPES: [&[usize]; 5] = [&[1], &[2], &[1, 2], &[1, 1, 2], &[3]];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mvn_class_survives_unitary_conjugation(shape in 0..SHAPES.len(), seed in any::<u64>(), pattern in any::<u8>()) {
        let blocks = BlockAlgebra::new(SHAPES[shape].to_vec()).unwrap();
        let alg = blocks.presentation();
        let w = wedderburn(&alg, &cfg()).unwrap();
        let mut bit = 0;
        let mut ones = 0;
        let diag: Vec<Matrix> = blocks.block_dims().iter().map(|&n| {
            Matrix::diag(&(0..n).map(|_| {
                let on = (pattern >> (bit % 8)) & 1 == 1;
                bit += 1;
                if on { ones += 1; ONE } else { ZERO }
            }).collect::<Vec<_>>())
        }).collect();
        let p = blocks.coords(&AlgElement { blocks: diag }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = blocks.coords(&AlgElement {
            blocks: blocks.block_dims().iter().map(|&n| random_unitary(n, &mut rng)).collect(),
        }).unwrap();
        let q = alg.mul(&alg.mul(&u, &p), &alg.adjoint(&u));
        let r = mvn_equivalent(&alg, &w, &p, &q, &cfg()).unwrap();
        prop_assert!(r.equivalent);
        prop_assert_eq!(r.rank_p.iter().sum::<usize>(), ones);
    }

    #[test]
    fn tensor_blocks_are_products(a in 0..SHAPES.len(), b in 0..SHAPES.len()) {
        let x = BlockAlgebra::new(SHAPES[a].to_vec()).unwrap();
        let y = BlockAlgebra::new(SHAPES[b].to_vec()).unwrap();
        let w = wedderburn(&x.presentation().tensor(&y.presentation()), &cfg()).unwrap();
        let mut got = w.block_sizes().to_vec();
        got.sort_unstable();
        let mut want: Vec<usize> = SHAPES[a].iter().flat_map(|m| SHAPES[b].iter().map(move |n| m * n)).collect();
        want.sort_unstable();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn perturbing_back_restores_the_coaction(entry in 0..8usize, seed in any::<u64>()) {
        let c = catalog::base().swap_remove(entry);
        let w_a = wedderburn(c.algebra(), &cfg()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = Coaction::random_unitary(&w_a, &mut rng);
        let w = c.coboundary(&v);
        let p = c.perturb(&w, &cfg()).unwrap();
        let back = p.perturb(&c.target().adjoint(&w), &cfg()).unwrap();
        prop_assert!(back.distance(&c).unwrap() < 1e-9);
        // freeness routes keep agreeing and the verdict is unchanged
        prop_assert_eq!(is_free(&p, &cfg()).unwrap().free, is_free(&c, &cfg()).unwrap().free);
    }
}

/// The same Hopf algebra in the basis given by the columns of `p`.
fn rebased(h: &HopfAlgebra, p: &Matrix) -> HopfData {
    let pinv = p.inverse().unwrap();
    let d = h.data();
    let n = h.dim();
    let alg = &d.algebra;
    let col = |k: usize| p.column(k);
    let invol = Matrix::from_columns(n, &(0..n).map(|j| pinv.mul_vec(&alg.adjoint(&col(j)))).collect::<Vec<_>>());
    let algebra = StarAlgebraPresentation::from_product_fn(
        n,
        |i, j| pinv.mul_vec(&alg.mul(&col(i), &col(j))),
        invol,
        pinv.mul_vec(&alg.unit()),
    )
    .unwrap();
    HopfData {
        algebra,
        comult: kron(&pinv, &pinv).matmul(&d.comult).matmul(p),
        counit: (0..n).map(|k| (0..n).map(|i| d.counit[i] * p[(i, k)]).sum()).collect(),
        antipode: pinv.matmul(&d.antipode).matmul(p),
    }
}

/// `c` re-expressed over a unitary change of basis of its Hopf algebra.
fn relabel(c: &Coaction, seed: u64) -> Coaction {
    let n = c.dim_h();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_unitary(n, &mut rng);
    let h = HopfAlgebra::new("rebased", rebased(c.pair().acting(), &p), &cfg()).unwrap();
    let pair = HopfPair::from_acting(h, &cfg()).unwrap();
    // dual coordinates transform by pᵀ
    let d = c.dim_a();
    let rho = Matrix::from_fn(d * n, d, |r, col| {
        let (a, k2) = (r / n, r % n);
        (0..n).map(|k| p[(k, k2)] * c.rho()[(a * n + k, col)]).sum::<C64>()
    });
    Coaction::new("relabelled", c.algebra_arc(), pair, rho, &cfg()).unwrap()
}

#[test]
fn saturation_is_basis_free() {
    for c in [catalog::swap_c2(), catalog::trivial_c_z2(), catalog::ad_diag_m2(), catalog::shift_c3_z3()] {
        let base = is_saturated(&c, &cfg()).unwrap();
        for seed in [1, 2, 3] {
            let r = relabel(&c, seed);
            let s = is_saturated(&r, &cfg()).unwrap();
            assert_eq!(s.saturated, base.saturated, "{}", c.name());
            let mut x = s.rank_dual_image.clone();
            let mut y = base.rank_dual_image.clone();
            x.sort_unstable();
            y.sort_unstable();
            assert_eq!(x, y);
            assert_eq!(is_free(&r, &cfg()).unwrap().free, is_free(&c, &cfg()).unwrap().free);
        }
    }
}

#[test]
fn relative_commutants_grow_along_quotients() {
    // A′ ∩ A ⊆ A′ ∩ (A ⋊ K) ⊆ A′ ∩ (A ⋊ H) through a ⋊ k ↦ a ⋊ π(k)
    for c in [catalog::pauli_m2(), catalog::ad_diag_m2(), catalog::swap_c2()] {
        let cp = CrossedProduct::build(&c, &cfg()).unwrap();
        let big = relative_commutant(&cp, &cfg());
        let g = c.pair().group().unwrap().clone();
        for k in g.subgroups(24).unwrap() {
            let q = HopfQuotient::restriction(c.pair(), &k, &cfg()).unwrap();
            let sigma = c.restrict_via_quotient(&q, &cfg()).unwrap();
            let cps = CrossedProduct::build(&sigma, &cfg()).unwrap();
            let small = relative_commutant(&cps, &cfg());
            let emb = kron(&Matrix::identity(c.dim_a()), &q.embedding());
            for v in small.basis() {
                assert!(big.contains(&emb.mul_vec(v)), "{} on {k:?}", c.name());
            }
            let z = coact_core::cstar::center(c.algebra(), &cfg());
            for v in z.basis() {
                assert!(small.contains(&cps.embed_a(v)));
            }
        }
    }
}
