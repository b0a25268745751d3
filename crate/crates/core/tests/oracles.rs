//! Values computed by the library compared against direct hand formulas.

use coact_core::catalog;
use coact_core::checks::{group_action_free, is_free};
use coact_core::coaction::{Coaction, GroupAction};
use coact_core::crossed::{fixed_point_algebra, CrossedProduct};
use coact_core::cstar::{center, wedderburn, StarAlgebra};
use coact_core::hopf::{verify_hopf_axioms, FiniteGroup, HopfAlgebra};
use coact_core::linalg::{kron_vec, max_abs_diff, unit_vector, LinearSystem, Matrix, ToleranceConfig};

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn actions() -> Vec<GroupAction> {
    vec![catalog::swap_action(), catalog::shift_action(), catalog::ad_diag_action(), catalog::pauli_action()]
}

#[test]
fn crossed_product_of_a_group_action_follows_the_covariance_rule() {
    // (a ⋊ u_s)(b ⋊ u_t) = a α_s(b) ⋊ u_{st}, with no reference to the comultiplication
    for ga in actions() {
        let c = Coaction::from_group_action("c", &ga, &cfg()).unwrap();
        let cp = CrossedProduct::build(&c, &cfg()).unwrap();
        let (a, g) = (ga.algebra(), ga.group());
        let (d, n) = (a.dim(), g.order());
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for s in 0..n {
                for j in 0..d {
                    for t in 0..n {
                        let x = cp.carrier().basis_element(i * n + s);
                        let y = cp.carrier().basis_element(j * n + t);
                        let bi = a.basis_element(i);
                        let moved = ga.alpha(s).mul_vec(&a.basis_element(j));
                        let expect = kron_vec(&a.mul(&bi, &moved), &unit_vector(n, g.mul(s, t)));
                        worst = worst.max(max_abs_diff(&cp.carrier().mul(&x, &y), &expect));
                    }
                }
            }
        }
        assert!(worst < 1e-12, "residual {worst}");
        // (a ⋊ u_s)* = α_{s⁻¹}(a*) ⋊ u_{s⁻¹}
        for i in 0..d {
            for s in 0..n {
                let x = cp.carrier().basis_element(i * n + s);
                let si = g.inv(s);
                let expect = kron_vec(&ga.alpha(si).mul_vec(&a.adjoint(&a.basis_element(i))), &unit_vector(n, si));
                assert!(max_abs_diff(&cp.carrier().adjoint(&x), &expect) < 1e-12);
            }
        }
    }
}

#[test]
fn group_algebra_blocks_are_irreducible_dimensions() {
    let z2 = FiniteGroup::cyclic(2);
    let cases = [
        (FiniteGroup::cyclic(3), vec![1, 1, 1]),
        (FiniteGroup::direct_product(&z2, &z2), vec![1, 1, 1, 1]),
        (FiniteGroup::symmetric(3), vec![1, 1, 2]),
        (FiniteGroup::dihedral(4), vec![1, 1, 1, 1, 2]),
    ];
    for (g, irreps) in cases {
        let h = HopfAlgebra::group_algebra(&g);
        let mut b = h.wedderburn().block_sizes().to_vec();
        b.sort_unstable();
        assert_eq!(b, irreps);
        let f = HopfAlgebra::function_algebra(&g);
        assert_eq!(f.wedderburn().block_sizes(), vec![1; g.order()].as_slice());
    }
}

#[test]
fn hopf_axioms_for_small_groups_and_duals() {
    let z2 = FiniteGroup::cyclic(2);
    for g in [z2.clone(), FiniteGroup::cyclic(3), FiniteGroup::direct_product(&z2, &z2), FiniteGroup::symmetric(3)] {
        for h in [HopfAlgebra::group_algebra(&g), HopfAlgebra::function_algebra(&g)] {
            let r = verify_hopf_axioms(h.data(), &cfg()).unwrap();
            assert!(r.passed() && r.max_residual() < 1e-8);
            let dual = h.dual(&cfg()).unwrap();
            assert!(verify_hopf_axioms(dual.data(), &cfg()).unwrap().max_residual() < 1e-8);
            let back = dual.dual(&cfg()).unwrap();
            assert!(back.structure_distance(&h).unwrap() < 1e-8);
        }
    }
}

#[test]
fn intertwiners_split_over_group_elements() {
    // for ρ_α the intertwiner space is ⊕_t {x : x α_t(a) = a x}, and t = ı contributes Z(A)
    for ga in actions() {
        let c = Coaction::from_group_action("c", &ga, &cfg()).unwrap();
        let per_t: usize = group_action_free(&ga, &cfg()).intertwiner_dims.iter().map(|&(_, d)| d).sum();
        let z = center(ga.algebra(), &cfg()).dim();
        let r = is_free(&c, &cfg()).unwrap();
        assert_eq!(r.intertwiner_dim, per_t + z);
        assert_eq!(r.expected_space_dim, z);
    }
}

#[test]
fn fixed_points_are_common_eigenvectors() {
    for ga in actions() {
        let c = Coaction::from_group_action("c", &ga, &cfg()).unwrap();
        let d = ga.dim();
        let mut sys = LinearSystem::new(d);
        for t in 0..ga.group().order() {
            sys.push_matrix(&ga.alpha(t).sub(&Matrix::identity(d)));
        }
        let direct = sys.null_space(&cfg(), 1.0);
        let fp = fixed_point_algebra(&c, &cfg()).unwrap();
        assert!(fp.subspace.equals(&direct).unwrap());
    }
}

#[test]
fn swap_crossed_product_is_a_full_matrix_algebra() {
    let cp = CrossedProduct::build(&catalog::swap_c2(), &cfg()).unwrap();
    let w = wedderburn(cp.carrier(), &cfg()).unwrap();
    assert_eq!(w.block_sizes(), &[2]);
    // an isomorphism onto M_2 preserves the trace of 1 ⋊ e: rank one
    assert_eq!(w.rank_vector(&cp.haar_projection()).unwrap(), vec![1]);
}
