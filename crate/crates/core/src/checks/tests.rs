use super::*;
use crate::catalog;
use crate::coaction::Coaction;
use crate::cstar::{BlockAlgebra, StarAlgebra};
use crate::error::Error;
use crate::hopf::{FiniteGroup, HopfPair};
use crate::linalg::{c64, kron_vec, max_abs_diff, ToleranceConfig, ONE, ZERO};

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

#[test]
fn intertwiner_dimensions() {
    assert_eq!(intertwiner_space(&catalog::trivial_c_z2(), &cfg()).dim(), 2);
    assert_eq!(intertwiner_space(&catalog::swap_c2(), &cfg()).dim(), 2);
    let ad = catalog::ad_diag_m2();
    let space = intertwiner_space(&ad, &cfg());
    assert_eq!(space.dim(), 2);
    // 1 ⊗ δ₀ and diag(1,-1) ⊗ δ₁
    let d0 = [ONE, ZERO];
    let d1 = [ZERO, ONE];
    assert!(space.contains(&kron_vec(&[ONE, ZERO, ZERO, ONE], &d0)));
    assert!(space.contains(&kron_vec(&[ONE, ZERO, ZERO, -ONE], &d1)));
}

#[test]
fn swap_intertwiners_live_on_the_identity_leg() {
    // x ρ(a) = (a ⊗ 1) x forces the δ₁ component to vanish, leaving C² ⊗ δ₀
    let s = catalog::swap_c2();
    let space = intertwiner_space(&s, &cfg());
    for v in space.basis() {
        assert!(v[1].norm() < 1e-12 && v[3].norm() < 1e-12);
    }
}

#[test]
fn freeness_verdicts() {
    let r = is_free(&catalog::swap_c2(), &cfg()).unwrap();
    assert!(r.free && r.commutant_route_free && r.cond_exp_unique);
    assert_eq!((r.intertwiner_dim, r.expected_space_dim), (2, 2));
    let t = is_free(&catalog::trivial_c_z2(), &cfg()).unwrap();
    assert!(!t.free);
    assert_eq!((t.intertwiner_dim, t.expected_space_dim), (2, 1));
    assert!(!is_free(&catalog::ad_diag_m2(), &cfg()).unwrap().free);
    assert!(is_free(&catalog::shift_c3_z3(), &cfg()).unwrap().free);
}

#[test]
fn routes_agree_and_containment_holds_on_catalog() {
    for c in catalog::full().unwrap() {
        let r = is_free(&c, &cfg()).unwrap();
        assert!(r.agreement, "{}", c.name());
        assert!(r.containment_residual < 1e-8, "{}", c.name());
    }
}

#[test]
fn group_action_freeness_matches_coaction_freeness() {
    let expected = [
        (catalog::swap_action(), true),
        (catalog::shift_action(), true),
        (catalog::ad_diag_action(), false),
        (catalog::pauli_action(), false),
    ];
    for (ga, want) in expected {
        let g = group_action_free(&ga, &cfg());
        assert_eq!(g.free, want);
        let c = Coaction::from_group_action("c", &ga, &cfg()).unwrap();
        assert_eq!(is_free(&c, &cfg()).unwrap().free, want);
    }
    // inner automorphisms have the implementing unitary as intertwiner
    let g = group_action_free(&catalog::pauli_action(), &cfg());
    assert!(g.intertwiner_dims.iter().all(|&(_, d)| d == 1));
}

#[test]
fn inner_witnesses() {
    let t = catalog::trivial_m2_z2();
    let one = t.target().unit();
    assert!(inner_witness_check(&t, &one, &cfg()).unwrap().passed);

    let ad = catalog::ad_diag_m2();
    let u = group_like_witness(&[vec![ONE, ZERO, ZERO, ONE], vec![ONE, ZERO, ZERO, -ONE]]);
    assert!(inner_witness_check(&ad, &u, &cfg()).unwrap().passed);

    // Ad(u) fixes the commutative C², so no unitary implements the swap
    let s = catalog::swap_c2();
    for u in [s.target().unit(), group_like_witness(&[vec![ONE, ONE], vec![ONE, -ONE]])] {
        let r = inner_witness_check(&s, &u, &cfg()).unwrap();
        assert!(!r.passed && r.conjugation > 0.5);
    }

    let bad = vec![c64(2.0, 0.0); 8];
    assert!(matches!(inner_witness_check(&ad, &bad, &cfg()), Err(Error::NotUnitary(_))));
}

#[test]
fn phase_cocycle_must_vanish_for_a_witness() {
    // u₁ = diag(1,-1) but u₀ = -1 gives u₀u₀ ≠ u₀
    let ad = catalog::ad_diag_m2();
    let u = group_like_witness(&[vec![-ONE, ZERO, ZERO, -ONE], vec![ONE, ZERO, ZERO, -ONE]]);
    let r = inner_witness_check(&ad, &u, &cfg()).unwrap();
    assert!(r.conjugation < 1e-12 && r.cocycle > 0.5);
}

#[test]
fn outerness_verdicts() {
    assert!(matches!(is_outer(&catalog::swap_c2(), &cfg()).unwrap(), OuterVerdict::Outer { .. }));
    assert!(matches!(is_outer(&catalog::shift_c3_z3(), &cfg()).unwrap(), OuterVerdict::Outer { .. }));
    match is_outer(&catalog::ad_diag_m2(), &cfg()).unwrap() {
        OuterVerdict::NotOuter { subgroup, witness, check } => {
            assert_eq!(subgroup, vec![0, 1]);
            assert!(check.passed);
            let ad = catalog::ad_diag_m2();
            assert!(inner_witness_check(&ad, &witness, &cfg()).unwrap().passed);
        }
        v => panic!("{v:?}"),
    }
    // each cyclic subgroup of the Pauli group gives a witness
    match is_outer(&catalog::pauli_m2(), &cfg()).unwrap() {
        OuterVerdict::NotOuter { subgroup, .. } => assert_eq!(subgroup.len(), 2),
        v => panic!("{v:?}"),
    }
    assert!(matches!(is_outer(&catalog::trivial_c_z2(), &cfg()).unwrap(), OuterVerdict::NotOuter { .. }));
    assert!(matches!(is_outer(&catalog::grading_m2(), &cfg()).unwrap(), OuterVerdict::Inconclusive { .. }));
}

#[test]
fn pauli_full_group_has_no_witness() {
    // XZ = -ZX: the projective representation of Z/2 × Z/2 does not lift, while each
    // cyclic subgroup lifts
    let ga = catalog::pauli_action();
    let wa = crate::cstar::wedderburn(ga.algebra(), &cfg()).unwrap();
    assert!(outer::implementing_representation(&ga, &wa, &cfg()).unwrap().is_none());
    for k in [[0, 1], [0, 2], [0, 3]] {
        let beta = ga.restrict(&k, &cfg()).unwrap();
        let reps = outer::implementing_representation(&beta, &wa, &cfg()).unwrap().unwrap();
        let alg = ga.algebra();
        // u₁² = 1
        assert!(max_abs_diff(&alg.mul(&reps[1], &reps[1]), &alg.unit()) < 1e-12);
    }
}

#[test]
fn swap_is_not_inner_on_any_subgroup() {
    let ga = catalog::swap_action();
    let wa = crate::cstar::wedderburn(ga.algebra(), &cfg()).unwrap();
    assert!(outer::implementing_representation(&ga, &wa, &cfg()).unwrap().is_none());
}

#[test]
fn saturation_examples() {
    let s = is_saturated(&catalog::swap_c2(), &cfg()).unwrap();
    assert!(s.saturated);
    assert_eq!(s.rank_dual_image, s.rank_amplified);
    let t = is_saturated(&catalog::trivial_c_z2(), &cfg()).unwrap();
    assert!(!t.saturated);
    assert_eq!(t.rank_dual_image, vec![1, 0, 0, 1]);
    assert_eq!(t.rank_amplified, vec![1, 0, 1, 0]);
    assert!(is_saturated(&catalog::trivial_c_z2_second_dual().unwrap(), &cfg()).unwrap().saturated);
}

#[test]
fn rokhlin_search_examples() {
    let s = catalog::swap_c2();
    let r = exact_rokhlin_search(&s, &cfg()).unwrap();
    assert!(r.found());
    assert_eq!(r.subset.as_ref().unwrap().len(), 1);
    assert!(s.algebra().projection_residual(&r.projection) < 1e-12);
    let avg = s.induced_action(s.pair().e(), &r.projection);
    assert!(max_abs_diff(&avg, &[c64(0.5, 0.0), c64(0.5, 0.0)]) < 1e-12);

    assert!(!exact_rokhlin_search(&catalog::trivial_c_z2(), &cfg()).unwrap().found());
    let ad = exact_rokhlin_search(&catalog::ad_diag_m2(), &cfg()).unwrap();
    assert!(!ad.found());
    assert_eq!((ad.minimal_projections, ad.candidates_tried), (1, 1));

    let shift = exact_rokhlin_search(&catalog::shift_c3_z3(), &cfg()).unwrap();
    assert_eq!(shift.subset.unwrap().len(), 1);
}

#[test]
fn rokhlin_search_refuses_large_centers() {
    let big = BlockAlgebra::commutative(21).unwrap();
    let t = Coaction::trivial("big", &big, HopfPair::for_group_action(&FiniteGroup::cyclic(2)));
    assert!(matches!(exact_rokhlin_search(&t, &cfg()), Err(Error::Unsupported(_))));
}

#[test]
fn suite_passes_on_catalog() {
    let report = theorem_suite(&catalog::full().unwrap(), &cfg());
    for row in &report.rows {
        assert_eq!(row.cells.len(), SUITE_CHECKS.len());
        for c in &row.cells {
            assert!(c.status != CellStatus::Fail, "{}: {} {}", row.coaction, c.check, c.detail);
        }
    }
    assert!(report.all_passed);
    let swap = report.rows.iter().find(|r| r.coaction == "swap-c2").unwrap();
    assert_eq!(swap.cells[5].detail, "2 = 2");
}
