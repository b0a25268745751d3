//! Small named coactions used by the test suites, the benchmarks and the command-line tool.

use crate::coaction::{Coaction, GroupAction};
use crate::crossed::CrossedProduct;
use crate::cstar::BlockAlgebra;
use crate::error::Result;
use crate::hopf::{FiniteGroup, HopfPair};
use crate::linalg::{Matrix, ToleranceConfig, ONE, ZERO};

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn pauli_x() -> Matrix {
    Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

fn pauli_z() -> Matrix {
    Matrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// Trivial coaction of `C(Z/2)` on `C`.
pub fn trivial_c_z2() -> Coaction {
    let c1 = BlockAlgebra::commutative(1).expect("valid");
    Coaction::trivial("trivial-c-z2", &c1, HopfPair::for_group_action(&FiniteGroup::cyclic(2)))
}

/// Trivial coaction of `C(Z/2)` on `M_2`.
pub fn trivial_m2_z2() -> Coaction {
    let m2 = BlockAlgebra::new(vec![2]).expect("valid");
    Coaction::trivial("trivial-m2-z2", &m2, HopfPair::for_group_action(&FiniteGroup::cyclic(2)))
}

/// `Z/2` swapping the two points of `C²`.
pub fn swap_action() -> GroupAction {
    let c2 = BlockAlgebra::commutative(2).expect("valid");
    GroupAction::on_blocks(FiniteGroup::cyclic(2), &c2, vec![Matrix::identity(2), pauli_x()], &cfg())
        .expect("swap action")
}

pub fn swap_c2() -> Coaction {
    Coaction::from_group_action("swap-c2", &swap_action(), &cfg()).expect("swap coaction")
}

/// `Z/3` cyclically shifting the points of `C³`.
pub fn shift_action() -> GroupAction {
    let c3 = BlockAlgebra::commutative(3).expect("valid");
    let shift = |t: usize| Matrix::from_fn(3, 3, |r, c| if r == (c + t) % 3 { ONE } else { ZERO });
    GroupAction::on_blocks(FiniteGroup::cyclic(3), &c3, (0..3).map(shift).collect(), &cfg()).expect("shift action")
}

pub fn shift_c3_z3() -> Coaction {
    Coaction::from_group_action("shift-c3-z3", &shift_action(), &cfg()).expect("shift coaction")
}

/// `Z/2` acting on `M_2` by `Ad diag(1, -1)`.
pub fn ad_diag_action() -> GroupAction {
    GroupAction::inner(FiniteGroup::cyclic(2), 2, &[Matrix::identity(2), pauli_z()], &cfg()).expect("inner action")
}

pub fn ad_diag_m2() -> Coaction {
    Coaction::from_group_action("ad-diag-m2", &ad_diag_action(), &cfg()).expect("inner coaction")
}

/// `Z/2 × Z/2` acting on `M_2` by `Ad X^a Z^b`.
pub fn pauli_action() -> GroupAction {
    let z2 = FiniteGroup::cyclic(2);
    let v4 = FiniteGroup::direct_product(&z2, &z2);
    let us: Vec<Matrix> = (0..4)
        .map(|t| {
            let x = if t / 2 == 1 { pauli_x() } else { Matrix::identity(2) };
            let z = if t % 2 == 1 { pauli_z() } else { Matrix::identity(2) };
            x.matmul(&z)
        })
        .collect();
    GroupAction::inner(v4, 2, &us, &cfg()).expect("pauli action")
}

pub fn pauli_m2() -> Coaction {
    Coaction::from_group_action("pauli-m2", &pauli_action(), &cfg()).expect("pauli coaction")
}

/// Coaction of `CZ/2` on `M_2` grading diagonal entries even and off-diagonal entries odd.
pub fn grading_m2() -> Coaction {
    let m2 = BlockAlgebra::new(vec![2]).expect("valid");
    let pair = HopfPair::for_group_grading(&FiniteGroup::cyclic(2));
    let rho = Matrix::from_fn(8, 4, |row, a| {
        let degree = (a / 2 + a % 2) % 2;
        if row == a * 2 + degree {
            ONE
        } else {
            ZERO
        }
    });
    Coaction::on_blocks("grading-m2", &m2, pair, rho, &cfg()).expect("grading coaction")
}

/// Coaction of the one-dimensional Hopf algebra on `M_2`.
pub fn trivial_group_m2() -> Coaction {
    let m2 = BlockAlgebra::new(vec![2]).expect("valid");
    Coaction::trivial("trivial-group-m2", &m2, HopfPair::for_group_action(&FiniteGroup::cyclic(1)))
}

/// Dual coaction of the swap crossed product.
pub fn swap_dual() -> Result<Coaction> {
    let cp = CrossedProduct::build(&swap_c2(), &cfg())?;
    Ok(cp.dual_coaction()?.with_name("swap-c2-dual"))
}

/// Second dual coaction of the trivial coaction of `C(Z/2)` on `C`.
pub fn trivial_c_z2_second_dual() -> Result<Coaction> {
    let cp = CrossedProduct::build(&trivial_c_z2(), &cfg())?;
    let cp2 = cp.iterate()?;
    Ok(cp2.dual_coaction()?.with_name("trivial-c-z2-second-dual"))
}

/// The base catalog, in a fixed order.
pub fn base() -> Vec<Coaction> {
    vec![
        trivial_c_z2(),
        trivial_m2_z2(),
        swap_c2(),
        shift_c3_z3(),
        ad_diag_m2(),
        pauli_m2(),
        grading_m2(),
        trivial_group_m2(),
    ]
}

/// Base catalog followed by the derived entries.
pub fn full() -> Result<Vec<Coaction>> {
    let mut all = base();
    all.push(swap_dual()?);
    all.push(trivial_c_z2_second_dual()?);
    Ok(all)
}

/// Look up a catalog entry by name.
pub fn by_name(name: &str) -> Result<Option<Coaction>> {
    Ok(full()?.into_iter().find(|c| c.name() == name))
}
