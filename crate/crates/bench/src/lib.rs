//! Scalable workloads for the benchmarks.

use coact_core::catalog;
use coact_core::coaction::{Coaction, GroupAction};
use coact_core::cstar::BlockAlgebra;
use coact_core::hopf::FiniteGroup;
use coact_core::linalg::{Matrix, ONE, ZERO};
use coact_core::{Result, ToleranceConfig};

/// `Z/n` rotating the points of `C^n`. Free for every `n`.
pub fn shift(n: usize) -> Result<Coaction> {
    let cfg = ToleranceConfig::default();
    let cn = BlockAlgebra::commutative(n)?;
    let rot = |t: usize| Matrix::from_fn(n, n, |r, c| if r == (c + t) % n { ONE } else { ZERO });
    let ga = GroupAction::on_blocks(FiniteGroup::cyclic(n), &cn, (0..n).map(rot).collect(), &cfg)?;
    Coaction::from_group_action(format!("shift-{n}"), &ga, &cfg)
}

/// `Z/2` acting on `M_n` by `Ad diag(1, -1, 1, ...)`. Inner, hence not free.
pub fn inner_diag(n: usize) -> Result<Coaction> {
    let cfg = ToleranceConfig::default();
    let d = Matrix::diag(&(0..n).map(|i| if i % 2 == 0 { ONE } else { -ONE }).collect::<Vec<_>>());
    let ga = GroupAction::inner(FiniteGroup::cyclic(2), n, &[Matrix::identity(n), d], &cfg)?;
    Coaction::from_group_action(format!("inner-diag-{n}"), &ga, &cfg)
}

/// The swap coaction amplified to `M_k(C^2)`.
pub fn amplified_swap(k: usize) -> Result<Coaction> {
    catalog::swap_c2().amplify(k, &ToleranceConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use coact_core::checks::is_free;

    #[test]
    fn workloads_have_expected_freeness() {
        let cfg = ToleranceConfig::default();
        assert!(is_free(&shift(4).unwrap(), &cfg).unwrap().free);
        assert!(!is_free(&inner_diag(3).unwrap(), &cfg).unwrap().free);
        assert!(is_free(&amplified_swap(2).unwrap(), &cfg).unwrap().free);
    }
}
