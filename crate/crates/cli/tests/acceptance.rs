//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//! Tolerances are pinned here rather than taken from defaults.

use std::process::Command;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coact_core::catalog;
use coact_core::checks::{group_action_free, inner_witness_check, is_free, is_outer, is_saturated, OuterVerdict};
use coact_core::coaction::{Coaction, GroupAction};
use coact_core::crossed::{relative_commutant, second_dual_compare, CrossedProduct};
use coact_core::cstar::{center, wedderburn, BlockAlgebra, StarAlgebra};
use coact_core::hopf::{verify_hopf_axioms, FiniteGroup, HopfAlgebra, HopfQuotient};
use coact_core::linalg::{kron_vec, random_unitary, unit_vector, Matrix, ONE};
use coact_core::{Result, ToleranceConfig};

const RANK_TOL: f64 = 1e-9;
const EQ_TOL: f64 = 1e-8;
const AXIOM_TOL: f64 = 1e-8;
const CONTAINMENT_TOL: f64 = 1e-8;
const GRAM_MIN: f64 = 1e-10;
const PERTURBATIONS: u64 = 20;
const HOPF_BUDGET_S: f64 = 5.0;
const SUITE_BUDGET_S: f64 = 60.0;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::new(RANK_TOL, EQ_TOL).expect("pinned tolerances are valid")
}

/// Coboundary perturbations by seeded random unitaries, plus, for trivial coactions of `C(Z/2)`
/// on matrix blocks, group-like cocycles `1 ⊗ δ₀ + U ⊗ δ₁` with `U` a random self-adjoint unitary.
fn perturbations(c: &Coaction, cfg: &ToleranceConfig) -> Result<Vec<Coaction>> {
    let w = wedderburn(c.algebra(), cfg)?;
    let mut out = Vec::new();
    for seed in 0..PERTURBATIONS {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let v = Coaction::random_unitary(&w, &mut rng);
        out.push(c.perturb(&c.coboundary(&v), cfg)?);
    }
    if c.name() == "trivial-m2-z2" {
        for seed in 0..PERTURBATIONS {
            let mut rng = ChaCha8Rng::seed_from_u64(2000 + seed);
            let v = random_unitary(2, &mut rng);
            let z = Matrix::diag(&[ONE, -ONE]);
            let u = v.matmul(&z).matmul(&v.adjoint());
            let one = c.algebra().unit();
            let mut cocycle = kron_vec(&one, &unit_vector(2, 0));
            for (x, y) in cocycle.iter_mut().zip(kron_vec(u.data(), &unit_vector(2, 1))) {
                *x += y;
            }
            out.push(c.perturb(&cocycle, cfg)?);
        }
    }
    Ok(out)
}

type Outcome = std::result::Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lift(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Err(format!("error: {e}")))
}

fn c1_hopf_axioms() -> Outcome {
    let cfg = cfg();
    let start = Instant::now();
    let groups = [
        ("Z/2", FiniteGroup::cyclic(2)),
        ("Z/3", FiniteGroup::cyclic(3)),
        ("Z/2xZ/2", FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))),
        ("S3", FiniteGroup::symmetric(3)),
    ];
    let mut worst: f64 = 0.0;
    let mut worst_dd: f64 = 0.0;
    let mut count = 0;
    let mut run = || -> Result<()> {
        for (_, g) in &groups {
            for h in [HopfAlgebra::group_algebra(g), HopfAlgebra::function_algebra(g)] {
                let d = h.dual(&cfg)?;
                for x in [&h, &d] {
                    worst = worst.max(verify_hopf_axioms(x.data(), &cfg)?.max_residual());
                    count += 1;
                }
                worst_dd = worst_dd.max(d.dual(&cfg)?.structure_distance(&h)?);
            }
        }
        Ok(())
    };
    if let Err(e) = run() {
        return Err(format!("error: {e}"));
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst < AXIOM_TOL && worst_dd < AXIOM_TOL && secs < HOPF_BUDGET_S,
        format!("{count} algebras, max residual {worst:.1e}, dual of dual {worst_dd:.1e}, {secs:.2} s"),
    )
}

fn c2_group_freeness() -> Outcome {
    let cfg = cfg();
    lift((|| {
        let trivial_c = GroupAction::trivial(FiniteGroup::cyclic(2), &BlockAlgebra::commutative(1)?);
        let cases = [
            ("swap-C2", catalog::swap_action(), true),
            ("shift-C3", catalog::shift_action(), true),
            ("trivial-C", trivial_c, false),
            ("Ad-diag-M2", catalog::ad_diag_action(), false),
            ("Pauli-M2", catalog::pauli_action(), false),
        ];
        let mut ok = true;
        let mut parts = Vec::new();
        for (name, ga, want) in cases {
            let g = group_action_free(&ga, &cfg).free;
            let c = is_free(&Coaction::from_group_action(name, &ga, &cfg)?, &cfg)?.free;
            ok &= g == want && c == want;
            parts.push(format!("{name} {g}/{c}"));
        }
        Ok(check(ok, parts.join(", ")))
    })())
}

fn c3_three_routes(catalog: &[Coaction]) -> Outcome {
    let cfg = cfg();
    lift((|| {
        let mut n = 0;
        for c in catalog {
            for x in std::iter::once(c.clone()).chain(perturbations(c, &cfg)?) {
                // disagreement surfaces as an error from is_free
                let r = is_free(&x, &cfg)?;
                if !r.agreement {
                    return Ok(Err(format!("{} disagrees", x.name())));
                }
                n += 1;
            }
        }
        Ok(Ok(format!("{n} coactions, all routes agree")))
    })())
}

fn c4_containment(catalog: &[Coaction]) -> Outcome {
    let cfg = cfg();
    lift((|| {
        let mut worst: f64 = 0.0;
        for c in catalog {
            worst = worst.max(is_free(c, &cfg)?.containment_residual);
        }
        Ok(check(worst < CONTAINMENT_TOL, format!("max residual {worst:.1e}")))
    })())
}

fn sorted_blocks(c: &Coaction, cfg: &ToleranceConfig) -> Result<Vec<usize>> {
    let cp = CrossedProduct::build(c, cfg)?;
    let mut b = cp.wedderburn()?.block_sizes().to_vec();
    b.sort_unstable();
    Ok(b)
}

fn c5_crossed_structure() -> Outcome {
    let cfg = cfg();
    lift((|| {
        let swap = sorted_blocks(&catalog::swap_c2(), &cfg)?;
        let ad = sorted_blocks(&catalog::ad_diag_m2(), &cfg)?;
        let t = catalog::trivial_c_z2();
        let triv = sorted_blocks(&t, &cfg)?;
        let mut h = t.pair().acting().wedderburn().block_sizes().to_vec();
        h.sort_unstable();
        Ok(check(
            swap == [2] && ad == [2, 2] && triv == h,
            format!("swap {swap:?}, ad-diag {ad:?}, trivial-C {triv:?} vs H {h:?}"),
        ))
    })())
}

fn c6_conditional_expectation(catalog: &[Coaction]) -> Outcome {
    let cfg = cfg();
    lift((|| {
        let mut worst: f64 = 0.0;
        let mut min_eig = f64::INFINITY;
        let mut ok = true;
        for c in catalog {
            let r = CrossedProduct::build(c, &cfg)?.e1_report()?;
            worst = worst.max(r.idempotence).max(r.bimodule).max(r.gram_hermiticity);
            min_eig = min_eig.min(r.gram_min_eigenvalue);
            ok &= r.passed(&cfg) && r.gram_cholesky;
        }
        Ok(check(
            ok && worst <= EQ_TOL && min_eig > GRAM_MIN,
            format!("max residual {worst:.1e}, min Gram eigenvalue {min_eig:.3e}"),
        ))
    })())
}

fn c7_free_implies_outer(catalog: &[Coaction]) -> Outcome {
    let cfg = cfg();
    lift((|| {
        let mut free_count = 0;
        for c in catalog {
            if is_free(c, &cfg)?.free {
                free_count += 1;
                if !matches!(is_outer(c, &cfg)?, OuterVerdict::Outer { .. }) {
                    return Ok(Err(format!("{} is free but not reported outer", c.name())));
                }
            }
        }
        let ad = catalog::ad_diag_m2();
        let detail = match is_outer(&ad, &cfg)? {
            OuterVerdict::NotOuter { subgroup, witness, .. } => {
                let q = HopfQuotient::restriction(ad.pair(), &subgroup, &cfg)?;
                let sigma = ad.restrict_via_quotient(&q, &cfg)?;
                let r = inner_witness_check(&sigma, &witness, &cfg)?;
                if !r.passed {
                    return Ok(Err(format!("ad-diag witness fails: {r:?}")));
                }
                format!("ad-diag not_outer on {subgroup:?}, residuals {:.1e}/{:.1e}", r.conjugation, r.cocycle)
            }
            v => return Ok(Err(format!("ad-diag verdict {}", v.label()))),
        };
        Ok(Ok(format!("{free_count} free coactions outer; {detail}")))
    })())
}

fn c8_saturation() -> Outcome {
    let cfg = cfg();
    lift((|| {
        let t = is_saturated(&catalog::trivial_c_z2(), &cfg)?;
        let second = catalog::trivial_c_z2_second_dual()?;
        let s = is_saturated(&second, &cfg)?;
        let cp2 = CrossedProduct::build(&catalog::trivial_c_z2(), &cfg)?.iterate()?;
        let cmp = second_dual_compare(&cp2, &[1], 2)?;
        Ok(check(
            !t.saturated
                && t.rank_dual_image == [1, 0, 0, 1]
                && t.rank_amplified == [1, 0, 1, 0]
                && s.saturated
                && cmp.matches,
            format!(
                "trivial {:?} vs {:?}, second dual saturated={}, iterated blocks {:?} vs {:?}",
                t.rank_dual_image, t.rank_amplified, s.saturated, cmp.iterated_blocks, cmp.expected_blocks
            ),
        ))
    })())
}

fn c9_invariance(catalog: &[Coaction]) -> Outcome {
    let cfg = cfg();
    lift((|| {
        let mut n = 0;
        for c in catalog {
            let f = is_free(c, &cfg)?.free;
            let mut variants = vec![c.amplify(2, &cfg)?, c.amplify(3, &cfg)?];
            variants.extend(perturbations(c, &cfg)?);
            for v in &variants {
                if is_free(v, &cfg)?.free != f {
                    return Ok(Err(format!("{} changes freeness", v.name())));
                }
                n += 1;
            }
        }
        Ok(Ok(format!("{n} variants, freeness unchanged")))
    })())
}

fn c10_watatani(catalog: &[Coaction]) -> Outcome {
    let cfg = cfg();
    lift((|| {
        let mut parts = Vec::new();
        let mut ok = true;
        for c in catalog {
            let cp = CrossedProduct::build(c, &cfg)?;
            let lhs = relative_commutant(&cp, &cfg).dim();
            let rhs = relative_commutant(&cp.iterate()?, &cfg).dim();
            ok &= lhs == rhs;
            parts.push(format!("{lhs}={rhs}"));
        }
        // the non-simple counterexample: swap's dual coaction is not free
        let dual = catalog::swap_dual()?;
        let rc = is_free(&dual, &cfg)?;
        let z = center(dual.algebra(), &cfg).dim();
        ok &= !rc.free && rc.relative_commutant_dim == 2 && z == 1;
        parts.push(format!("swap dual free={} ({} vs {z})", rc.free, rc.relative_commutant_dim));
        Ok(check(ok, parts.join(" ")))
    })())
}

fn c11_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_coact");
    let start = Instant::now();
    let a = Command::new(bin).arg("suite").output().map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let b = Command::new(bin).arg("suite").output().map_err(|e| e.to_string())?;
    check(
        a.status.success() && b.status.success() && a.stdout == b.stdout && secs < SUITE_BUDGET_S,
        format!("{} bytes identical, suite {secs:.2} s", a.stdout.len()),
    )
}

fn main() {
    let catalog = match catalog::full() {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL catalog: {e}");
            std::process::exit(1);
        }
    };
    let criteria: Vec<Criterion> = vec![
        ("hopf axioms and double duals", Box::new(c1_hopf_axioms)),
        ("group and coaction freeness agree", Box::new(c2_group_freeness)),
        ("three freeness routes agree under perturbation", Box::new(|| c3_three_routes(&catalog))),
        ("center containment certificate", Box::new(|| c4_containment(&catalog))),
        ("crossed product block structure", Box::new(c5_crossed_structure)),
        ("conditional expectation properties", Box::new(|| c6_conditional_expectation(&catalog))),
        ("free coactions are outer", Box::new(|| c7_free_implies_outer(&catalog))),
        ("saturation rank vectors", Box::new(c8_saturation)),
        ("freeness invariance", Box::new(|| c9_invariance(&catalog))),
        ("relative commutant dimensions", Box::new(|| c10_watatani(&catalog))),
        ("suite output is deterministic", Box::new(c11_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("PASS {:>2} {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {d}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
