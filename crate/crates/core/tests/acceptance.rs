//! Acceptance suite: one pass/fail line per criterion, exact equality
//! everywhere, wall-clock budgets enforced.
//!
//! Run with `cargo test -p slopelab-core --test acceptance`.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slopelab::cone::{brute_force_minimum, verify_certificate, verify_optimum};
use slopelab::profile::BoundCase;
use slopelab::rational::{int, ratio};
use slopelab::{
    build_constraint, build_product_quotient, build_program, build_ruled_cover, compare_paths,
    conjecture_bound, extremal_ray, lambda_bound, minimize, proof_coefficients, relative_invariants,
    resolve_invariants, slope, verify_sharpness, ExampleReport, GenusProfile, ProductQuotientParams,
    RelativeInvariants, RuledCoverParams, Strictness,
};

fn prof(g: u32, q: u32) -> GenusProfile {
    GenusProfile::new(g, q).unwrap()
}

fn positive_profiles(g_max: u32) -> impl Iterator<Item = GenusProfile> {
    (2..=g_max).flat_map(|g| GenusProfile::all_for_genus(g).filter(|p| p.q_f() >= 1))
}

fn noether(inv: &RelativeInvariants) -> bool {
    (int(12) * &inv.chi - &inv.k2 - &inv.e).is_zero()
}

fn ac1_bound_table() {
    assert_eq!(lambda_bound(&prof(3, 1)), int(4));
    assert_eq!(lambda_bound(&prof(2, 1)), int(4));
    for g in 2..=200u32 {
        let gi = i64::from(g);
        assert_eq!(lambda_bound(&prof(g, 0)), ratio(4 * (gi - 1), gi), "g={g}");
        if g % 2 == 0 {
            assert_eq!(lambda_bound(&prof(g, g / 2)), ratio(8 * (gi - 1), gi), "g={g}");
        } else {
            assert_eq!(lambda_bound(&prof(g, g.div_ceil(2))), int(8), "g={g}");
        }
    }
}

fn ac2_lp_sharpness() {
    for p in positive_profiles(20) {
        let r = verify_sharpness(&p).unwrap_or_else(|e| panic!("{p:?}: {e}"));
        assert_eq!(r.lp_minimum, lambda_bound(&p), "{p:?}");
        assert!(r.equal, "{p:?}");
        assert_eq!(r.witness_slope, r.bound, "{p:?}");
        assert!(r.witness_attains, "{p:?}");
    }
}

fn ac3_certificates() {
    // The checker sees only the profile, the claimed minimum and the
    // multipliers; it rebuilds every form itself.
    let runs: Vec<_> = positive_profiles(20)
        .map(|p| (p, minimize(&build_program(&p).unwrap()).unwrap()))
        .collect();
    for (p, res) in &runs {
        assert!(res.certificate.multipliers.values().all(|y| !y.is_negative()), "{p:?}");
        verify_certificate(p, &lambda_bound(p), &res.certificate).unwrap_or_else(|e| panic!("{p:?}: {e}"));
        verify_optimum(p, &lambda_bound(p), &res.optimal_point).unwrap_or_else(|e| panic!("{p:?}: {e}"));
    }
}

fn ac4_coefficients() {
    for p in positive_profiles(40) {
        let c = proof_coefficients(&p).unwrap();
        for (name, v) in c.entries() {
            assert!(!v.is_negative(), "{p:?} {name} = {v}");
        }
        let (g, q) = (p.g(), p.q_f());
        if g % 2 == 0 {
            let gamma = &c.gamma_k[&(g / 2)];
            assert_eq!(gamma.is_zero(), q == g / 2, "{p:?} gamma_(g/2) = {gamma}");
        }
        let generic = p.case() == BoundCase::Generic;
        match c.delta_k.get(&(q + 1)) {
            Some(d) => assert_eq!(d.is_zero(), generic, "{p:?} delta = {d}"),
            None => assert!(!generic, "{p:?} missing delta_(q_f+1)"),
        }
    }
}

fn ac5_corollary() {
    for g in 2..=40u32 {
        for p in GenusProfile::all_for_genus(g) {
            let q = p.q_f();
            let diff = lambda_bound(&p) - conjecture_bound(&p);
            assert!(!diff.is_negative(), "{p:?}");
            let equality_expected = q == 0 || 2 * q + 1 == g || 2 * q == g || 2 * q == g + 1;
            assert_eq!(diff.is_zero(), equality_expected, "{p:?} diff = {diff}");
        }
    }
}

fn ruled_grid() -> Vec<RuledCoverParams> {
    let mut out = Vec::new();
    for m in 2..=6 {
        for e in 1..=3 {
            for b0 in m * e + 1..=m * e + 4 {
                for q_f in 1..=4 {
                    out.push(RuledCoverParams { m, e, b0, q_f });
                }
            }
        }
    }
    out
}

fn check_example_integrality(r: &ExampleReport) {
    let inv = &r.invariants;
    assert!(noether(inv));
    assert!(inv.is_integral(), "{r:?}");
    assert!(!inv.k2.is_negative() && !inv.chi.is_negative() && !inv.e.is_negative(), "{r:?}");
}

fn ac6_ruled_covers() {
    let spot = build_ruled_cover(&RuledCoverParams { m: 2, e: 1, b0: 3, q_f: 1 }).unwrap();
    assert_eq!((spot.invariants.k2.clone(), spot.invariants.chi.clone(), spot.slope.clone()), (int(16), int(4), int(4)));

    for p in ruled_grid() {
        let r = build_ruled_cover(&p).unwrap_or_else(|e| panic!("{p:?}: {e}"));
        let (m, q1) = (p.m, p.q_f + 1);
        let x = 2 * m * p.b0 - m * m * p.e;
        assert_eq!(r.invariants.k2, (ratio(4 * (m - 1) * q1, m) - int(2)) * int(x), "{p:?}");
        assert_eq!(r.invariants.chi, ratio((m - 1) * q1, 2 * m) * int(x), "{p:?}");
        assert_eq!(r.slope, int(8) - ratio(4 * m, (m - 1) * q1), "{p:?}");
        let profile = prof(r.g, r.q_f);
        assert_eq!(r.slope, lambda_bound(&profile), "{p:?}");
        assert!(r.attains_bound);

        let v = r.index_vector.as_ref().unwrap();
        assert_eq!(relative_invariants(v), r.invariants, "{p:?}");
        assert_eq!(slope(v).unwrap(), r.slope);
        assert!(build_constraint(&profile).unwrap().eval(v).is_zero(), "{p:?}: cone constraint not tight");
        check_example_integrality(&r);
    }
}

fn ac7_product_quotients() {
    for g in 2..=20i64 {
        for sigma in (2..=10).step_by(2) {
            let r = build_product_quotient(&ProductQuotientParams { g, branch_count: sigma }).unwrap();
            assert_eq!(r.invariants.k2, int(2 * (g - 1) * sigma));
            let expected = if g % 2 == 0 { ratio(8 * (g - 1), g) } else { int(8) };
            assert_eq!(r.slope, expected);
            assert_eq!(r.slope, r.bound);
            assert!(r.attains_bound);
        }
    }
}

fn ac8_dual_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_F0E5);
    let mut checked = 0;
    let mut nontrivial = 0;
    while checked < 600 {
        let g = rng.gen_range(2..=12);
        let f = common::random_forest(&mut rng, g, 12);
        assert!(f.node_count() <= 12);
        let report = compare_paths(&f, Strictness::Lenient).unwrap_or_else(|e| panic!("{f:?}: {e}"));
        assert!(report.agree, "{f:?}\n direct {:?}\n indices {:?}", report.direct, report.from_indices);
        if report.classified.totals.iter().any(|&v| v > 0) {
            nontrivial += 1;
        }

        let (before, _) = resolve_invariants(&f, Strictness::Lenient).unwrap();
        let g2 = common::insert_negligible_chain(&mut rng, &f);
        assert!(g2.node_count() > f.node_count());
        let (after, trace) = resolve_invariants(&g2, Strictness::Lenient).unwrap();
        assert_eq!(before.chi, after.chi, "{g2:?}");
        assert_eq!(before.k2, after.k2, "{g2:?}");
        assert_eq!(trace.blowup_count, g2.node_count());
        checked += 1;
    }
    assert!(nontrivial >= 300, "only {nontrivial} forests carried non-negligible points");
}

fn ac9_noether_positivity() {
    for p in ruled_grid() {
        check_example_integrality(&build_ruled_cover(&p).unwrap());
    }
    for g in 2..=20 {
        for sigma in (2..=10).step_by(2) {
            check_example_integrality(&build_product_quotient(&ProductQuotientParams { g, branch_count: sigma }).unwrap());
        }
    }
    // Noether on every other kind of output as well.
    for p in positive_profiles(12) {
        assert!(noether(&relative_invariants(&extremal_ray(&p).unwrap())));
        let res = minimize(&build_program(&p).unwrap()).unwrap();
        assert!(noether(&relative_invariants(&res.optimal_point)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let g = rng.gen_range(2..=12);
        let f = common::random_forest(&mut rng, g, 12);
        let r = compare_paths(&f, Strictness::Lenient).unwrap();
        assert!(noether(&r.direct) && noether(&r.from_indices));
    }
}

fn ac10_brute_force() {
    for p in positive_profiles(8) {
        let prog = build_program(&p).unwrap();
        let simplex = minimize(&prog).unwrap();
        let brute = brute_force_minimum(&prog).unwrap();
        assert_eq!(brute.minimum, simplex.minimum, "{p:?}");
        assert!(brute.minimizers.contains(&simplex.optimal_point), "{p:?}");
    }
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    run: fn(),
}

#[test]
fn acceptance_suite() {
    let criteria = [
        Criterion { id: "AC1", title: "bound table", budget: Duration::from_secs(1), run: ac1_bound_table },
        Criterion { id: "AC2", title: "LP sharpness, 2 <= g <= 20", budget: Duration::from_secs(60), run: ac2_lp_sharpness },
        Criterion { id: "AC3", title: "certificate soundness", budget: Duration::from_secs(10), run: ac3_certificates },
        Criterion { id: "AC4", title: "coefficient ledger, g <= 40", budget: Duration::from_secs(5), run: ac4_coefficients },
        Criterion { id: "AC5", title: "conjectured bound and equality cases", budget: Duration::from_secs(5), run: ac5_corollary },
        Criterion { id: "AC6", title: "ruled double covers", budget: Duration::from_secs(10), run: ac6_ruled_covers },
        Criterion { id: "AC7", title: "product quotients", budget: Duration::from_secs(5), run: ac7_product_quotients },
        Criterion { id: "AC8", title: "dual-path equivalence, 600 forests", budget: Duration::from_secs(30), run: ac8_dual_path },
        Criterion { id: "AC9", title: "Noether and positivity", budget: Duration::from_secs(5), run: ac9_noether_positivity },
        Criterion { id: "AC10", title: "vertex enumeration vs simplex, g <= 8", budget: Duration::from_secs(30), run: ac10_brute_force },
    ];

    let mut failures = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run));
        let elapsed = start.elapsed();
        let status = match (&outcome, elapsed <= c.budget) {
            (Ok(()), true) => "PASS",
            (Ok(()), false) => "FAIL (over budget)",
            (Err(_), _) => "FAIL",
        };
        // Written to the raw handle so the report shows up without --nocapture.
        let line = format!("[{status}] {} {} ({:.3}s, budget {}s)\n", c.id, c.title, elapsed.as_secs_f64(), c.budget.as_secs());
        let _ = std::io::stdout().write_all(line.as_bytes());
        if status != "PASS" {
            failures.push(c.id);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
