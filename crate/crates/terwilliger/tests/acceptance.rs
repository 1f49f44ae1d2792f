//! Acceptance suite: one test per acceptance criterion, each printing a
//! single pass/fail line. Everything runs in exact arithmetic with zero
//! tolerance. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines.

use terwilliger::algebra::{
    block_profiles, decompose_with_closure, terwilliger_algebra, BasePointContext, SchemeCache,
};
use terwilliger::combinatorics::{binomial, KSubset};
use terwilliger::johnson::{adjacency_matrix, eigenvalue_p1, primitive_idempotents, SchemeSpec};
use terwilliger::matrix::RationalMatrix;
use terwilliger::rational::Rational;
use terwilliger::suites::{Fixture, FlipSpec, SuiteSession, SweepConfig, DEFAULT_SCHEMES};

fn conclude(number: usize, name: &str, failures: Vec<String>) {
    let ok = failures.is_empty();
    println!(
        "criterion {} ({}): {}",
        number,
        name,
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(
        ok,
        "criterion {} ({}) failed:\n{}",
        number,
        name,
        failures.join("\n")
    );
}

fn config_for(schemes: &[(usize, usize)]) -> SweepConfig {
    SweepConfig {
        schemes: schemes.to_vec(),
        ..SweepConfig::default()
    }
}

#[test]
fn criterion_1_identity_suite() {
    let mut failures = Vec::new();
    let mut session = SuiteSession::new(SweepConfig {
        v_max: 7,
        ..SweepConfig::default()
    });
    let mut total = 0;
    for name in ["lemma21", "lemma22"] {
        let report = session.run(name).unwrap();
        total += report.cases_run;
        if !report.passed() {
            failures.push(format!("{}: {:?}", name, report.counterexample));
        }
    }
    if total < 1000 {
        failures.push(format!(
            "expected thousands of cases at v <= 7, ran only {}",
            total
        ));
    }
    conclude(
        1,
        "intersection-matrix product identities, v <= 7",
        failures,
    );
}

#[test]
fn criterion_2_idempotent_suite() {
    let mut failures = Vec::new();
    for v in 0..=8usize {
        for k in 0..=v {
            let size = binomial(v, k as i64) as usize;
            let idempotents = primitive_idempotents(v, k);
            let classes = k.min(v - k);
            if idempotents.len() != classes + 1 {
                failures.push(format!("J({},{}): {} idempotents", v, k, idempotents.len()));
                continue;
            }
            // E_0 = J / |X|.
            let e0_expected =
                RationalMatrix::all_ones(size, size).scaled(&Rational::new(1, size as i64));
            if idempotents[0] != e0_expected {
                failures.push(format!("J({},{}): E_0 != J/|X|", v, k));
            }
            // Completeness.
            let mut sum = RationalMatrix::zero(size, size);
            for e in &idempotents {
                sum = sum.add(e).unwrap();
            }
            if sum != RationalMatrix::identity(size) {
                failures.push(format!("J({},{}): sum E_j != I", v, k));
            }
            // Orthogonality and symmetry.
            for (j, ej) in idempotents.iter().enumerate() {
                if ej.transpose() != *ej {
                    failures.push(format!("J({},{}): E_{} not symmetric", v, k, j));
                }
                for (l, el) in idempotents.iter().enumerate() {
                    let prod = ej.multiply(el).unwrap();
                    let expected = if j == l {
                        ej.clone()
                    } else {
                        RationalMatrix::zero(size, size)
                    };
                    if prod != expected {
                        failures.push(format!("J({},{}): E_{} E_{} wrong", v, k, j, l));
                    }
                }
            }
            // Eigen-relation against the closed-form first eigenvalue.
            if size > 1 {
                let a1 = adjacency_matrix(v, k, 1).unwrap();
                for (j, ej) in idempotents.iter().enumerate() {
                    let lhs = a1.multiply(ej).unwrap();
                    let rhs = ej.scaled(&Rational::from_int(eigenvalue_p1(v, k, j)));
                    if lhs != rhs {
                        failures.push(format!("J({},{}): A1 E_{} != p1({}) E_{}", v, k, j, j, j));
                    }
                }
            }
        }
    }
    conclude(2, "primitive idempotents for all v <= 8", failures);
}

#[test]
fn criterion_3_main_theorem_open_range() {
    let mut failures = Vec::new();
    let schemes = [(5usize, 2usize), (7, 3), (8, 3)];
    let mut session = SuiteSession::new(config_for(&schemes));
    let report = session.run("thm42-T-equals-M").unwrap();
    if !report.passed() {
        failures.push(format!("thm42-T-equals-M: {:?}", report.counterexample));
    }
    // Pinned dimensions; the J(8,3) value is the closure oracle's own
    // answer (38), frozen after computing it.
    let mut cache = SchemeCache::new();
    for (n, d, dim) in [(5usize, 2usize, 15usize), (7, 3, 35), (8, 3, 38)] {
        let t = cache.closure(SchemeSpec::new(n, d).unwrap(), None).unwrap();
        if t.dimension() != dim {
            failures.push(format!(
                "dim T of J({},{}) = {}, expected {}",
                n,
                d,
                t.dimension(),
                dim
            ));
        }
    }
    conclude(3, "T = M(n,d) on (5,2), (7,3), (8,3)", failures);
}

#[test]
fn criterion_4_main_theorem_boundary() {
    let mut failures = Vec::new();
    let schemes = [(4usize, 2usize), (6, 3), (8, 4)];
    let mut session = SuiteSession::new(config_for(&schemes));
    let report = session.run("thm51-T-equals-N").unwrap();
    if !report.passed() {
        failures.push(format!("thm51-T-equals-N: {:?}", report.counterexample));
    }
    // The (8,4) value is the closure oracle's answer (46), frozen after
    // computing it.
    let mut cache = SchemeCache::new();
    for (n, d, dim) in [(4usize, 2usize, 11usize), (6, 3, 24), (8, 4, 46)] {
        let t = cache.closure(SchemeSpec::new(n, d).unwrap(), None).unwrap();
        if t.dimension() != dim {
            failures.push(format!(
                "dim T of J({},{}) = {}, expected {}",
                n,
                d,
                t.dimension(),
                dim
            ));
        }
    }
    conclude(4, "T = N on (4,2), (6,3), (8,4)", failures);
}

#[test]
fn criterion_5_decomposition() {
    let mut failures = Vec::new();
    let open = [(5usize, 2usize), (7, 3), (8, 3)];
    let boundary = [(4usize, 2usize), (6, 3), (8, 4)];
    {
        let mut session = SuiteSession::new(config_for(&open));
        for name in ["thm46-decomposition", "eq15-structure", "ttt1-beta-squared"] {
            let report = session.run(name).unwrap();
            if !report.passed() {
                failures.push(format!("{}: {:?}", name, report.counterexample));
            }
        }
    }
    {
        let mut session = SuiteSession::new(config_for(&boundary));
        for name in ["thm54-decomposition", "eq20-structure", "ttt2-beta-squared"] {
            let report = session.run(name).unwrap();
            if !report.passed() {
                failures.push(format!("{}: {:?}", name, report.counterexample));
            }
        }
    }
    conclude(
        5,
        "block accounting, independence, delta products and squared structure constants",
        failures,
    );
}

#[test]
fn criterion_6_lift_pullback() {
    let mut failures = Vec::new();
    let mut session = SuiteSession::new(config_for(&[(5, 2), (6, 3)]));
    let report = session.run("lemma35-liftpull").unwrap();
    if !report.passed() {
        failures.push(format!("lemma35-liftpull: {:?}", report.counterexample));
    }
    conclude(
        6,
        "lift/pullback coefficients on J(5,2) and J(6,3), including zero targets",
        failures,
    );
}

#[test]
fn criterion_7_base_point_invariance() {
    let mut failures = Vec::new();
    // Suites that depend on the base point and run on J(5,2).
    let suite_names = [
        "lemma23-blocks",
        "lemma34-containment",
        "lemma35-liftpull",
        "cor36-commute",
        "thm42-T-equals-M",
        "eq15-structure",
        "lemma44-support",
        "ttt1-beta-squared",
        "thm46-decomposition",
    ];
    let run_at = |base_point: Option<Vec<usize>>| {
        let config = SweepConfig {
            schemes: vec![(5, 2)],
            schemes_explicit: true,
            base_point,
            ..SweepConfig::default()
        };
        let mut session = SuiteSession::new(config);
        suite_names
            .iter()
            .map(|name| session.run(name).unwrap())
            .collect::<Vec<_>>()
    };
    let default_reports = run_at(None);
    let moved_reports = run_at(Some(vec![3, 5]));
    for (a, b) in default_reports.iter().zip(&moved_reports) {
        if !a.same_outcome(b) {
            failures.push(format!("suite {} differs across base points", a.suite));
        }
    }
    // Block profiles and decomposition record are base-point independent.
    let spec = SchemeSpec::new(5, 2).unwrap();
    let ctx_a = BasePointContext::new(spec);
    let ctx_b =
        BasePointContext::with_base_point(spec, KSubset::new(5, vec![3, 5]).unwrap()).unwrap();
    let t_a = terwilliger_algebra(&ctx_a).unwrap();
    let t_b = terwilliger_algebra(&ctx_b).unwrap();
    let dec_a = decompose_with_closure(&ctx_a, &t_a);
    let dec_b = decompose_with_closure(&ctx_b, &t_b);
    if dec_a.blocks != dec_b.blocks
        || dec_a.dim_formula != dec_b.dim_formula
        || dec_a.dim_closure != dec_b.dim_closure
        || !dec_a.matches
        || !dec_b.matches
    {
        failures.push("decomposition records differ across base points".into());
    }
    if block_profiles(spec) != dec_b.blocks {
        failures.push("block profiles changed with the base point".into());
    }
    conclude(
        7,
        "J(5,2) outcomes identical at base points {1,2} and {3,5}",
        failures,
    );
}

#[test]
fn criterion_8_falsifiability() {
    let mut failures = Vec::new();
    // One flipped entry in one intersection matrix must break the identity
    // suite with a localized counterexample…
    let identity_flip = FlipSpec {
        v: 5,
        i: 2,
        j: 2,
        r: 1,
        row: 0,
        col: 1,
    };
    let mut session = SuiteSession::with_fixture(
        SweepConfig {
            v_max: 5,
            ..SweepConfig::default()
        },
        Fixture::with_flip(identity_flip),
    );
    let report = session.run("lemma21").unwrap();
    if report.passed() {
        failures.push("lemma21 passed despite the flipped fixture".into());
    } else {
        match &report.counterexample {
            None => failures.push("lemma21 failed without a counterexample".into()),
            Some(ce) => {
                if !ce.case.contains("v=5") || ce.residual.is_none() {
                    failures.push(format!("lemma21 counterexample not localized: {:?}", ce));
                }
            }
        }
    }
    // …and a flipped leg matrix must break the main-theorem suite.
    let leg_flip = FlipSpec {
        v: 3,
        i: 1,
        j: 1,
        r: 0,
        row: 0,
        col: 1,
    };
    let mut session = SuiteSession::with_fixture(
        SweepConfig {
            schemes: vec![(5, 2)],
            schemes_explicit: true,
            ..SweepConfig::default()
        },
        Fixture::with_flip(leg_flip),
    );
    let report = session.run("thm42-T-equals-M").unwrap();
    if report.passed() {
        failures.push("thm42-T-equals-M passed despite the flipped fixture".into());
    } else if report.counterexample.is_none() {
        failures.push("thm42-T-equals-M failed without a counterexample".into());
    }
    conclude(8, "flipped fixtures are detected and localized", failures);
}

#[test]
fn default_sweep_members_are_valid() {
    // The default scheme list powering `verify` stays inside the supported
    // parameter range.
    for &(n, d) in DEFAULT_SCHEMES {
        SchemeSpec::new(n, d).unwrap();
    }
}
