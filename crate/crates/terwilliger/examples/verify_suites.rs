//! Run verification suites programmatically, including the falsifiability
//! demonstration: a single flipped matrix entry must produce a localized
//! counterexample.
//!
//!     cargo run --release --example verify_suites

use terwilliger::suites::{Fixture, FlipSpec, SuiteSession, SweepConfig};

fn main() -> terwilliger::Result<()> {
    let config = SweepConfig {
        v_max: 5,
        schemes: vec![(4, 2), (5, 2), (6, 3)],
        ..SweepConfig::default()
    };

    let mut session = SuiteSession::new(config.clone());
    for name in [
        "lemma21",
        "lemma31-span",
        "thm42-T-equals-M",
        "thm54-decomposition",
    ] {
        let report = session.run(name)?;
        print!("{}", report.render_text());
    }

    // Now poison one entry of H^1_{2,2}(5) and watch the identity suite
    // catch it.
    let flip = FlipSpec {
        v: 5,
        i: 2,
        j: 2,
        r: 1,
        row: 0,
        col: 1,
    };
    let mut poisoned = SuiteSession::with_fixture(config, Fixture::with_flip(flip));
    let report = poisoned.run("lemma21")?;
    print!("{}", report.render_text());
    assert!(!report.passed(), "the flipped entry must be detected");
    println!("flipped fixture detected as expected");
    Ok(())
}
