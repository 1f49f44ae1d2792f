//! Lift and pullback: conjugating an Ω_i-block element through the bridge
//! blocks of the adjacency matrix scales idempotent pairs by the exact
//! integer factors p_{d,d-i,r} · l_{n-d,i,s} and l_{d,d-i,r} · p_{n-d,i,s}.
//!
//!     cargo run --example lift_pullback

use terwilliger::algebra::{
    idempotent_pair, lift_coefficient, lift_map, pullback_coefficient, pullback_map,
    BasePointContext,
};
use terwilliger::johnson::SchemeSpec;
use terwilliger::rational::Rational;

fn main() -> terwilliger::Result<()> {
    let (n, d) = (5usize, 2usize);
    let ctx = BasePointContext::new(SchemeSpec::new(n, d)?);

    println!("lift coefficients for J(5,2) (zero means the target vanishes):");
    for i in 0..d {
        for r in 0..=(d - i).min(i) {
            for s in 0..=i.min(n - d - i) {
                let c = lift_coefficient(n, d, i, r, s);
                println!(
                    "  E_{} ⊗ E_{} at sphere {} -> sphere {}: factor {}",
                    r,
                    s,
                    i,
                    i + 1,
                    c.effective()
                );
            }
        }
    }

    println!("\npullback coefficients:");
    for i in 1..=d {
        for r in 0..=(d - i).min(i) {
            for s in 0..=i.min(n - d - i) {
                let c = pullback_coefficient(n, d, i, r, s);
                println!(
                    "  E_{} ⊗ E_{} at sphere {} -> sphere {}: factor {}",
                    r,
                    s,
                    i,
                    i - 1,
                    c.effective()
                );
            }
        }
    }

    // The coefficients are exactly what the matrices do.
    let src = idempotent_pair(&ctx, 1, 0, 1, false);
    let lifted = lift_map(&ctx, 1, &src)?;
    let coeff = lift_coefficient(n, d, 1, 0, 1);
    let target =
        idempotent_pair(&ctx, 2, 0, 1, false).scaled(&Rational::from_int(coeff.effective()));
    println!(
        "\nmatrix check on E_0 ⊗ E_1 at sphere 1: lift factor {}, matrices agree: {}",
        coeff.effective(),
        lifted == target
    );

    let pulled = pullback_map(&ctx, 1, &src)?;
    let coeff = pullback_coefficient(n, d, 1, 0, 1);
    println!(
        "pullback factor {}, target defined: {}, image zero: {}",
        coeff.coefficient,
        coeff.target_defined,
        pulled.is_zero_matrix()
    );
    Ok(())
}
