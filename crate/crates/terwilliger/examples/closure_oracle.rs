//! The brute-force oracle: close {A_0..A_d, E*_0..E*_d} under products and
//! report the dimension of the resulting Terwilliger algebra.
//!
//!     cargo run --release --example closure_oracle

use std::time::Instant;

use terwilliger::algebra::{block_profiles, terwilliger_algebra, BasePointContext};
use terwilliger::johnson::SchemeSpec;

fn main() -> terwilliger::Result<()> {
    println!(
        "{:<8} {:>5} {:>7} {:>11} {:>9}",
        "scheme", "|X|", "dim T", "block sum", "time"
    );
    for (n, d) in [
        (4usize, 2usize),
        (5, 2),
        (6, 2),
        (6, 3),
        (7, 3),
        (8, 3),
        (8, 4),
    ] {
        let spec = SchemeSpec::new(n, d)?;
        let ctx = BasePointContext::new(spec);
        let start = Instant::now();
        let t = terwilliger_algebra(&ctx)?;
        let elapsed = start.elapsed();
        // The closure dimension must reproduce the sum of squared block
        // sizes of the Wedderburn profiles.
        let block_sum: usize = block_profiles(spec)
            .iter()
            .map(|b| b.block_size() * b.block_size())
            .sum();
        println!(
            "J({},{}) {:>6} {:>7} {:>11} {:>8.1?}",
            n,
            d,
            spec.size(),
            t.dimension(),
            block_sum,
            elapsed
        );
        assert_eq!(t.dimension(), block_sum);
    }
    Ok(())
}
