//! Wedderburn decomposition: block profiles (r, s, e_rs, size) for several
//! schemes, cross-checked against the closure oracle.
//!
//!     cargo run --release --example wedderburn_blocks

use terwilliger::algebra::{decompose, BasePointContext};
use terwilliger::johnson::SchemeSpec;
use terwilliger::report::DecompositionReport;

fn main() -> terwilliger::Result<()> {
    for (n, d) in [(5usize, 2usize), (7, 3), (4, 2), (6, 3), (6, 2)] {
        let spec = SchemeSpec::new(n, d)?;
        let ctx = BasePointContext::new(spec);
        let decomposition = decompose(&ctx)?;
        print!(
            "{}",
            DecompositionReport::from(&decomposition).render_text()
        );
        println!();
    }
    // The same record as machine-readable JSON.
    let ctx = BasePointContext::new(SchemeSpec::new(5, 2)?);
    let report = DecompositionReport::from(&decompose(&ctx)?);
    println!("{}", report.to_json());
    Ok(())
}
