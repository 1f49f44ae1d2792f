//! The rs-matrix system behind the decomposition: for each idempotent pair
//! (r, s), the matrices rs_T_{ij} multiply like scaled matrix units. The
//! structure constants β are solved exactly and certified in squared form
//! against the n-coefficients, so no square root ever enters.
//!
//!     cargo run --example structure_constants

use terwilliger::algebra::{
    block_profiles, n_coefficients, rs_matrix, structure_constant, BasePointContext,
};
use terwilliger::johnson::SchemeSpec;

fn main() -> terwilliger::Result<()> {
    let spec = SchemeSpec::new(5, 2)?;
    let ctx = BasePointContext::new(spec);

    for block in block_profiles(spec) {
        let (r, s) = (block.r, block.s);
        println!(
            "block (r,s) = ({},{}): live spheres {:?}, size {}",
            r,
            s,
            block.live_range(),
            block.block_size()
        );
        for i in block.live_range() {
            for j in block.live_range() {
                let t = rs_matrix(&ctx, r, s, i, j);
                let nc = n_coefficients(&ctx, r, s, i, j)?;
                println!(
                    "  T_{{{},{}}}: {}x{} block, squared norm n = {}",
                    i,
                    j,
                    t.matrix.rows(),
                    t.matrix.cols(),
                    nc.product()
                );
            }
        }
        for i in block.live_range() {
            for j in block.live_range() {
                for l in block.live_range() {
                    let beta = structure_constant(&ctx, r, s, i, j, l)?;
                    let nij = n_coefficients(&ctx, r, s, i, j)?.product();
                    let njl = n_coefficients(&ctx, r, s, j, l)?.product();
                    let nil = n_coefficients(&ctx, r, s, i, l)?.product();
                    // β² · n_il = n_ij · n_jl, entirely inside the rationals.
                    assert_eq!(&(&beta * &beta) * &nil, &nij * &njl);
                    if i != j || j != l {
                        println!("  β({},{},{}) = {}", i, j, l, beta);
                    }
                }
            }
        }
        println!();
    }
    println!("all β² values matched the n-coefficient ratios exactly");
    Ok(())
}
