//! The two structured descriptions of T: the blockwise intersection-matrix
//! algebra M(n,d) for 2d < n, and the symmetrized idempotent algebra N at
//! n = 2d. Both are compared with the closure oracle by mutual membership.
//!
//!     cargo run --example candidate_algebras

use terwilliger::algebra::{m_algebra, n_algebra, terwilliger_algebra, BasePointContext};
use terwilliger::johnson::SchemeSpec;
use terwilliger::span::AlgebraBasis;

fn mutually_contained(a: &AlgebraBasis, b: &AlgebraBasis) -> bool {
    a.elements().all(|m| b.contains(&m).unwrap_or(false))
        && b.elements().all(|m| a.contains(&m).unwrap_or(false))
}

fn main() -> terwilliger::Result<()> {
    // Open range: T = M(5,2).
    let spec = SchemeSpec::new(5, 2)?;
    let ctx = BasePointContext::new(spec);
    let t = terwilliger_algebra(&ctx)?;
    let m = m_algebra(&ctx)?;
    println!(
        "J(5,2): dim T = {}, dim M = {}, same span: {}",
        t.dimension(),
        m.dimension(),
        mutually_contained(&t, &m)
    );

    // Boundary: T = N strictly inside M(4,2).
    let spec = SchemeSpec::new(4, 2)?;
    let ctx = BasePointContext::new(spec);
    let t = terwilliger_algebra(&ctx)?;
    let nb = n_algebra(&ctx)?;
    let m = m_algebra(&ctx)?;
    println!(
        "J(4,2): dim T = {}, dim N = {}, same span: {}",
        t.dimension(),
        nb.dimension(),
        mutually_contained(&t, &nb)
    );
    println!(
        "J(4,2): N sits strictly inside M(4,2) (dim M = {})",
        m.dimension()
    );

    // Reduced echelon form is canonical, so equal spans give equal bases.
    println!(
        "canonical bases equal: J(5,2) T vs M: {}, J(4,2) T vs N: {}",
        {
            let ctx = BasePointContext::new(SchemeSpec::new(5, 2)?);
            terwilliger_algebra(&ctx)? == m_algebra(&ctx)?
        },
        t == nb
    );
    Ok(())
}
