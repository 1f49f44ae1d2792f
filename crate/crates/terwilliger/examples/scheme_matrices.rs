//! Build the basic matrices of a Johnson scheme: adjacency matrices,
//! intersection matrices, and primitive idempotents.
//!
//!     cargo run --example scheme_matrices

use terwilliger::johnson::{
    adjacency_matrix, h_matrix, intersection_matrix, primitive_idempotents, SchemeSpec,
};
use terwilliger::matrix::RationalMatrix;
use terwilliger::rational::Rational;

fn main() -> terwilliger::Result<()> {
    let spec = SchemeSpec::new(5, 2)?;
    println!(
        "J(5,2) on {} two-element subsets of {{1..5}}\n",
        spec.size()
    );

    for m in 0..=spec.d() {
        let a = adjacency_matrix(spec.n(), spec.d(), m)?;
        let row_sum: Rational = (0..a.cols()).map(|c| a.get(0, c).clone()).sum();
        println!("A_{}: {} nonzeros, row sum {}", m, a.nnz(), row_sum);
    }

    println!();
    for (j, e) in primitive_idempotents(spec.n(), spec.d()).iter().enumerate() {
        println!(
            "E_{}: trace {} (rank of the eigenspace), idempotent: {}",
            j,
            e.trace()?,
            e.multiply(e)? == *e
        );
    }

    // The intersection matrices underlying everything: H^r_{i,j}(v) pairs an
    // i-subset with a j-subset exactly when they meet in r points.
    println!();
    let h = intersection_matrix(5, 2, 3, 1);
    println!(
        "H^1_{{2,3}}(5) is {}x{} with {} nonzeros",
        h.rows(),
        h.cols(),
        h.nnz()
    );
    let hmax = h_matrix(5, 2, 3);
    println!(
        "H_{{2,3}}(5) = H^2_{{2,3}}(5) relates each pair to the {} triples containing it",
        hmax.nnz() / hmax.rows()
    );

    // A small matrix in the exchange format.
    println!("\nA_0 of J(4,2) in the exchange format:");
    print!("{}", RationalMatrix::identity(6).to_exchange_string());
    Ok(())
}
