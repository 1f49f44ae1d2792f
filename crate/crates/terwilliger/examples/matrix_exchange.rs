//! The matrix exchange format: header `rows cols`, then one `row col num/den`
//! line per nonzero, sorted row-major. Round trips are bit-exact.
//!
//!     cargo run --example matrix_exchange

use std::io::Write;

use terwilliger::johnson::primitive_idempotents;
use terwilliger::matrix::RationalMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e1 = &primitive_idempotents(4, 2)[1];
    let text = e1.to_exchange_string();
    println!("E_1 of J(4,2):\n{}", text);

    // String round trip.
    let parsed = RationalMatrix::from_exchange_str(&text)?;
    assert_eq!(&parsed, e1);
    assert_eq!(parsed.to_exchange_string(), text);
    println!("string round trip: bit-exact");

    // File round trip.
    let dir = std::env::temp_dir();
    let path = dir.join("terwilliger-exchange-demo.mtx");
    let mut file = std::fs::File::create(&path)?;
    e1.write_exchange(&mut file)?;
    file.flush()?;
    let read_back =
        RationalMatrix::read_exchange(&mut std::io::BufReader::new(std::fs::File::open(&path)?))?;
    assert_eq!(&read_back, e1);
    println!("file round trip through {}: bit-exact", path.display());
    std::fs::remove_file(&path).ok();

    // The parser is strict: unsorted, zero, or out-of-range entries are
    // rejected rather than silently fixed.
    for bad in [
        "2 2\n0 0 0/1\n",
        "2 2\n0 1 1/1\n0 0 1/1\n",
        "2 2\n5 0 1/1\n",
    ] {
        assert!(RationalMatrix::from_exchange_str(bad).is_err());
    }
    println!("malformed inputs rejected");
    Ok(())
}
