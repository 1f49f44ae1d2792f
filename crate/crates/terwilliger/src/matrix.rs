//! Exact rational matrices.
//!
//! One matrix type with two storage layouts behind it: row-sparse for the
//! 0/1 intersection matrices, dual idempotents and everything the closure
//! loop touches, dense for primitive idempotents, which are generically
//! full. Products dispatch on the representation; all arithmetic is exact.
//!
//! The row-major entry order exposed by [`RationalMatrix::iter_entries`] is
//! the vectorization contract used by the span machinery and the exchange
//! format.

use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::rational::Rational;

static ZERO: Rational = Rational::ZERO;

#[derive(Clone)]
enum Repr {
    /// rows[i] = sorted nonzero (col, value) pairs.
    Sparse(Vec<Vec<(u32, Rational)>>),
    /// Row-major `rows * cols` values.
    Dense(Vec<Rational>),
}

/// An exact matrix over the rationals.
#[derive(Clone)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    repr: Repr,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix {
            rows,
            cols,
            repr: Repr::Sparse(vec![Vec::new(); rows]),
        }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let rows = (0..n).map(|i| vec![(i as u32, Rational::ONE)]).collect();
        RationalMatrix {
            rows: n,
            cols: n,
            repr: Repr::Sparse(rows),
        }
    }

    /// The all-ones matrix, stored dense.
    pub fn all_ones(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix {
            rows,
            cols,
            repr: Repr::Dense(vec![Rational::ONE; rows * cols]),
        }
    }

    pub fn diagonal(values: Vec<Rational>) -> RationalMatrix {
        let n = values.len();
        let rows = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                if v.is_zero() {
                    Vec::new()
                } else {
                    vec![(i as u32, v)]
                }
            })
            .collect();
        RationalMatrix {
            rows: n,
            cols: n,
            repr: Repr::Sparse(rows),
        }
    }

    /// Build a sparse matrix from (row, col, value) triples. Duplicate
    /// positions are rejected; zero values are dropped.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<RationalMatrix> {
        let mut data: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triples {
            if r >= rows {
                return Err(Error::IndexOutOfRange {
                    what: "matrix row",
                    index: r,
                    bound: rows,
                });
            }
            if c >= cols {
                return Err(Error::IndexOutOfRange {
                    what: "matrix column",
                    index: c,
                    bound: cols,
                });
            }
            if !v.is_zero() {
                data[r].push((c as u32, v));
            }
        }
        for row in &mut data {
            row.sort_by_key(|(c, _)| *c);
            for w in row.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::Format(format!(
                        "duplicate entry at column {}",
                        w[0].0
                    )));
                }
            }
        }
        Ok(RationalMatrix {
            rows,
            cols,
            repr: Repr::Sparse(data),
        })
    }

    /// Build a dense matrix from a per-entry function.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Rational,
    ) -> RationalMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RationalMatrix {
            rows,
            cols,
            repr: Repr::Dense(data),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.repr, Repr::Sparse(_))
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        match &self.repr {
            Repr::Sparse(rows) => rows[r]
                .binary_search_by_key(&(c as u32), |(col, _)| *col)
                .map(|i| &rows[r][i].1)
                .unwrap_or(&ZERO),
            Repr::Dense(data) => &data[r * self.cols + c],
        }
    }

    /// A copy with one entry replaced; used by falsifiability fixtures.
    pub fn with_entry(&self, r: usize, c: usize, value: Rational) -> RationalMatrix {
        let mut m = self.clone();
        match &mut m.repr {
            Repr::Dense(data) => data[r * m.cols + c] = value,
            Repr::Sparse(rows) => {
                let row = &mut rows[r];
                match row.binary_search_by_key(&(c as u32), |(col, _)| *col) {
                    Ok(i) => {
                        if value.is_zero() {
                            row.remove(i);
                        } else {
                            row[i].1 = value;
                        }
                    }
                    Err(i) => {
                        if !value.is_zero() {
                            row.insert(i, (c as u32, value));
                        }
                    }
                }
            }
        }
        m
    }

    /// Nonzero entries in row-major order.
    pub fn iter_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        (0..self.rows).flat_map(move |r| self.row_entries(r).map(move |(c, v)| (r, c, v)))
    }

    fn row_entries(&self, r: usize) -> Box<dyn Iterator<Item = (usize, &Rational)> + '_> {
        match &self.repr {
            Repr::Sparse(rows) => Box::new(rows[r].iter().map(|(c, v)| (*c as usize, v))),
            Repr::Dense(data) => Box::new(
                data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero()),
            ),
        }
    }

    pub fn nnz(&self) -> usize {
        self.iter_entries().count()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.iter_entries().next().is_none()
    }

    pub fn trace(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut t = Rational::ZERO;
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    pub fn transpose(&self) -> RationalMatrix {
        match &self.repr {
            Repr::Sparse(rows) => {
                let mut out: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); self.cols];
                for (r, row) in rows.iter().enumerate() {
                    for (c, v) in row {
                        out[*c as usize].push((r as u32, v.clone()));
                    }
                }
                RationalMatrix {
                    rows: self.cols,
                    cols: self.rows,
                    repr: Repr::Sparse(out),
                }
            }
            Repr::Dense(_) => {
                RationalMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
            }
        }
    }

    /// Exact matrix product; errors on inner-dimension mismatch.
    pub fn multiply(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        match (&self.repr, &rhs.repr) {
            (Repr::Sparse(a), Repr::Sparse(_)) => {
                let mut out: Vec<Vec<(u32, Rational)>> = Vec::with_capacity(self.rows);
                let mut scratch: Vec<Rational> = vec![Rational::ZERO; rhs.cols];
                let mut touched: Vec<u32> = Vec::new();
                for row in a {
                    for (k, aik) in row {
                        for (j, bkj) in rhs.row_entries(*k as usize) {
                            let slot = &mut scratch[j];
                            if slot.is_zero() {
                                touched.push(j as u32);
                            }
                            slot.add_mul(aik, bkj);
                        }
                    }
                    touched.sort_unstable();
                    let mut out_row = Vec::with_capacity(touched.len());
                    for &j in &touched {
                        let v = std::mem::take(&mut scratch[j as usize]);
                        if !v.is_zero() {
                            out_row.push((j, v));
                        }
                    }
                    touched.clear();
                    out.push(out_row);
                }
                Ok(RationalMatrix {
                    rows: self.rows,
                    cols: rhs.cols,
                    repr: Repr::Sparse(out),
                })
            }
            _ => {
                let mut data = vec![Rational::ZERO; self.rows * rhs.cols];
                for r in 0..self.rows {
                    for (k, aik) in self.row_entries(r) {
                        for (j, bkj) in rhs.row_entries(k) {
                            data[r * rhs.cols + j].add_mul(aik, bkj);
                        }
                    }
                }
                Ok(RationalMatrix {
                    rows: self.rows,
                    cols: rhs.cols,
                    repr: Repr::Dense(data),
                })
            }
        }
    }

    /// Kronecker product; row index `(i_a, i_b)` maps to `i_a * b.rows + i_b`.
    pub fn kronecker(&self, rhs: &RationalMatrix) -> RationalMatrix {
        match (&self.repr, &rhs.repr) {
            (Repr::Sparse(a), Repr::Sparse(b)) => {
                let mut out: Vec<Vec<(u32, Rational)>> = Vec::with_capacity(self.rows * rhs.rows);
                for arow in a {
                    for brow in b {
                        let mut row = Vec::with_capacity(arow.len() * brow.len());
                        for (ja, va) in arow {
                            for (jb, vb) in brow {
                                row.push((*ja * rhs.cols as u32 + *jb, va * vb));
                            }
                        }
                        out.push(row);
                    }
                }
                RationalMatrix {
                    rows: self.rows * rhs.rows,
                    cols: self.cols * rhs.cols,
                    repr: Repr::Sparse(out),
                }
            }
            _ => RationalMatrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
                self.get(r / rhs.rows, c / rhs.cols) * rhs.get(r % rhs.rows, c % rhs.cols)
            }),
        }
    }

    pub fn add(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &RationalMatrix, negate: bool) -> Result<RationalMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "sum of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if let (Repr::Sparse(a), Repr::Sparse(b)) = (&self.repr, &rhs.repr) {
            let mut out = Vec::with_capacity(self.rows);
            for (ra, rb) in a.iter().zip(b) {
                out.push(merge_rows(ra, rb, negate));
            }
            return Ok(RationalMatrix {
                rows: self.rows,
                cols: self.cols,
                repr: Repr::Sparse(out),
            });
        }
        Ok(RationalMatrix::from_fn(self.rows, self.cols, |r, c| {
            if negate {
                self.get(r, c) - rhs.get(r, c)
            } else {
                self.get(r, c) + rhs.get(r, c)
            }
        }))
    }

    pub fn scaled(&self, s: &Rational) -> RationalMatrix {
        if s.is_zero() {
            return RationalMatrix::zero(self.rows, self.cols);
        }
        let mut m = self.clone();
        match &mut m.repr {
            Repr::Sparse(rows) => {
                for row in rows {
                    for (_, v) in row {
                        *v = &*v * s;
                    }
                }
            }
            Repr::Dense(data) => {
                for v in data {
                    *v = &*v * s;
                }
            }
        }
        m
    }

    pub fn neg(&self) -> RationalMatrix {
        self.scaled(&Rational::from_int(-1))
    }

    /// Reindex rows and columns: entry (i, j) moves to (row_perm[i], col_perm[j]).
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<RationalMatrix> {
        if row_perm.len() != self.rows || col_perm.len() != self.cols {
            return Err(Error::DimensionMismatch(
                "permutation length does not match matrix shape".into(),
            ));
        }
        RationalMatrix::from_triples(
            self.rows,
            self.cols,
            self.iter_entries()
                .map(|(r, c, v)| (row_perm[r], col_perm[c], v.clone())),
        )
    }

    /// Contiguous submatrix `[r0, r1) x [c0, c1)`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> RationalMatrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        RationalMatrix::from_triples(
            r1 - r0,
            c1 - c0,
            self.iter_entries()
                .filter(|&(r, c, _)| r >= r0 && r < r1 && c >= c0 && c < c1)
                .map(|(r, c, v)| (r - r0, c - c0, v.clone())),
        )
        .expect("submatrix indices in range")
    }

    /// Extract block (bi, bj) of the partition-aligned block structure.
    pub fn block(&self, bi: usize, bj: usize, partition: &[usize]) -> RationalMatrix {
        let offsets = partition_offsets(partition);
        self.submatrix(
            offsets[bi],
            offsets[bi] + partition[bi],
            offsets[bj],
            offsets[bj] + partition[bj],
        )
    }

    /// Convert to the dense layout (no value change).
    pub fn to_dense(&self) -> RationalMatrix {
        match self.repr {
            Repr::Dense(_) => self.clone(),
            Repr::Sparse(_) => {
                RationalMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).clone())
            }
        }
    }

    /// Convert to the sparse layout (no value change).
    pub fn to_sparse(&self) -> RationalMatrix {
        match self.repr {
            Repr::Sparse(_) => self.clone(),
            Repr::Dense(_) => RationalMatrix::from_triples(
                self.rows,
                self.cols,
                self.iter_entries().map(|(r, c, v)| (r, c, v.clone())),
            )
            .expect("entries in range"),
        }
    }

    /// Serialize in the exchange format: header `rows cols`, then one line
    /// `row col num/den` per nonzero in row-major order.
    pub fn write_exchange(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.rows, self.cols)?;
        for (r, c, v) in self.iter_entries() {
            writeln!(w, "{} {} {}", r, c, v.to_exchange())?;
        }
        Ok(())
    }

    pub fn to_exchange_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_exchange(&mut buf).expect("write to Vec");
        String::from_utf8(buf).expect("exchange format is ASCII")
    }

    /// Parse the exchange format. Strict: entries must be nonzero, in lowest
    /// terms, and strictly sorted by (row, col), so that write∘read is the
    /// identity on canonical files.
    pub fn read_exchange(r: &mut impl BufRead) -> Result<RationalMatrix> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("missing header line".into()))?
            .map_err(|e| Error::Format(e.to_string()))?;
        let mut parts = header.split_whitespace();
        let rows: usize = parse_field(parts.next(), "rows")?;
        let cols: usize = parse_field(parts.next(), "cols")?;
        if parts.next().is_some() {
            return Err(Error::Format("trailing tokens in header".into()));
        }
        let mut triples: Vec<(usize, usize, Rational)> = Vec::new();
        let mut last: Option<(usize, usize)> = None;
        for line in lines {
            let line = line.map_err(|e| Error::Format(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let row: usize = parse_field(parts.next(), "row index")?;
            let col: usize = parse_field(parts.next(), "col index")?;
            let value: Rational = parts
                .next()
                .ok_or_else(|| Error::Format("missing value field".into()))?
                .parse()
                .map_err(|e| Error::Format(format!("{}", e)))?;
            if parts.next().is_some() {
                return Err(Error::Format(format!("trailing tokens: `{}`", line)));
            }
            if row >= rows || col >= cols {
                return Err(Error::Format(format!(
                    "entry ({}, {}) outside {}x{}",
                    row, col, rows, cols
                )));
            }
            if value.is_zero() {
                return Err(Error::Format(format!(
                    "explicit zero entry at ({}, {})",
                    row, col
                )));
            }
            if let Some(prev) = last {
                if (row, col) <= prev {
                    return Err(Error::Format(format!(
                        "entries not strictly sorted at ({}, {})",
                        row, col
                    )));
                }
            }
            last = Some((row, col));
            triples.push((row, col, value));
        }
        RationalMatrix::from_triples(rows, cols, triples)
    }

    pub fn from_exchange_str(s: &str) -> Result<RationalMatrix> {
        RationalMatrix::read_exchange(&mut s.as_bytes())
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, what: &str) -> Result<T> {
    field
        .ok_or_else(|| Error::Format(format!("missing {}", what)))?
        .parse()
        .map_err(|_| Error::Format(format!("invalid {}", what)))
}

fn merge_rows(a: &[(u32, Rational)], b: &[(u32, Rational)], negate: bool) -> Vec<(u32, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let pick_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let pick_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if pick_a {
            out.push(a[i].clone());
            i += 1;
        } else if pick_b {
            let (c, v) = &b[j];
            out.push((*c, if negate { -v } else { v.clone() }));
            j += 1;
        } else {
            let v = if negate {
                &a[i].1 - &b[j].1
            } else {
                &a[i].1 + &b[j].1
            };
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn partition_offsets(partition: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(partition.len() + 1);
    let mut acc = 0;
    for &p in partition {
        offsets.push(acc);
        acc += p;
    }
    offsets.push(acc);
    offsets
}

/// Embed `y` as block (bi, bj) of the partitioned zero matrix; all other
/// blocks stay zero. Rows and columns share the same partition.
pub fn block_embed(
    y: &RationalMatrix,
    bi: usize,
    bj: usize,
    partition: &[usize],
) -> Result<RationalMatrix> {
    if bi >= partition.len() || bj >= partition.len() {
        return Err(Error::IndexOutOfRange {
            what: "block index",
            index: bi.max(bj),
            bound: partition.len(),
        });
    }
    if y.rows() != partition[bi] || y.cols() != partition[bj] {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} block does not fit partition slot ({}, {}) of size {}x{}",
            y.rows(),
            y.cols(),
            bi,
            bj,
            partition[bi],
            partition[bj]
        )));
    }
    let offsets = partition_offsets(partition);
    let total = offsets[partition.len()];
    RationalMatrix::from_triples(
        total,
        total,
        y.iter_entries()
            .map(|(r, c, v)| (offsets[bi] + r, offsets[bj] + c, v.clone())),
    )
}

impl PartialEq for RationalMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let mut a = self.iter_entries();
        let mut b = other.iter_entries();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return true,
                (Some((r1, c1, v1)), Some((r2, c2, v2))) => {
                    if r1 != r2 || c1 != c2 || v1 != v2 {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
}

impl Eq for RationalMatrix {}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}x{} matrix ({} nonzero)",
            self.rows,
            self.cols,
            self.nnz()
        )?;
        if self.rows <= 16 && self.cols <= 16 {
            for r in 0..self.rows {
                write!(f, "  [")?;
                for c in 0..self.cols {
                    if c > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", self.get(r, c))?;
                }
                writeln!(f, "]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qi(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn j_minus_i(n: usize) -> RationalMatrix {
        RationalMatrix::from_fn(n, n, |r, c| if r == c { qi(0) } else { qi(1) })
    }

    #[test]
    fn identity_multiply() {
        let m = RationalMatrix::from_fn(3, 3, |r, c| Rational::new((r * 3 + c) as i64, 7));
        let i3 = RationalMatrix::identity(3);
        assert_eq!(i3.multiply(&m).unwrap(), m);
        assert_eq!(m.multiply(&i3).unwrap(), m);
    }

    #[test]
    fn j_minus_i_squared() {
        // (J-I)^2 = J + I over 3x3.
        let a = j_minus_i(3);
        let expected = RationalMatrix::all_ones(3, 3)
            .add(&RationalMatrix::identity(3))
            .unwrap();
        assert_eq!(a.multiply(&a).unwrap(), expected);
    }

    #[test]
    fn dimension_mismatch() {
        let a = RationalMatrix::zero(2, 3);
        let b = RationalMatrix::zero(2, 3);
        assert!(a.multiply(&b).is_err());
        assert!(a.add(&RationalMatrix::zero(3, 2)).is_err());
    }

    #[test]
    fn kronecker_identities() {
        let i2 = RationalMatrix::identity(2);
        let i3 = RationalMatrix::identity(3);
        assert_eq!(i2.kronecker(&i3), RationalMatrix::identity(6));

        let row = RationalMatrix::from_triples(1, 2, [(0, 0, qi(1)), (0, 1, qi(1))]).unwrap();
        let col = RationalMatrix::from_triples(2, 1, [(0, 0, qi(1)), (1, 0, qi(1))]).unwrap();
        assert_eq!(row.kronecker(&col), RationalMatrix::all_ones(2, 2));
    }

    #[test]
    fn block_embed_basic() {
        let y = RationalMatrix::from_triples(1, 1, [(0, 0, qi(5))]).unwrap();
        let m = block_embed(&y, 0, 0, &[1, 2]).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 0), &qi(5));
    }

    #[test]
    fn block_embed_products() {
        let partition = [2usize, 3, 1];
        let y = RationalMatrix::from_fn(2, 3, |r, c| qi((r + c) as i64));
        let z = RationalMatrix::from_fn(3, 1, |r, _| qi(r as i64 + 1));
        let w = RationalMatrix::from_fn(1, 2, |_, c| qi(c as i64 + 2));
        // Aligned blocks compose: L(Y) L(Z) = L(YZ).
        let lhs = block_embed(&y, 0, 1, &partition)
            .unwrap()
            .multiply(&block_embed(&z, 1, 2, &partition).unwrap())
            .unwrap();
        let rhs = block_embed(&y.multiply(&z).unwrap(), 0, 2, &partition).unwrap();
        assert_eq!(lhs, rhs);
        // Misaligned blocks annihilate: column block 1 against row block 2.
        let zero = block_embed(&y, 0, 1, &partition)
            .unwrap()
            .multiply(&block_embed(&w, 2, 0, &partition).unwrap())
            .unwrap();
        assert!(zero.is_zero_matrix());
    }

    #[test]
    fn block_embed_shape_check() {
        let y = RationalMatrix::zero(2, 2);
        assert!(block_embed(&y, 0, 0, &[1, 2]).is_err());
    }

    #[test]
    fn submatrix_and_block() {
        let m = RationalMatrix::from_fn(4, 4, |r, c| qi((4 * r + c) as i64));
        let b = m.block(1, 0, &[1, 3]);
        assert_eq!(b.rows(), 3);
        assert_eq!(b.cols(), 1);
        assert_eq!(b.get(0, 0), &qi(4));
        assert_eq!(b.get(2, 0), &qi(12));
    }

    #[test]
    fn sparse_dense_agree() {
        let s = RationalMatrix::from_triples(
            3,
            3,
            [(0, 1, qi(2)), (1, 2, Rational::new(1, 3)), (2, 0, qi(-1))],
        )
        .unwrap();
        let d = s.to_dense();
        assert_eq!(s, d);
        assert_eq!(s.multiply(&s).unwrap(), d.multiply(&d).unwrap());
        assert_eq!(s.transpose(), d.transpose());
        assert_eq!(d.to_sparse(), s);
        assert!(d.to_sparse().is_sparse());
    }

    #[test]
    fn permuted_moves_entries() {
        let m = RationalMatrix::from_triples(3, 3, [(0, 1, qi(7))]).unwrap();
        let p = m.permuted(&[2, 0, 1], &[1, 2, 0]).unwrap();
        assert_eq!(p.get(2, 2), &qi(7));
        assert_eq!(p.nnz(), 1);
    }

    #[test]
    fn exchange_round_trip_bit_exact() {
        let m = RationalMatrix::from_triples(
            3,
            4,
            [
                (0, 0, Rational::new(-1, 2)),
                (0, 3, qi(5)),
                (2, 1, Rational::new(7, 3)),
            ],
        )
        .unwrap();
        let text = m.to_exchange_string();
        let back = RationalMatrix::from_exchange_str(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_exchange_string(), text);
    }

    #[test]
    fn exchange_rejects_malformed() {
        assert!(RationalMatrix::from_exchange_str("").is_err());
        assert!(RationalMatrix::from_exchange_str("2 2\n0 0 0/1\n").is_err());
        assert!(RationalMatrix::from_exchange_str("2 2\n0 1 1/1\n0 0 1/1\n").is_err());
        assert!(RationalMatrix::from_exchange_str("2 2\n0 2 1/1\n").is_err());
        assert!(RationalMatrix::from_exchange_str("2 2\n0 0 1/1 junk\n").is_err());
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
        proptest::collection::vec((-6i64..=6, 1i64..=4), rows * cols).prop_map(move |vals| {
            RationalMatrix::from_fn(rows, cols, |r, c| {
                let (n, d) = vals[r * cols + c];
                Rational::new(n, d)
            })
        })
    }

    proptest! {
        #[test]
        fn product_associative(a in arb_matrix(3, 3), b in arb_matrix(3, 3), c in arb_matrix(3, 3)) {
            let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
        }

        #[test]
        fn transpose_antihomomorphism(a in arb_matrix(3, 2), b in arb_matrix(2, 4)) {
            let lhs = a.multiply(&b).unwrap().transpose();
            let rhs = b.transpose().multiply(&a.transpose()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kronecker_mixed_product(a in arb_matrix(2, 2), b in arb_matrix(2, 2),
                                   c in arb_matrix(2, 2), d in arb_matrix(2, 2)) {
            let lhs = a.kronecker(&b).multiply(&c.kronecker(&d)).unwrap();
            let rhs = a.multiply(&c).unwrap().kronecker(&b.multiply(&d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
