//! Linear spans of matrices and multiplicative closure.
//!
//! A span is kept as a reduced echelon basis under the fixed row-major
//! vectorization of [`RationalMatrix`]. Reduced echelon form is canonical,
//! so two bases span the same space exactly when they are equal, and
//! membership is a residual-is-zero test.

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::Rational;

/// A vectorized matrix: sorted nonzero (position, value) pairs, with
/// position = row * cols + col.
pub type SparseVec = Vec<(u64, Rational)>;

/// An echelonized basis of a space of `rows x cols` matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraBasis {
    rows: usize,
    cols: usize,
    /// Reduced echelon: pivot positions strictly increase, every pivot value
    /// is 1, and each pivot position is eliminated from the other elements.
    elems: Vec<SparseVec>,
}

impl AlgebraBasis {
    pub fn new(rows: usize, cols: usize) -> AlgebraBasis {
        AlgebraBasis {
            rows,
            cols,
            elems: Vec::new(),
        }
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn dimension(&self) -> usize {
        self.elems.len()
    }

    pub fn pivots(&self) -> Vec<u64> {
        self.elems.iter().map(|e| e[0].0).collect()
    }

    /// The i-th echelon basis element, back in matrix form.
    pub fn element(&self, i: usize) -> RationalMatrix {
        self.devectorize(&self.elems[i])
    }

    pub fn elements(&self) -> impl Iterator<Item = RationalMatrix> + '_ {
        self.elems.iter().map(|e| self.devectorize(e))
    }

    fn devectorize(&self, v: &SparseVec) -> RationalMatrix {
        RationalMatrix::from_triples(
            self.rows,
            self.cols,
            v.iter().map(|(pos, val)| {
                (
                    (*pos / self.cols as u64) as usize,
                    (*pos % self.cols as u64) as usize,
                    val.clone(),
                )
            }),
        )
        .expect("positions in range")
    }

    pub fn vectorize(&self, m: &RationalMatrix) -> Result<SparseVec> {
        if m.rows() != self.rows || m.cols() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix against {}x{} ambient",
                m.rows(),
                m.cols(),
                self.rows,
                self.cols
            )));
        }
        Ok(m.iter_entries()
            .map(|(r, c, v)| ((r * self.cols + c) as u64, v.clone()))
            .collect())
    }

    /// Residual of `m` after reduction against the basis; empty iff `m` is
    /// in the span.
    pub fn reduce(&self, m: &RationalMatrix) -> Result<SparseVec> {
        Ok(self.reduce_vec(self.vectorize(m)?))
    }

    fn reduce_vec(&self, mut v: SparseVec) -> SparseVec {
        for elem in &self.elems {
            if v.is_empty() {
                break;
            }
            let pivot = elem[0].0;
            if let Ok(idx) = v.binary_search_by_key(&pivot, |(p, _)| *p) {
                let coeff = v[idx].1.clone();
                v = axpy(&v, &coeff, elem);
            }
        }
        v
    }

    pub fn contains(&self, m: &RationalMatrix) -> Result<bool> {
        Ok(self.reduce(m)?.is_empty())
    }

    /// Reduce and, if independent, normalize and insert; returns whether the
    /// dimension grew.
    pub fn insert(&mut self, m: &RationalMatrix) -> Result<bool> {
        let v = self.vectorize(m)?;
        Ok(self.insert_vec(v))
    }

    fn insert_vec(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce_vec(v);
        if v.is_empty() {
            return false;
        }
        // Normalize the new pivot to 1.
        let lead = v[0].1.clone();
        if !lead.is_one() {
            for (_, val) in &mut v {
                *val = &*val / &lead;
            }
        }
        let pivot = v[0].0;
        // Back-eliminate the new pivot from existing elements.
        for elem in &mut self.elems {
            if let Ok(idx) = elem.binary_search_by_key(&pivot, |(p, _)| *p) {
                let coeff = elem[idx].1.clone();
                *elem = axpy(elem, &coeff, &v);
            }
        }
        let at = self.elems.partition_point(|e| e[0].0 < pivot);
        self.elems.insert(at, v);
        true
    }

    /// Residual of a raw vectorized value (used by suites to report
    /// counterexample coordinates).
    pub fn residual_matrix(&self, m: &RationalMatrix) -> Result<RationalMatrix> {
        let v = self.reduce(m)?;
        Ok(self.devectorize(&v))
    }
}

impl std::fmt::Debug for AlgebraBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "AlgebraBasis(dim {}, ambient {}x{})",
            self.elems.len(),
            self.rows,
            self.cols
        )
    }
}

/// `target - coeff * source` over sorted sparse vectors.
fn axpy(target: &SparseVec, coeff: &Rational, source: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let pick_t = j >= source.len() || (i < target.len() && target[i].0 < source[j].0);
        let pick_s = i >= target.len() || (j < source.len() && source[j].0 < target[i].0);
        if pick_t {
            out.push(target[i].clone());
            i += 1;
        } else if pick_s {
            out.push((source[j].0, -&(coeff * &source[j].1)));
            j += 1;
        } else {
            let mut v = target[i].1.clone();
            let prod = coeff * &source[j].1;
            v -= &prod;
            if !v.is_zero() {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Echelonized basis of `span(old ∪ new)`.
pub fn saturate_span(basis: &AlgebraBasis, new: &[RationalMatrix]) -> Result<AlgebraBasis> {
    let mut out = basis.clone();
    for m in new {
        out.insert(m)?;
    }
    Ok(out)
}

/// Span of a list of matrices sharing one ambient shape.
pub fn span_of(rows: usize, cols: usize, mats: &[RationalMatrix]) -> Result<AlgebraBasis> {
    saturate_span(&AlgebraBasis::new(rows, cols), mats)
}

/// Basis of the smallest subalgebra containing the generators: saturate with
/// the generators, then keep taking pairwise products of basis elements until
/// the dimension stabilizes. Bounded by (ambient size)^2, so it terminates.
///
/// Products already taken in an earlier round are not recomputed; the running
/// representative list is append-only, so each ordered pair is multiplied
/// exactly once.
pub fn close_under_multiplication(generators: &[RationalMatrix]) -> Result<AlgebraBasis> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let n = generators[0].rows();
    for g in generators {
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch(
                "closure generators must be square matrices of one size".into(),
            ));
        }
    }
    let mut basis = AlgebraBasis::new(n, n);
    let mut reps: Vec<RationalMatrix> = Vec::new();
    for g in generators {
        if basis.insert(g)? {
            reps.push(g.clone());
        }
    }
    let mut done = 0; // reps[..done] have had all mutual products taken
    while done < reps.len() {
        let frontier = reps.len();
        let mut products = Vec::new();
        for i in 0..frontier {
            for j in 0..frontier {
                if i >= done || j >= done {
                    products.push(reps[i].multiply(&reps[j])?);
                }
            }
        }
        done = frontier;
        for p in products {
            if basis.insert(&p)? {
                reps.push(p);
            }
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn qi(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn saturate_scalar_multiple_keeps_dimension() {
        let i3 = RationalMatrix::identity(3);
        let basis = span_of(3, 3, std::slice::from_ref(&i3)).unwrap();
        let grown = saturate_span(&basis, &[i3.scaled(&qi(2))]).unwrap();
        assert_eq!(grown.dimension(), 1);
    }

    #[test]
    fn saturate_i_and_j_independent() {
        let i3 = RationalMatrix::identity(3);
        let j3 = RationalMatrix::all_ones(3, 3);
        let basis = span_of(3, 3, &[i3, j3]).unwrap();
        assert_eq!(basis.dimension(), 2);
    }

    #[test]
    fn saturate_idempotent() {
        let i3 = RationalMatrix::identity(3);
        let j3 = RationalMatrix::all_ones(3, 3);
        let basis = span_of(3, 3, &[i3.clone(), j3.clone()]).unwrap();
        // J + 2I is already in the span: identical basis comes back.
        let in_span = j3.add(&i3.scaled(&qi(2))).unwrap();
        let again = saturate_span(&basis, &[in_span]).unwrap();
        assert_eq!(again, basis);
    }

    #[test]
    fn membership_after_saturation() {
        let a = RationalMatrix::from_fn(2, 2, |r, c| qi((r + 2 * c) as i64));
        let b = RationalMatrix::from_fn(2, 2, |r, c| qi((3 * r + c * c) as i64 - 1));
        let basis = span_of(2, 2, &[a.clone(), b.clone()]).unwrap();
        let combo = a
            .scaled(&Rational::new(2, 3))
            .sub(&b.scaled(&qi(5)))
            .unwrap();
        assert!(basis.contains(&combo).unwrap());
        assert!(basis.contains(&a).unwrap());
        assert!(basis.contains(&b).unwrap());
    }

    #[test]
    fn closure_of_identity() {
        let basis = close_under_multiplication(&[RationalMatrix::identity(4)]).unwrap();
        assert_eq!(basis.dimension(), 1);
    }

    #[test]
    fn closure_rejects_empty_and_nonsquare() {
        assert!(matches!(
            close_under_multiplication(&[]),
            Err(Error::EmptyGenerators)
        ));
        assert!(close_under_multiplication(&[RationalMatrix::zero(2, 3)]).is_err());
    }

    #[test]
    fn closure_generates_products() {
        // A nilpotent shift: closure of {I, N} where N^2 != 0 must pick up N^2.
        let n = RationalMatrix::from_triples(3, 3, [(0, 1, qi(1)), (1, 2, qi(1))]).unwrap();
        let basis = close_under_multiplication(&[RationalMatrix::identity(3), n.clone()]).unwrap();
        assert_eq!(basis.dimension(), 3);
        assert!(basis.contains(&n.multiply(&n).unwrap()).unwrap());
    }

    #[test]
    fn closure_generator_order_independent() {
        let n = RationalMatrix::from_triples(3, 3, [(0, 1, qi(1)), (1, 2, qi(1))]).unwrap();
        let t = n.transpose();
        let i3 = RationalMatrix::identity(3);
        let b1 = close_under_multiplication(&[i3.clone(), n.clone(), t.clone()]).unwrap();
        let b2 = close_under_multiplication(&[t, n, i3]).unwrap();
        // Reduced echelon form is canonical: equal spans give equal bases.
        assert_eq!(b1, b2);
    }

    #[test]
    fn reduced_echelon_invariants() {
        let mats = [
            RationalMatrix::from_fn(2, 2, |r, c| qi((r * 2 + c) as i64 + 1)),
            RationalMatrix::all_ones(2, 2),
            RationalMatrix::identity(2),
        ];
        let basis = span_of(2, 2, &mats).unwrap();
        let pivots = basis.pivots();
        for w in pivots.windows(2) {
            assert!(w[0] < w[1], "pivots must strictly increase");
        }
        // Each basis element has 1 at its own pivot and 0 at the others.
        for (i, e) in basis.elements().enumerate() {
            for (j, &p) in pivots.iter().enumerate() {
                let val = e.get((p / 2) as usize, (p % 2) as usize);
                if i == j {
                    assert!(val.is_one());
                } else {
                    assert!(val.is_zero());
                }
            }
        }
    }
}
