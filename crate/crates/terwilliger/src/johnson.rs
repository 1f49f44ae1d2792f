//! The Johnson scheme `J(v, k)` and its intersection matrices.
//!
//! `H^r_{i,j}(v)` is the 0/1 matrix pairing i-subsets with j-subsets of
//! `[v]` that meet in exactly `r` points; rows and columns are indexed in
//! colexicographic order. Adjacency matrices, scheme eigenvalues, primitive
//! idempotents and the triple-product coefficients all come from here.

use crate::combinatorics::{binomial, binomial_signed, enumerate_subsets, KSubset};
use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::Rational;

/// Parameters of a Johnson scheme `J(n, d)` under the standing assumption
/// `n >= 2d` (the scheme is isomorphic to `J(n, n-d)`, so nothing is lost).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SchemeSpec {
    n: usize,
    d: usize,
}

/// Which of the three parameter regimes `(n, d)` falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `n = 2d`
    Boundary,
    /// `2d < n < 3d`
    Open,
    /// `n >= 3d` (decomposition known from earlier work; supported as a
    /// regression target)
    Prior,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Boundary => write!(f, "n=2d"),
            Regime::Open => write!(f, "2d<n<3d"),
            Regime::Prior => write!(f, "n>=3d"),
        }
    }
}

impl SchemeSpec {
    pub fn new(n: usize, d: usize) -> Result<SchemeSpec> {
        if n < 2 * d {
            return Err(Error::InvalidParameters(format!(
                "J({}, {}) violates n >= 2d",
                n, d
            )));
        }
        Ok(SchemeSpec { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `|X| = C(n, d)`.
    pub fn size(&self) -> usize {
        binomial(self.n, self.d as i64) as usize
    }

    pub fn regime(&self) -> Regime {
        if self.n == 2 * self.d {
            Regime::Boundary
        } else if self.n < 3 * self.d {
            Regime::Open
        } else {
            Regime::Prior
        }
    }
}

/// The intersection matrix `H^r_{i,j}(v)`: entry (a, b) is 1 iff the a-th
/// i-subset and the b-th j-subset of `[v]` (colex order) meet in exactly `r`
/// points. Out-of-band `r` simply yields the zero matrix.
pub fn intersection_matrix(v: usize, i: usize, j: usize, r: usize) -> RationalMatrix {
    let rows = enumerate_subsets(v, i);
    let cols = enumerate_subsets(v, j);
    let mut triples = Vec::new();
    for (a, alpha) in rows.iter().enumerate() {
        for (b, beta) in cols.iter().enumerate() {
            if alpha.intersection_size_unchecked(beta) == r {
                triples.push((a, b, Rational::ONE));
            }
        }
    }
    RationalMatrix::from_triples(rows.len(), cols.len(), triples).expect("indices in range")
}

/// The abbreviation `H_{i,j}(v) = H^{min(i,j)}_{i,j}(v)`.
pub fn h_matrix(v: usize, i: usize, j: usize) -> RationalMatrix {
    intersection_matrix(v, i, j, i.min(j))
}

/// `R(v, k, h)`: the set of r with `H^r_{k,h}(v)` nonzero, as a sorted list.
pub fn feasible_r_set(v: usize, k: usize, h: usize) -> Vec<usize> {
    if k > v || h > v {
        return Vec::new();
    }
    let lo = (k + h).saturating_sub(v);
    let hi = k.min(h);
    (lo..=hi).collect()
}

/// The m-th adjacency matrix of `J(v, k)`: entry 1 iff `|x ∩ y| = k - m`,
/// i.e. `H^{k-m}_{k,k}(v)`. Errors when `m > k`.
pub fn adjacency_matrix(v: usize, k: usize, m: usize) -> Result<RationalMatrix> {
    if m > k {
        return Err(Error::InvalidParameters(format!(
            "adjacency class {} exceeds subset size {}",
            m, k
        )));
    }
    Ok(intersection_matrix(v, k, k, k - m))
}

/// Adjacency matrix with rows and columns reindexed by `perm`
/// (`new_index = perm[colex_rank]`); `None` keeps global colex order. This
/// is how the Ω-block view of a scheme operator is produced.
pub fn adjacency_matrix_reordered(
    v: usize,
    k: usize,
    m: usize,
    perm: Option<&[usize]>,
) -> Result<RationalMatrix> {
    let a = adjacency_matrix(v, k, m)?;
    match perm {
        None => Ok(a),
        Some(p) => a.permuted(p, p),
    }
}

/// All adjacency matrices `A_0, …, A_k` of `J(v, k)` in one enumeration pass.
pub fn adjacency_family(v: usize, k: usize) -> Vec<RationalMatrix> {
    let subsets = enumerate_subsets(v, k);
    let size = subsets.len();
    let mut triples: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); k + 1];
    for (a, x) in subsets.iter().enumerate() {
        for (b, y) in subsets.iter().enumerate() {
            let m = k - x.intersection_size_unchecked(y);
            triples[m].push((a, b, Rational::ONE));
        }
    }
    triples
        .into_iter()
        .map(|t| RationalMatrix::from_triples(size, size, t).expect("indices in range"))
        .collect()
}

/// First eigenvalue `p_1^{(v,k)}(j) = (k-j)(v-k-j) - j`.
pub fn eigenvalue_p1(v: usize, k: usize, j: usize) -> i64 {
    let (v, k, j) = (v as i64, k as i64, j as i64);
    (k - j) * (v - k - j) - j
}

/// Top eigenvalue `p_k^{(v,k)}(j) = (-1)^j C(v-k-j, k-j)`.
pub fn eigenvalue_pk(v: usize, k: usize, j: usize) -> i64 {
    let c = binomial_signed(v as i64 - k as i64 - j as i64, k as i64 - j as i64) as i64;
    if j.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// Eigenvalue table of `J(v, k)`: `p_1(j)` and `p_k(j)` for
/// `0 <= j <= min(k, v-k)`. The `p_1` values are strictly decreasing, which
/// is what makes idempotent interpolation well-posed.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub v: usize,
    pub k: usize,
    pub p1: Vec<i64>,
    pub pk: Vec<i64>,
}

impl EigenData {
    pub fn new(v: usize, k: usize) -> EigenData {
        let classes = k.min(v - k);
        let p1: Vec<i64> = (0..=classes).map(|j| eigenvalue_p1(v, k, j)).collect();
        let pk: Vec<i64> = (0..=classes).map(|j| eigenvalue_pk(v, k, j)).collect();
        for w in p1.windows(2) {
            assert!(w[0] > w[1], "p1 must be strictly decreasing in j");
        }
        EigenData { v, k, p1, pk }
    }

    pub fn classes(&self) -> usize {
        self.p1.len() - 1
    }
}

/// Primitive idempotents `E_0, …, E_{min(k, v-k)}` of the Bose–Mesner algebra
/// of `J(v, k)`, via Lagrange interpolation in `A_1`:
/// `E_j = prod_{m != j} (A_1 - p_1(m) I) / (p_1(j) - p_1(m))`.
pub fn primitive_idempotents(v: usize, k: usize) -> Vec<RationalMatrix> {
    assert!(k <= v, "subset size exceeds ground set");
    let size = binomial(v, k as i64) as usize;
    if size == 1 {
        return vec![RationalMatrix::identity(1)];
    }
    let eig = EigenData::new(v, k);
    let a1 = adjacency_matrix(v, k, 1)
        .expect("k >= 1 when size > 1")
        .to_dense();
    let identity = RationalMatrix::identity(size);
    let mut idempotents = Vec::with_capacity(eig.classes() + 1);
    for j in 0..=eig.classes() {
        let mut e = identity.to_dense();
        let mut denom = Rational::ONE;
        for m in 0..=eig.classes() {
            if m == j {
                continue;
            }
            let shifted = a1
                .sub(&identity.scaled(&Rational::from_int(eig.p1[m])))
                .expect("same shape");
            e = e.multiply(&shifted).expect("square");
            denom = &denom * &Rational::from_int(eig.p1[j] - eig.p1[m]);
        }
        idempotents.push(e.scaled(&denom.recip()));
    }
    idempotents
}

/// Coefficients of the product expansion
/// `H^l_{i,j}(v) H^s_{j,k}(v) = sum_g c_g H^g_{i,k}(v)`,
/// indexed by `g` in `0..=min(i,k)`:
/// `c_g = sum_h C(g,h) C(i-g, l-h) C(k-g, s-h) C(v+g-i-k, j+h-l-s)`,
/// with out-of-range binomials equal to zero.
pub fn triple_product_coefficients(
    v: usize,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    s: usize,
) -> Vec<Rational> {
    let (vi, ii, ji, ki, li, si) = (v as i64, i as i64, j as i64, k as i64, l as i64, s as i64);
    (0..=i.min(k) as i64)
        .map(|g| {
            let mut total: u128 = 0;
            for h in 0..=g {
                total += binomial_signed(g, h)
                    * binomial_signed(ii - g, li - h)
                    * binomial_signed(ki - g, si - h)
                    * binomial_signed(vi + g - ii - ki, ji + h - li - si);
            }
            Rational::from(total)
        })
        .collect()
}

/// The subsets indexing the rows of `H^r_{k, ·}(v)`, exposed for callers that
/// need the colex order itself.
pub fn scheme_vertices(v: usize, k: usize) -> Vec<KSubset> {
    enumerate_subsets(v, k)
}
