//! The Terwilliger algebra of `J(n, d)` and its structured descriptions.
//!
//! Fixing a base point x splits the vertex set into spheres
//! `Ω_i = {y : |x ∩ y| = d - i}`. Inside `Ω_i` a vertex is indexed by the
//! pair (colex rank of `x ∩ y` inside x, colex rank of `y \ x` inside the
//! complement), in row-major Kronecker order, so the block structure of every
//! operator is literally a Kronecker product. All computations here run in
//! this Ω-block order.
//!
//! Three algebras live on top of the context:
//!
//! * `T` — the closure of the adjacency matrices and the dual idempotents;
//!   the brute-force oracle everything else is measured against.
//! * `M(n, d)` — blockwise spans of `H ⊗ H` intersection matrices; equals `T`
//!   when `2d < n`.
//! * `N` — the symmetrized idempotent algebra; equals `T` when `n = 2d`.
//!
//! The `rs`-matrices tie `T` to its Wedderburn blocks: for each idempotent
//! pair (r, s) they form a matrix-unit system whose structure constants are
//! certified by exact rational identities.

use std::collections::HashMap;
use std::ops::RangeInclusive;
use std::rc::Rc;

use crate::combinatorics::{binomial, binomial_signed, KSubset};
use crate::error::{Error, Result};
use crate::johnson::{
    self, h_matrix, intersection_matrix, primitive_idempotents, Regime, SchemeSpec,
};
use crate::matrix::{block_embed, RationalMatrix};
use crate::rational::Rational;
use crate::span::{close_under_multiplication, AlgebraBasis};

/// Frozen per-base-point data: the Ω-partition, both orderings, the scheme
/// generators in block order, and the leg idempotents every `rs`-matrix is
/// assembled from. Construction is single-owner; everything derived from the
/// context is pure.
pub struct BasePointContext {
    scheme: SchemeSpec,
    base_point: KSubset,
    omega_sizes: Vec<usize>,
    omega_offsets: Vec<usize>,
    block_of_colex: Vec<usize>,
    colex_of_block: Vec<usize>,
    vertices: Vec<KSubset>,
    adjacency: Vec<RationalMatrix>,
    dual_idem: Vec<RationalMatrix>,
    /// left_idem[i][r] = E_r of J(d, d-i), the x-side tensor leg at level i.
    left_idem: Vec<Vec<RationalMatrix>>,
    /// right_idem[i][s] = E_s of J(n-d, i), the complement-side leg.
    right_idem: Vec<Vec<RationalMatrix>>,
}

impl BasePointContext {
    /// Context at the default base point `{1, …, d}`.
    pub fn new(scheme: SchemeSpec) -> BasePointContext {
        Self::with_base_point(scheme, KSubset::first(scheme.n(), scheme.d()))
            .expect("default base point is valid")
    }

    /// Context at an arbitrary base point.
    pub fn with_base_point(scheme: SchemeSpec, x: KSubset) -> Result<BasePointContext> {
        let (n, d) = (scheme.n(), scheme.d());
        if x.ground_set() != n || x.len() != d {
            return Err(Error::InvalidParameters(format!(
                "base point {:?} is not a {}-subset of [{}]",
                x, d, n
            )));
        }
        let size = scheme.size();
        let omega_sizes: Vec<usize> = (0..=d)
            .map(|i| (binomial(d, (d - i) as i64) * binomial(n - d, i as i64)) as usize)
            .collect();
        let mut omega_offsets = Vec::with_capacity(d + 2);
        let mut acc = 0;
        for &s in &omega_sizes {
            omega_offsets.push(acc);
            acc += s;
        }
        omega_offsets.push(acc);
        debug_assert_eq!(acc, size);

        // Position of each ground element inside x / inside the complement.
        let mut in_x = vec![0usize; n + 1];
        for (pos, &e) in x.elements().iter().enumerate() {
            in_x[e] = pos + 1;
        }
        let comp: Vec<usize> = (1..=n).filter(|e| !x.contains(*e)).collect();
        let mut in_comp = vec![0usize; n + 1];
        for (pos, &e) in comp.iter().enumerate() {
            in_comp[e] = pos + 1;
        }

        let mut block_of_colex = vec![0usize; size];
        let mut vertices: Vec<Option<KSubset>> = vec![None; size];
        for (g, slot) in block_of_colex.iter_mut().enumerate() {
            let y = KSubset::unrank(n, d, g)?;
            let meet: Vec<usize> = y
                .elements()
                .iter()
                .filter(|e| x.contains(**e))
                .map(|e| in_x[*e])
                .collect();
            let rest: Vec<usize> = y
                .elements()
                .iter()
                .filter(|e| !x.contains(**e))
                .map(|e| in_comp[*e])
                .collect();
            let i = d - meet.len();
            let x_rank = KSubset::new(d, meet)?.rank();
            let c_rank = KSubset::new(n - d, rest)?.rank();
            let pos = omega_offsets[i] + x_rank * binomial(n - d, i as i64) as usize + c_rank;
            *slot = pos;
            vertices[pos] = Some(y);
        }
        let vertices: Vec<KSubset> = vertices
            .into_iter()
            .map(|v| v.expect("block positions are a bijection"))
            .collect();
        let mut colex_of_block = vec![0usize; size];
        for (g, &p) in block_of_colex.iter().enumerate() {
            colex_of_block[p] = g;
        }

        // Adjacency matrices directly in block order, one pass over pairs.
        let mut triples: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); d + 1];
        for (p, y) in vertices.iter().enumerate() {
            for (q, z) in vertices.iter().enumerate() {
                let m = d - y.intersection_size_unchecked(z);
                triples[m].push((p, q, Rational::ONE));
            }
        }
        let adjacency: Vec<RationalMatrix> = triples
            .into_iter()
            .map(|t| RationalMatrix::from_triples(size, size, t).expect("indices in range"))
            .collect();

        // Dual idempotents are contiguous diagonal blocks in this order.
        let dual_idem: Vec<RationalMatrix> = (0..=d)
            .map(|i| {
                RationalMatrix::from_triples(
                    size,
                    size,
                    (omega_offsets[i]..omega_offsets[i + 1]).map(|p| (p, p, Rational::ONE)),
                )
                .expect("indices in range")
            })
            .collect();

        let left_idem: Vec<Vec<RationalMatrix>> =
            (0..=d).map(|i| primitive_idempotents(d, d - i)).collect();
        let right_idem: Vec<Vec<RationalMatrix>> =
            (0..=d).map(|i| primitive_idempotents(n - d, i)).collect();

        Ok(BasePointContext {
            scheme,
            base_point: x,
            omega_sizes,
            omega_offsets,
            block_of_colex,
            colex_of_block,
            vertices,
            adjacency,
            dual_idem,
            left_idem,
            right_idem,
        })
    }

    pub fn scheme(&self) -> SchemeSpec {
        self.scheme
    }

    pub fn base_point(&self) -> &KSubset {
        &self.base_point
    }

    /// Sphere sizes `|Ω_0|, …, |Ω_d|`; the block partition of everything.
    pub fn omega_sizes(&self) -> &[usize] {
        &self.omega_sizes
    }

    pub fn omega_offset(&self, i: usize) -> usize {
        self.omega_offsets[i]
    }

    /// Vertex at a block position.
    pub fn vertex(&self, block_pos: usize) -> &KSubset {
        &self.vertices[block_pos]
    }

    /// Block position of each global colex rank.
    pub fn block_of_colex(&self) -> &[usize] {
        &self.block_of_colex
    }

    /// Global colex rank of each block position.
    pub fn colex_of_block(&self) -> &[usize] {
        &self.colex_of_block
    }

    /// Adjacency matrix `A_m` in Ω-block order.
    pub fn adjacency(&self, m: usize) -> &RationalMatrix {
        &self.adjacency[m]
    }

    /// Dual idempotent `E*_i` in Ω-block order.
    pub fn dual_idempotent(&self, i: usize) -> &RationalMatrix {
        &self.dual_idem[i]
    }

    /// All dual idempotents `E*_0, …, E*_d`.
    pub fn dual_idempotents(&self) -> &[RationalMatrix] {
        &self.dual_idem
    }

    /// Dual idempotent in global colex order (for export).
    pub fn dual_idempotent_colex(&self, i: usize) -> RationalMatrix {
        self.to_colex_order(&self.dual_idem[i])
            .expect("square matrix of scheme size")
    }

    /// Reindex a colex-ordered operator into Ω-block order.
    pub fn to_block_order(&self, m: &RationalMatrix) -> Result<RationalMatrix> {
        m.permuted(&self.block_of_colex, &self.block_of_colex)
    }

    /// Reindex a block-ordered operator back to global colex order.
    pub fn to_colex_order(&self, m: &RationalMatrix) -> Result<RationalMatrix> {
        m.permuted(&self.colex_of_block, &self.colex_of_block)
    }

    /// Leg idempotent `E_r` of `J(d, d-i)`; `None` encodes the convention
    /// `E_r = 0` for `r > min(d-i, i)`.
    pub fn left_idempotent(&self, i: usize, r: usize) -> Option<&RationalMatrix> {
        self.left_idem[i].get(r)
    }

    /// Leg idempotent `E_s` of `J(n-d, i)`; `None` when out of range.
    pub fn right_idempotent(&self, i: usize, s: usize) -> Option<&RationalMatrix> {
        self.right_idem[i].get(s)
    }

    /// Embed a `|Ω_i| x |Ω_j|` block at slot (i, j) of the full operator.
    pub fn embed(&self, m: &RationalMatrix, i: usize, j: usize) -> Result<RationalMatrix> {
        block_embed(m, i, j, &self.omega_sizes)
    }

    /// The bridge block `A|_{Ω_i x Ω_{i+1}} = H_{d-i,d-i-1}(d) ⊗ H_{i,i+1}(n-d)`.
    pub fn bridge(&self, i: usize) -> RationalMatrix {
        let (n, d) = (self.scheme.n(), self.scheme.d());
        assert!(i < d, "bridge leaves the sphere range");
        h_matrix(d, d - i, d - i - 1).kronecker(&h_matrix(n - d, i, i + 1))
    }
}

/// The closure oracle: basis of the algebra generated by
/// `A_0, …, A_d, E*_0, …, E*_d` in Ω-block order.
pub fn terwilliger_algebra(ctx: &BasePointContext) -> Result<AlgebraBasis> {
    let mut generators: Vec<RationalMatrix> = ctx.adjacency.clone();
    generators.extend(ctx.dual_idem.iter().cloned());
    close_under_multiplication(&generators)
}

/// `M(n, d)` built from a caller-supplied source of intersection matrices;
/// the canonical entry point is [`m_algebra`], while verification fixtures
/// inject perturbed sources here.
pub fn m_algebra_from(
    ctx: &BasePointContext,
    h: &mut dyn FnMut(usize, usize, usize, usize) -> RationalMatrix,
) -> Result<AlgebraBasis> {
    let (n, d) = (ctx.scheme.n(), ctx.scheme.d());
    let size = ctx.scheme.size();
    let mut basis = AlgebraBasis::new(size, size);
    for i in 0..=d {
        for j in 0..=d {
            for &r in &johnson::feasible_r_set(d, d - i, d - j) {
                for &s in &johnson::feasible_r_set(n - d, i, j) {
                    let left = h(d, d - i, d - j, r);
                    let right = h(n - d, i, j, s);
                    basis.insert(&ctx.embed(&left.kronecker(&right), i, j)?)?;
                }
            }
        }
    }
    Ok(basis)
}

/// The algebra `M(n, d) = ⊕_{i,j} L(B H ⊗ B H)`, spanned blockwise by
/// `H^r_{d-i,d-j}(d) ⊗ H^s_{i,j}(n-d)` over the feasible (r, s).
pub fn m_algebra(ctx: &BasePointContext) -> Result<AlgebraBasis> {
    let basis = m_algebra_from(ctx, &mut intersection_matrix)?;
    let expected = m_dimension(ctx.scheme);
    if basis.dimension() != expected {
        return Err(Error::Verification(format!(
            "M basis dimension {} disagrees with the counting formula {}",
            basis.dimension(),
            expected
        )));
    }
    Ok(basis)
}

/// `dim M(n, d)` by feasible-range counting:
/// `sum_{i,j} (min(i,j,d-i,d-j)+1)(min(i,j,n-d-i,n-d-j)+1)`.
pub fn m_dimension(scheme: SchemeSpec) -> usize {
    let (n, d) = (scheme.n(), scheme.d());
    let mut total = 0;
    for i in 0..=d {
        for j in 0..=d {
            let f1 = i.min(j).min(d - i).min(d - j) + 1;
            let f2 = i.min(j).min(n - d - i).min(n - d - j) + 1;
            total += f1 * f2;
        }
    }
    total
}

/// `N` built from a caller-supplied intersection-matrix source; see
/// [`n_algebra`].
pub fn n_algebra_from(
    ctx: &BasePointContext,
    h: &mut dyn FnMut(usize, usize, usize, usize) -> RationalMatrix,
) -> Result<AlgebraBasis> {
    let (n, d) = (ctx.scheme.n(), ctx.scheme.d());
    if n != 2 * d {
        return Err(Error::InvalidParameters(format!(
            "N is defined only at n = 2d, got J({}, {})",
            n, d
        )));
    }
    let size = ctx.scheme.size();
    let mut basis = AlgebraBasis::new(size, size);
    for i in 0..=d {
        for j in 0..=d {
            let feasible = johnson::feasible_r_set(d, i, j);
            for (gi, &g) in feasible.iter().enumerate() {
                for &hv in &feasible[gi..] {
                    // Symmetrized pair of tensor terms for g <= hv; feasibility
                    // of g gives g >= i + j - d, so the shifted index is sound.
                    let first = h(d, d - i, d - j, d + g - i - j).kronecker(&h(d, i, j, hv));
                    let second = h(d, d - i, d - j, d + hv - i - j).kronecker(&h(d, i, j, g));
                    basis.insert(&ctx.embed(&first.add(&second)?, i, j)?)?;
                }
            }
        }
    }
    Ok(basis)
}

/// The symmetrized algebra `N ⊆ M(2d, d)`, spanned blockwise by
/// `H^{d-i-j+g} ⊗ H^h + H^{d-i-j+h} ⊗ H^g` over feasible pairs `g <= h`.
/// Defined only at `n = 2d`.
pub fn n_algebra(ctx: &BasePointContext) -> Result<AlgebraBasis> {
    n_algebra_from(ctx, &mut intersection_matrix)
}

/// `dim N` by pair counting over the feasible ranges.
pub fn n_dimension(scheme: SchemeSpec) -> usize {
    let d = scheme.d();
    let mut total = 0;
    for i in 0..=d {
        for j in 0..=d {
            let c = johnson::feasible_r_set(d, i, j).len();
            total += c * (c + 1) / 2;
        }
    }
    total
}

/// `l_{v,k,j} = v - k + p_1^{(v,k)}(j)`.
pub fn l_factor(v: usize, k: usize, j: usize) -> i64 {
    (v - k) as i64 + johnson::eigenvalue_p1(v, k, j)
}

/// `p_{v,k,j} = k + p_1^{(v,k)}(j)`.
pub fn p_factor(v: usize, k: usize, j: usize) -> i64 {
    k as i64 + johnson::eigenvalue_p1(v, k, j)
}

/// A lift or pullback coefficient together with the validity of its target:
/// the image is the zero matrix whenever the target idempotent index is out
/// of range, regardless of the scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapCoefficient {
    pub coefficient: i64,
    pub target_defined: bool,
}

impl MapCoefficient {
    /// The scalar actually realized by the map: 0 on undefined targets.
    pub fn effective(&self) -> i64 {
        if self.target_defined {
            self.coefficient
        } else {
            0
        }
    }
}

/// Coefficient of the lift map on `E_r^{(d,d-i)} ⊗ E_s^{(n-d,i)}`:
/// `p_{d,d-i,r} * l_{n-d,i,s}`, targeting level i+1.
pub fn lift_coefficient(n: usize, d: usize, i: usize, r: usize, s: usize) -> MapCoefficient {
    assert!(i < d, "lift leaves the sphere range");
    MapCoefficient {
        coefficient: p_factor(d, d - i, r) * l_factor(n - d, i, s),
        target_defined: r <= (d - i - 1).min(i + 1) && s <= (i + 1).min(n - d - i - 1),
    }
}

/// Coefficient of the pullback map on `E_r^{(d,d-i)} ⊗ E_s^{(n-d,i)}`:
/// `l_{d,d-i,r} * p_{n-d,i,s}`, targeting level i-1.
pub fn pullback_coefficient(n: usize, d: usize, i: usize, r: usize, s: usize) -> MapCoefficient {
    assert!(i > 0 && i <= d, "pullback leaves the sphere range");
    MapCoefficient {
        coefficient: l_factor(d, d - i, r) * p_factor(n - d, i, s),
        target_defined: r <= (d - i + 1).min(i - 1) && s <= (i - 1).min(n - d - i + 1),
    }
}

/// Conjugate an `Ω_i x Ω_i` block element down the bridge to level i+1.
pub fn lift_map(ctx: &BasePointContext, i: usize, m: &RationalMatrix) -> Result<RationalMatrix> {
    let up = ctx.bridge(i);
    up.transpose().multiply(m)?.multiply(&up)
}

/// Conjugate an `Ω_i x Ω_i` block element up the bridge to level i-1.
pub fn pullback_map(
    ctx: &BasePointContext,
    i: usize,
    m: &RationalMatrix,
) -> Result<RationalMatrix> {
    let up = ctx.bridge(i - 1);
    up.multiply(m)?.multiply(&up.transpose())
}

/// `E_r^{(d,d-i)} ⊗ E_s^{(n-d,i)}` as an `Ω_i x Ω_i` block, zero when either
/// index is out of range. With `symmetrized` the `E_r ⊗ E_s + E_s ⊗ E_r`
/// form used at `n = 2d`.
pub fn idempotent_pair(
    ctx: &BasePointContext,
    i: usize,
    r: usize,
    s: usize,
    symmetrized: bool,
) -> RationalMatrix {
    let size = ctx.omega_sizes[i];
    let plain = match (ctx.left_idempotent(i, r), ctx.right_idempotent(i, s)) {
        (Some(er), Some(es)) => er.kronecker(es),
        _ => RationalMatrix::zero(size, size),
    };
    if !symmetrized {
        return plain;
    }
    let swapped = match (ctx.left_idempotent(i, s), ctx.right_idempotent(i, r)) {
        (Some(es), Some(er)) => es.kronecker(er),
        _ => RationalMatrix::zero(size, size),
    };
    plain.add(&swapped).expect("same block shape")
}

/// One realized `rs`-matrix: the `Ω_i x Ω_j` block before embedding.
#[derive(Clone, Debug)]
pub struct RSTriple {
    pub r: usize,
    pub s: usize,
    pub i: usize,
    pub j: usize,
    pub matrix: RationalMatrix,
}

impl RSTriple {
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero_matrix()
    }
}

/// The block matrix `rs_T_{ij}`. For `2d < n` this is
/// `(E_r H_{d-i,d-j}(d)) ⊗ (E_s H_{i,j}(n-d))`; at `n = 2d` the symmetrized
/// two-term form. Out-of-range indices produce the zero triple.
pub fn rs_matrix(ctx: &BasePointContext, r: usize, s: usize, i: usize, j: usize) -> RSTriple {
    let (n, d) = (ctx.scheme.n(), ctx.scheme.d());
    let rows = ctx.omega_sizes[i];
    let cols = ctx.omega_sizes[j];
    let hl = h_matrix(d, d - i, d - j);
    let hr = h_matrix(n - d, i, j);
    let leg = |left: Option<&RationalMatrix>, right: Option<&RationalMatrix>| match (left, right) {
        (Some(el), Some(er)) => Some(
            el.multiply(&hl)
                .expect("leg shapes conform")
                .kronecker(&er.multiply(&hr).expect("leg shapes conform")),
        ),
        _ => None,
    };
    let matrix = if ctx.scheme.regime() == Regime::Boundary {
        let first = leg(ctx.left_idempotent(i, r), ctx.right_idempotent(i, s));
        let second = leg(ctx.left_idempotent(i, s), ctx.right_idempotent(i, r));
        match (first, second) {
            (Some(a), Some(b)) => a.add(&b).expect("same block shape"),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => RationalMatrix::zero(rows, cols),
        }
    } else {
        leg(ctx.left_idempotent(i, r), ctx.right_idempotent(i, s))
            .unwrap_or_else(|| RationalMatrix::zero(rows, cols))
    };
    RSTriple { r, s, i, j, matrix }
}

/// Solve `p = c * base` for the scalar c, failing loudly when the matrices
/// are not exactly proportional.
pub fn proportionality_scalar(p: &RationalMatrix, base: &RationalMatrix) -> Result<Rational> {
    let c = match base.iter_entries().next() {
        None => {
            if p.is_zero_matrix() {
                return Ok(Rational::ZERO);
            }
            return Err(Error::Verification(
                "nonzero matrix against a zero base".into(),
            ));
        }
        Some((r0, c0, v0)) => p.get(r0, c0) / v0,
    };
    if *p == base.scaled(&c) {
        Ok(c)
    } else {
        Err(Error::Verification("matrices are not proportional".into()))
    }
}

/// First live sphere `e_{r,s}` and live-range length `d_{r,s}` for one
/// Wedderburn block; the block size is `d_{r,s} + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockProfile {
    pub r: usize,
    pub s: usize,
    /// `e_{r,s} = max(r, s)`.
    pub e: usize,
    /// `d_{r,s}`, with `e + d = min(d-r, n-d-s)` (or `min(d-r, d-s)` at
    /// `n = 2d`).
    pub d: usize,
}

impl BlockProfile {
    pub fn block_size(&self) -> usize {
        self.d + 1
    }

    pub fn live_range(&self) -> RangeInclusive<usize> {
        self.e..=self.e + self.d
    }
}

/// Live range of the pair (r, s): the spheres i where `E_r ⊗ E_s` survives.
/// `None` when empty. The same interval governs both regimes since
/// `n - d = d` at the boundary.
pub fn live_range(scheme: SchemeSpec, r: usize, s: usize) -> Option<RangeInclusive<usize>> {
    let (n, d) = (scheme.n(), scheme.d());
    let e = r.max(s);
    let end = (d as i64 - r as i64).min((n - d) as i64 - s as i64);
    if end < e as i64 {
        None
    } else {
        Some(e..=end as usize)
    }
}

/// All block profiles in the decomposition index range, degenerate pairs
/// omitted. For `n = 2d` the range is `r <= s <= d/2` (the pair is
/// unordered there); otherwise `r <= d/2`, `s <= (n-d)/2`.
pub fn block_profiles(scheme: SchemeSpec) -> Vec<BlockProfile> {
    let (n, d) = (scheme.n(), scheme.d());
    let mut blocks = Vec::new();
    let push = |blocks: &mut Vec<BlockProfile>, r: usize, s: usize| {
        if let Some(range) = live_range(scheme, r, s) {
            blocks.push(BlockProfile {
                r,
                s,
                e: *range.start(),
                d: range.end() - range.start(),
            });
        }
    };
    if scheme.regime() == Regime::Boundary {
        for s in 0..=d / 2 {
            for r in 0..=s {
                push(&mut blocks, r, s);
            }
        }
    } else {
        for r in 0..=d / 2 {
            for s in 0..=(n - d) / 2 {
                push(&mut blocks, r, s);
            }
        }
    }
    blocks
}

/// The two n-coefficients attached to `rs_T_{ij}` — the factor tied to the
/// r-leg and the one tied to the s-leg. Matrix-derived: each is the exact
/// eigenvalue of the corresponding `H H^T` operator on its idempotent, which
/// is the ground truth the displayed closed-form sums are checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCoefficients {
    pub left: Rational,
    pub right: Rational,
}

impl NCoefficients {
    pub fn product(&self) -> Rational {
        &self.left * &self.right
    }
}

/// Eigenvalue of `H_{k,h}(v) H_{h,k}(v)` on a given idempotent of `J(v, k)`.
fn hh_eigenvalue(v: usize, k: usize, h: usize, idem: &RationalMatrix) -> Result<Rational> {
    let hm = h_matrix(v, k, h);
    let op = hm.multiply(&hm.transpose())?;
    proportionality_scalar(&op.multiply(idem)?, idem)
}

/// Matrix-derived `(n^r_{ij}, n^{ij}_s)` in the open range, or
/// `(n^{ij}_r, n^{ij}_s)` at the boundary. Errors when (i, j) leaves the
/// live range of (r, s); both factors are certified positive there.
pub fn n_coefficients(
    ctx: &BasePointContext,
    r: usize,
    s: usize,
    i: usize,
    j: usize,
) -> Result<NCoefficients> {
    let (n, d) = (ctx.scheme.n(), ctx.scheme.d());
    let range = live_range(ctx.scheme, r, s).ok_or_else(|| {
        Error::InvalidParameters(format!("pair ({}, {}) has an empty live range", r, s))
    })?;
    if !range.contains(&i) || !range.contains(&j) {
        return Err(Error::InvalidParameters(format!(
            "({}, {}) outside the live range {:?} of ({}, {})",
            i, j, range, r, s
        )));
    }
    let missing = || Error::InvalidParameters("idempotent index out of range".into());
    let left = if ctx.scheme.regime() == Regime::Boundary {
        // Both legs see the same spectrum at n = 2d; derive the r-factor on
        // the complement leg and certify the x-side agrees.
        let from_right = hh_eigenvalue(d, i, j, ctx.right_idempotent(i, r).ok_or_else(missing)?)?;
        let from_left = hh_eigenvalue(
            d,
            d - i,
            d - j,
            ctx.left_idempotent(i, r).ok_or_else(missing)?,
        )?;
        if from_right != from_left {
            return Err(Error::Verification(
                "complementary legs disagree on the n-coefficient".into(),
            ));
        }
        from_right
    } else {
        hh_eigenvalue(
            d,
            d - i,
            d - j,
            ctx.left_idempotent(i, r).ok_or_else(missing)?,
        )?
    };
    let right = hh_eigenvalue(n - d, i, j, ctx.right_idempotent(i, s).ok_or_else(missing)?)?;
    if !left.is_positive() || !right.is_positive() {
        return Err(Error::Verification(format!(
            "n-coefficients must be positive on the live range, got ({}, {})",
            left, right
        )));
    }
    Ok(NCoefficients { left, right })
}

/// Eigenvalue `p_m^{(v,k)}(r)`, matrix-derived: the scalar by which `A_m`
/// acts on the r-th primitive idempotent.
pub fn general_eigenvalue(v: usize, k: usize, m: usize, r: usize) -> Result<Rational> {
    let idems = primitive_idempotents(v, k);
    let idem = idems
        .get(r)
        .ok_or_else(|| Error::InvalidParameters(format!("idempotent index {} out of range", r)))?;
    let am = johnson::adjacency_matrix(v, k, m)?;
    proportionality_scalar(&am.multiply(idem)?, idem)
}

/// The displayed closed-form sums for the n-coefficients, evaluated verbatim
/// with matrix-derived `p_m` values. Cross-check targets only: the `i < j`
/// branch of the r-side open-range sum disagrees with the matrix-derived
/// ground truth (every binomial in it vanishes), so callers compare instead
/// of trusting.
pub fn n_coefficients_closed_form(
    ctx: &BasePointContext,
    r: usize,
    s: usize,
    i: usize,
    j: usize,
) -> Result<NCoefficients> {
    let (n, d) = (ctx.scheme.n(), ctx.scheme.d());
    let boundary = ctx.scheme.regime() == Regime::Boundary;
    let span = (i.max(j) - i.min(j)) as i64;
    let sum = |v: usize, k: usize, idx: usize, top: &dyn Fn(i64) -> u128| -> Result<Rational> {
        let mut total = Rational::ZERO;
        for m in 0..=span {
            let coeff = Rational::from(top(m));
            // A_m = 0 beyond the subset size, so p_m vanishes there.
            if coeff.is_zero() || m as usize > k {
                continue;
            }
            let pm = general_eigenvalue(v, k, m as usize, idx)?;
            total += &(&coeff * &pm);
        }
        Ok(total)
    };
    let (di, dj, ii, ji, nd) = (
        d as i64 - i as i64,
        d as i64 - j as i64,
        i as i64,
        j as i64,
        (n - d) as i64,
    );
    let left = if boundary {
        // n^{ij}_r on the J(d, i) leg.
        if i <= j {
            sum(d, i, r, &|m| binomial_signed(di - m, ji - ii - m))?
        } else {
            sum(d, i, r, &|m| binomial_signed(ii - m, ji))?
        }
    } else {
        // n^r_{ij} on the J(d, d-i) leg, exactly as displayed.
        if i <= j {
            sum(d, d - i, r, &|m| binomial_signed(dj - m, di))?
        } else {
            sum(d, d - i, r, &|m| binomial_signed(ii - m, ji))?
        }
    };
    let right = if i <= j {
        sum(n - d, i, s, &|m| binomial_signed(nd - ii - m, ji - ii - m))?
    } else {
        sum(n - d, i, s, &|m| binomial_signed(ii - m, ji))?
    };
    Ok(NCoefficients { left, right })
}

/// The structure constant `β_{r,s}(i, j, l)` defined by
/// `rs_T_{ij} rs_T_{jl} = β rs_T_{il}`, solved exactly from the matrices.
/// Proportionality failure or a non-positive solution is a hard verification
/// error; indices must lie in the live range of (r, s).
pub fn structure_constant(
    ctx: &BasePointContext,
    r: usize,
    s: usize,
    i: usize,
    j: usize,
    l: usize,
) -> Result<Rational> {
    let range = live_range(ctx.scheme, r, s).ok_or_else(|| {
        Error::InvalidParameters(format!("pair ({}, {}) has an empty live range", r, s))
    })?;
    for idx in [i, j, l] {
        if !range.contains(&idx) {
            return Err(Error::InvalidParameters(format!(
                "index {} outside the live range {:?} of ({}, {})",
                idx, range, r, s
            )));
        }
    }
    let tij = rs_matrix(ctx, r, s, i, j);
    let tjl = rs_matrix(ctx, r, s, j, l);
    let til = rs_matrix(ctx, r, s, i, l);
    let product = tij.matrix.multiply(&tjl.matrix)?;
    let beta = proportionality_scalar(&product, &til.matrix)?;
    if !beta.is_positive() {
        return Err(Error::Verification(format!(
            "structure constant must be positive on the live range, got {}",
            beta
        )));
    }
    Ok(beta)
}

/// Span of the ideal `rs_T = <L(rs_T_{ij})>` inside the full operator space.
pub fn rs_span(ctx: &BasePointContext, r: usize, s: usize) -> Result<AlgebraBasis> {
    let d = ctx.scheme.d();
    let size = ctx.scheme.size();
    let mut basis = AlgebraBasis::new(size, size);
    for i in 0..=d {
        for j in 0..=d {
            let t = rs_matrix(ctx, r, s, i, j);
            if !t.is_zero() {
                basis.insert(&ctx.embed(&t.matrix, i, j)?)?;
            }
        }
    }
    Ok(basis)
}

/// The Wedderburn decomposition record: block profiles, the dimension they
/// predict, and the closure oracle's answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub scheme: SchemeSpec,
    pub regime: Regime,
    pub base_point: Vec<usize>,
    pub blocks: Vec<BlockProfile>,
    pub dim_formula: usize,
    pub dim_closure: usize,
    pub matches: bool,
}

/// Decompose `T` into full matrix blocks, running the closure oracle for the
/// dimension cross-check.
pub fn decompose(ctx: &BasePointContext) -> Result<Decomposition> {
    let t = terwilliger_algebra(ctx)?;
    Ok(decompose_with_closure(ctx, &t))
}

/// Decomposition against an already-computed closure basis.
pub fn decompose_with_closure(ctx: &BasePointContext, t: &AlgebraBasis) -> Decomposition {
    let blocks = block_profiles(ctx.scheme);
    let dim_formula = blocks.iter().map(|b| b.block_size() * b.block_size()).sum();
    let dim_closure = t.dimension();
    Decomposition {
        scheme: ctx.scheme,
        regime: ctx.scheme.regime(),
        base_point: ctx.base_point.elements().to_vec(),
        blocks,
        dim_formula,
        dim_closure,
        matches: dim_formula == dim_closure,
    }
}

/// Cache of per-scheme contexts and closure bases, shared across suites so
/// the oracle runs once per (n, d, base point).
#[derive(Default)]
pub struct SchemeCache {
    ctxs: HashMap<(usize, usize, Vec<usize>), Rc<BasePointContext>>,
    closures: HashMap<(usize, usize, Vec<usize>), Rc<AlgebraBasis>>,
}

impl SchemeCache {
    pub fn new() -> SchemeCache {
        SchemeCache::default()
    }

    fn key(scheme: SchemeSpec, base_point: Option<&[usize]>) -> (usize, usize, Vec<usize>) {
        let bp = base_point
            .map(|b| b.to_vec())
            .unwrap_or_else(|| (1..=scheme.d()).collect());
        (scheme.n(), scheme.d(), bp)
    }

    pub fn context(
        &mut self,
        scheme: SchemeSpec,
        base_point: Option<&[usize]>,
    ) -> Result<Rc<BasePointContext>> {
        let key = Self::key(scheme, base_point);
        if let Some(ctx) = self.ctxs.get(&key) {
            return Ok(ctx.clone());
        }
        let x = KSubset::new(scheme.n(), key.2.clone())?;
        let ctx = Rc::new(BasePointContext::with_base_point(scheme, x)?);
        self.ctxs.insert(key, ctx.clone());
        Ok(ctx)
    }

    pub fn closure(
        &mut self,
        scheme: SchemeSpec,
        base_point: Option<&[usize]>,
    ) -> Result<Rc<AlgebraBasis>> {
        let key = Self::key(scheme, base_point);
        if let Some(t) = self.closures.get(&key) {
            return Ok(t.clone());
        }
        let ctx = self.context(scheme, base_point)?;
        let t = Rc::new(terwilliger_algebra(&ctx)?);
        self.closures.insert(key, t.clone());
        Ok(t)
    }
}
