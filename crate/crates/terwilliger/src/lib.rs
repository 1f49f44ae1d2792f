//! Exact construction and verification of Terwilliger algebras of Johnson
//! schemes.
//!
//! The Johnson scheme `J(n, d)` lives on the d-subsets of `{1, …, n}`. Fixing
//! a base point turns its Bose–Mesner algebra into the larger Terwilliger
//! (subconstituent) algebra `T`, generated by the adjacency matrices together
//! with the diagonal projectors onto the spheres around the base point. This
//! crate builds `T` over the rationals by brute-force multiplicative closure,
//! builds the two structured candidate algebras that describe it — `M(n, d)`
//! for `2d < n` and `N` for `n = 2d` — checks that the spans coincide, and
//! emits the Wedderburn decomposition of `T` into full matrix blocks, with
//! every supporting identity certified by exact arithmetic.
//!
//! Entry points:
//!
//! * [`johnson`] — intersection matrices `H^r_{i,j}(v)`, adjacency matrices,
//!   eigenvalues and primitive idempotents of `J(v, k)`.
//! * [`algebra`] — the base-point context, the `T` / `M` / `N` algebras,
//!   structure constants and [`algebra::decompose`].
//! * [`suites`] — named verification suites, each certifying one identity
//!   over an exhaustive parameter sweep.
//! * [`cli`] — the `scheme` / `decompose` / `verify` command line.
//!
//! The `examples/` directory shows one runnable program per capability.

pub mod algebra;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod johnson;
pub mod matrix;
pub mod rational;
pub mod report;
pub mod span;
pub mod suites;

pub use error::{Error, Result};
pub use matrix::{block_embed, RationalMatrix};
pub use rational::Rational;
pub use span::{close_under_multiplication, saturate_span, AlgebraBasis};
