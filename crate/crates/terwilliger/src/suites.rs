//! Named verification suites.
//!
//! Each suite certifies one identity over an exhaustive, deterministic
//! parameter sweep and reports exact pass/fail counts with a localized first
//! counterexample on failure. Suites draw their intersection matrices from a
//! [`Fixture`], so a deliberately flipped entry demonstrates that every suite
//! can actually fail.

use std::cell::RefCell;
use std::collections::HashMap;
use std::path::PathBuf;
use std::rc::Rc;
use std::time::Instant;

use crate::algebra::{
    self, idempotent_pair, lift_coefficient, pullback_coefficient, rs_matrix, BasePointContext,
    SchemeCache,
};
use crate::combinatorics::binomial_signed;
use crate::error::{Error, Result};
use crate::johnson::{
    self, eigenvalue_p1, feasible_r_set, intersection_matrix, Regime, SchemeSpec,
};
use crate::matrix::RationalMatrix;
use crate::rational::Rational;
use crate::report::{Counterexample, ResidualEntry, SuiteReport};
use crate::span::{saturate_span, AlgebraBasis};

/// Registered suite names, in registry order.
pub const SUITE_NAMES: &[&str] = &[
    "lemma21",
    "lemma22",
    "lemma23-blocks",
    "lemma31-span",
    "lemma34-containment",
    "lemma35-liftpull",
    "cor36-commute",
    "thm33-N-closed",
    "thm42-T-equals-M",
    "eq15-structure",
    "lemma44-support",
    "ttt1-beta-squared",
    "thm46-decomposition",
    "thm51-T-equals-N",
    "eq20-structure",
    "ttt2-beta-squared",
    "thm54-decomposition",
];

/// Scheme parameters the scheme-level suites sweep by default. Sized to
/// finish in minutes on commodity hardware; (6,2) exercises the n >= 3d
/// regime as a regression guard.
pub const DEFAULT_SCHEMES: &[(usize, usize)] = &[
    (4, 2),
    (5, 2),
    (6, 3),
    (7, 3),
    (6, 2),
    (8, 3),
    (8, 4),
    (9, 4),
];

/// Parameter ranges for one suite run.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Upper bound for the H-identity sweeps (lemma21/22/31).
    pub v_max: usize,
    /// Scheme parameters for the scheme-level suites.
    pub schemes: Vec<(usize, usize)>,
    /// Whether `schemes` was chosen explicitly: an explicit scheme a suite
    /// cannot run on is an infeasible-sweep error instead of a silent skip.
    pub schemes_explicit: bool,
    /// Base point override; `None` means `{1, …, d}`.
    pub base_point: Option<Vec<usize>>,
    /// When set, the full residual matrix of the first counterexample is
    /// written here in the exchange format.
    pub dump_dir: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            v_max: 7,
            schemes: DEFAULT_SCHEMES.to_vec(),
            schemes_explicit: false,
            base_point: None,
            dump_dir: None,
        }
    }
}

/// A single toggled entry of one intersection matrix.
#[derive(Clone, Copy, Debug)]
pub struct FlipSpec {
    pub v: usize,
    pub i: usize,
    pub j: usize,
    pub r: usize,
    pub row: usize,
    pub col: usize,
}

/// Key of one intersection matrix: (v, i, j, r).
type HKey = (usize, usize, usize, usize);

/// Source of intersection matrices for the suites: canonical `H^r_{i,j}(v)`
/// with an optional single-entry flip, memoized per key.
#[derive(Default)]
pub struct Fixture {
    flip: Option<FlipSpec>,
    cache: RefCell<HashMap<HKey, Rc<RationalMatrix>>>,
}

impl Fixture {
    pub fn new() -> Fixture {
        Fixture::default()
    }

    pub fn with_flip(flip: FlipSpec) -> Fixture {
        Fixture {
            flip: Some(flip),
            cache: RefCell::new(HashMap::new()),
        }
    }

    /// `H^r_{i,j}(v)`, possibly perturbed.
    pub fn h(&self, v: usize, i: usize, j: usize, r: usize) -> Rc<RationalMatrix> {
        if let Some(m) = self.cache.borrow().get(&(v, i, j, r)) {
            return m.clone();
        }
        let mut m = intersection_matrix(v, i, j, r);
        if let Some(f) = self.flip {
            if (f.v, f.i, f.j, f.r) == (v, i, j, r) {
                let flipped = &Rational::ONE - m.get(f.row, f.col);
                m = m.with_entry(f.row, f.col, flipped);
            }
        }
        let m = Rc::new(m);
        self.cache.borrow_mut().insert((v, i, j, r), m.clone());
        m
    }

    /// The maximal-intersection abbreviation `H_{i,j}(v)`.
    pub fn h_max(&self, v: usize, i: usize, j: usize) -> Rc<RationalMatrix> {
        self.h(v, i, j, i.min(j))
    }
}

/// Runs suites against one sweep, sharing contexts, closures and fixture
/// matrices across runs.
pub struct SuiteSession {
    config: SweepConfig,
    fixture: Fixture,
    cache: SchemeCache,
}

/// Convenience wrapper: run one suite in a fresh session.
pub fn run_suite(name: &str, config: &SweepConfig) -> Result<SuiteReport> {
    SuiteSession::new(config.clone()).run(name)
}

struct Harness {
    suite: &'static str,
    claim: &'static str,
    sweep: String,
    cases: usize,
    passed: usize,
    counterexample: Option<Counterexample>,
    notes: Vec<String>,
    dump_dir: Option<PathBuf>,
    start: Instant,
}

impl Harness {
    fn new(suite: &'static str, claim: &'static str, sweep: String, dump: Option<PathBuf>) -> Self {
        Harness {
            suite,
            claim,
            sweep,
            cases: 0,
            passed: 0,
            counterexample: None,
            notes: Vec::new(),
            dump_dir: dump,
            start: Instant::now(),
        }
    }

    fn fail(&mut self, case: String, detail: String, residual: Option<ResidualEntry>) {
        if self.counterexample.is_none() {
            self.counterexample = Some(Counterexample {
                case,
                detail,
                residual,
            });
        }
    }

    /// Record one exact matrix comparison.
    fn case_eq(&mut self, case: impl Fn() -> String, lhs: &RationalMatrix, rhs: &RationalMatrix) {
        self.cases += 1;
        if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
            self.fail(
                case(),
                format!(
                    "shape mismatch: {}x{} vs {}x{}",
                    lhs.rows(),
                    lhs.cols(),
                    rhs.rows(),
                    rhs.cols()
                ),
                None,
            );
            return;
        }
        let diff = lhs.sub(rhs).expect("shapes match");
        if diff.is_zero_matrix() {
            self.passed += 1;
            return;
        }
        let (mut row, mut col, mut best) = (0usize, 0usize, Rational::ZERO);
        for (r, c, v) in diff.iter_entries() {
            let a = v.abs();
            if a > best {
                best = a;
                row = r;
                col = c;
            }
        }
        let mut detail = "matrices differ".to_string();
        if self.counterexample.is_none() {
            if let Some(dir) = &self.dump_dir {
                let path = dir.join(format!("{}-residual.mtx", self.suite));
                if std::fs::write(&path, diff.to_exchange_string()).is_ok() {
                    detail = format!("matrices differ; residual dumped to {}", path.display());
                }
            }
        }
        let value = diff.get(row, col).to_exchange();
        self.fail(case(), detail, Some(ResidualEntry { row, col, value }));
    }

    /// Record one boolean check.
    fn case_true(&mut self, case: impl Fn() -> String, ok: bool, detail: &str) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.fail(case(), detail.to_string(), None);
        }
    }

    fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    fn finish(self) -> SuiteReport {
        debug_assert!(self.passed <= self.cases);
        debug_assert_eq!(self.counterexample.is_some(), self.passed < self.cases);
        SuiteReport {
            suite: self.suite.to_string(),
            claim: self.claim.to_string(),
            sweep: self.sweep,
            cases_run: self.cases,
            cases_passed: self.passed,
            counterexample: self.counterexample,
            notes: self.notes,
            wall_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

impl SuiteSession {
    pub fn new(config: SweepConfig) -> SuiteSession {
        SuiteSession {
            config,
            fixture: Fixture::new(),
            cache: SchemeCache::new(),
        }
    }

    /// A session whose intersection matrices come from a perturbed fixture.
    pub fn with_fixture(config: SweepConfig, fixture: Fixture) -> SuiteSession {
        SuiteSession {
            config,
            fixture,
            cache: SchemeCache::new(),
        }
    }

    /// Run one registered suite.
    pub fn run(&mut self, name: &str) -> Result<SuiteReport> {
        match name {
            "lemma21" => self.suite_lemma21(),
            "lemma22" => self.suite_lemma22(),
            "lemma23-blocks" => self.suite_lemma23(),
            "lemma31-span" => self.suite_lemma31(),
            "lemma34-containment" => self.suite_lemma34(),
            "lemma35-liftpull" => self.suite_lemma35(),
            "cor36-commute" => self.suite_cor36(),
            "thm33-N-closed" => self.suite_thm33(),
            "thm42-T-equals-M" => self.suite_thm42(),
            "eq15-structure" => self.suite_structure(false),
            "lemma44-support" => self.suite_lemma44(),
            "ttt1-beta-squared" => self.suite_beta_squared(false),
            "thm46-decomposition" => self.suite_decomposition(false),
            "thm51-T-equals-N" => self.suite_thm51(),
            "eq20-structure" => self.suite_structure(true),
            "ttt2-beta-squared" => self.suite_beta_squared(true),
            "thm54-decomposition" => self.suite_decomposition(true),
            other => Err(Error::UnknownSuite(other.to_string())),
        }
    }

    /// Run the whole registry in order.
    pub fn run_all(&mut self) -> Result<Vec<SuiteReport>> {
        SUITE_NAMES.iter().map(|name| self.run(name)).collect()
    }

    fn schemes(&self, filter: impl Fn(Regime) -> bool, what: &str) -> Result<Vec<SchemeSpec>> {
        let mut out = Vec::new();
        for &(n, d) in &self.config.schemes {
            let spec = SchemeSpec::new(n, d)?;
            if filter(spec.regime()) {
                out.push(spec);
            } else if self.config.schemes_explicit {
                return Err(Error::InfeasibleSweep(format!(
                    "J({}, {}) is outside the {} range of this suite",
                    n, d, what
                )));
            }
        }
        if out.is_empty() {
            return Err(Error::InfeasibleSweep(format!(
                "no scheme in the sweep lies in the {} range of this suite",
                what
            )));
        }
        Ok(out)
    }

    fn context(&mut self, spec: SchemeSpec) -> Result<Rc<BasePointContext>> {
        self.cache.context(spec, self.config.base_point.as_deref())
    }

    fn closure(&mut self, spec: SchemeSpec) -> Result<Rc<AlgebraBasis>> {
        self.cache.closure(spec, self.config.base_point.as_deref())
    }

    fn scheme_sweep_desc(&self, schemes: &[SchemeSpec]) -> String {
        let list: Vec<String> = schemes
            .iter()
            .map(|s| format!("({},{})", s.n(), s.d()))
            .collect();
        format!("(n,d) in {{{}}}", list.join(", "))
    }

    fn suite_lemma21(&mut self) -> Result<SuiteReport> {
        let v_max = self.config.v_max;
        let mut h = Harness::new(
            "lemma21",
            "H^l_{i,j}(v) H^s_{j,k}(v) = sum_g [sum_h C(g,h) C(i-g,l-h) C(k-g,s-h) C(v+g-i-k,j+h-l-s)] H^g_{i,k}(v)",
            format!("all 0 <= l <= min(i,j), s <= min(j,k), i,j,k <= v <= {}", v_max),
            self.config.dump_dir.clone(),
        );
        for v in 0..=v_max {
            for i in 0..=v {
                for j in 0..=v {
                    for k in 0..=v {
                        for l in 0..=i.min(j) {
                            for s in 0..=j.min(k) {
                                let lhs = self
                                    .fixture
                                    .h(v, i, j, l)
                                    .multiply(&self.fixture.h(v, j, k, s))?;
                                let coeffs = johnson::triple_product_coefficients(v, i, j, k, l, s);
                                let mut rhs = RationalMatrix::zero(lhs.rows(), lhs.cols());
                                for (g, c) in coeffs.iter().enumerate() {
                                    if !c.is_zero() {
                                        rhs = rhs.add(&self.fixture.h(v, i, k, g).scaled(c))?;
                                    }
                                }
                                h.case_eq(
                                    || format!("v={} i={} j={} k={} l={} s={}", v, i, j, k, l, s),
                                    &lhs,
                                    &rhs,
                                );
                            }
                        }
                    }
                }
            }
        }
        Ok(h.finish())
    }

    fn suite_lemma22(&mut self) -> Result<SuiteReport> {
        let v_max = self.config.v_max;
        let mut h = Harness::new(
            "lemma22",
            "the three product laws for maximal-intersection matrices H_{i,j} H_{j,l}",
            format!("parts (i)-(iii), all valid (i,j,l), v <= {}", v_max),
            self.config.dump_dir.clone(),
        );
        for v in 0..=v_max {
            // (i) i <= j <= l: a single binomial multiple.
            for i in 0..=v {
                for j in i..=v {
                    for l in j..=v {
                        let lhs = self
                            .fixture
                            .h_max(v, i, j)
                            .multiply(&self.fixture.h_max(v, j, l))?;
                        let c = Rational::from(binomial_signed((l - i) as i64, (l - j) as i64));
                        let rhs = self.fixture.h_max(v, i, l).scaled(&c);
                        h.case_eq(
                            || format!("part=i v={} i={} j={} l={}", v, i, j, l),
                            &lhs,
                            &rhs,
                        );
                    }
                }
            }
            // (ii) j above both: sum over shrinking top intersections.
            for i in 0..=v {
                for l in 0..=v {
                    for j in i.max(l)..=v {
                        let lhs = self
                            .fixture
                            .h_max(v, i, j)
                            .multiply(&self.fixture.h_max(v, j, l))?;
                        let mut rhs = RationalMatrix::zero(lhs.rows(), lhs.cols());
                        let top = i.max(l);
                        for m in 0..=(j - top) {
                            let c = Rational::from(binomial_signed(
                                v as i64 - top as i64 - m as i64,
                                j as i64 - top as i64 - m as i64,
                            ));
                            // Superscript min(i,l) - m; negative means the
                            // term is the zero matrix.
                            let sup = i.min(l) as i64 - m as i64;
                            if c.is_zero() || sup < 0 {
                                continue;
                            }
                            rhs = rhs.add(&self.fixture.h(v, i, l, sup as usize).scaled(&c))?;
                        }
                        h.case_eq(
                            || format!("part=ii v={} i={} j={} l={}", v, i, j, l),
                            &lhs,
                            &rhs,
                        );
                    }
                }
            }
            // (iii) j below both.
            for i in 0..=v {
                for l in 0..=v {
                    for j in 0..=i.min(l) {
                        let lhs = self
                            .fixture
                            .h_max(v, i, j)
                            .multiply(&self.fixture.h_max(v, j, l))?;
                        let mut rhs = RationalMatrix::zero(lhs.rows(), lhs.cols());
                        for m in 0..=(i.min(l) - j) {
                            let c = Rational::from(binomial_signed(
                                i.min(l) as i64 - m as i64,
                                j as i64,
                            ));
                            let sup = i.min(l) as i64 - m as i64;
                            if c.is_zero() || sup < 0 {
                                continue;
                            }
                            rhs = rhs.add(&self.fixture.h(v, i, l, sup as usize).scaled(&c))?;
                        }
                        h.case_eq(
                            || format!("part=iii v={} i={} j={} l={}", v, i, j, l),
                            &lhs,
                            &rhs,
                        );
                    }
                }
            }
        }
        Ok(h.finish())
    }

    fn suite_lemma23(&mut self) -> Result<SuiteReport> {
        let schemes = self.schemes(|_| true, "n >= 2d")?;
        let mut h = Harness::new(
            "lemma23-blocks",
            "sphere blocks of A: diagonal I⊗A + A⊗I, superdiagonal H⊗H, zero beyond; A_d diagonal is the disjointness pattern",
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            let part = ctx.omega_sizes().to_vec();
            let a = ctx.adjacency(1);
            for i in 0..=d {
                let a1_left = if d - i == 0 {
                    RationalMatrix::zero(1, 1)
                } else {
                    self.fixture.h(d, d - i, d - i, d - i - 1).as_ref().clone()
                };
                let a1_right = if i == 0 {
                    RationalMatrix::zero(1, 1)
                } else {
                    self.fixture.h(n - d, i, i, i - 1).as_ref().clone()
                };
                let il = RationalMatrix::identity(a1_left.rows());
                let ir = RationalMatrix::identity(a1_right.rows());
                let expected = il.kronecker(&a1_right).add(&a1_left.kronecker(&ir))?;
                h.case_eq(
                    || format!("J({},{}) diagonal block i={}", n, d, i),
                    &a.block(i, i, &part),
                    &expected,
                );
                if i < d {
                    let bridge = self
                        .fixture
                        .h_max(d, d - i, d - i - 1)
                        .kronecker(&self.fixture.h_max(n - d, i, i + 1));
                    h.case_eq(
                        || format!("J({},{}) superdiagonal block i={}", n, d, i),
                        &a.block(i, i + 1, &part),
                        &bridge,
                    );
                }
                for j in i + 2..=d {
                    h.case_true(
                        || format!("J({},{}) far block ({},{})", n, d, i, j),
                        a.block(i, j, &part).is_zero_matrix(),
                        "block two or more spheres away is nonzero",
                    );
                }
                // A_d diagonal: disjointness on both legs.
                let expected_d = self
                    .fixture
                    .h(d, d - i, d - i, 0)
                    .kronecker(&self.fixture.h(n - d, i, i, 0));
                h.case_eq(
                    || format!("J({},{}) top-class diagonal block i={}", n, d, i),
                    &ctx.adjacency(d).block(i, i, &part),
                    &expected_d,
                );
            }
        }
        Ok(h.finish())
    }

    fn suite_lemma31(&mut self) -> Result<SuiteReport> {
        let v_max = self.config.v_max;
        let mut h = Harness::new(
            "lemma31-span",
            "span(B^(v,k) H_{k,h}) = span(H_{k,h} B^(v,h)) = span{H^r_{k,h} : r feasible}",
            format!("all k, h <= v <= {}", v_max),
            self.config.dump_dir.clone(),
        );
        for v in 0..=v_max {
            for k in 0..=v {
                for hh in 0..=v {
                    let hkh = self.fixture.h_max(v, k, hh);
                    let feasible = feasible_r_set(v, k, hh);
                    let target = {
                        let mats: Vec<RationalMatrix> = feasible
                            .iter()
                            .map(|&r| self.fixture.h(v, k, hh, r).as_ref().clone())
                            .collect();
                        crate::span::span_of(hkh.rows(), hkh.cols(), &mats)?
                    };
                    let left = {
                        let mats: Vec<RationalMatrix> = (0..=k.min(v - k))
                            .map(|m| {
                                self.fixture
                                    .h(v, k, k, k - m)
                                    .multiply(&hkh)
                                    .expect("shapes conform")
                            })
                            .collect();
                        crate::span::span_of(hkh.rows(), hkh.cols(), &mats)?
                    };
                    let right = {
                        let mats: Vec<RationalMatrix> = (0..=hh.min(v - hh))
                            .map(|m| {
                                hkh.multiply(&self.fixture.h(v, hh, hh, hh - m))
                                    .expect("shapes conform")
                            })
                            .collect();
                        crate::span::span_of(hkh.rows(), hkh.cols(), &mats)?
                    };
                    h.case_true(
                        || format!("v={} k={} h={} left span", v, k, hh),
                        left == target,
                        "B^(v,k) H_{k,h} spans something other than the feasible H^r",
                    );
                    h.case_true(
                        || format!("v={} k={} h={} right span", v, k, hh),
                        right == target,
                        "H_{k,h} B^(v,h) spans something other than the feasible H^r",
                    );
                    h.case_true(
                        || format!("v={} k={} h={} dimension", v, k, hh),
                        target.dimension() == feasible.len(),
                        "feasible H^r are not independent",
                    );
                }
            }
        }
        Ok(h.finish())
    }

    fn suite_lemma34(&mut self) -> Result<SuiteReport> {
        let schemes = self.schemes(|_| true, "n >= 2d")?;
        let mut h = Harness::new(
            "lemma34-containment",
            "T ⊆ M(n,d); at n = 2d additionally T ⊆ N, with the averaged idempotent expansion of the diagonal blocks of A",
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            let t = self.closure(spec)?;
            let fixture = &self.fixture;
            let m = algebra::m_algebra_from(&ctx, &mut |v, i, j, r| {
                fixture.h(v, i, j, r).as_ref().clone()
            })?;
            for (idx, elem) in t.elements().enumerate() {
                h.case_true(
                    || format!("J({},{}) T basis element {} in M", n, d, idx),
                    m.contains(&elem).unwrap_or(false),
                    "closure element escapes M",
                );
            }
            if spec.regime() == Regime::Boundary {
                let nb = algebra::n_algebra_from(&ctx, &mut |v, i, j, r| {
                    fixture.h(v, i, j, r).as_ref().clone()
                })?;
                for (idx, elem) in t.elements().enumerate() {
                    h.case_true(
                        || format!("J({},{}) T basis element {} in N", n, d, idx),
                        nb.contains(&elem).unwrap_or(false),
                        "closure element escapes N",
                    );
                }
                // A on Ω_i x Ω_i as the half-sum over symmetrized idempotent
                // pairs with coefficients p1(r) + p1(s).
                let part = ctx.omega_sizes().to_vec();
                for i in 0..=d {
                    let cap = i.min(d - i);
                    let mut expected = RationalMatrix::zero(part[i], part[i]);
                    for r in 0..=cap {
                        for s in 0..=cap {
                            let coeff =
                                Rational::new(eigenvalue_p1(d, i, r) + eigenvalue_p1(d, i, s), 2);
                            let pair = idempotent_pair(&ctx, i, r, s, true).scaled(&coeff);
                            expected = expected.add(&pair)?;
                        }
                    }
                    h.case_eq(
                        || format!("J({},{}) averaged expansion at sphere {}", n, d, i),
                        &ctx.adjacency(1).block(i, i, &part),
                        &expected,
                    );
                }
            }
        }
        Ok(h.finish())
    }

    fn suite_lemma35(&mut self) -> Result<SuiteReport> {
        let schemes = self.schemes(|_| true, "n >= 2d")?;
        let mut h = Harness::new(
            "lemma35-liftpull",
            "bridge conjugation scales idempotent pairs by p_{d,d-i,r} l_{n-d,i,s} (lift) and l_{d,d-i,r} p_{n-d,i,s} (pullback), vanishing exactly on out-of-range targets",
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            for i in 0..=d {
                let rmax = (d - i).min(i);
                let smax = i.min(n - d - i);
                for r in 0..=rmax {
                    for s in 0..=smax {
                        let src = idempotent_pair(&ctx, i, r, s, false);
                        if i < d {
                            let bridge = self
                                .fixture
                                .h_max(d, d - i, d - i - 1)
                                .kronecker(&self.fixture.h_max(n - d, i, i + 1));
                            let lifted = bridge.transpose().multiply(&src)?.multiply(&bridge)?;
                            let coeff = lift_coefficient(n, d, i, r, s);
                            let target = idempotent_pair(&ctx, i + 1, r, s, false)
                                .scaled(&Rational::from_int(coeff.effective()));
                            h.case_eq(
                                || format!("J({},{}) lift i={} r={} s={}", n, d, i, r, s),
                                &lifted,
                                &target,
                            );
                        }
                        if i > 0 {
                            let bridge = self
                                .fixture
                                .h_max(d, d - i + 1, d - i)
                                .kronecker(&self.fixture.h_max(n - d, i - 1, i));
                            let pulled = bridge.multiply(&src)?.multiply(&bridge.transpose())?;
                            let coeff = pullback_coefficient(n, d, i, r, s);
                            let target = idempotent_pair(&ctx, i - 1, r, s, false)
                                .scaled(&Rational::from_int(coeff.effective()));
                            h.case_eq(
                                || format!("J({},{}) pullback i={} r={} s={}", n, d, i, r, s),
                                &pulled,
                                &target,
                            );
                        }
                    }
                }
                // Leg-wise forms of the same scalars.
                if i < d {
                    let hl_down = self.fixture.h_max(d, d - i - 1, d - i);
                    let hl_up = self.fixture.h_max(d, d - i, d - i - 1);
                    for r in 0..=rmax {
                        if let Some(er) = ctx.left_idempotent(i, r) {
                            let lhs = hl_down.multiply(er)?.multiply(&hl_up)?;
                            let target = ctx
                                .left_idempotent(i + 1, r)
                                .filter(|_| r <= (d - i - 1).min(i + 1))
                                .map(|e| {
                                    e.scaled(&Rational::from_int(algebra::p_factor(d, d - i, r)))
                                })
                                .unwrap_or_else(|| RationalMatrix::zero(lhs.rows(), lhs.cols()));
                            h.case_eq(
                                || format!("J({},{}) x-leg lift i={} r={}", n, d, i, r),
                                &lhs,
                                &target,
                            );
                        }
                    }
                    let hr_down = self.fixture.h_max(n - d, i + 1, i);
                    let hr_up = self.fixture.h_max(n - d, i, i + 1);
                    for s in 0..=smax {
                        if let Some(es) = ctx.right_idempotent(i, s) {
                            let lhs = hr_down.multiply(es)?.multiply(&hr_up)?;
                            let target = ctx
                                .right_idempotent(i + 1, s)
                                .filter(|_| s <= (i + 1).min(n - d - i - 1))
                                .map(|e| {
                                    e.scaled(&Rational::from_int(algebra::l_factor(n - d, i, s)))
                                })
                                .unwrap_or_else(|| RationalMatrix::zero(lhs.rows(), lhs.cols()));
                            h.case_eq(
                                || format!("J({},{}) complement-leg lift i={} s={}", n, d, i, s),
                                &lhs,
                                &target,
                            );
                        }
                    }
                }
            }
        }
        Ok(h.finish())
    }

    fn suite_cor36(&mut self) -> Result<SuiteReport> {
        let schemes = self.schemes(|_| true, "n >= 2d")?;
        let mut h = Harness::new(
            "cor36-commute",
            "(E_r H_{d-i,d-j}) ⊗ (E_s H_{i,j}) = (H_{d-i,d-j} E_r) ⊗ (H_{i,j} E_s) across levels, with out-of-range idempotents read as zero",
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            for i in 0..=d {
                for j in 0..=d {
                    let hl = self.fixture.h_max(d, d - i, d - j);
                    let hr = self.fixture.h_max(n - d, i, j);
                    for r in 0..=d {
                        for s in 0..=n - d {
                            let lhs_l = ctx
                                .left_idempotent(i, r)
                                .map(|e| e.multiply(&hl).unwrap())
                                .unwrap_or_else(|| RationalMatrix::zero(hl.rows(), hl.cols()));
                            let lhs_r = ctx
                                .right_idempotent(i, s)
                                .map(|e| e.multiply(&hr).unwrap())
                                .unwrap_or_else(|| RationalMatrix::zero(hr.rows(), hr.cols()));
                            let rhs_l = ctx
                                .left_idempotent(j, r)
                                .map(|e| hl.multiply(e).unwrap())
                                .unwrap_or_else(|| RationalMatrix::zero(hl.rows(), hl.cols()));
                            let rhs_r = ctx
                                .right_idempotent(j, s)
                                .map(|e| hr.multiply(e).unwrap())
                                .unwrap_or_else(|| RationalMatrix::zero(hr.rows(), hr.cols()));
                            h.case_eq(
                                || format!("J({},{}) i={} j={} r={} s={}", n, d, i, j, r, s),
                                &lhs_l.kronecker(&lhs_r),
                                &rhs_l.kronecker(&rhs_r),
                            );
                        }
                    }
                }
            }
        }
        Ok(h.finish())
    }

    fn suite_thm33(&mut self) -> Result<SuiteReport> {
        let schemes = self.schemes(|r| r == Regime::Boundary, "n = 2d")?;
        let mut h = Harness::new(
            "thm33-N-closed",
            "N is multiplicatively closed: products of basis elements stay in the span",
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            let fixture = &self.fixture;
            let nb = algebra::n_algebra_from(&ctx, &mut |v, i, j, r| {
                fixture.h(v, i, j, r).as_ref().clone()
            })?;
            let elems: Vec<RationalMatrix> = nb.elements().collect();
            for (a_idx, a) in elems.iter().enumerate() {
                for (b_idx, b) in elems.iter().enumerate() {
                    let prod = a.multiply(b)?;
                    h.case_true(
                        || format!("J({},{}) product {}x{}", n, d, a_idx, b_idx),
                        nb.contains(&prod).unwrap_or(false),
                        "product of N elements escapes N",
                    );
                }
            }
            let saturated = saturate_span(
                &nb,
                &elems
                    .iter()
                    .flat_map(|a| elems.iter().map(|b| a.multiply(b).unwrap()))
                    .collect::<Vec<_>>(),
            )?;
            h.case_true(
                || format!("J({},{}) dimension stable", n, d),
                saturated.dimension() == nb.dimension(),
                "saturating with products grew N",
            );
        }
        Ok(h.finish())
    }

    fn suite_thm42(&mut self) -> Result<SuiteReport> {
        let schemes = self.schemes(|r| r != Regime::Boundary, "2d < n")?;
        let mut h = Harness::new(
            "thm42-T-equals-M",
            "the closure of {A_m, E*_i} and M(n,d) have the same span",
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            let t = self.closure(spec)?;
            let fixture = &self.fixture;
            let m = algebra::m_algebra_from(&ctx, &mut |v, i, j, r| {
                fixture.h(v, i, j, r).as_ref().clone()
            })?;
            h.case_true(
                || format!("J({},{}) dim T = dim M", n, d),
                t.dimension() == m.dimension(),
                &format!("dim T = {}, dim M = {}", t.dimension(), m.dimension()),
            );
            for (idx, elem) in t.elements().enumerate() {
                h.case_true(
                    || format!("J({},{}) T element {} in M", n, d, idx),
                    m.contains(&elem).unwrap_or(false),
                    "closure element not in M",
                );
            }
            for (idx, elem) in m.elements().enumerate() {
                h.case_true(
                    || format!("J({},{}) M element {} in T", n, d, idx),
                    t.contains(&elem).unwrap_or(false),
                    "M element not in the closure",
                );
            }
        }
        Ok(h.finish())
    }

    fn suite_thm51(&mut self) -> Result<SuiteReport> {
        let schemes = self.schemes(|r| r == Regime::Boundary, "n = 2d")?;
        let mut h = Harness::new(
            "thm51-T-equals-N",
            "at n = 2d, the closure of {A_m, E*_i} and N have the same span",
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            let t = self.closure(spec)?;
            let fixture = &self.fixture;
            let nb = algebra::n_algebra_from(&ctx, &mut |v, i, j, r| {
                fixture.h(v, i, j, r).as_ref().clone()
            })?;
            h.case_true(
                || format!("J({},{}) dim T = dim N", n, d),
                t.dimension() == nb.dimension(),
                &format!("dim T = {}, dim N = {}", t.dimension(), nb.dimension()),
            );
            for (idx, elem) in t.elements().enumerate() {
                h.case_true(
                    || format!("J({},{}) T element {} in N", n, d, idx),
                    nb.contains(&elem).unwrap_or(false),
                    "closure element not in N",
                );
            }
            for (idx, elem) in nb.elements().enumerate() {
                h.case_true(
                    || format!("J({},{}) N element {} in T", n, d, idx),
                    t.contains(&elem).unwrap_or(false),
                    "N element not in the closure",
                );
            }
        }
        Ok(h.finish())
    }

    /// Index pairs of the decomposition for one scheme: unordered (r <= s)
    /// at the boundary, the full rectangle otherwise. Includes pairs with an
    /// empty live range so the zero contract is exercised too.
    fn theorem_pairs(spec: SchemeSpec) -> Vec<(usize, usize)> {
        let (n, d) = (spec.n(), spec.d());
        let mut pairs = Vec::new();
        if spec.regime() == Regime::Boundary {
            for s in 0..=d / 2 {
                for r in 0..=s {
                    pairs.push((r, s));
                }
            }
        } else {
            for r in 0..=d / 2 {
                for s in 0..=(n - d) / 2 {
                    pairs.push((r, s));
                }
            }
        }
        pairs
    }

    fn suite_structure(&mut self, boundary: bool) -> Result<SuiteReport> {
        let (name, claim): (&'static str, &'static str) = if boundary {
            (
                "eq20-structure",
                "rs_T_{ij} pq_T_{jm} = δ_{rp} δ_{sq} β rs_T_{im} at n = 2d: cross-pair products vanish, same-pair products are exact positive multiples",
            )
        } else {
            (
                "eq15-structure",
                "rs_T_{ij} pq_T_{jm} = δ_{rp} δ_{sq} β rs_T_{im}: cross-pair products vanish, same-pair products are exact positive multiples",
            )
        };
        let schemes = if boundary {
            self.schemes(|r| r == Regime::Boundary, "n = 2d")?
        } else {
            self.schemes(|r| r != Regime::Boundary, "2d < n")?
        };
        let mut h = Harness::new(
            name,
            claim,
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            let pairs = Self::theorem_pairs(spec);
            // Realize every triple once.
            let mut triples: HashMap<(usize, usize, usize, usize), RationalMatrix> = HashMap::new();
            for &(r, s) in &pairs {
                for i in 0..=d {
                    for j in 0..=d {
                        triples.insert((r, s, i, j), rs_matrix(&ctx, r, s, i, j).matrix);
                    }
                }
            }
            for &(r, s) in &pairs {
                let live = algebra::live_range(spec, r, s);
                for &(p, q) in &pairs {
                    for i in 0..=d {
                        for j in 0..=d {
                            for m in 0..=d {
                                let a = &triples[&(r, s, i, j)];
                                let b = &triples[&(p, q, j, m)];
                                if a.is_zero_matrix() || b.is_zero_matrix() {
                                    // Zero factor: product trivially zero and
                                    // consistent with the delta contract.
                                    continue;
                                }
                                let prod = a.multiply(b)?;
                                if (r, s) != (p, q) {
                                    h.case_true(
                                        || {
                                            format!(
                                                "J({},{}) ({},{})x({},{}) i={} j={} m={}",
                                                n, d, r, s, p, q, i, j, m
                                            )
                                        },
                                        prod.is_zero_matrix(),
                                        "cross-pair product does not vanish",
                                    );
                                } else {
                                    let all_live = live
                                        .as_ref()
                                        .map(|rg| {
                                            rg.contains(&i) && rg.contains(&j) && rg.contains(&m)
                                        })
                                        .unwrap_or(false);
                                    if !all_live {
                                        h.case_true(
                                            || {
                                                format!(
                                                    "J({},{}) ({},{}) dead i={} j={} m={}",
                                                    n, d, r, s, i, j, m
                                                )
                                            },
                                            prod.is_zero_matrix(),
                                            "product outside the live range does not vanish",
                                        );
                                        continue;
                                    }
                                    let target = &triples[&(r, s, i, m)];
                                    let ok = algebra::proportionality_scalar(&prod, target)
                                        .map(|beta| beta.is_positive())
                                        .unwrap_or(false);
                                    h.case_true(
                                        || {
                                            format!(
                                            "J({},{}) ({},{}) live i={} j={} m={}",
                                            n, d, r, s, i, j, m
                                        )
                                        },
                                        ok,
                                        "same-pair product is not a positive multiple of the target",
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(h.finish())
    }

    fn suite_lemma44(&mut self) -> Result<SuiteReport> {
        let schemes = self.schemes(|_| true, "n >= 2d")?;
        let mut h = Harness::new(
            "lemma44-support",
            "rs_T_{ij} is nonzero exactly when both i and j lie in the live range [max(r,s), min(d-r, n-d-s)]",
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            for (r, s) in Self::theorem_pairs(spec) {
                let live = algebra::live_range(spec, r, s);
                for i in 0..=d {
                    for j in 0..=d {
                        let t = rs_matrix(&ctx, r, s, i, j);
                        let expected = live
                            .as_ref()
                            .map(|rg| rg.contains(&i) && rg.contains(&j))
                            .unwrap_or(false);
                        h.case_true(
                            || format!("J({},{}) r={} s={} i={} j={}", n, d, r, s, i, j),
                            !t.is_zero() == expected,
                            "support disagrees with the live range",
                        );
                    }
                }
            }
        }
        Ok(h.finish())
    }

    fn suite_beta_squared(&mut self, boundary: bool) -> Result<SuiteReport> {
        let (name, claim): (&'static str, &'static str) = if boundary {
            (
                "ttt2-beta-squared",
                "β(i,j,l)² · n_il = κ² · n_ij · n_jl with n the paired leg coefficients and κ the symmetrization multiplicity (1 for r < s, 2 for r = s)",
            )
        } else {
            (
                "ttt1-beta-squared",
                "β(i,j,l)² · n^r_il n^il_s = n^r_ij n^ij_s · n^r_jl n^jl_s, keeping the square-root coefficient rational",
            )
        };
        let schemes = if boundary {
            self.schemes(|r| r == Regime::Boundary, "n = 2d")?
        } else {
            self.schemes(|r| r != Regime::Boundary, "2d < n")?
        };
        let mut h = Harness::new(
            name,
            claim,
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        let mut closed_form_hits = 0usize;
        let mut closed_form_misses = 0usize;
        let mut diagonal_pairs_seen = false;
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            for block in algebra::block_profiles(spec) {
                let (r, s) = (block.r, block.s);
                let range = block.live_range();
                let kappa = if boundary && r == s { 2i64 } else { 1 };
                let mut nprod: HashMap<(usize, usize), Rational> = HashMap::new();
                for i in range.clone() {
                    for j in range.clone() {
                        let nc = algebra::n_coefficients(&ctx, r, s, i, j)?;
                        let closed = algebra::n_coefficients_closed_form(&ctx, r, s, i, j)?;
                        if closed == nc {
                            closed_form_hits += 1;
                        } else {
                            closed_form_misses += 1;
                        }
                        nprod.insert((i, j), nc.product());
                    }
                }
                for i in range.clone() {
                    for j in range.clone() {
                        for l in range.clone() {
                            if boundary && r == s {
                                diagonal_pairs_seen = true;
                            }
                            let beta = match algebra::structure_constant(&ctx, r, s, i, j, l) {
                                Ok(b) => b,
                                Err(e) => {
                                    h.case_true(
                                        || {
                                            format!(
                                                "J({},{}) r={} s={} i={} j={} l={}",
                                                n, d, r, s, i, j, l
                                            )
                                        },
                                        false,
                                        &format!("structure constant solve failed: {}", e),
                                    );
                                    continue;
                                }
                            };
                            let lhs = &(&beta * &beta) * &nprod[&(i, l)];
                            let rhs = &(&nprod[&(i, j)] * &nprod[&(j, l)])
                                * &Rational::from_int(kappa * kappa);
                            h.case_true(
                                || {
                                    format!(
                                        "J({},{}) r={} s={} i={} j={} l={}",
                                        n, d, r, s, i, j, l
                                    )
                                },
                                lhs == rhs,
                                &format!("β² = {} disagrees with the coefficient ratio", beta),
                            );
                        }
                    }
                }
            }
        }
        if closed_form_misses > 0 {
            h.note(format!(
                "displayed closed-form n-coefficient sums matched the matrix-derived values on {} of {} live pairs; the i<j branch of the r-side sum evaluates to zero and was overridden by the matrix value",
                closed_form_hits,
                closed_form_hits + closed_form_misses
            ));
        } else {
            h.note(format!(
                "displayed closed-form n-coefficient sums matched the matrix-derived values on all {} live pairs",
                closed_form_hits
            ));
        }
        if boundary && diagonal_pairs_seen {
            h.note(
                "diagonal pairs r = s carry the symmetrization multiplicity κ = 2: the doubled rs_T forces β = 2·sqrt(n_ij n_jl / n_il), certified here in squared form"
                    .to_string(),
            );
        }
        Ok(h.finish())
    }

    fn suite_decomposition(&mut self, boundary: bool) -> Result<SuiteReport> {
        let (name, claim): (&'static str, &'static str) = if boundary {
            (
                "thm54-decomposition",
                "T = ⊕_{r<=s} rs_T with pairwise independent ideals of dimension (d_rs+1)², accounting exactly for dim T",
            )
        } else {
            (
                "thm46-decomposition",
                "T = ⊕_{r,s} rs_T with pairwise independent ideals of dimension (d_rs+1)², accounting exactly for dim T",
            )
        };
        let schemes = if boundary {
            self.schemes(|r| r == Regime::Boundary, "n = 2d")?
        } else {
            self.schemes(|r| r != Regime::Boundary, "2d < n")?
        };
        let mut h = Harness::new(
            name,
            claim,
            self.scheme_sweep_desc(&schemes),
            self.config.dump_dir.clone(),
        );
        for spec in schemes {
            let (n, d) = (spec.n(), spec.d());
            let ctx = self.context(spec)?;
            let t = self.closure(spec)?;
            let blocks = algebra::block_profiles(spec);
            let dim_formula: usize = blocks.iter().map(|b| b.block_size().pow(2)).sum();
            h.case_true(
                || format!("J({},{}) dimension accounting", n, d),
                dim_formula == t.dimension(),
                &format!(
                    "sum of squared block sizes {} vs dim T {}",
                    dim_formula,
                    t.dimension()
                ),
            );
            let size = spec.size();
            let mut stacked = AlgebraBasis::new(size, size);
            for block in &blocks {
                let span = algebra::rs_span(&ctx, block.r, block.s)?;
                h.case_true(
                    || {
                        format!(
                            "J({},{}) block ({},{}) span dimension",
                            n, d, block.r, block.s
                        )
                    },
                    span.dimension() == block.block_size().pow(2),
                    &format!(
                        "span dimension {} vs block size² {}",
                        span.dimension(),
                        block.block_size().pow(2)
                    ),
                );
                for elem in span.elements() {
                    stacked.insert(&elem)?;
                    h.case_true(
                        || format!("J({},{}) block ({},{}) inside T", n, d, block.r, block.s),
                        t.contains(&elem).unwrap_or(false),
                        "ideal element escapes T",
                    );
                }
            }
            h.case_true(
                || format!("J({},{}) stacked independence", n, d),
                stacked.dimension() == dim_formula,
                &format!(
                    "stacked rank {} vs sum of block dimensions {}",
                    stacked.dimension(),
                    dim_formula
                ),
            );
            // Matrix-unit certificates per block, in squared rational form.
            for block in &blocks {
                let (r, s) = (block.r, block.s);
                let range = block.live_range();
                for i in range.clone() {
                    for j in range.clone() {
                        let nc = algebra::n_coefficients(&ctx, r, s, i, j)?;
                        let t_ij = rs_matrix(&ctx, r, s, i, j);
                        let kappa = if boundary && r == s { 2i64 } else { 1 };
                        // Transpose identity fixes the squared norm of T_ij.
                        let ttt = t_ij.matrix.multiply(&t_ij.matrix.transpose())?;
                        let expected = idempotent_pair(&ctx, i, r, s, boundary)
                            .scaled(&(&nc.product() * &Rational::from_int(kappa)));
                        h.case_eq(
                            || {
                                format!(
                                    "J({},{}) transpose identity r={} s={} i={} j={}",
                                    n, d, r, s, i, j
                                )
                            },
                            &ttt,
                            &expected,
                        );
                        // Diagonal return: T_ij T_ji lands on κ n_ij T_ii.
                        let t_ji = rs_matrix(&ctx, r, s, j, i);
                        let t_ii = rs_matrix(&ctx, r, s, i, i);
                        let back = t_ij.matrix.multiply(&t_ji.matrix)?;
                        let nji = algebra::n_coefficients(&ctx, r, s, j, i)?;
                        h.case_true(
                            || {
                                format!(
                                    "J({},{}) unit return r={} s={} i={} j={}",
                                    n, d, r, s, i, j
                                )
                            },
                            nji.product() == nc.product()
                                && back
                                    == t_ii
                                        .matrix
                                        .scaled(&(&nc.product() * &Rational::from_int(kappa))),
                            "returning product does not match the squared normalization",
                        );
                    }
                }
            }
        }
        Ok(h.finish())
    }
}
