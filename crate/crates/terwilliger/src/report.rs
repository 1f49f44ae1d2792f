//! Report types shared by the suites and the CLI: one record per suite run
//! and one per decomposition, each with a text rendering and a JSON form
//! that round-trips. Rationals travel as exact `num/den` strings so the
//! machine-readable path never touches floating point.

use serde::{Deserialize, Serialize};

use crate::algebra::Decomposition;

/// Coordinates and exact value of one nonzero residual entry — enough to
/// localize a failure without dumping whole matrices.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ResidualEntry {
    pub row: usize,
    pub col: usize,
    /// Exact value as `num/den`.
    pub value: String,
}

/// The first failing case of a suite run.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Counterexample {
    /// Parameters of the failing case, e.g. `v=5 i=2 j=2 k=1 l=1 s=1`.
    pub case: String,
    /// What went wrong.
    pub detail: String,
    /// Largest-magnitude residual entry, when a matrix comparison failed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<ResidualEntry>,
}

/// Outcome of one verification suite over one parameter sweep.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    /// The certified statement, spelled out.
    pub claim: String,
    /// Human-readable description of the sweep that ran.
    pub sweep: String,
    pub cases_run: usize,
    pub cases_passed: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    /// Informational findings that are not failures (e.g. cross-check
    /// discrepancies resolved in favor of the matrix-derived values).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases_passed == self.cases_run
    }

    /// Equality up to wall time; suite runs are deterministic except for it.
    pub fn same_outcome(&self, other: &SuiteReport) -> bool {
        self.suite == other.suite
            && self.claim == other.claim
            && self.sweep == other.sweep
            && self.cases_run == other.cases_run
            && self.cases_passed == other.cases_passed
            && self.counterexample == other.counterexample
            && self.notes == other.notes
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{:<22} [{}] {}/{} cases ({} ms)\n",
            self.suite, status, self.cases_passed, self.cases_run, self.wall_ms
        ));
        out.push_str(&format!("  certifies: {}\n", self.claim));
        out.push_str(&format!("  sweep: {}\n", self.sweep));
        if let Some(ce) = &self.counterexample {
            out.push_str(&format!(
                "  counterexample: {}\n    {}\n",
                ce.case, ce.detail
            ));
            if let Some(r) = &ce.residual {
                out.push_str(&format!(
                    "    max residual {} at ({}, {})\n",
                    r.value, r.row, r.col
                ));
            }
        }
        for note in &self.notes {
            out.push_str(&format!("  note: {}\n", note));
        }
        out
    }
}

/// One Wedderburn block in the wire format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BlockReport {
    pub r: usize,
    pub s: usize,
    pub e: usize,
    pub block_size: usize,
}

/// The decomposition record in its wire format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DecompositionReport {
    pub n: usize,
    pub d: usize,
    pub regime: String,
    pub blocks: Vec<BlockReport>,
    #[serde(rename = "dim_T_formula")]
    pub dim_t_formula: usize,
    #[serde(rename = "dim_T_closure")]
    pub dim_t_closure: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl From<&Decomposition> for DecompositionReport {
    fn from(dec: &Decomposition) -> Self {
        DecompositionReport {
            n: dec.scheme.n(),
            d: dec.scheme.d(),
            regime: dec.regime.to_string(),
            blocks: dec
                .blocks
                .iter()
                .map(|b| BlockReport {
                    r: b.r,
                    s: b.s,
                    e: b.e,
                    block_size: b.block_size(),
                })
                .collect(),
            dim_t_formula: dec.dim_formula,
            dim_t_closure: dec.dim_closure,
            matches: dec.matches,
        }
    }
}

impl DecompositionReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "J({}, {})  regime {}\n",
            self.n, self.d, self.regime
        ));
        out.push_str("  blocks (r, s, e, size):");
        for b in &self.blocks {
            out.push_str(&format!(" ({},{},{},{})", b.r, b.s, b.e, b.block_size));
        }
        out.push('\n');
        out.push_str(&format!(
            "  dim T: block formula {}, closure oracle {}  [{}]\n",
            self.dim_t_formula,
            self.dim_t_closure,
            if self.matches { "MATCH" } else { "MISMATCH" }
        ));
        if self.regime == "n>=3d" {
            out.push_str("  note: block data in this regime reproduces the previously known decomposition; it is checked here as a regression target\n");
        }
        out.push_str(&format!(
            "  sum of squared block sizes: {}\n",
            self.blocks
                .iter()
                .map(|b| b.block_size * b.block_size)
                .sum::<usize>()
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<DecompositionReport> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_suite_report() -> SuiteReport {
        SuiteReport {
            suite: "lemma21".into(),
            claim: "triple product expansion".into(),
            sweep: "v <= 4".into(),
            cases_run: 10,
            cases_passed: 9,
            counterexample: Some(Counterexample {
                case: "v=3 i=1 j=1 k=1 l=0 s=0".into(),
                detail: "product disagrees with the expansion".into(),
                residual: Some(ResidualEntry {
                    row: 0,
                    col: 2,
                    value: "-1/1".into(),
                }),
            }),
            notes: vec!["informational".into()],
            wall_ms: 12,
        }
    }

    #[test]
    fn suite_report_json_round_trip() {
        let report = sample_suite_report();
        let json = serde_json::to_string(&report).unwrap();
        let back: SuiteReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn same_outcome_ignores_wall_time() {
        let a = sample_suite_report();
        let mut b = a.clone();
        b.wall_ms = 99999;
        assert!(a.same_outcome(&b));
        b.cases_passed = 10;
        assert!(!a.same_outcome(&b));
    }

    #[test]
    fn decomposition_report_schema() {
        let report = DecompositionReport {
            n: 5,
            d: 2,
            regime: "2d<n<3d".into(),
            blocks: vec![BlockReport {
                r: 0,
                s: 0,
                e: 0,
                block_size: 3,
            }],
            dim_t_formula: 15,
            dim_t_closure: 15,
            matches: true,
        };
        let json = report.to_json();
        // Wire keys are pinned.
        for key in [
            "\"n\"",
            "\"d\"",
            "\"regime\"",
            "\"blocks\"",
            "\"dim_T_formula\"",
            "\"dim_T_closure\"",
            "\"match\"",
            "\"block_size\"",
        ] {
            assert!(json.contains(key), "missing key {} in {}", key, json);
        }
        let back = DecompositionReport::from_json(&json).unwrap();
        assert_eq!(back, report);
    }
}
