//! Command line entry points: `scheme` emits matrices in the exchange
//! format, `decompose` prints Wedderburn block profiles with the closure
//! cross-check, `verify` runs named suites.
//!
//! Exit status contract: 0 all checks pass, 1 a verification counterexample
//! was found, 2 usage or configuration error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{decompose, BasePointContext};
use crate::combinatorics::KSubset;
use crate::error::{Error, Result};
use crate::johnson::{adjacency_matrix, intersection_matrix, primitive_idempotents, SchemeSpec};
use crate::matrix::RationalMatrix;
use crate::report::DecompositionReport;
use crate::suites::{Fixture, FlipSpec, SuiteSession, SweepConfig, SUITE_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "terwilliger",
    about = "Exact Terwilliger algebras of Johnson schemes: construct, verify, decompose",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a scheme matrix in the exchange format (colex indexing).
    Scheme {
        /// Ground-set size n of J(n, d); requires n >= 2d.
        #[arg(long)]
        n: usize,
        /// Subset size d of J(n, d).
        #[arg(long)]
        d: usize,
        /// Matrix selector: A<m>, E<j>, Estar<i>, or H<r>_<i>_<j>.
        #[arg(long)]
        emit: String,
        /// Base point as a comma list, default 1,…,d (only Estar uses it).
        #[arg(long, value_delimiter = ',')]
        base_point: Option<Vec<usize>>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the Wedderburn block profiles and cross-check against the
    /// closure oracle.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',')]
        base_point: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one named verification suite, or `all`.
    Verify {
        /// Suite name from the registry, or `all`.
        #[arg(long)]
        suite: String,
        /// Restrict scheme-level suites to one J(n, d).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Bound for the H-identity sweeps (default 7).
        #[arg(long)]
        v_max: Option<usize>,
        /// Base point override; requires --n and --d.
        #[arg(long, value_delimiter = ',')]
        base_point: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory receiving full residual dumps of counterexamples.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
        /// Flip one entry of one intersection matrix before running, as six
        /// comma-separated integers v,i,j,r,row,col — a falsifiability
        /// demonstration: the affected suites must fail.
        #[arg(long, value_delimiter = ',')]
        flip: Option<Vec<usize>>,
    },
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; keep its exit semantics for
            // --help/--version, map parse failures to the usage code.
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::Verification(_) => EXIT_COUNTEREXAMPLE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Scheme {
            n,
            d,
            emit,
            base_point,
            out,
        } => cmd_scheme(n, d, &emit, base_point, out),
        Command::Decompose {
            n,
            d,
            base_point,
            format,
            out,
        } => cmd_decompose(n, d, base_point, format, out),
        Command::Verify {
            suite,
            n,
            d,
            v_max,
            base_point,
            format,
            out,
            dump_dir,
            flip,
        } => cmd_verify(&suite, n, d, v_max, base_point, format, out, dump_dir, flip),
    }
}

fn resolve_context(spec: SchemeSpec, base_point: Option<Vec<usize>>) -> Result<BasePointContext> {
    match base_point {
        None => Ok(BasePointContext::new(spec)),
        Some(bp) => {
            let x = KSubset::new(spec.n(), bp)?;
            BasePointContext::with_base_point(spec, x)
        }
    }
}

/// Parse an `--emit` selector into the matrix it names.
fn emit_matrix(
    spec: SchemeSpec,
    selector: &str,
    base_point: Option<Vec<usize>>,
) -> Result<RationalMatrix> {
    let (n, d) = (spec.n(), spec.d());
    let bad = || {
        Error::InvalidParameters(format!(
            "unknown matrix selector `{}` (expected A<m>, E<j>, Estar<i>, or H<r>_<i>_<j>)",
            selector
        ))
    };
    if let Some(rest) = selector.strip_prefix("Estar") {
        let i: usize = rest.parse().map_err(|_| bad())?;
        if i > d {
            return Err(Error::IndexOutOfRange {
                what: "dual idempotent",
                index: i,
                bound: d + 1,
            });
        }
        let ctx = resolve_context(spec, base_point)?;
        return Ok(ctx.dual_idempotent_colex(i));
    }
    if let Some(rest) = selector.strip_prefix('A') {
        let m: usize = rest.parse().map_err(|_| bad())?;
        return adjacency_matrix(n, d, m);
    }
    if let Some(rest) = selector.strip_prefix('E') {
        let j: usize = rest.parse().map_err(|_| bad())?;
        let idempotents = primitive_idempotents(n, d);
        return idempotents.get(j).cloned().ok_or(Error::IndexOutOfRange {
            what: "primitive idempotent",
            index: j,
            bound: idempotents.len(),
        });
    }
    if let Some(rest) = selector.strip_prefix('H') {
        let parts: Vec<&str> = rest.split('_').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let r: usize = parts[0].parse().map_err(|_| bad())?;
        let i: usize = parts[1].parse().map_err(|_| bad())?;
        let j: usize = parts[2].parse().map_err(|_| bad())?;
        if i > n || j > n {
            return Err(Error::InvalidParameters(format!(
                "H indices ({}, {}) exceed the ground set [{}]",
                i, j, n
            )));
        }
        return Ok(intersection_matrix(n, i, j, r));
    }
    Err(bad())
}

fn write_output(out: Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
        Some(path) => std::fs::write(&path, content).map_err(|source| Error::Io { path, source }),
    }
}

fn cmd_scheme(
    n: usize,
    d: usize,
    emit: &str,
    base_point: Option<Vec<usize>>,
    out: Option<PathBuf>,
) -> Result<i32> {
    let spec = SchemeSpec::new(n, d)?;
    let matrix = emit_matrix(spec, emit, base_point)?;
    write_output(out, &matrix.to_exchange_string())?;
    Ok(EXIT_OK)
}

fn cmd_decompose(
    n: usize,
    d: usize,
    base_point: Option<Vec<usize>>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<i32> {
    let spec = SchemeSpec::new(n, d)?;
    let ctx = resolve_context(spec, base_point)?;
    let decomposition = decompose(&ctx)?;
    let report = DecompositionReport::from(&decomposition);
    let content = match format {
        Format::Text => report.render_text(),
        Format::Json => format!("{}\n", report.to_json()),
    };
    write_output(out, &content)?;
    Ok(if report.matches {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    n: Option<usize>,
    d: Option<usize>,
    v_max: Option<usize>,
    base_point: Option<Vec<usize>>,
    format: Format,
    out: Option<PathBuf>,
    dump_dir: Option<PathBuf>,
    flip: Option<Vec<usize>>,
) -> Result<i32> {
    let mut config = SweepConfig::default();
    if let Some(v) = v_max {
        config.v_max = v;
    }
    match (n, d) {
        (Some(n), Some(d)) => {
            SchemeSpec::new(n, d)?;
            config.schemes = vec![(n, d)];
            config.schemes_explicit = true;
        }
        (None, None) => {}
        _ => {
            return Err(Error::InvalidParameters(
                "--n and --d must be given together".into(),
            ))
        }
    }
    if base_point.is_some() && !config.schemes_explicit {
        return Err(Error::InvalidParameters(
            "--base-point requires an explicit --n/--d".into(),
        ));
    }
    config.base_point = base_point;
    config.dump_dir = dump_dir;

    let fixture = match flip {
        None => Fixture::new(),
        Some(values) => {
            if values.len() != 6 {
                return Err(Error::InvalidParameters(
                    "--flip takes exactly six integers v,i,j,r,row,col".into(),
                ));
            }
            Fixture::with_flip(FlipSpec {
                v: values[0],
                i: values[1],
                j: values[2],
                r: values[3],
                row: values[4],
                col: values[5],
            })
        }
    };
    let mut session = SuiteSession::with_fixture(config, fixture);
    let reports = if suite == "all" {
        session.run_all()?
    } else {
        if !SUITE_NAMES.contains(&suite) {
            return Err(Error::UnknownSuite(suite.to_string()));
        }
        vec![session.run(suite)?]
    };
    let content = match format {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.render_text());
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            s.push_str(&format!(
                "{} suites run, {} passed, {} failed\n",
                reports.len(),
                reports.len() - failed,
                failed
            ));
            s
        }
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        ),
    };
    write_output(out, &content)?;
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emit_selector_parsing() {
        let spec = SchemeSpec::new(4, 2).unwrap();
        assert_eq!(
            emit_matrix(spec, "A0", None).unwrap(),
            RationalMatrix::identity(6)
        );
        assert_eq!(
            emit_matrix(spec, "H1_1_1", None).unwrap(),
            RationalMatrix::identity(4)
        );
        let e0 = emit_matrix(spec, "E0", None).unwrap();
        assert_eq!(e0.get(0, 0), &crate::rational::Rational::new(1, 6));
        let estar0 = emit_matrix(spec, "Estar0", None).unwrap();
        assert_eq!(estar0.nnz(), 1);
        assert!(emit_matrix(spec, "B3", None).is_err());
        assert!(emit_matrix(spec, "E9", None).is_err());
        assert!(emit_matrix(spec, "A7", None).is_err());
    }

    #[test]
    fn run_maps_errors_to_usage_exit() {
        // n < 2d is a configuration error.
        assert_eq!(
            run([
                "terwilliger",
                "scheme",
                "--n",
                "3",
                "--d",
                "2",
                "--emit",
                "A1"
            ]),
            EXIT_USAGE
        );
        // Unknown suite name.
        assert_eq!(
            run(["terwilliger", "verify", "--suite", "nope"]),
            EXIT_USAGE
        );
        // Unknown flag is a clap parse error.
        assert_eq!(run(["terwilliger", "scheme", "--bogus"]), EXIT_USAGE);
    }
}
