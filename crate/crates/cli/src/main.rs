//! `superali`: scans and verification suites for antisymmetrizer identities.

mod fields;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use superali_core::antisym::{antisymmetrize_generic, bench, span_scan, BenchMethod};
use superali_core::report::ScanReport;
use superali_core::supermat::MatrixAlgebraSpec;
use superali_core::suites::{run_suite, suite_names, SuiteResult};
use superali_core::vectorfields::{critical_scan, subcritical_eval, VectorialSpec};
use superali_core::Error;

#[derive(Parser)]
#[command(name = "superali", version, about = "Exact checks of antisymmetrizer identities on matrix Lie superalgebras and vector field algebras")]
#[command(after_help = "Exit status: 0 success, 1 verification failure, 2 usage error.\n\
SUPERALI_THREADS caps the number of worker threads.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Naive,
    Generic,
}

#[derive(Subcommand)]
enum Command {
    /// For k = 2..kmax, whether X^k vanishes and whether a_k lands back in the algebra.
    Span {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Whether a_r vanishes identically (X^r = 0 for the generic element).
    /// Exits 1 when it does not.
    MatrixIdentity {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify D^N for the generic odd derivation at a truncation degree.
    VectCritical {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long)]
        nmin: usize,
        #[arg(long)]
        nmax: usize,
        /// Allow the long-running algebras (vect(3) and larger).
        #[arg(long)]
        long: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// A_3(ad X1, ad X2, ad X3)(Y) on vect(1), compared with -2 times the Wronskian.
    /// Exits 1 when they differ.
    #[command(after_help = fields::FORMAT_HELP)]
    Subcritical {
        #[arg(long)]
        fields: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a named verification suite, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Time a_r over all basis tuples, by the permutation sum or the generic element.
    Bench {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        r: usize,
        /// Both methods when omitted.
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidSpec { .. }
            | Error::LongRunningGated(_)
            | Error::Parse(_)
            | Error::Precondition(_)
            | Error::EnumerationCap { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn matrix_spec(s: &str) -> Result<MatrixAlgebraSpec, Failure> {
    s.parse().map_err(Failure::from)
}

fn emit(report: &ScanReport, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("SUPERALI_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("SUPERALI_THREADS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    Ok(())
}

/// Returns whether the command's verification outcome was positive.
fn run(cli: Cli) -> Result<bool, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Span { algebra, kmax, format } => {
            let spec = matrix_spec(&algebra)?;
            emit(&ScanReport::from_span(&span_scan(&spec, kmax)?), format);
            Ok(true)
        }
        Command::MatrixIdentity { algebra, r, format } => {
            let spec = matrix_spec(&algebra)?;
            let zero = antisymmetrize_generic(&spec, r)?.is_zero();
            let verdict = if zero { "zero" } else { "nonzero" };
            match format {
                Format::Text => println!("{verdict}"),
                Format::Json => {
                    let v = serde_json::json!({
                        "command": "matrix-identity",
                        "spec": spec.to_string(),
                        "parameters": { "r": r },
                        "result": verdict,
                        "version": superali_core::report::VERSION,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                }
            }
            Ok(zero)
        }
        Command::VectCritical { algebra, degree, nmin, nmax, long, format } => {
            let spec: VectorialSpec = algebra.parse::<VectorialSpec>()?.with_degree(degree);
            let spec = VectorialSpec::new(spec.family, spec.n, spec.degree)?;
            let scan = critical_scan(&spec, nmin, nmax, long)?;
            let report = ScanReport::from_critical(&scan)
                .parameter("nMin", nmin)
                .parameter("nMax", nmax);
            emit(&report, format);
            Ok(true)
        }
        Command::Subcritical { fields: path, format } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let dom = fields::line_domain();
            let (xs, y) = fields::parse_file(&dom, &text).map_err(Failure::Usage)?;
            let out = subcritical_eval(&xs, &y)?;
            match format {
                Format::Text => {
                    println!("image: {}", out.image);
                    println!("multiplier: {}", out.multiplier);
                    println!("wronskian: {}", out.wronskian);
                    println!("multiplier = -2 wronskian: {}", out.matches);
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "command": "subcritical",
                        "image": out.image.to_string(),
                        "multiplier": out.multiplier.to_string(),
                        "wronskian": out.wronskian.to_string(),
                        "matches": out.matches,
                        "version": superali_core::report::VERSION,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                }
            }
            Ok(out.matches)
        }
        Command::Verify { suite, format } => {
            let names: Vec<&str> = if suite == "all" {
                suite_names()
            } else if suite_names().contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(Failure::Usage(format!(
                    "unknown suite `{suite}`; expected all or one of {}",
                    suite_names().join(", ")
                )));
            };
            let results: Vec<SuiteResult> = names.iter().map(|n| run_suite(n)).collect::<Result<_, _>>()?;
            match format {
                Format::Text => {
                    for r in &results {
                        println!("{}", r.summary_line());
                        for c in &r.checks {
                            let mark = if c.passed { "ok  " } else { "FAIL" };
                            if c.detail.is_empty() {
                                println!("    {mark} {}", c.label);
                            } else {
                                println!("    {mark} {} [{}]", c.label, c.detail);
                            }
                        }
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&results).expect("json")),
            }
            Ok(results.iter().all(|r| r.passed()))
        }
        Command::Bench { algebra, r, method } => {
            let spec = matrix_spec(&algebra)?;
            let methods = match method {
                Some(Method::Naive) => vec![BenchMethod::Naive],
                Some(Method::Generic) => vec![BenchMethod::Generic],
                None => vec![BenchMethod::Naive, BenchMethod::Generic],
            };
            let results = methods.into_iter().map(|m| bench(&spec, r, m)).collect::<Result<Vec<_>, _>>()?;
            println!("{}", serde_json::to_string_pretty(&results).expect("json"));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
