use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tancat::bundle::{parse_bundle_file, pullback_bundle, tangent_of_bundle, whitney_sum, BundleFile, DiffBundle};
use tancat::cdc::cdc_d;
use tancat::parse::parse_polymap;
use tancat::report::{Fault, Params, Report, Status};
use tancat::suites::{run_fibre_suite, run_suite, FIBRE_SUITES, SUITES};
use tancat::{Error, Mode, Natural, PolyMap, Rational, Semiring};

/// Exact verifier for tangent-category and differential-bundle identities.
#[derive(Parser)]
#[command(name = "tancat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite.
    Check {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the derivative D(f)(u, x) of a polynomial map.
    Diff {
        /// Components separated by `;`, in variables x0, x1, ...
        #[arg(long)]
        expr: String,
        /// Number of input variables; inferred from the expression if omitted.
        #[arg(long)]
        dom: Option<usize>,
        #[arg(long, default_value = "rational")]
        mode: Mode,
    },
    /// Verify or transform a differential bundle read from a TOML description.
    Bundle(BundleArgs),
    /// Run a tangent suite on one fibre of the simple fibration.
    Fibre {
        #[arg(long)]
        context_dim: usize,
        #[arg(long, default_value = "tangent-axioms", value_parser = fibre_suites())]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn fibre_suites() -> clap::builder::PossibleValuesParser {
    clap::builder::PossibleValuesParser::new(FIBRE_SUITES.into_iter().chain(["fibration"]))
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value = "rational")]
    mode: Mode,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    #[arg(long, default_value_t = 50)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Inject a named defect: identity-flip, dropped-zero-block or corrupted-lambda.
    #[arg(long)]
    fault: Option<Fault>,
}

impl RunArgs {
    fn params(&self) -> Params {
        Params {
            mode: self.mode,
            max_dim: self.max_dim,
            max_degree: self.max_degree,
            instances: self.instances,
            seed: self.seed,
            fault: self.fault,
            context_dim: None,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BundleOp {
    /// Run every bundle axiom check.
    Verify,
    /// Build the tangent bundle T(q) and verify it.
    Tangent,
    /// Pull back along `--along` and verify the result.
    Pullback,
    /// Form the Whitney sum with `--with` and verify the result.
    Whitney,
    /// Print the bracket of the map `--map` into T(E).
    Bracket,
}

#[derive(Args)]
struct BundleArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long, value_enum, default_value = "verify")]
    op: BundleOp,
    #[arg(long, default_value = "rational")]
    mode: Mode,
    /// Map into the base, for `pullback`.
    #[arg(long)]
    along: Option<String>,
    /// Second bundle description, for `whitney`.
    #[arg(long = "with")]
    with: Option<PathBuf>,
    /// Map into T(E), for `bracket`.
    #[arg(long)]
    map: Option<String>,
    /// Domain dimension of `--along` or `--map`; inferred if omitted.
    #[arg(long)]
    dom: Option<usize>,
    /// Write the verification report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure that ends the run: usage and input errors exit 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check { suite, run } => finish_run(run_suite(&suite, &run.params()), run.out.as_deref()),
        Command::Fibre { context_dim, suite, run } => {
            let report = if suite == "fibration" {
                run_suite(&suite, &Params { context_dim: Some(context_dim), ..run.params() })
            } else {
                run_fibre_suite(&suite, context_dim, &run.params())
            };
            finish_run(report, run.out.as_deref())
        }
        Command::Diff { expr, dom, mode } => match mode {
            Mode::Rational => diff::<Rational>(&expr, dom),
            Mode::Natural => diff::<Natural>(&expr, dom),
        },
        Command::Bundle(args) => match args.mode {
            Mode::Rational => bundle::<Rational>(&args),
            Mode::Natural => bundle::<Natural>(&args),
        },
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn finish_run(report: tancat::Result<Report>, out: Option<&Path>) -> Outcome {
    let report = report?;
    print_summary(&report);
    if let Some(path) = out {
        fs::write(path, report.to_json() + "\n").map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report.success())
}

fn print_summary(report: &Report) {
    for c in report.failing() {
        let status = if c.status == Status::Error { "ERROR" } else { "FAIL" };
        println!("{status} {}", c.name);
        if let Some(cx) = &c.counterexample {
            println!("  instance: {}", cx.instance);
            for (label, value) in [("lhs", &cx.lhs), ("rhs", &cx.rhs), ("residual", &cx.residual), ("message", &cx.message)] {
                if let Some(v) = value {
                    println!("  {label}: {v}");
                }
            }
        }
    }
    println!(
        "{}: {} passed, {} failed in {} ms",
        report.suite, report.passed, report.failed, report.duration_ms
    );
}

/// One line per component, tangent variables named `u_i` and points `x_i`,
/// point factors printed first.
fn diff<C: Semiring>(expr: &str, dom: Option<usize>) -> Outcome {
    let f: PolyMap<C> = parse_polymap(expr, dom)?;
    let m = f.dom();
    let name = |i: usize| if i < m { format!("u{i}") } else { format!("x{}", i - m) };
    let order: Vec<usize> = (m..2 * m).chain(0..m).collect();
    for comp in cdc_d(&f).components() {
        println!("{}", comp.render_named(&name, &order));
    }
    Ok(true)
}

fn read_bundle<C: Semiring>(path: &Path) -> Result<DiffBundle<C>, Usage> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_bundle_file(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn required<'a, T: ?Sized>(value: Option<&'a T>, flag: &str, op: &str) -> Result<&'a T, Usage> {
    value.ok_or_else(|| Usage(format!("--op {op} needs {flag}")))
}

fn bundle<C: Semiring>(args: &BundleArgs) -> Outcome {
    let b = read_bundle::<C>(&args.file)?;
    let (target, emit) = match args.op {
        BundleOp::Verify => (b, false),
        BundleOp::Tangent => (tangent_of_bundle(&b)?, true),
        BundleOp::Pullback => {
            let along = parse_polymap(required(args.along.as_deref(), "--along", "pullback")?, args.dom)?;
            (pullback_bundle(&along, &b)?.bundle, true)
        }
        BundleOp::Whitney => {
            let other = read_bundle::<C>(required(args.with.as_deref(), "--with", "whitney")?)?;
            (whitney_sum(&b, &other)?.bundle, true)
        }
        BundleOp::Bracket => {
            let f = parse_polymap(required(args.map.as_deref(), "--map", "bracket")?, args.dom)?;
            println!("{}", b.bracket(&f)?);
            return Ok(true);
        }
    };
    if emit {
        print!("{}", BundleFile::from_bundle(&target).to_toml());
    }
    let started = Instant::now();
    let params = Params { mode: C::MODE, ..Params::default() };
    let report = target.verify().finish(&format!("bundle/{}", target.label), &params, started);
    // Keep stdout a valid description when one was emitted.
    if emit {
        for c in report.failing() {
            eprintln!("FAIL {}", c.name);
        }
        eprintln!("{}: {} passed, {} failed", report.suite, report.passed, report.failed);
    } else {
        print_summary(&report);
    }
    if let Some(path) = &args.out {
        fs::write(path, report.to_json() + "\n").map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report.success())
}
