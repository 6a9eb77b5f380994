//! Command-line front end. [`run`] returns the process exit code:
//! 0 on success, 1 when a check or demo fails, 2 on usage errors and 3 on
//! file, parse or input-domain errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructions::{diamond, star};
use crate::convolution::{convolve_with, ConvSpec, Direction, Engine};
use crate::error::Error;
use crate::lab::report::{write_axiom_report, write_case_report, write_classification};
use crate::lab::{check_axiom_with, classify_with, reproduce, AxiomId, GenConfig, T2Op, CASES};
use crate::lattice::{join, meet, negate};
use crate::par::Exec;
use crate::pwfn::{parse_pwf, serialize_pwf, PwFn};
use crate::rat::{grid, parse_rat, to_f64, Rat};
use crate::scalar_ops::{builtin, builtin_names};

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "t2truth",
    version,
    about = "Exact truth-value algebra of type-2 fuzzy sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a function at an exact rational point.
    Eval {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        #[arg(long, value_name = "RAT")]
        at: String,
    },
    /// Apply an operation and write the result as PWF.
    Op(OpArgs),
    /// Check one axiom for an operation.
    Check {
        #[arg(long, value_name = "NAME")]
        op: String,
        #[arg(long, value_name = "ID")]
        axiom: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the full axiom suite and report the strongest class.
    Classify {
        #[arg(long, value_name = "NAME")]
        op: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a reproduction case (`list` shows them).
    Demo {
        #[arg(value_name = "CASE_ID")]
        case: String,
    },
    /// Print tab-separated (x, f(x)) pairs at k/N and at every breakpoint.
    Sample {
        #[arg(long = "fn", value_name = "FILE")]
        function: PathBuf,
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Print exact rationals instead of decimals.
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run trials on one thread.
    #[arg(long)]
    serial: bool,
}

impl RunArgs {
    fn exec(&self) -> Exec {
        if self.serial {
            Exec::Serial
        } else {
            Exec::Parallel
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum What {
    Meet,
    Join,
    Neg,
    Star,
    Diamond,
    Conv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Exact,
    Indicator,
    Grid,
}

#[derive(Debug, Args)]
struct OpArgs {
    #[arg(long, value_enum)]
    what: What,
    /// Constraint t-norm of a norm-direction convolution.
    #[arg(long, value_name = "NAME", conflicts_with = "conorm")]
    tnorm: Option<String>,
    /// Constraint t-conorm of a conorm-direction convolution.
    #[arg(long, value_name = "NAME")]
    conorm: Option<String>,
    #[arg(long, value_name = "NAME", default_value = "min")]
    star: String,
    #[arg(long, value_enum, default_value = "exact")]
    engine: EngineArg,
    #[arg(long, value_name = "N", default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    grid: u32,
    #[arg(long, value_name = "FILE")]
    lhs: PathBuf,
    #[arg(long, value_name = "FILE")]
    rhs: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownScalarOp(_)
            | Error::UnknownOp(_)
            | Error::UnknownAxiom(_)
            | Error::UnknownCase(_)
            | Error::InapplicableAxiom { .. }
            | Error::Engine(_) => Failure::Usage(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_pwf(path: &Path) -> Result<PwFn, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_pwf(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_point(text: &str) -> Result<Rat, Failure> {
    parse_rat(text).map_err(|e| Failure::Usage(format!("--at: {e}")))
}

fn op_spec(args: &OpArgs) -> Result<ConvSpec, Failure> {
    let (direction, name) = match (&args.tnorm, &args.conorm) {
        (Some(t), None) => (Direction::Norm, t),
        (None, Some(c)) => (Direction::Conorm, c),
        _ => {
            return Err(Failure::Usage(
                "conv needs exactly one of --tnorm, --conorm".into(),
            ))
        }
    };
    let engine = match args.engine {
        EngineArg::Exact => Engine::ExactMin,
        EngineArg::Indicator => Engine::Indicator,
        EngineArg::Grid => Engine::Grid(args.grid),
    };
    Ok(ConvSpec::new(
        direction,
        builtin(name)?,
        builtin(&args.star)?,
        engine,
    )?)
}

fn run_op(args: &OpArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let lhs = read_pwf(&args.lhs)?;
    let rhs = match (&args.rhs, args.what) {
        (None, What::Neg) => None,
        (Some(_), What::Neg) => return Err(Failure::Usage("neg takes only --lhs".into())),
        (Some(path), _) => Some(read_pwf(path)?),
        (None, _) => return Err(Failure::Usage("this operation needs --rhs".into())),
    };
    let result = match (args.what, rhs) {
        (What::Neg, _) => negate(&lhs),
        (What::Meet, Some(g)) => meet(&lhs, &g),
        (What::Join, Some(g)) => join(&lhs, &g),
        (What::Star, Some(g)) => star(&lhs, &g)?.result,
        (What::Diamond, Some(g)) => diamond(&lhs, &g)?,
        (What::Conv, Some(g)) => convolve_with(Exec::Parallel, &lhs, &g, &op_spec(args)?)?,
        (_, None) => unreachable!("rhs presence checked above"),
    };
    fs::write(&args.out, serialize_pwf(&result))
        .map_err(|e| Failure::Input(format!("{}: {e}", args.out.display())))?;
    let _ = writeln!(out, "wrote {}", args.out.display());
    Ok(0)
}

fn run_sample(path: &Path, n: u32, exact: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let f = read_pwf(path)?;
    let mut xs: Vec<Rat> = (0..=n)
        .map(|k| grid(k, n))
        .chain(f.breakpoints().iter().cloned())
        .collect();
    xs.sort();
    xs.dedup();
    for x in xs {
        let y = f.eval(&x)?;
        let _ = if exact {
            writeln!(out, "{x}\t{y}")
        } else {
            writeln!(out, "{:.6}\t{:.6}", to_f64(&x), to_f64(&y))
        };
    }
    Ok(0)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Eval { function, at } => {
            let f = read_pwf(&function)?;
            let x = parse_point(&at)?;
            let _ = writeln!(out, "{}", f.eval(&x)?);
            Ok(0)
        }
        Command::Op(args) => run_op(&args, out),
        Command::Check { op, axiom, run } => {
            let op = T2Op::parse(&op)?;
            let axiom = AxiomId::parse(&axiom)?;
            let report = check_axiom_with(
                run.exec(),
                &op,
                axiom,
                run.trials,
                GenConfig::with_seed(run.seed),
            )?;
            let _ = out.write_all(write_axiom_report(&report).as_bytes());
            Ok(if report.passed() { 0 } else { EXIT_FAIL })
        }
        Command::Classify { op, run } => {
            let op = T2Op::parse(&op)?;
            let c = classify_with(run.exec(), &op, run.trials, GenConfig::with_seed(run.seed))?;
            let _ = out.write_all(write_classification(&c).as_bytes());
            Ok(if c.reports.iter().all(|r| r.passed()) {
                0
            } else {
                EXIT_FAIL
            })
        }
        Command::Demo { case } if case == "list" => {
            for (id, title) in CASES {
                let _ = writeln!(out, "{id}\t{title}");
            }
            Ok(0)
        }
        Command::Demo { case } => {
            let report = reproduce(&case)?;
            let _ = out.write_all(write_case_report(&report).as_bytes());
            Ok(if report.passed() { 0 } else { EXIT_FAIL })
        }
        Command::Sample { function, n, exact } => run_sample(&function, n, exact, out),
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            if msg.starts_with("unknown scalar") {
                let names: Vec<&str> = builtin_names().collect();
                let _ = writeln!(err, "known scalar operations: {}", names.join(", "));
            }
            EXIT_USAGE
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("t2truth").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn temp_pwf(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
        let path = dir.path().join(name);
        fs::File::create(&path)
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn eval_prints_exact_value() {
        let dir = tempfile::tempdir().unwrap();
        let g = temp_pwf(&dir, "g.pwf", crate::lab::named::G_PWF);
        assert_eq!(
            call(&["eval", "--fn", &g, "--at", "3/4"]),
            (0, "1/2\n".into(), String::new())
        );
        assert_eq!(call(&["eval", "--fn", &g, "--at", "0.75"]).0, EXIT_USAGE);
        assert_eq!(call(&["eval", "--fn", &g, "--at", "3/2"]).0, EXIT_INPUT);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["check", "--op", "meet"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["check", "--op", "nope", "--axiom", "O1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["check", "--op", "meet", "--axiom", "O3p"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["demo", "thm99"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["eval", "--fn", "/nonexistent.pwf", "--at", "0"]).0,
            EXIT_INPUT
        );
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn sample_includes_breakpoints() {
        let dir = tempfile::tempdir().unwrap();
        let f = temp_pwf(&dir, "f.pwf", crate::lab::named::F_PWF);
        let (code, out, _) = call(&["sample", "--fn", &f, "--n", "2", "--exact"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0\t0\n1/2\t0\n3/4\t1\n1\t0\n");
        let (_, out, _) = call(&["sample", "--fn", &f, "--n", "1"]);
        assert_eq!(
            out,
            "0.000000\t0.000000\n0.750000\t1.000000\n1.000000\t0.000000\n"
        );
    }
}
