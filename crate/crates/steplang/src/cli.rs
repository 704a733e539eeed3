//! The command-line surface: run programs from files, sweep worst-case
//! step counts into CSV, and check, fit, or classify bounds over a CSV.
//!
//! Exit codes: 0 on success or a passing verdict, 1 on a failing
//! verdict, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::complexity::{
    self, BoundClass, ComplexityError, CsvError, SweepSample, WitnessPair, DEFAULT_C_MAX,
    DEFAULT_N0_MAX,
};
use crate::oracle::{verify_agreement, Mismatch};
use crate::parser::{parse_env, parse_stmt, ParseError};
use crate::printer::render_outcome;
use crate::programs::ProgramFamily;

#[derive(Parser)]
#[command(
    name = "steplang",
    about = "Step-counting interpreter and empirical bound checker",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a program file against a variable alist and print the
    /// (status vars steps) outcome triple.
    Run {
        /// Program file: one statement form, `;` comments allowed.
        #[arg(long)]
        program: PathBuf,
        /// Variable alist file, e.g. `((key . 4) (lst . (0 1 3)))`.
        #[arg(long)]
        vars: PathBuf,
        /// Clock bounding loop re-entries.
        #[arg(long)]
        count: u64,
    },
    /// Measure worst-case steps of a program family over input sizes and
    /// write them as CSV.
    Sweep {
        /// One of: binarysearch, binarysearch-alt, linear-search.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        /// Size stride (default 1). Conflicts with --geometric.
        #[arg(long, conflicts_with = "geometric")]
        n_step: Option<u64>,
        /// Double the size from n-min instead of stepping.
        #[arg(long)]
        geometric: bool,
        /// Output CSV path (header: n,steps,probe,timed_out).
        #[arg(long)]
        out: PathBuf,
    },
    /// Check steps <= c * g(n) for all sampled n >= n0.
    Check {
        #[arg(long)]
        csv: PathBuf,
        #[command(flatten)]
        class: ClassArg,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        n0: u64,
    },
    /// Search for the smallest witness pair (n0, c) within the limits.
    Fit {
        #[arg(long)]
        csv: PathBuf,
        #[command(flatten)]
        class: ClassArg,
        #[arg(long, default_value_t = DEFAULT_C_MAX)]
        c_max: u64,
        #[arg(long, default_value_t = DEFAULT_N0_MAX)]
        n0_max: u64,
    },
    /// Report the slowest-growing bound class admitting a witness.
    Classify {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = DEFAULT_C_MAX)]
        c_max: u64,
        #[arg(long, default_value_t = DEFAULT_N0_MAX)]
        n0_max: u64,
    },
    /// Exhaustively check the interpreter against the predicted outcomes
    /// and the recursive searches against each other, for all canonical
    /// lists up to the given length.
    OracleCheck {
        #[arg(long)]
        max_n: u64,
    },
}

#[derive(Args)]
struct ClassArg {
    /// One of: constant, log2, linear, nlog2n, quadratic.
    #[arg(long)]
    class: String,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: CsvError },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown bound class `{0}`")]
    UnknownClass(String),
    #[error("{0}")]
    Complexity(#[from] ComplexityError),
}

/// Machine-readable verdict record, one JSON object per analysis command.
#[derive(Serialize)]
struct VerdictRecord {
    command: &'static str,
    class: Option<&'static str>,
    c: Option<u64>,
    n0: Option<u64>,
    n_max_checked: u64,
    pass: bool,
    first_violation: Option<complexity::Violation>,
}

pub fn main_with(args: impl IntoIterator<Item = String>) -> ExitCode {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        // clap exits 2 on usage errors, 0 for --help/--version.
        Err(e) => e.exit(),
    };
    match dispatch(cli.command) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Run {
            program,
            vars,
            count,
        } => cmd_run(&program, &vars, count),
        Command::Sweep {
            family,
            n_min,
            n_max,
            n_step,
            geometric,
            out,
        } => cmd_sweep(&family, n_min, n_max, n_step, geometric, &out),
        Command::Check { csv, class, c, n0 } => cmd_check(&csv, &class.class, c, n0),
        Command::Fit {
            csv,
            class,
            c_max,
            n0_max,
        } => cmd_fit(&csv, &class.class, c_max, n0_max),
        Command::Classify { csv, c_max, n0_max } => cmd_classify(&csv, c_max, n0_max),
        Command::OracleCheck { max_n } => cmd_oracle_check(max_n),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn cmd_run(program_path: &Path, vars_path: &Path, count: u64) -> Result<bool, CliError> {
    let program =
        parse_stmt(&read_file(program_path)?).map_err(|source| CliError::Parse {
            path: program_path.to_path_buf(),
            source,
        })?;
    let vars = parse_env(&read_file(vars_path)?).map_err(|source| CliError::Parse {
        path: vars_path.to_path_buf(),
        source,
    })?;
    let outcome = crate::interp::run_program(&program, vars, count);
    println!("{}", render_outcome(&outcome));
    Ok(true)
}

fn cmd_sweep(
    family: &str,
    n_min: u64,
    n_max: u64,
    n_step: Option<u64>,
    geometric: bool,
    out: &Path,
) -> Result<bool, CliError> {
    let family = ProgramFamily::by_name(family)
        .ok_or_else(|| CliError::UnknownFamily(family.to_string()))?;
    let sizes = if geometric {
        complexity::geometric_sizes(n_min, n_max)
    } else {
        complexity::stepped_sizes(n_min, n_max, n_step.unwrap_or(1))
    };
    let samples = complexity::sweep(family, &sizes)?;
    let file = fs::File::create(out).map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    complexity::write_csv(file, &samples).map_err(|source| CliError::Csv {
        path: out.to_path_buf(),
        source,
    })?;
    println!(
        "swept {} at {} size(s) into {}",
        family.name,
        samples.len(),
        out.display()
    );
    Ok(true)
}

fn load_samples(path: &Path) -> Result<Vec<SweepSample>, CliError> {
    let file = fs::File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    complexity::read_csv(file).map_err(|source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_class(name: &str) -> Result<BoundClass, CliError> {
    BoundClass::by_name(name).ok_or_else(|| CliError::UnknownClass(name.to_string()))
}

fn emit(record: &VerdictRecord) {
    println!(
        "{}",
        serde_json::to_string(record).expect("verdict serializes")
    );
}

fn cmd_check(csv: &Path, class: &str, c: u64, n0: u64) -> Result<bool, CliError> {
    let samples = load_samples(csv)?;
    let class = parse_class(class)?;
    let verdict = complexity::check_bound(&samples, class, WitnessPair { c, n0 })?;
    println!(
        "check {class} c={c} n0={n0}: {} (n_max_checked={})",
        if verdict.pass { "PASS" } else { "FAIL" },
        verdict.n_max_checked
    );
    emit(&VerdictRecord {
        command: "check",
        class: Some(class.name()),
        c: Some(c),
        n0: Some(n0),
        n_max_checked: verdict.n_max_checked,
        pass: verdict.pass,
        first_violation: verdict.first_violation,
    });
    Ok(verdict.pass)
}

fn cmd_fit(csv: &Path, class: &str, c_max: u64, n0_max: u64) -> Result<bool, CliError> {
    let samples = load_samples(csv)?;
    let class = parse_class(class)?;
    let n_max_checked = samples.iter().map(|s| s.n).max().unwrap_or(0);
    let witness = complexity::find_witnesses(&samples, class, c_max, n0_max)?;
    match witness {
        Some(w) => println!("fit {class}: c={} n0={} (n_max_checked={n_max_checked})", w.c, w.n0),
        None => println!(
            "fit {class}: no witness with c <= {c_max}, n0 <= {n0_max} (n_max_checked={n_max_checked})"
        ),
    }
    emit(&VerdictRecord {
        command: "fit",
        class: Some(class.name()),
        c: witness.map(|w| w.c),
        n0: witness.map(|w| w.n0),
        n_max_checked,
        pass: witness.is_some(),
        first_violation: None,
    });
    Ok(witness.is_some())
}

fn cmd_classify(csv: &Path, c_max: u64, n0_max: u64) -> Result<bool, CliError> {
    let samples = load_samples(csv)?;
    let n_max_checked = samples.iter().map(|s| s.n).max().unwrap_or(0);
    let result = complexity::classify(&samples, c_max, n0_max)?;
    match result {
        Some((class, w)) => println!(
            "classify: {class} with c={} n0={} (n_max_checked={n_max_checked})",
            w.c, w.n0
        ),
        None => println!(
            "classify: no class admits a witness with c <= {c_max}, n0 <= {n0_max}"
        ),
    }
    emit(&VerdictRecord {
        command: "classify",
        class: result.map(|(class, _)| class.name()),
        c: result.map(|(_, w)| w.c),
        n0: result.map(|(_, w)| w.n0),
        n_max_checked,
        pass: result.is_some(),
        first_violation: None,
    });
    Ok(result.is_some())
}

fn cmd_oracle_check(max_n: u64) -> Result<bool, CliError> {
    match verify_agreement(max_n) {
        Ok(report) => {
            println!(
                "oracle-check max-n={max_n}: PASS ({} cases)",
                report.cases
            );
            Ok(true)
        }
        Err(failure) => {
            println!(
                "oracle-check max-n={max_n}: FAIL at n={} probe={}",
                failure.n, failure.probe
            );
            match failure.mismatch {
                Mismatch::Outcome { expected, actual } => {
                    println!("expected:\n{}", render_outcome(&expected));
                    println!("actual:\n{}", render_outcome(&actual));
                }
                Mismatch::RecursiveResult { bs, bs2 } => {
                    println!("recursive searches disagree: {bs} vs {bs2}");
                }
                Mismatch::InterpreterResult {
                    recursive,
                    interpreter,
                } => {
                    println!(
                        "interpreter result {:?} differs from recursive result {recursive}",
                        interpreter
                    );
                }
            }
            Ok(false)
        }
    }
}
