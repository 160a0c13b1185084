use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use thompson_fn::checks::{run_suite, SuiteError, SuiteOptions};
use thompson_fn::document::{render_svg, serialize_element, DocumentError, ElementDocument};
use thompson_fn::element::ElementError;
use thompson_fn::word::GroupWord;
use thompson_fn::{PlElement, Rational};

/// Exact computation in the generalized Thompson groups F(N).
///
/// Exit codes: 0 pass, 1 check failure, 2 usage or parse error,
/// 3 validation error, 4 domain error, 5 I/O error.
#[derive(Parser)]
#[command(name = "thompson-fn", version)]
struct Cli {
    /// The group F(N); every element in one invocation must use this base.
    #[arg(long = "base", global = true)]
    base: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact image of X under the element in FILE.
    Eval { file: PathBuf, x: String },
    /// Evaluate a word such as "x1 x0^-1 A(1/2,1) f1(1/4) s" and print its document.
    Word {
        text: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-serialize the element in FILE in canonical form.
    Canon {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the graph of the element in FILE as SVG.
    Plot {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite: eq1, icc, lemma32, prop33, relations, phi, semidirect, central.
    Check {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random cases (sets, for prop33).
        #[arg(long, visible_alias = "sets")]
        samples: Option<usize>,
        /// Largest generator index for the relation suite.
        #[arg(long, default_value_t = 6)]
        maxj: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    CheckFailed,
    Usage(String),
    Validation(String),
    Domain(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::CheckFailed => 1,
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Domain(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(err: DocumentError) -> Self {
        match err {
            DocumentError::Element(_) => CliError::Validation(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path, base: Option<u32>) -> Result<PlElement, CliError> {
    let doc = ElementDocument::from_json(&read(path)?)?;
    if let Some(n) = base {
        if n != doc.base {
            return Err(CliError::Validation(format!(
                "document has N = {} but --base is {n}",
                doc.base
            )));
        }
    }
    Ok(doc.to_element()?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { file, x } => {
            let f = load(&file, cli.base)?;
            let x: Rational = x.parse().map_err(|e| CliError::Usage(format!("x: {e}")))?;
            let y = f.evaluate(&x).map_err(|e| match e {
                ElementError::OutOfDomain(_) => CliError::Domain(e.to_string()),
                _ => CliError::Validation(e.to_string()),
            })?;
            println!("{y}");
            Ok(())
        }
        Command::Word { text, out } => {
            let base = cli.base.unwrap_or(2);
            let word = GroupWord::parse(&text, base).map_err(|e| CliError::Usage(e.to_string()))?;
            let f = word
                .evaluate()
                .map_err(|e| CliError::Validation(e.to_string()))?;
            emit(&serialize_element(&f), out.as_deref())
        }
        Command::Canon { file, out } => {
            let f = load(&file, cli.base)?;
            emit(&serialize_element(&f), out.as_deref())
        }
        Command::Plot { file, out } => {
            let f = load(&file, cli.base)?;
            emit(&render_svg(&f), Some(&out))
        }
        Command::Check {
            suite,
            seed,
            samples,
            maxj,
            out,
        } => {
            let opts = SuiteOptions {
                base: cli.base.unwrap_or(2),
                seed,
                samples,
                max_j: maxj,
            };
            let report = run_suite(&suite, &opts).map_err(|e| match e {
                SuiteError::Unknown(_) => CliError::Usage(e.to_string()),
                SuiteError::Base(_) => CliError::Validation(e.to_string()),
            })?;
            emit(&report.to_json(), out.as_deref())?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::CheckFailed => eprintln!("check failed"),
                CliError::Usage(m)
                | CliError::Validation(m)
                | CliError::Domain(m)
                | CliError::Io(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(err.code())
        }
    }
}
