mod commands;
mod report;

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shapefib::format::Document;
use shapefib::Error;

const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;

#[derive(Parser, Debug)]
#[command(name = "shapefib", version, about = "Modal fibrations on graphs, presented groupoids and finite groupoids")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write a DOT rendering to this path, for commands that have one.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Report wall-clock time. Makes the output nondeterministic.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Document path, or `-` for stdin.
    pub file: PathBuf,
    /// Section to analyse; defaults to the only section of the expected kind.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a graph map (both shape levels) or a finite functor (one truncation level).
    Classify {
        #[command(flatten)]
        input: Input,
        /// Truncation level for functors: -1 or 0.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        level: i32,
    },
    /// Connected/modal factorization of a map at level 0.
    Factor0 {
        #[command(flatten)]
        input: Input,
    },
    /// Fiber-shape criteria for a graph map; passes when the constant-fiber criterion holds.
    Criteria {
        #[command(flatten)]
        input: Input,
    },
    /// The fiber comparison over one vertex or object.
    Prism {
        #[command(flatten)]
        input: Input,
        /// Label of the target vertex or object.
        #[arg(long)]
        vertex: String,
        /// Radius for coset representatives.
        #[arg(long, default_value_t = shapefib::hfiber::DEFAULT_RADIUS)]
        radius: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        level: i32,
    },
    /// Covering spaces and their monodromy.
    #[command(subcommand)]
    Covers(CoversCommand),
    /// Homotopy quotients of graph actions.
    #[command(subcommand)]
    Quotient(QuotientCommand),
    /// Seeded property sweeps over random finite functors.
    #[command(subcommand)]
    Suite(SuiteCommand),
}

#[derive(Subcommand, Debug)]
pub enum CoversCommand {
    /// Every marked n-sheeted cover of a connected graph.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
    },
    /// Monodromy of a covering map.
    Monodromy {
        #[command(flatten)]
        input: Input,
        /// Base vertex label; defaults to the basepoint.
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Total space of a monodromy description.
    Total {
        #[command(flatten)]
        input: Input,
    },
    /// Ball in the universal cover, with initiality against the document's monodromies.
    UniversalBall {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        radius: usize,
    },
    /// Components and fundamental groups of the total space against the monodromy orbits.
    VerifyShape {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuotientCommand {
    /// Shape of the homotopy quotient of a graph action.
    Shape {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = shapefib::quotients::GROUP_ORDER_BOUND)]
        max_group: usize,
    },
    /// Checks that the quotient map is a fibration, with its fiber sequences.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = shapefib::quotients::GROUP_ORDER_BOUND)]
        max_group: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Subcommand, Debug)]
pub enum SuiteCommand {
    /// Agreement of the fibration characterizations on random finite functors.
    NineWay(SuiteArgs),
    /// Closure of fibrations under composition and pullback.
    Closure(SuiteArgs),
    /// Implications between the level -1 and level 0 classes.
    CompareModalities(SuiteArgs),
}

pub fn load(path: &PathBuf) -> Result<Document, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
    };
    Ok(Document::parse(&text)?)
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Parse { .. }) => EXIT_PARSE,
            // a bound was hit before anything was decided
            CliError::Lib(Error::SizeBound { .. }) => 2,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let report = match commands::run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let elapsed = cli.timing.then(|| start.elapsed());
    if let Some(path) = &cli.dot {
        match &report.dot {
            Some(d) => {
                if let Err(e) = std::fs::write(path, d) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            None => eprintln!("note: `{}` has no DOT rendering", report.command),
        }
    }
    let out = match cli.format {
        Format::Text => report.render_text(elapsed),
        Format::Json => report.render_json(elapsed),
    };
    print!("{out}");
    ExitCode::from(report.status.exit_code())
}
