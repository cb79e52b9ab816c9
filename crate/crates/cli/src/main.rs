use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conacc_core::kripke::FrameClass;
use conacc_core::suite::Profile;
use conacc_core::LanguageTag;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "conacc", version, about = "Contingency and accident logic workbench")]
struct Cli {
    /// Output mode; machine mode prints one JSON object per line.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,

    /// Worker threads for bounded searches (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Args, Debug)]
struct FormulaInput {
    /// Formula in the ASCII syntax.
    formula: Option<String>,
    /// Read the formula from a file instead.
    #[arg(long, conflicts_with = "formula")]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Bounds {
    #[arg(long, default_value = "K", value_parser = parse_class)]
    class: FrameClass,
    #[arg(long, default_value_t = 3)]
    max_worlds: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and print it back.
    Parse {
        #[command(flatten)]
        input: FormulaInput,
        /// Print with Unicode operators.
        #[arg(long)]
        unicode: bool,
    },
    /// Evaluate a formula on a model file.
    Check {
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long)]
        model: PathBuf,
        /// World to evaluate at; without it the formula must hold everywhere.
        #[arg(long)]
        world: Option<String>,
    },
    /// Bounded validity: search for a countermodel.
    Valid {
        #[command(flatten)]
        input: FormulaInput,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Bounded satisfiability: search for a satisfying pointed model.
    Sat {
        #[command(flatten)]
        input: FormulaInput,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Eliminate announcements with the reduction axioms.
    Reduce {
        #[command(flatten)]
        input: FormulaInput,
        /// Print the rewrite trace.
        #[arg(long)]
        trace: bool,
    },
    /// Translate into the diamond language.
    Translate {
        #[command(flatten)]
        input: FormulaInput,
    },
    /// Frame transformations and normalisation.
    Frame {
        #[arg(value_enum)]
        op: FrameOp,
        /// Frame or model file.
        path: PathBuf,
    },
    /// Check that a formula defines a frame class up to the bound.
    Defines {
        #[command(flatten)]
        input: FormulaInput,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Search for a formula telling two pointed models apart.
    Distinguish {
        /// Pointed model file.
        first: PathBuf,
        /// Pointed model file.
        second: PathBuf,
        #[arg(long, default_value = "nabla-bullet", value_parser = parse_language)]
        language: LanguageTag,
        /// Atoms, comma separated.
        #[arg(long, default_value = "p", value_delimiter = ',')]
        atoms: Vec<String>,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// Check a proof file.
    ProofCheck { path: PathBuf },
    /// List, print or check the bundled derivations.
    Corpus {
        /// Print one derivation.
        name: Option<String>,
        /// Check every derivation.
        #[arg(long)]
        check: bool,
    },
    /// Bounded sweep of the iteration conjectures over transitive frames.
    Conjectures {
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Largest exponent sum and modality-string length.
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
    /// Run every bundled fixture and print a pass/fail table.
    PaperSuite {
        #[arg(long, value_enum, default_value_t = ProfileArg::Fast)]
        profile: ProfileArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FrameOp {
    Mirror,
    ReflClosure,
    DeadEnds,
    Serialize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Fast,
    Slow,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::Fast => Profile::Fast,
            ProfileArg::Slow => Profile::Slow,
        }
    }
}

fn parse_class(s: &str) -> Result<FrameClass, String> {
    s.parse()
}

fn parse_language(s: &str) -> Result<LanguageTag, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("global pool is configured once");
    }
    let mut out = commands::Output::new(cli.format == Format::Machine);
    let code = match commands::run(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            out.flush_to(&mut std::io::stdout());
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    out.flush_to(&mut std::io::stdout());
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
