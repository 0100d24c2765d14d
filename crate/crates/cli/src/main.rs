//! `opower`: command-line front end for the ω-power toolkit.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "opower", version, about = "Finitary languages, eraser calculi and ω-power membership")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print symbols with ASCII names (~ for ↢, ~1 for ↢₁, al/be for α/β).
    #[arg(long, global = true)]
    pub ascii: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide membership of a finite word.
    Member { lang: String, word: String },
    /// Decide membership of a lasso word u·v^ω in the ω-power of a language.
    OmegaMember(OmegaArgs),
    /// ω-power commands.
    Opower {
        #[command(subcommand)]
        command: OpowerCommand,
    },
    /// List the members of a language up to a length.
    Enumerate {
        lang: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Compare two languages on every word up to a length.
    Crosscheck(CrosscheckArgs),
    /// Oracle commands.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Build a machine (`pn:<k>` or `automaton:<name>`) and print it as JSON.
    Construct { target: String },
    /// Print a machine as JSON, or as DOT with `--dot`.
    Export {
        target: String,
        #[arg(long)]
        dot: bool,
    },
    /// The coded transition system and the languages μ and π.
    Mupi {
        #[command(subcommand)]
        command: MupiCommand,
    },
    /// Language registry.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Args, Debug)]
pub struct OmegaArgs {
    #[arg(long)]
    pub lang: String,
    /// Lasso word `u:v`.
    #[arg(long)]
    pub lasso: String,
    /// Largest block length.
    #[arg(long, default_value_t = 8)]
    pub bound: usize,
    /// Try bounds 1, 2, 4, … up to `--bound`.
    #[arg(long)]
    pub escalate: bool,
}

#[derive(Subcommand, Debug)]
pub enum OpowerCommand {
    Member(OmegaArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct CrosscheckArgs {
    pub left: String,
    pub right: String,
    #[arg(long)]
    pub max_len: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    Crosscheck(CrosscheckArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Tree {
    Full,
    Diag,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Convention {
    Left,
    Right,
}

#[derive(Args, Debug)]
pub struct TreeArgs {
    #[arg(long, value_enum, default_value_t = Tree::Full)]
    pub tree: Tree,
    /// Component read by the final-state test.
    #[arg(long, value_enum, default_value_t = Convention::Left)]
    pub convention: Convention,
}

#[derive(Subcommand, Debug)]
pub enum MupiCommand {
    /// M_j.
    MIndex { j: usize },
    /// The state pair q_n.
    State { n: u64 },
    /// Membership in π, with its block parse.
    PiMember {
        word: String,
        #[command(flatten)]
        tree: TreeArgs,
    },
    /// Membership in A = μ ∪ π.
    AMember {
        word: String,
        #[command(flatten)]
        tree: TreeArgs,
    },
    /// All finite runs of the transition system on a binary input.
    Runs {
        input: String,
        #[command(flatten)]
        tree: TreeArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
