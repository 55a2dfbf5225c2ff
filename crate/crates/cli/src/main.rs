//! Command-line front end for the linnet prover.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use linnet::commands::{cmd_compare, cmd_parse, cmd_prove, cmd_translate, Options, Report};
use linnet::SearchConfig;

#[derive(Parser)]
#[command(name = "linnet", version, about = "Proof-net prover for first-order linear logic and type-logical grammar")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a sentence with a lexicon file.
    Parse {
        lexicon: String,
        sentence: String,
        /// Goal formula; the constants L and R stand for 0 and the sentence length.
        #[arg(long)]
        goal: Option<String>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Prove a MILL1 sequent such as "a, a -o b |- b".
    Prove {
        sequent: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Print the derivability relation between the named formulas of a file.
    Compare {
        file: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Translate a Lambek formula spanning two string positions.
    Translate { formula: String, left: u32, right: u32 },
}

#[derive(Args)]
struct Flags {
    /// Stop after this many readings.
    #[arg(long)]
    max_readings: Option<usize>,
    /// Maximum number of axiom-link attempts.
    #[arg(long, default_value_t = SearchConfig::default().step_budget)]
    budget: u64,
    /// Print contraction traces and search statistics.
    #[arg(long)]
    trace: bool,
    /// Print deep-structure proof terms.
    #[arg(long)]
    sem: bool,
    /// Check complete structures only, without the running contraction graph.
    #[arg(long)]
    no_early_contraction: bool,
    /// Report quantifiers that do not bind one positive and one negative occurrence.
    #[arg(long)]
    lint_two_occurrence: bool,
}

impl Flags {
    fn options(&self) -> Options {
        Options {
            search: SearchConfig {
                max_readings: self.max_readings,
                step_budget: self.budget,
                early_contraction: !self.no_early_contraction,
                diagnostic_two_occurrence: self.lint_two_occurrence,
                ..SearchConfig::default()
            },
            trace: self.trace,
            sem: self.sem,
        }
    }
}

fn read(path: &str) -> Result<String, Report> {
    fs::read_to_string(path).map_err(|e| Report {
        text: format!("ERROR: cannot read {path}: {e}\n"),
        status: linnet::commands::Status::InputError,
    })
}

fn run(cli: Cli) -> Report {
    match cli.command {
        Command::Parse { lexicon, sentence, goal, flags } => match read(&lexicon) {
            Ok(text) => cmd_parse(&text, &sentence, goal.as_deref(), &flags.options()),
            Err(r) => r,
        },
        Command::Prove { sequent, flags } => cmd_prove(&sequent, &flags.options()),
        Command::Compare { file, flags } => match read(&file) {
            Ok(text) => cmd_compare(&text, &flags.options()),
            Err(r) => r,
        },
        Command::Translate { formula, left, right } => cmd_translate(&formula, left, right),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let report = run(cli);
    if report.status == linnet::commands::Status::InputError {
        eprint!("{}", report.text);
    } else {
        print!("{}", report.text);
    }
    ExitCode::from(report.status.code() as u8)
}
