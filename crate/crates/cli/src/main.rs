//! Command-line front end: every headline computation is a subcommand
//! with text, JSON, and CSV output, all in exact rational arithmetic.
//! The process exits 0 only when every reported check passes.

mod commands;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tracegap::asymptotics::{DEFAULT_BRIDGE_RUN_CAP, DEFAULT_WALK_RUN_CAP};
use tracegap::average::DEFAULT_WORD_SUM_LEN_CAP;
use tracegap::exact::{parse_rational, Rational};
use tracegap::words::Word;

use report::Output;

#[derive(Parser)]
#[command(
    name = "tracegap",
    version,
    about = "Exact word-trace computations for the pair A_x = P + 2xU, B_x = 2xV + Q",
    long_about = "Exact rational computations over a one-parameter pair of 3x3 positive \
                  semidefinite matrices: word traces, leading exponents by three independent \
                  methods, ensemble averages by two independent routes, and sign scans of the \
                  clustered-minus-average gap. Exit status is 0 only if every check passes."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the primary output to this file instead of stdout
    /// (for `scan`: the CSV grid).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cap on n+m for ensemble word sums.
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_SUM_LEN_CAP)]
    max_words: u32,

    /// Cap on run pairs for the walk and subset searches.
    #[arg(long, global = true)]
    max_runs: Option<u32>,

    /// Size of the worker pool for exhaustive sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KappaMethodArg {
    All,
    Brute,
    Walks,
    Bridge,
}

impl fmt::Display for KappaMethodArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KappaMethodArg::All => "all",
            KappaMethodArg::Brute => "brute",
            KappaMethodArg::Walks => "walks",
            KappaMethodArg::Bridge => "bridge",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AverageMethodArg {
    Sum,
    Newton,
    Both,
}

impl fmt::Display for AverageMethodArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AverageMethodArg::Sum => "sum",
            AverageMethodArg::Newton => "newton",
            AverageMethodArg::Both => "both",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SectionArg {
    NormalForm,
    Table1,
    Classification,
    Appendix,
    All,
}

impl fmt::Display for SectionArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SectionArg::NormalForm => "normal-form",
            SectionArg::Table1 => "table1",
            SectionArg::Classification => "classification",
            SectionArg::Appendix => "appendix",
            SectionArg::All => "all",
        };
        write!(f, "{s}")
    }
}

/// Search caps threaded into the guarded operations.
pub struct Caps {
    pub max_words: u32,
    pub max_runs_walks: u32,
    pub max_runs_bridge: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Exact trace polynomial of a word in A_x, B_x.
    Trace {
        /// Word as plain letters ("AAABB") or run tokens ("A^3 B^2").
        #[arg(long, value_parser = parse_word)]
        word: Word,
    },
    /// Leading exponent (and coefficient) of a word trace.
    Kappa {
        #[arg(long, value_parser = parse_word)]
        word: Word,
        /// Which route(s) to run; `all` also cross-checks agreement.
        #[arg(long, value_enum, default_value_t = KappaMethodArg::All)]
        method: KappaMethodArg,
    },
    /// Run a verification section and report every check.
    Verify {
        #[arg(long, value_enum, default_value_t = SectionArg::All)]
        section: SectionArg,
        /// Letter counts for the classification section.
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long, default_value_t = 5)]
        m: u32,
    },
    /// Ensemble average p_{n,m} over all words with n A's and m B's.
    Average {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// word sum, characteristic-polynomial route, or both.
        #[arg(long, value_enum, default_value_t = AverageMethodArg::Both)]
        method: AverageMethodArg,
    },
    /// Exact sign of the gap tr(A^n B^m) - p_{n,m} on a rational grid.
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Rational or decimal, converted exactly (e.g. "0", "1/10", "0.001").
        #[arg(long, value_parser = parse_rational_arg, default_value = "0")]
        x_lo: Rational,
        #[arg(long, value_parser = parse_rational_arg, default_value = "1/10")]
        x_hi: Rational,
        #[arg(long, default_value_t = 100)]
        steps: u32,
    },
    /// Words of leading order x^4 (alias for verify --section classification).
    Classify {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long, default_value_t = 5)]
        m: u32,
    },
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e: tracegap::Error| e.to_string())
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<Output> {
    let caps = Caps {
        max_words: cli.max_words,
        max_runs_walks: cli.max_runs.unwrap_or(DEFAULT_WALK_RUN_CAP),
        max_runs_bridge: cli.max_runs.unwrap_or(DEFAULT_BRIDGE_RUN_CAP),
    };
    match &cli.command {
        Command::Trace { word } => commands::cmd_trace(word),
        Command::Kappa { word, method } => commands::cmd_kappa(word, *method, &caps),
        Command::Verify { section, n, m } => commands::cmd_verify(*section, *n, *m, &caps),
        Command::Average { n, m, method } => commands::cmd_average(*n, *m, *method, &caps),
        Command::Scan {
            n,
            m,
            x_lo,
            x_hi,
            steps,
        } => commands::cmd_scan(*n, *m, x_lo, x_hi, *steps, &caps),
        Command::Classify { n, m } => commands::cmd_classify(*n, *m),
    }
}

fn emit(cli: &Cli, output: &Output) -> Result<()> {
    let is_scan = matches!(cli.command, Command::Scan { .. });
    if is_scan {
        // The CSV grid is the scan's file artifact; the report always goes
        // to stdout.
        if let Some(path) = &cli.out {
            std::fs::write(path, output.to_csv())
                .with_context(|| format!("writing {}", path.display()))?;
        }
        let rendered = match cli.format {
            Format::Text => output.to_text(),
            Format::Json => output.to_json(),
            Format::Csv => output.to_csv(),
        };
        if cli.out.is_none() || cli.format != Format::Csv {
            print!("{rendered}");
        }
        return Ok(());
    }
    let rendered = match cli.format {
        Format::Text => output.to_text(),
        Format::Json => output.to_json(),
        Format::Csv => output.to_csv(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: configuring {threads} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(output) => {
            if let Err(e) = emit(&cli, &output) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if output.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
