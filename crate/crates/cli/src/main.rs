//! `locconvex`: command-line access to the locconvex library.
//!
//! Every subcommand reads JSON (from a path, or stdin when the path is
//! absent or `-`) and writes JSON to stdout. Failures are reported as a JSON
//! object on stderr with exit status 1; `--strict` turns an inconclusive
//! convexity verdict into exit status 2.

mod commands;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable that overrides `--seed`.
const SEED_ENV: &str = "LOCCONVEX_SEED";

#[derive(Debug, Parser)]
#[command(name = "locconvex", version, about = "Locally convex curves on spheres")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct GlobalOpts {
    /// Resolution: sample count for curve output, grid size for checks.
    #[arg(long, global = true)]
    steps: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized searches; LOCCONVEX_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    /// Flattened rows; only for curve samples.
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample one of the example curves: gamma1..gamma4 on S³, sigma on S².
    Example {
        name: String,
        /// Family index m, or the number of turns of sigma.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Length of sigma, in (0, 2π].
        #[arg(long, default_value_t = std::f64::consts::PI)]
        c: f64,
    },
    /// Split a curve on S³ into its left and right parts on S².
    Decompose { input: Option<PathBuf> },
    /// Rebuild a curve on S³ from a pair of curves on S².
    Fuse {
        input: Option<PathBuf>,
        /// Only require κ_l > κ_r instead of κ_l > |κ_r|.
        #[arg(long)]
        quasi: bool,
    },
    /// Print the Bruhat cell of a matrix, spin or signed permutation name.
    Classify { input: Option<PathBuf> },
    /// Print chop⁻ (or chop⁺ with --plus) of a matrix, spin or cell name.
    Chop {
        input: Option<PathBuf>,
        #[arg(long)]
        plus: bool,
    },
    /// Print the 24 convex cells of Spin₄.
    ConvexTable {
        /// Re-derive every row and report the comparison.
        #[arg(long)]
        verify: bool,
    },
    /// Decide whether a sampled curve is convex.
    Convexity {
        input: Option<PathBuf>,
        /// Only search for a hyperplane certificate of non-convexity.
        #[arg(long)]
        certificate: bool,
        /// Exit with status 2 when the verdict is inconclusive.
        #[arg(long)]
        strict: bool,
    },
    /// Integrate a coefficient path into a Jacobian curve.
    Integrate {
        input: Option<PathBuf>,
        /// Allow the last coefficient to take either sign.
        #[arg(long)]
        quasi: bool,
        /// Number of output samples.
        #[arg(long, default_value_t = 1024)]
        samples: usize,
    },
}

/// What a subcommand produced.
pub enum Output {
    Json(serde_json::Value),
    Samples(locconvex::io::CurveSamples),
}

/// Result of a subcommand together with its exit status.
pub struct Outcome {
    pub output: Output,
    pub inconclusive: bool,
    /// A verification ran and found discrepancies; the report is still
    /// printed.
    pub failed: bool,
}

impl Outcome {
    fn json(value: impl serde::Serialize) -> anyhow::Result<Self> {
        Ok(Outcome { output: Output::Json(serde_json::to_value(value)?), inconclusive: false, failed: false })
    }

    fn samples(samples: locconvex::io::CurveSamples) -> anyhow::Result<Self> {
        Ok(Outcome { output: Output::Samples(samples), inconclusive: false, failed: false })
    }
}

fn read_input(path: Option<&PathBuf>) -> anyhow::Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        }
    }
    Ok(text)
}

fn effective_seed(flag: u64) -> anyhow::Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{SEED_ENV}={v:?} is not an unsigned integer")),
        Err(_) => Ok(flag),
    }
}

fn render(output: &Output, format: Format) -> anyhow::Result<Vec<u8>> {
    match (output, format) {
        (Output::Json(v), Format::Json) => Ok(serde_json::to_vec(v)?),
        (Output::Samples(s), Format::Json) => Ok(serde_json::to_vec(s)?),
        (Output::Samples(s), Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(s.csv_header())?;
            for row in s.csv_rows() {
                w.write_record(row)?;
            }
            Ok(w.into_inner()?)
        }
        (Output::Json(_), Format::Csv) => anyhow::bail!(locconvex::Error::InvalidInput(
            "csv output is only available for curve samples".into()
        )),
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let seed = effective_seed(cli.global.seed)?;
    let steps = cli.global.steps;
    let outcome = match &cli.command {
        Command::Example { name, m, c } => commands::example(name, *m, *c, steps)?,
        Command::Decompose { input } => commands::decompose(&read_input(input.as_ref())?, steps)?,
        Command::Fuse { input, quasi } => commands::fuse(&read_input(input.as_ref())?, *quasi, steps)?,
        Command::Classify { input } => commands::classify(&read_input(input.as_ref())?)?,
        Command::Chop { input, plus } => commands::chop(&read_input(input.as_ref())?, *plus)?,
        Command::ConvexTable { verify } => commands::convex_table(*verify)?,
        Command::Convexity { input, certificate, strict: _ } => {
            commands::convexity(&read_input(input.as_ref())?, *certificate, steps, seed)?
        }
        Command::Integrate { input, quasi, samples } => {
            commands::integrate(&read_input(input.as_ref())?, *quasi, steps, *samples)?
        }
    };
    let mut bytes = render(&outcome.output, cli.global.format)?;
    if cli.global.format == Format::Json {
        bytes.push(b'\n');
    }
    match &cli.global.output {
        Some(p) => std::fs::write(p, &bytes).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    let strict = matches!(cli.command, Command::Convexity { strict: true, .. });
    Ok(match (outcome.failed, strict && outcome.inconclusive) {
        (true, _) => 1,
        (false, true) => 2,
        (false, false) => 0,
    })
}

/// The variant name of a library error, or a generic kind.
fn error_kind(e: &anyhow::Error) -> String {
    match e.downcast_ref::<locconvex::Error>() {
        Some(inner) => {
            let debug = format!("{inner:?}");
            debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
        }
        None if e.downcast_ref::<serde_json::Error>().is_some() => "Json".into(),
        None if e.downcast_ref::<std::io::Error>().is_some() => "Io".into(),
        None => "Error".into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let report = serde_json::json!({ "error": { "kind": error_kind(&e), "message": format!("{e:#}") } });
            eprintln!("{report}");
            ExitCode::from(1)
        }
    }
}
