mod commands;
mod input;
mod render;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use uti_core::{CalendarSystem, OperandKind};

/// Reason about time intervals whose beginning and end are only known to
/// lie within ranges.
#[derive(Parser)]
#[command(name = "uti", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert calendar dates to Julian days and back
    Convert(ConvertArgs),
    /// Classify the 13 Allen relations between two intervals
    Relate(RelateArgs),
    /// Match the intervals of a dataset against a reference period
    Query(QueryArgs),
    /// Resolve every interval described in a dataset to Julian days
    Resolve(ResolveArgs),
    /// Draw the intervals of a dataset on a timeline
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned, human-readable text
    Text,
    /// One JSON object per line
    Lines,
    Svg,
    Ascii,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Interval,
    Instant,
}

impl From<Kind> for OperandKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Interval => OperandKind::Interval,
            Kind::Instant => OperandKind::Instant,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum System {
    Gregorian,
    Julian,
}

impl From<System> for CalendarSystem {
    fn from(s: System) -> Self {
        match s {
            System::Gregorian => CalendarSystem::Gregorian,
            System::Julian => CalendarSystem::Julian,
        }
    }
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("direction").required(true))]
pub struct ConvertArgs {
    /// Date, month, year or decade, e.g. 2018-07-01, 2018-07-01T06:00 or
    /// 1760s; periods print their bounds
    #[arg(long, value_name = "DATE", group = "direction", allow_hyphen_values = true)]
    pub to_jd: Option<String>,
    /// Julian day to convert to a calendar date and time of day
    #[arg(long, value_name = "JD", group = "direction", allow_hyphen_values = true)]
    pub to_date: Option<String>,
    #[arg(long, value_enum, default_value = "gregorian")]
    pub system: System,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Intervals are written as four Julian days `pb,rb,re,pe`, a single Julian
/// day with a fraction (`2458119.5`) for an exact instant, or calendar
/// periods such as `1760s`, `2018-03` or `2018-01-01..2018-06` (from the
/// start of the first period to the end of the last).
#[derive(Args)]
pub struct RelateArgs {
    #[arg(allow_hyphen_values = true)]
    pub a: String,
    #[arg(allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, value_enum, default_value = "interval")]
    pub kind_a: Kind,
    #[arg(long, value_enum, default_value = "interval")]
    pub kind_b: Kind,
    /// Cross-check the result by brute-force enumeration; exit 3 on mismatch
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value = "gregorian")]
    pub system: System,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("cond").required(true))]
pub struct QueryArgs {
    /// Turtle files, or `-` for standard input
    #[arg(required = true)]
    pub datasets: Vec<PathBuf>,
    /// Id of a resource in the dataset, or an interval literal
    #[arg(long, allow_hyphen_values = true)]
    pub reference: String,
    /// Comma-separated relations, e.g. `starts,during,finishes`
    #[arg(long, group = "cond")]
    pub condition: Option<String>,
    /// within, alive-during or intersects
    #[arg(long, group = "cond")]
    pub preset: Option<String>,
    /// Only match these records (repeatable)
    #[arg(long = "record")]
    pub records: Vec<String>,
    #[arg(long, value_enum, default_value = "gregorian")]
    pub system: System,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args)]
pub struct ResolveArgs {
    #[arg(required = true)]
    pub datasets: Vec<PathBuf>,
    /// Write the resolved intervals as Turtle with Julian-day literals
    #[arg(long)]
    pub emit: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args)]
pub struct RenderArgs {
    #[arg(required = true)]
    pub datasets: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "svg")]
    pub format: Format,
    /// Write to a file instead of standard output
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Canvas width in pixels (svg) or columns (ascii)
    #[arg(long)]
    pub width: Option<u32>,
}

/// An error carrying the process exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl fmt::Display) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::input(format!("{e:#}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        // a closed downstream pipe is not an error for a filter
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Failure {
                code: 0,
                message: String::new(),
            }
        } else {
            Failure::input(e)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Convert(args) => commands::convert(&args),
        Command::Relate(args) => commands::relate(&args),
        Command::Query(args) => commands::query(&args),
        Command::Resolve(args) => commands::resolve(&args),
        Command::Render(args) => commands::render(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("uti: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
