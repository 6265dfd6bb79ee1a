use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grouplab::document::GroupDocument;
use grouplab::verify::{self, Context};
use grouplab::{CliError, Format, Mode};

/// Construct and analyze small finite groups.
///
/// GROUP arguments are family specs (C8, D4, Dic6, Q16, SD8, SA8, DQ8,
/// C8xC2, C4xC2xC2, sdp:16:7, pauli1) or paths to group documents.
#[derive(Parser)]
#[command(name = "grouplab", version)]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a group as a JSON document or as a DOT graph.
    Construct {
        group: String,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Print a JSON report of the group's structure.
    Analyze { group: String },
    /// Compare two groups; exit 0 if equivalent, 1 if not.
    Compare {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value = "iso")]
        mode: ModeArg,
    },
    /// Run the claim suite; exit 0 iff every selected claim passes.
    Verify {
        /// Run only this claim (repeatable).
        #[arg(long)]
        claim: Vec<String>,
        /// Also check this group document in the latin-square claim (repeatable).
        #[arg(long)]
        table: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    DotCayley,
    DotCycle,
    DotLattice,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Iso,
    Lattice,
    Cyclegraph,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Construct { group, format } => {
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::DotCayley => Format::DotCayley,
                FormatArg::DotCycle => Format::DotCycle,
                FormatArg::DotLattice => Format::DotLattice,
            };
            emit(&cli.output, &grouplab::construct(&group, format)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze { group } => {
            emit(&cli.output, &grouplab::analyze(&group)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { left, right, mode } => {
            let mode = match mode {
                ModeArg::Iso => Mode::Iso,
                ModeArg::Lattice => Mode::Lattice,
                ModeArg::Cyclegraph => Mode::Cyclegraph,
            };
            let result = grouplab::compare(&left, &right, mode)?;
            emit(&cli.output, &result.to_json())?;
            Ok(if result.equivalent { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Verify { claim, table, format } => {
            let mut ctx = Context::default();
            for path in table {
                ctx.tables.push((path.display().to_string(), GroupDocument::load(&path)?));
            }
            let report = verify::run(&claim, &ctx).map_err(CliError::Parse)?;
            let text = match format {
                ReportFormat::Json => report.to_json(),
                ReportFormat::Table => {
                    let color = cli.output.is_none() && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
                    report.to_table(color)
                }
            };
            emit(&cli.output, &text)?;
            Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("grouplab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
