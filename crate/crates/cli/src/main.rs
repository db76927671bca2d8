//! `rsmem`: batch front-end for the RS memory reliability models.

mod commands;
mod error;
mod presets;
mod scenario;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rsmem_core::metrics::AREA_NOTE;
use rsmem_core::{Arrangement, RateMode, ScrubDiscipline, DEFAULT_TOL};

use error::CliError;
use scenario::ScenarioFile;

#[derive(Parser)]
#[command(name = "rsmem", version, about = "Reliability of RS-protected simplex and duplex memory words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transient P_fail and BER over the scenario's time grid (CSV).
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        mode: ModeOpt,
        /// Absolute truncation tolerance of the transient solver.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo estimate of P_fail at the horizon (CSV).
    Mc {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        mode: ModeOpt,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = DisciplineArg::Exponential)]
        discipline: DisciplineArg,
        #[command(flatten)]
        output: Output,
    },
    /// Dump the enumerated states and the edge list.
    States {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        mode: ModeOpt,
        #[command(flatten)]
        output: Output,
    },
    /// Decoder latency and storage overhead of a code (CSV).
    Metrics {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        m: u32,
        #[arg(long, value_enum, default_value_t = ArrangementArg::Simplex)]
        arrangement: ArrangementArg,
        #[command(flatten)]
        output: Output,
    },
    /// List the bundled presets, or print one as a scenario file.
    Presets {
        name: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Scenario file (TOML).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Bundled scenario: case1, case2 or case3.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Args)]
struct ModeOpt {
    /// Override the file's rate_mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Args)]
struct Output {
    /// Write to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Physical,
    PaperLiteral,
}

#[derive(Clone, Copy, ValueEnum)]
enum DisciplineArg {
    Exponential,
    DeterministicPeriod,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArrangementArg {
    Simplex,
    Duplex,
}

impl Input {
    fn load(&self, mode: &ModeOpt) -> Result<ScenarioFile, CliError> {
        let mode = mode.mode.map(|m| match m {
            ModeArg::Physical => RateMode::Physical,
            ModeArg::PaperLiteral => RateMode::PaperLiteral,
        });
        match (&self.file, &self.preset) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Input(format!("cannot read {}: {e}", path.display()))
                })?;
                scenario::parse(&text, mode)
                    .map_err(|e| prefix(e, &path.display().to_string()))
            }
            (None, Some(name)) => {
                let p = presets::find(name)
                    .ok_or_else(|| CliError::Input(format!("unknown preset {name:?}")))?;
                scenario::parse(p.text, mode).map_err(|e| prefix(e, name))
            }
            (None, None) => unreachable!("clap enforces one input"),
        }
    }
}

fn prefix(e: CliError, origin: &str) -> CliError {
    match e {
        CliError::Input(msg) => CliError::Input(format!("{origin}: {msg}")),
        other => other,
    }
}

fn emit(output: &Output, text: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            input,
            mode,
            tol,
            output,
        } => {
            let file = input.load(&mode)?;
            emit(&output, &commands::analyze(&file, tol)?)
        }
        Command::Mc {
            input,
            mode,
            trials,
            seed,
            discipline,
            output,
        } => {
            let file = input.load(&mode)?;
            let discipline = match discipline {
                DisciplineArg::Exponential => ScrubDiscipline::Exponential,
                DisciplineArg::DeterministicPeriod => ScrubDiscipline::DeterministicPeriod,
            };
            emit(&output, &commands::mc(&file, trials, seed, discipline)?)
        }
        Command::States {
            input,
            mode,
            output,
        } => {
            let file = input.load(&mode)?;
            emit(&output, &commands::states(&file)?)
        }
        Command::Metrics {
            n,
            k,
            m,
            arrangement,
            output,
        } => {
            let arrangement = match arrangement {
                ArrangementArg::Simplex => Arrangement::Simplex,
                ArrangementArg::Duplex => Arrangement::Duplex,
            };
            let text = commands::metrics(n, k, m, arrangement)?;
            eprintln!("note: {AREA_NOTE}");
            emit(&output, &text)
        }
        Command::Presets { name, output } => match name {
            None => {
                let list: String = presets::PRESETS
                    .iter()
                    .map(|p| format!("{}\t{}\n", p.name, p.summary))
                    .collect();
                emit(&output, &list)
            }
            Some(name) => {
                let p = presets::find(&name)
                    .ok_or_else(|| CliError::Input(format!("unknown preset {name:?}")))?;
                emit(&output, p.text)
            }
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rsmem: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
