//! Command-line front end: `run` parses arguments, dispatches a subcommand and returns
//! the process exit code (0 success, 1 invalid input or domain error, 2 usage error).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use ftsdist_core::io::{self, IoError};
use ftsdist_core::{
    behavioral_distance, compose, compose_reachable, greatest_bisimulation, lifted_distance,
    quotient, similarity, CompositionMode, Degree, Fts, ValidatedSystem,
};

#[derive(Debug, Parser)]
#[command(name = "ftsdist", version, about = "Behavioral distances for fuzzy-transition systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a system file and report diagnostics.
    Validate { file: PathBuf },
    /// Print the behavioral distance matrix.
    Distance {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// Also print every iterate of the fixpoint computation.
        #[arg(long)]
        trace: bool,
    },
    /// Print the classes of states within distance LAMBDA of each other.
    Quotient {
        file: PathBuf,
        #[arg(long, value_parser = parse_degree)]
        lambda: Degree,
    },
    /// Decide whether two states are bisimilar.
    Bisim { file: PathBuf, s: String, t: String },
    /// Print the similarity matrix, one minus the distance.
    Similar {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Compose a system with itself and print the resulting system document.
    Compose {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// Write the document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep only the part reachable from the pair S1, S2.
        #[arg(long, num_args = 2, value_names = ["S1", "S2"])]
        from: Option<Vec<String>>,
    },
    /// Lifted distance between two named distributions of FILE under a metric.
    Lift {
        file: PathBuf,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        metric: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    Parallel,
    Product,
}

fn parse_degree(s: &str) -> Result<Degree, String> {
    s.parse().map_err(|e: ftsdist_core::DegreeError| e.to_string())
}

/// A failure reported on standard error with exit code 1.
struct Failure(String);

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            // one `error:` line per diagnostic
            IoError::Validation(v) => Failure(
                v.0.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("\nerror: "),
            ),
            other => Failure(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

/// Runs the command line `args` (program name first), writing results to `out` and
/// diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<ValidatedSystem, Failure> {
    let v = io::parse_system(path)?;
    for w in &v.warnings {
        writeln!(err, "warning: {w}")?;
    }
    Ok(v)
}

fn state(fts: &Fts, name: &str) -> Result<usize, Failure> {
    fts.state_index(name)
        .ok_or_else(|| Failure(format!("unknown state `{name}`")))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Validate { file } => {
            let v = load(&file, err)?;
            let fts = &v.system;
            writeln!(
                out,
                "ok: {} states, {} labels, {} transitions",
                fts.num_states(),
                fts.num_labels(),
                fts.iter_transitions().count()
            )?;
        }
        Command::Distance { file, format, trace } => {
            let fts = load(&file, err)?.system;
            let run = behavioral_distance(&fts).map_err(|e| Failure(e.to_string()))?;
            let states = fts.states();
            let text = match (format, trace) {
                (Format::Tsv, false) => io::render_matrix_tsv(states, &run.distance().to_matrix()),
                (Format::Json, false) => io::render_matrix_json(states, &run.distance().to_matrix()),
                (Format::Tsv, true) => io::render_trace_tsv(states, &run),
                (Format::Json, true) => io::render_trace_json(states, &run),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Quotient { file, lambda } => {
            let fts = load(&file, err)?.system;
            let p = quotient(&fts, lambda).map_err(|e| Failure(e.to_string()))?;
            out.write_all(io::render_partition(fts.states(), &p).as_bytes())?;
        }
        Command::Bisim { file, s, t } => {
            let fts = load(&file, err)?.system;
            let (i, j) = (state(&fts, &s)?, state(&fts, &t)?);
            let d = behavioral_distance(&fts)
                .map_err(|e| Failure(e.to_string()))?
                .distance()
                .get(i, j);
            let verdict = if greatest_bisimulation(&fts).same_block(i, j) {
                "bisimilar"
            } else {
                "not-bisimilar"
            };
            writeln!(out, "{verdict}\td_f({s}, {t}) = {d}")?;
        }
        Command::Similar { file, format } => {
            let fts = load(&file, err)?.system;
            let m = similarity(&fts).map_err(|e| Failure(e.to_string()))?.to_matrix();
            let text = match format {
                Format::Tsv => io::render_matrix_tsv(fts.states(), &m),
                Format::Json => io::render_matrix_json(fts.states(), &m),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Compose { file, op, out: target, from } => {
            let fts = load(&file, err)?.system;
            let mode = match op {
                Op::Parallel => CompositionMode::Parallel,
                Op::Product => CompositionMode::Product,
            };
            let composed = match from.as_deref() {
                Some([s1, s2]) => compose_reachable(&fts, mode, (state(&fts, s1)?, state(&fts, s2)?)),
                Some(_) => unreachable!("clap enforces two values"),
                None => compose(&fts, mode),
            };
            let text = io::system_to_json(&composed);
            match target {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure(format!("{}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Lift { file, mu, eta, metric } => {
            let v = load(&file, err)?;
            let named = |name: &str| {
                v.distributions
                    .get(name)
                    .ok_or_else(|| Failure(format!("no distribution named `{name}` in {}", file.display())))
            };
            let (m, e) = (named(&mu)?, named(&eta)?);
            let d = io::parse_metric(&metric, v.system.states())?;
            writeln!(out, "{}", lifted_distance(&d, m, e))?;
        }
    }
    Ok(())
}
