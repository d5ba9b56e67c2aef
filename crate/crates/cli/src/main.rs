mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use theta_symbols::{DualPair, GroupKind, GroupTag, Sign, Symbol};

const MARKERS: &str = "\
Markers in plain Θ-set and table output:
  NAME*   the θ̄ image of the source (overline in the usual notation)
  NAME!   an element of maximal order in Θ(source) (natural sign)
  ~NAME   already taken by θ̄ of an earlier source, so not in Θ♭ (struck out)
  -       an empty block Θ_k
  (empty) Θ(source) is empty
Within a block θ_k comes first.

Environment:
  THETA_SYMBOLS_THREADS   worker threads for `verify` sweeps";

#[derive(Parser)]
#[command(name = "theta-symbols", version, about = "Θ-correspondence on unipotent symbols", after_help = MARKERS)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List a family S_{n,δ} in increasing ε-linear order.
    Enum {
        /// Group whose families are listed, e.g. O+8.
        #[arg(long, required_unless_present = "pair")]
        group: Option<GroupTag>,
        /// Use the first member of this pair and its ε.
        #[arg(long, conflicts_with = "group")]
        pair: Option<DualPair>,
        #[arg(long, allow_negative_numbers = true)]
        delta: Option<i32>,
        /// Order to use for symplectic families (default +).
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<Sign>,
    },
    /// Print Θ(symbol) block by block.
    ThetaSet {
        #[arg(long)]
        pair: DualPair,
        #[arg(long, allow_hyphen_values = true)]
        symbol: Symbol,
        /// Also print θ_k for every k with orders and the α/β diagnostics.
        #[arg(long)]
        peak: bool,
    },
    /// The θ̲/θ̄ table of every family of the first member (or one family).
    Table {
        #[arg(long)]
        pair: DualPair,
        #[arg(long, allow_negative_numbers = true)]
        delta: Option<i32>,
    },
    /// First-occurrence indices (half ranks) along the Witt series.
    FirstOcc {
        #[arg(long, allow_hyphen_values = true)]
        symbol: Symbol,
        /// Series to search: Sp, O+ or O-. Defaults to every series of the opposite type.
        #[arg(long)]
        series: Option<GroupKind>,
    },
    /// Run a property sweep, or check a stored table.
    Verify {
        /// Property id, or `all`.
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = 4)]
        max_rank: u32,
        /// JSON table (as written by `table --format json`) to check instead of sweeping.
        #[arg(long)]
        table_file: Option<PathBuf>,
    },
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(text) = std::env::var("THETA_SYMBOLS_THREADS") {
        let threads: usize = text.trim().parse().with_context(|| format!("THETA_SYMBOLS_THREADS={text}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

/// Output text and whether a property check failed.
fn run(cli: Cli) -> anyhow::Result<(String, bool)> {
    let format = cli.format;
    match cli.command {
        Command::Enum { group, pair, delta, eps } => {
            let (group, eps) = match (group, pair) {
                (_, Some(p)) => (p.first, p.eps()),
                (Some(g), None) => (g, eps.or(g.kind.orthogonal_sign()).unwrap_or(Sign::Plus)),
                (None, None) => bail!("either --group or --pair is required"),
            };
            if let Some(d) = delta {
                if !group.kind.admits(d) {
                    bail!("defect {d} is not admissible for {group}");
                }
            }
            Ok((render::families(group, delta, eps, format)?, false))
        }
        Command::ThetaSet { pair, symbol, peak } => Ok((render::theta_set(&pair, &symbol, peak, format)?, false)),
        Command::Table { pair, delta } => Ok((render::table(&pair, delta, format)?, false)),
        Command::FirstOcc { symbol, series } => Ok((render::first_occurrence(&symbol, series, format)?, false)),
        Command::Verify { property, max_rank, table_file } => {
            configure_threads()?;
            let reports = match table_file {
                Some(path) => vec![render::check_table_file(&property, &path)?],
                None if property == "all" => theta_symbols::PROPERTY_IDS
                    .iter()
                    .map(|id| theta_symbols::run_property(id, max_rank))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![theta_symbols::run_property(&property, max_rank)?],
            };
            let failed = reports.iter().any(|r| !r.passed());
            Ok((render::reports(&reports, format)?, failed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, failed)) => {
            print!("{text}");
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
