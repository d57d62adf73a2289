use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use kempe_cli::commands::{self, Space};
use kempe_cli::config::{Caps, ModeOverride, OutputFormat, RunConfig, Suite};
use kempe_cli::run_verification;
use kempe_core::exactfield::FieldSpec;

#[derive(Parser)]
#[command(name = "kempe", version, about = "Exact computations with invariants of points on the projective line")]
struct Cli {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Cache directory (defaults to $KEMPE_CACHE_DIR; no caching if neither is set).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Force exact coefficients or sampled evaluations for dimension counts.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeOverride>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Weights {
    #[arg(long)]
    n: usize,
    /// Uniform weight on every point.
    #[arg(long, conflicts_with = "weights")]
    valence: Option<usize>,
    /// Comma-separated weight vector.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of a graded piece next to its non-crossing count.
    Dims {
        #[command(flatten)]
        weights: Weights,
        /// Multiply the weight vector by this degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Rewrite a graph polynomial in the non-crossing basis.
    Straighten {
        /// Graph literal such as `n=4; 1-3 2-4`.
        literal: Option<String>,
        /// Read one polynomial per line instead.
        #[arg(long, conflicts_with = "literal")]
        file: Option<PathBuf>,
        /// Cross-check against the linear-solve oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Relations of a given degree among degree-one invariants.
    Kernel {
        #[command(flatten)]
        weights: Weights,
        #[arg(long)]
        degree: usize,
        /// Write the relations here, one per line.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = Caps::default().cell_cap)]
        cell_cap: usize,
    },
    /// Decompose a space of invariants into irreducible representations.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        space: Space,
    },
    /// Print the named relations.
    Catalog,
    /// Recompute every claim and write a verification report.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Quick)]
        suite: Suite,
        /// Run only these claim ids.
        #[arg(long = "claim")]
        claims: Vec<String>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also run optional long checks.
        #[arg(long)]
        stretch: bool,
        #[arg(long, default_value_t = Caps::default().cell_cap)]
        cell_cap: usize,
        #[arg(long, default_value_t = Caps::default().seconds_per_check)]
        time_cap_secs: u64,
    },
}

fn base_config(cli: &Cli, command: &str) -> RunConfig {
    RunConfig {
        command: command.to_string(),
        field: cli.field.unwrap_or(FieldSpec::Rationals),
        field_override: cli.field.is_some(),
        mode: cli.mode,
        seed: cli.seed,
        cache_dir: RunConfig::resolve_cache_dir(cli.cache_dir.clone()),
        format: cli.format,
        ..RunConfig::default()
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let output = match &cli.command {
        Command::Dims { weights, degree } => {
            let w = commands::weight_vector(weights.n, weights.valence, weights.weights.as_deref())?;
            let mut config = base_config(&cli, "dims");
            config.n = Some(weights.n);
            config.weights = Some(w.0.clone());
            config.degree = *degree;
            commands::cmd_dims(&config, &w)?
        }
        Command::Straighten { literal, file, oracle } => {
            let config = base_config(&cli, "straighten");
            commands::cmd_straighten(&config, literal.as_deref(), file.as_deref(), *oracle)?
        }
        Command::Kernel {
            weights,
            degree,
            out,
            cell_cap,
        } => {
            let w = commands::weight_vector(weights.n, weights.valence, weights.weights.as_deref())?;
            let mut config = base_config(&cli, "kernel");
            config.n = Some(weights.n);
            config.weights = Some(w.0.clone());
            config.degree = Some(*degree);
            config.caps.cell_cap = *cell_cap;
            commands::cmd_kernel(&config, &w, *degree, out.as_deref())?
        }
        Command::Decompose { n, space } => {
            let mut config = base_config(&cli, "decompose");
            config.n = Some(*n);
            commands::cmd_decompose(&config, *n, *space)?
        }
        Command::Catalog => commands::cmd_catalog()?,
        Command::Verify {
            suite,
            claims,
            out,
            jobs,
            stretch,
            cell_cap,
            time_cap_secs,
        } => {
            let mut config = base_config(&cli, "verify");
            config.suite = *suite;
            config.claims = claims.clone();
            config.jobs = *jobs;
            config.stretch = *stretch;
            config.caps = Caps {
                cell_cap: *cell_cap,
                seconds_per_check: *time_cap_secs,
            };
            let report = run_verification(&config)?;
            let text = match cli.format {
                OutputFormat::Json => report.to_json() + "\n",
                OutputFormat::Text => report.to_text(),
            };
            match out {
                Some(path) => {
                    std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
                    eprint!("{}", report.to_text());
                }
                None => print!("{text}"),
            }
            return Ok(if report.failed() { ExitCode::FAILURE } else { ExitCode::SUCCESS });
        }
    };
    print!("{output}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
