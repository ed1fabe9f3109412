use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod manifest;
mod reproduce;

use reproduce::{Outcome, Table};

/// Exact invariants, rigid-isotopy clusters and bracket polynomials of
/// configurations of skew lines.
#[derive(Parser, Debug)]
#[command(name = "skewlines", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Sample budget for sampling commands.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file (directory for `gen` with several configurations).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample random line configurations.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Report determinant, invariants and Ring matrix of a configuration or state file.
    Analyze { input: PathBuf },
    /// Explore the cluster of a state.
    Cluster {
        #[arg(long)]
        state: PathBuf,
    },
    /// Enumerate rigid-isotopy classes from random samples.
    Census {
        #[arg(long)]
        n: usize,
        /// Stop once the known class count is reached.
        #[arg(long)]
        stop_when_complete: bool,
        /// Also evaluate the projective bracket of each class at 0.8.
        #[arg(long)]
        jones: bool,
    },
    /// Project a configuration along a direction, or through a point.
    Project {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Vec<f64>,
        /// Central projection from the point `u` instead of a parallel one.
        #[arg(long)]
        point: bool,
        /// Sweep this many directions and report the invariant per direction.
        #[arg(long, conflicts_with = "point")]
        sweep: Option<usize>,
    },
    /// Decide whether a point lies outside the configuration.
    Inside {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Vec<f64>,
    },
    /// Bracket polynomials of a state, a projected configuration or a bundle.
    Jones {
        /// State file; alone it is projected combinatorially, with --bundle it supplies P.
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long, conflicts_with = "state")]
        config: Option<PathBuf>,
        /// Projection direction for --config.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "config")]
        u: Vec<f64>,
        #[arg(long, requires = "state")]
        bundle: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Which::Both)]
        which: Which,
        /// Evaluate at this rational point, e.g. 0.8.
        #[arg(long)]
        eval: Option<String>,
    },
    /// Recompute a published table and compare cell by cell.
    Reproduce {
        #[arg(value_enum)]
        table: Table,
        /// Allow hours-scale runs (seven lines).
        #[arg(long)]
        extended: bool,
        /// Allow multi-hour runs (eight lines).
        #[arg(long)]
        stretch: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Jd,
    Jm,
    Both,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> commands::Result<Outcome> {
    let ctx = commands::Context { seed: cli.seed, budget: cli.budget, out: cli.out.clone(), format: cli.format };
    match &cli.command {
        Command::Gen { n, count } => commands::gen(&ctx, *n, *count),
        Command::Analyze { input } => commands::analyze(&ctx, input),
        Command::Cluster { state } => commands::cluster(&ctx, state),
        Command::Census { n, stop_when_complete, jones } => commands::census(&ctx, *n, *stop_when_complete, *jones),
        Command::Project { config, u, point, sweep } => commands::project(&ctx, config, u, *point, *sweep),
        Command::Inside { config, u } => commands::inside(&ctx, config, u),
        Command::Jones { state, config, u, bundle, which, eval } => {
            commands::jones(&ctx, state.as_deref(), config.as_deref(), u, bundle.as_deref(), *which, eval.as_deref())
        }
        Command::Reproduce { table, extended, stretch } => reproduce::run(&ctx, *table, *extended, *stretch),
    }
}
