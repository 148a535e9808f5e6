mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Config, Format};
use quatzero::Error;

#[derive(Parser, Debug)]
#[command(name = "quatzero", version, about = "Quaternionic modular forms of trivial weight: zeroes, dimensions and toric periods")]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, env = "QUATZERO_CONFIG")]
    config: Option<PathBuf>,
    /// Output format: pretty, json or csv.
    #[arg(long, global = true, env = "QUATZERO_FORMAT")]
    format: Option<String>,
    /// Directory of per-level cache documents.
    #[arg(long, global = true, env = "QUATZERO_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads for census; 0 uses every core.
    #[arg(long, global = true, env = "QUATZERO_JOBS")]
    jobs: Option<usize>,
    /// Short-vector search budget.
    #[arg(long, global = true, env = "QUATZERO_BUDGET")]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ideal classes and Brandt matrices T_p.
    Brandt {
        level: u64,
        #[arg(required = true)]
        primes: Vec<u64>,
    },
    /// Hecke eigenforms, one Galois orbit per row.
    Eigenforms {
        level: u64,
        /// Also print value histograms of degree 1 and 2 orbits.
        #[arg(long)]
        histogram: bool,
    },
    /// Trivial and nontrivial zeroes of every eigenform.
    Zeroes { level: u64 },
    /// dim_bias and the no-trivial-zero criterion from the dimension formula.
    Dims {
        level: Option<u64>,
        /// Sign pattern such as "+-+", one sign per prime of the level.
        #[arg(allow_hyphen_values = true)]
        pattern: Option<String>,
        /// Level filter such as "odd,omega=3,<10000".
        #[arg(long, conflicts_with = "level")]
        range: Option<String>,
    },
    /// Toric periods and L-value verdicts for K = Q(sqrt(-D)).
    Periods {
        level: u64,
        /// |disc K|.
        d: u64,
        /// Character as exponents on the class group generators, e.g. "1,0".
        #[arg(long)]
        chi: Option<String>,
    },
    /// Census over a level filter such as "prime,<1000".
    Census {
        range: String,
        /// Write plot data files (CSV and coordinate lists) into this directory.
        #[arg(long)]
        plots: Option<PathBuf>,
    },
    /// Inspect or clear the level cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Levels with a current document.
    List,
    /// Census record stored for a level.
    Show { level: u64 },
    /// Remove every level document.
    Clear,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Precondition(_) => 2,
        Error::Budget(_) => 3,
        Error::Defect(_) => 4,
        Error::Io(_) | Error::Json(_) => 1,
    }
}

fn build_config(cli: &Cli) -> quatzero::Result<Config> {
    let mut cfg = Config::load(cli.config.as_deref())?;
    if let Some(f) = &cli.format {
        cfg.format = f.parse::<Format>()?;
    }
    if let Some(d) = &cli.cache_dir {
        cfg.cache_dir = Some(d.clone());
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    if let Some(b) = cli.budget {
        cfg.short_vector_budget = b;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> quatzero::Result<String> {
    let cfg = build_config(&cli)?;
    match cli.command {
        Command::Brandt { level, primes } => commands::brandt(&cfg, level, &primes),
        Command::Eigenforms { level, histogram } => commands::eigenforms(&cfg, level, histogram),
        Command::Zeroes { level } => commands::zeroes(&cfg, level),
        Command::Dims { level, pattern, range } => commands::dims(&cfg, level, pattern.as_deref(), range.as_deref()),
        Command::Periods { level, d, chi } => commands::periods(&cfg, level, d, chi.as_deref()),
        Command::Census { range, plots } => commands::census(&cfg, &range, plots.as_deref()),
        Command::Cache { action } => match action {
            CacheAction::List => commands::cache_list(&cfg),
            CacheAction::Show { level } => commands::cache_show(&cfg, level),
            CacheAction::Clear => commands::cache_clear(&cfg),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
