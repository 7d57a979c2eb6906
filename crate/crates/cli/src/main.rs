//! `growth`: command-line front end for the commgrowth library.
//!
//! Exit status: 0 on success, 1 when any evaluated bound fails, 2 on a
//! domain error (including malformed flags), 3 when a resource guard trips.

mod commands;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commgrowth::Error;

#[derive(Debug, Parser)]
#[command(
    name = "growth",
    version,
    about = "Commensurability growth: series, balls, group orders and bounds"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank-1 growth series c_k = 2^omega(k) and its prefix sums.
    Rank1 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        format: TableFormat,
    },
    /// Subgroups within commensurability index n of Z or Z^d.
    Ball {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Root system data for a Cartan type.
    Rootsys {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        json: bool,
    },
    /// Order of the Chevalley group over Z/p^k.
    Order {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Also count matrices exhaustively (A1, A2, B2/C2 only).
        #[arg(long)]
        brute_force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Cocharacter count and maximal-lattice bounds at level p^k / m.
    Parahoric {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Seeded property suites.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(subcommand)]
    pub suite: Suite,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Metric axioms, geodesics and chains on random subgroups.
    Metric {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// |ball(A, n)| <= |ball(B, c(A,B) n)| on random commensurable pairs.
    Transfer {
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, default_value_t = 64)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct TableFormat {
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Cyclic,
    Lattice,
}

fn configure_threads() {
    if let Some(n) = std::env::var("GROWTH_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    configure_threads();

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = commands::run(&config.command, &mut out);
    let _ = out.flush();
    match result {
        Ok(commands::Outcome::AllHold) => ExitCode::SUCCESS,
        Ok(commands::Outcome::SomeFailed) => ExitCode::from(1),
        Err(commands::RunError::Lib(e @ Error::Domain(_))) => {
            eprintln!("growth: {e}");
            ExitCode::from(2)
        }
        Err(commands::RunError::Lib(e @ Error::Resource(_))) => {
            eprintln!("growth: {e}");
            ExitCode::from(3)
        }
        Err(commands::RunError::Io(e)) => {
            eprintln!("growth: output error: {e}");
            ExitCode::from(2)
        }
    }
}
