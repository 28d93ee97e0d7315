//! `grasstc`: cohomology, cup-lengths and complexity bounds of real
//! Grassmann manifolds from the command line.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grasstc::{cache::RingCache, Error, GrassmannRing, RingLimits};
use output::Format;

/// Exit statuses.
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "grasstc",
    version,
    about = "Mod-2 cohomology and topological complexity bounds for real Grassmannians"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Directory for cached normal-form tables (overrides GRASSTC_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest relation block, in bits, reduced in a single degree.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_degree_cap: Option<u64>,
    /// Omit the generation timestamp from plain and JSON output.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Pair {
    /// Dimension of the subspaces.
    #[arg(short, value_parser = clap::value_parser!(u16).range(1..))]
    pub k: u16,
    /// Dimension of the ambient space.
    #[arg(short, value_parser = clap::value_parser!(u16).range(1..))]
    pub n: u16,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Relations and basis sizes per degree.
    Ring(Pair),
    /// Heights of the generators or of a given class.
    Height {
        #[command(flatten)]
        pair: Pair,
        /// Polynomial in w1..wk, e.g. "w1^2 + w2".
        #[arg(long)]
        class: Option<String>,
        /// Attach flag-manifold certificates for the top non-zero powers.
        #[arg(long)]
        certificate: bool,
    },
    /// Longest non-zero monomial in the generators.
    Cuplength(Pair),
    /// Zero-divisor cup-length.
    Zcl {
        #[command(flatten)]
        pair: Pair,
        /// Also run the exhaustive search without height caps.
        #[arg(long)]
        exact: bool,
    },
    /// Category and topological complexity bounds.
    Bounds {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        exact: bool,
    },
    /// Schubert cell counts by dimension.
    Cells {
        #[command(flatten)]
        pair: Pair,
        /// Restrict to one dimension and list its symbols.
        #[arg(long)]
        dimension: Option<u32>,
    },
    /// Bounds over a grid of (k, n); ranges are `a..b`, `a..=b` or `a`.
    Table {
        #[arg(long = "k-range", value_parser = commands::parse_range)]
        k_range: commands::Range,
        #[arg(long = "n-range", value_parser = commands::parse_range)]
        n_range: commands::Range,
        #[arg(long)]
        exact: bool,
    },
    /// Check closed-form claims and worked examples against the engine.
    Verify {
        #[arg(long, value_enum, default_value_t = commands::Suite::Paper)]
        suite: commands::Suite,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(1..=16))]
        max_k: u16,
        #[arg(long, default_value_t = 11, value_parser = clap::value_parser!(u16).range(2..=32))]
        max_n: u16,
        #[arg(long)]
        exact: bool,
    },
}

/// Shared state for a command: format choice, limits and cache.
pub struct Context {
    pub limits: RingLimits,
    pub cache: Option<RingCache>,
}

impl Context {
    pub fn ring(&self, pair: Pair) -> grasstc::Result<GrassmannRing> {
        let (k, n) = (pair.k as usize, pair.n as usize);
        match &self.cache {
            Some(c) => c.load_or_build(k, n, self.limits),
            None => GrassmannRing::with_limits(k, n, self.limits),
        }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut limits = RingLimits::default();
    if let Some(cap) = cli.global.max_degree_cap {
        limits.max_block_bits = cap;
    }
    let ctx = Context {
        limits,
        cache: RingCache::from_env_or(cli.global.cache_dir.clone()),
    };
    let result = match cli.command {
        Command::Ring(p) => commands::ring(&ctx, p),
        Command::Height {
            pair,
            class,
            certificate,
        } => commands::height(&ctx, pair, class.as_deref(), certificate),
        Command::Cuplength(p) => commands::cuplength(&ctx, p),
        Command::Zcl { pair, exact } => commands::zcl(&ctx, pair, exact),
        Command::Bounds { pair, exact } => commands::bounds(&ctx, pair, exact),
        Command::Cells { pair, dimension } => commands::cells(pair, dimension),
        Command::Table {
            k_range,
            n_range,
            exact,
        } => commands::table(&ctx, k_range, n_range, exact),
        Command::Verify {
            suite,
            max_k,
            max_n,
            exact,
        } => commands::verify(&ctx, suite, max_k as usize, max_n as usize, exact),
    };
    match result {
        Ok(out) => {
            let ts = (!cli.global.no_timestamp).then(|| {
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map_or(0, |d| d.as_secs())
            });
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            if let Err(e) = out
                .render(cli.global.format, ts, &mut lock)
                .and_then(|_| lock.flush())
            {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
