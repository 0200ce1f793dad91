use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

/// Invariants and Einstein-metric certificates for links of weighted
/// homogeneous hypersurface singularities and their branched covers.
#[derive(Debug, Clone, Parser)]
#[command(name = "selink", version)]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Also print torsion orders k^b as exact decimals.
    #[arg(long, global = true)]
    pub expand_torsion: bool,

    /// Worker threads for scans; never affects results.
    #[arg(long, global = true, env = "SELINK_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Case class, quasi-smoothness, Betti number and genus of a link.
    Invariants(SystemArgs),
    /// The k-fold branched cover z_0^k + f = 0 and its torsion order.
    Cover {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Brieskorn-Pham test on exponents, or the full certificate of a cover.
    Certify(CertifyArgs),
    /// Effective parameter count of a cover system (or of the k-fold cover of a base).
    Moduli {
        #[command(flatten)]
        system: SystemArgs,
        /// Treat the system as a base and count on its k-fold cover.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: Option<u64>,
    },
    /// Regenerate a family of examples.
    Scan {
        #[arg(value_enum)]
        family: ScanFamily,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Run the full pipeline on a file of `w1,...,wm;d` rows.
    Ingest {
        file: PathBuf,
        #[arg(long, value_parser = parse_range, value_name = "A..B")]
        k_range: RangeInclusive<u64>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Comma-separated positive weights.
    #[arg(long, value_parser = parse_list, value_name = "W1,...,WM")]
    pub weights: IntList,
    #[arg(long)]
    pub degree: u64,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    /// Brieskorn-Pham exponents a_0,...,a_m.
    #[arg(long, value_parser = parse_list, value_name = "A0,...,AM", conflicts_with_all = ["k", "weights", "degree"])]
    pub exponents: Option<IntList>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), requires_all = ["weights", "degree"])]
    pub k: Option<u64>,
    #[arg(long, value_parser = parse_list, value_name = "W1,...,WM", requires = "k")]
    pub weights: Option<IntList>,
    #[arg(long, requires = "k")]
    pub degree: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFamily {
    Euclidean,
    Theorem2,
    FermatCy,
    Hyperbolic,
    MixedCanonical,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    pub weight_bound: u64,
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    pub k_bound: u64,
    #[arg(long = "m", default_value = "3..8", value_parser = parse_range, value_name = "A..B")]
    pub m_range: RangeInclusive<u64>,
}

/// A comma-separated integer list given as one argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<u64>);

impl std::ops::Deref for IntList {
    type Target = Vec<u64>;

    fn deref(&self) -> &Vec<u64> {
        &self.0
    }
}

/// `1,2,3` -> `[1, 2, 3]`
pub fn parse_list(s: &str) -> Result<IntList, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>().map_err(|_| format!("`{t}` is not a non-negative integer"))
        })
        .collect::<Result<_, _>>()
        .map(IntList)
}

/// Inclusive `A..B`, or a single value `A`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("`{}` is not a non-negative integer", t.trim()))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok(a..=b)
}

/// Parses `argv` (including the program name). Help and version requests
/// come back as [`CliError::Help`].
pub fn parse_invocation<I, T>(argv: I) -> Result<Invocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Invocation::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Help(e.to_string()),
            // A bare invocation names no subcommand, which is a usage error.
            _ => CliError::Usage(e.to_string()),
        }
    })
}
