use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kleinzeta",
    version,
    about = "Exact zeta functions of the Klein quartic and Fermat curves"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads (KLEINZETA_THREADS takes precedence).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// JSON result cache; read before and written after the run.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Recompute cached entries and fail on any disagreement.
    #[arg(long, global = true)]
    pub verify_cache: bool,

    /// Largest q for O(q^2) plane scans.
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(2..), global = true)]
    pub budget_plane: u64,

    /// Largest q for O(q) scans and field tables.
    #[arg(long, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(2..), global = true)]
    pub budget_linear: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Formula,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe F_q: defining polynomial and generator.
    Field {
        #[arg(long, conflicts_with_all = ["p", "r"], required_unless_present = "p")]
        q: Option<u64>,
        #[arg(long, requires = "r")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        r: Option<u32>,
    },
    /// Count rational points of a curve over F_q.
    Count {
        /// klein, klein-birational, fermat:N or fermat-affine:N
        #[arg(long)]
        curve: String,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Exact Jacobi sum J(chi^i, chi^j) for the order-n character chi(g) = zeta_n.
    Jacobi {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        j: i64,
    },
    /// Local zeta numerator with Weil checks.
    Zeta {
        /// klein or fermat:N
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
    },
    /// a_p of the level-49 CM newforms and the cubic character mod 7.
    Ap {
        /// Inclusive prime range A..B.
        #[arg(long, value_parser = parse_range)]
        p_range: (u64, u64),
    },
    /// Run verification suites.
    Verify {
        /// theorem1, counts, weil, congruences, hasse-davenport, foundations, fc3, cover, hecke or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest prime for the prime-indexed suites.
        #[arg(long)]
        p_max: Option<u64>,
        /// Largest field size for the count-based suites.
        #[arg(long)]
        q_max: Option<u64>,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got '{s}'"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..30"), Ok((2, 30)));
        assert_eq!(parse_range("7..7"), Ok((7, 7)));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("9").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
