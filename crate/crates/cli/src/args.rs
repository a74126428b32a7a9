use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use noether_core::fuzz::{Identity, DEFAULT_SEED};
use noether_core::SearchConfig;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "noether", version, about = "Rationality certificates for fixed fields of metacyclic groups")]
pub struct Cli {
    /// Worker threads for searches, example runs and fuzzing (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write a JSON run report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,
    /// Record wall time in the report and print it on stderr.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Print the norm of an element of Z[ζ_q].
    Norm {
        #[arg(long)]
        q: u64,
        /// Element such as "1 + z + z^4".
        #[arg(long)]
        x: String,
    },
    /// List elements of Z[ζ_q] with a given norm.
    SolveNorm {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Find a witness, reduce, certify, and write the certificate.
    Certify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Certificate path (default: cert-M-N-R.json).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Certify the prime-power family m = α q^k, r = α q^(k-1) + 1.
    Family {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Re-run the published (q, p, x) triples and print them as CSV.
    Examples {
        /// Only rows with this q.
        #[arg(long)]
        q: Option<u64>,
        /// CSV path (default: stdout).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check a determinant identity on random integer matrices.
    Fuzz {
        #[arg(long = "id", value_parser = parse_identity)]
        identity: Identity,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Matrix sizes, "a..b" (inclusive) or a single size.
        #[arg(long, value_parser = parse_dims)]
        dims: Option<RangeInclusive<usize>>,
        #[arg(long, env = "NOETHER_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Dump the full reduction trace as JSON.
    Reduce {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct SpecArgs {
    #[arg(long)]
    pub m: String,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub r: String,
    /// Use this element of Z[ζ_n] instead of searching.
    #[arg(long)]
    pub x: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    /// Coefficient box half-width.
    #[arg(long, default_value_t = SearchConfig::default().coeff_bound)]
    pub bound: u32,
    #[arg(long, default_value_t = SearchConfig::default().max_candidates)]
    pub max_candidates: u64,
    /// Keep one element per shift/conjugation orbit.
    #[arg(long)]
    pub dedupe: bool,
}

impl SearchArgs {
    pub fn config(&self) -> SearchConfig {
        SearchConfig { coeff_bound: self.bound, max_candidates: self.max_candidates, dedupe: self.dedupe }
    }
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    s.parse().map_err(|e: noether_core::Error| e.to_string())
}

fn parse_dims(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad size {t:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty size range {s:?}"));
    }
    Ok(lo..=hi)
}
