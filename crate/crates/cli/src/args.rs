//! Argument definitions.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for extbranch_core::Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Left => extbranch_core::Side::Left,
            SideArg::Right => extbranch_core::Side::Right,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "extbranch",
    version,
    about = "Exact segment calculus, derivatives, branching certificates, and Hecke checks"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: OutputFormat,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    pub seed: u64,

    /// Worker count for sharded harnesses (default: EXTBRANCH_JOBS or
    /// all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Line registry file (JSON: {"lines": [{"id", "degree", "dual"?}]});
    /// undeclared lines default to degree 1, self-dual.
    #[arg(long, global = true)]
    pub lines: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bernstein-Zelevinsky derivative of an induced representation.
    Derive {
        rep: PathBuf,
        #[arg(long)]
        i: u32,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Canonical generic form of a multisegment, with the rewrite trace.
    Recombine { multisegment: PathBuf },
    /// Truncation-lemma check at one amount (or all feasible amounts).
    TruncationLemma {
        multisegment: PathBuf,
        #[arg(long, conflicts_with = "all_i")]
        i: Option<u32>,
        #[arg(long)]
        all_i: bool,
    },
    /// Filtration of the restriction to the next GL down.
    Restrict {
        rep: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Quotient obstruction for St(delta) against a Zelevinsky datum.
    QuotientCheck {
        #[arg(long)]
        delta: PathBuf,
        #[arg(long)]
        m2: PathBuf,
        /// Evaluate the key-lemma compatibilities without requiring a
        /// degenerate datum (reports only; exit code stays 0).
        #[arg(long)]
        plain: bool,
    },
    /// Ext-vanishing certificate for a pair of generic Steinberg data.
    ExtCertify {
        #[arg(long)]
        m1: PathBuf,
        #[arg(long)]
        m2: PathBuf,
        /// Write the certificate tree to this path.
        #[arg(long)]
        emit_tree: Option<PathBuf>,
        /// Harness mode: accept a non-generic m2 to exercise the FAIL
        /// extractor.
        #[arg(long)]
        harness: bool,
    },
    /// Euler-Poincare pairing of two irreducible data.
    Ep { rep1: PathBuf, rep2: PathBuf },
    /// Affine Hecke algebra checks at rank m <= 3.
    #[command(subcommand)]
    Hecke(HeckeCommand),
    /// Enumerate a universe of multisegments, optionally running the
    /// ext / quotient harness over it.
    Enumerate {
        /// Total-degree bound for the enumeration.
        #[arg(long)]
        degree_sum: u32,
        /// Exponent window "lo..hi" (rationals, denominator <= 2).
        #[arg(long)]
        window: String,
        /// Half-integer grid steps.
        #[arg(long)]
        half_steps: bool,
        /// Cap on segments per multisegment.
        #[arg(long)]
        max_segments: Option<u32>,
        #[arg(long, default_value = "list")]
        mode: EnumerateMode,
    },
    /// Exhaustive verification suites over an enumerated universe.
    Suite {
        #[arg(long, value_enum)]
        mode: SuiteMode,
        /// Universe spec file (JSON); inline flags used otherwise.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        degree_sum: u32,
        #[arg(long, default_value = "0..3")]
        window: String,
        #[arg(long)]
        half_steps: bool,
        #[arg(long)]
        max_segments: Option<u32>,
        /// Trial count for the hecke mode.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum EnumerateMode {
    List,
    Ext,
    Quotient,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum SuiteMode {
    TruncationLemma,
    Ext,
    Quotient,
    Duality,
    Hecke,
}

#[derive(Subcommand, Debug)]
pub enum HeckeCommand {
    /// Defining relations, braid relation, and associativity trials.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Action of one generator on a sign-module basis vector.
    SignModule {
        #[arg(long)]
        m: usize,
        /// Generator: "theta<k>", "theta<k>^-1", or "T<k>" (1-based).
        #[arg(long)]
        action: String,
        /// Basis index, comma-separated integers.
        #[arg(long)]
        lambda: String,
    },
    /// Principal series at a character and rational q.
    PrincipalSeries {
        #[arg(long)]
        m: usize,
        /// Comma-separated nonzero rationals ("1,2" or "1/2,3").
        #[arg(long)]
        chi: String,
        #[arg(long)]
        q: String,
    },
    /// Central-character quotient of the sign-induced module.
    CentralQuotient {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        orbit: String,
        #[arg(long)]
        q: String,
    },
}

pub fn parse() -> Result<Cli, clap::Error> {
    Cli::try_parse()
}
