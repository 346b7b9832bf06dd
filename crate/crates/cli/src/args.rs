use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact verification and construction of twisting maps between
/// finite-dimensional algebras.
///
/// Inputs and outputs are JSON. Exit status: 0 when every check passes,
/// 1 when a verification fails (the report is still written), 2 on bad
/// input or usage.
#[derive(Parser, Debug)]
#[command(name = "twistkit", version)]
pub struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check associativity and the unit of an algebra.
    ValidateAlgebra {
        algebra: PathBuf,
    },
    /// Verify a twisting candidate.
    CheckTwisting {
        candidate: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckerArg::Direct)]
        checker: CheckerArg,
    },
    /// Build the structure constants of the twisted tensor product.
    BuildProduct {
        candidate: PathBuf,
    },
    /// Structure matrices, rho-hat, phi-hat and the faithful representation.
    Represent {
        candidate: PathBuf,
    },
    /// Express a candidate in the basis given by the columns of P.
    Rebase {
        candidate: PathBuf,
        /// JSON matrix (rows of scalar strings); column i is the new b'_i.
        #[arg(long)]
        p: PathBuf,
    },
    /// Twisting maps on a direct product B x C.
    #[command(subcommand)]
    Extend(ExtendCommand),
    /// Quiver and quiver representation of a candidate over K^n.
    Quiver {
        candidate: PathBuf,
    },
    /// Build a candidate from one of the example families.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Exhaustively list accepted candidates over a finite field.
    Enumerate {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = CheckerArg::Direct)]
        checker: CheckerArg,
    },
    /// Run every checker on every candidate and report disagreements.
    CrossValidate {
        #[command(flatten)]
        space: SpaceArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExtendCommand {
    /// Theta + Upsilon on B x C; both must verify.
    DirectSum { theta: PathBuf, upsilon: PathBuf },
    /// Restrict psi to one factor.
    Restrict {
        psi: PathBuf,
        /// dim B
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SideArg::B)]
        side: SideArg,
    },
    /// Check the extension criterion, assuming the restriction to B verifies.
    Check {
        psi: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = StageArg::Proposition)]
        stage: StageArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// Non-commutative duplicate: {"A", "f", "delta"}.
    Ncd { params: PathBuf },
    /// Quantum duplicate: {"A", "alpha", "beta", "f", "delta"}.
    Qdup { params: PathBuf },
    /// B = K^n: {"A", "n", "gamma"}.
    Kn { params: PathBuf },
    /// B = K[Y]/(Y^n): {"A", "n", "gamma"} or {"A", "generators"}.
    Trunc { params: PathBuf },
}

#[derive(Args, Debug)]
pub struct SpaceArgs {
    #[arg(long = "A", value_name = "FILE")]
    pub a: PathBuf,
    #[arg(long = "B", value_name = "FILE")]
    pub b: PathBuf,
    /// First index (inclusive).
    #[arg(long)]
    pub from: Option<u64>,
    /// Last index (exclusive).
    #[arg(long)]
    pub to: Option<u64>,
    /// Worker cap; also read from TWISTKIT_THREADS.
    #[arg(long, env = "TWISTKIT_THREADS")]
    pub threads: Option<String>,
    /// Scan on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CheckerArg {
    Direct,
    Rep,
    Oracle,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SideArg {
    B,
    C,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum StageArg {
    Lemma,
    Proposition,
}
