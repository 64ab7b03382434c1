//! `pathhom`: path homology, minimal paths and the cup-product algebra of
//! finite digraphs from the command line.
//!
//! Exit status is 0 when the command succeeds and any checked property
//! holds, 1 when a checked property fails, and 2 on an input error.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoeffArg {
    Z,
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProductKind {
    Cartesian,
    Strong,
}

/// Operands name files, built-in fixtures (`T`, `G1`, `xcube`, ...) or, for
/// chains and forms, inline chain text such as `"[0 1 3] -1 [0 2 3]"`.
#[derive(Debug, Parser)]
#[command(name = "pathhom", version, about = "Path homology of finite digraphs")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Seed for the fuzz commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub maxdim: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = CoeffArg::Z)]
    pub coeff: CoeffArg,
    /// Use the augmented (reduced) complex.
    #[arg(long, global = true)]
    pub reduced: bool,
    /// Dimension of the paths a command works with.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Path homology groups.
    Homology { graph: String },
    /// Cohomology ranks of the quotient cochain complex, checked against homology.
    Cohomology { graph: String },
    /// Ranks of Ω_n, or a basis of Ω_{dim} when --dim is given.
    Omega { graph: String },
    /// Enumerate minimal paths of dimension --dim (default 2).
    Minimal {
        graph: String,
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        end: Option<String>,
    },
    /// Decide minimality; prints a smaller nonzero witness when not minimal.
    IsMinimal { graph: String, chain: String },
    /// Split an Ω element into a sum of minimal paths.
    Decompose { graph: String, chain: String },
    /// Supporting digraph of a path.
    Supp { graph: String, chain: String },
    /// Decomposition into the families A, B and C.
    Structure { graph: String, chain: String },
    /// Reduced integer homology of the supporting digraph of a minimal path.
    Acyclic { graph: String, chain: String },
    /// Augment the support and split the path along one vertex of E_1.
    AugmentSplit { graph: String, chain: String },
    /// Cartesian or strong product of two digraphs.
    Product {
        #[arg(value_enum)]
        kind: ProductKind,
        left: String,
        right: String,
    },
    /// Transitive closure.
    Closure { graph: String },
    /// Isomorphism search with a witness bijection.
    Iso { left: String, right: String },
    /// Cross product u × v in the Cartesian product.
    Cross {
        left: String,
        right: String,
        u: String,
        v: String,
    },
    /// Star product of two forms.
    Star {
        left: String,
        right: String,
        alpha: String,
        beta: String,
    },
    /// Cup product of two forms, optionally paired with a chain.
    Cup {
        graph: String,
        alpha: String,
        beta: String,
        #[arg(long)]
        on: Option<String>,
    },
    /// Diagonal approximation of a chain.
    Diagonal {
        graph: String,
        chain: String,
        #[arg(long)]
        transposed: bool,
    },
    /// Build the chain homotopy F and verify ∂F + F∂ = t♯Δ♯ − Δ♯.
    ChainHomotopy { graph: String },
    /// Graded commutativity of the cup product on cohomology classes.
    SkewCheck {
        graph: String,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
        /// Skip the pairing identity with F.
        #[arg(long)]
        no_f: bool,
    },
    /// Check that a vertex map is a digraph map.
    MapCheck {
        source: String,
        target: String,
        map: String,
    },
    /// Check a homotopy witness between two digraphs.
    HomotopyCheck {
        source: String,
        target: String,
        homotopy: String,
        /// Map the witness must start at.
        #[arg(long)]
        from: Option<String>,
        /// Map the witness must end at.
        #[arg(long)]
        to: Option<String>,
    },
    /// Check a deformation retraction; unlisted vertices are fixed.
    RetractCheck {
        graph: String,
        map: String,
        /// Target sub-digraph; defaults to the one induced on the image.
        #[arg(long)]
        onto: Option<String>,
        /// Homotopy file whose steps are the maps f_0, ..., f_n.
        #[arg(long)]
        sequence: Option<String>,
    },
    /// Check that Y1, Y2 form a Mayer–Vietoris pair for X.
    MvCheck { x: String, y1: String, y2: String },
    /// Verify the Mayer–Vietoris long exact sequence.
    MvLes { x: String, y1: String, y2: String },
    /// Compare Betti numbers of G ⊡ H with the convolution of the factors.
    Kunneth { left: String, right: String },
    /// Seeded random digraphs, structure checks on every minimal path.
    FuzzStructure(FuzzArgs),
    /// Seeded random digraphs, acyclicity of every minimal path's support.
    FuzzAcyclic(FuzzArgs),
    /// Write the built-in corpus to a directory.
    Fixtures { dir: PathBuf },
}

#[derive(Debug, Clone, clap::Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 1000)]
    pub graphs: u64,
    #[arg(long, default_value_t = 7)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(r) => {
            let text = match cli.format {
                Format::Human => r.human,
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&r.json).expect("serializable")
                ),
            };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if r.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
