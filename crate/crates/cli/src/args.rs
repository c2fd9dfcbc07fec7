use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hypercycle::FieldSpec;

#[derive(Debug, Parser)]
#[command(name = "hypercycle", version, about = "Cycle spaces and defect invariants of tensor hypergraphs")]
pub struct Cli {
    /// Field to compute over, overriding the instance file (Q, F2, F3, Fp:<p>).
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Macrograph counts, defect and cycle-space dimension.
    Analyze { path: PathBuf },
    /// Extended cycle basis split into topological and lifted vectors.
    Basis { path: PathBuf },
    /// Edge Gram operator, its rank and spectrum.
    Gram {
        path: PathBuf,
        /// Use the degree-truncated operator L_{≤k}.
        #[arg(long)]
        truncate: Option<usize>,
    },
    /// Degree filtration table.
    Filtrate { path: PathBuf },
    /// First-letter observation against the classical incidence matrix.
    RecoverClassical { path: PathBuf },
    /// Convert an oriented hypergraph to raw tensor edges.
    ImportOh { path: PathBuf },
    /// Run every internal cross-check on instance files or random instances.
    Verify {
        paths: Vec<PathBuf>,
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}
