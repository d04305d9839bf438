use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "yamabe",
    version,
    about = "Explicit bounds for Yamabe-type threshold constants",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Rounding of table values. `paper` rounds Q*(S^m) to the nearest 0.1 and
    /// lower bounds down to 0.1; `none` prints the raw binary64 values.
    #[arg(long, value_enum, default_value_t = Rounding::Paper, global = true)]
    pub rounding: Rounding,

    /// Write to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rounding {
    Paper,
    Nearest,
    Floor,
    None,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Q*(S^m), the lower bound for Lambda^spin_m and the HP^2 row.
    #[command(after_help = "CSV columns: m, q_star_sphere, lambda_spin_m, q_star_hp2xr")]
    Table1(Table1Range),

    /// Q*(S^m) and the infimum of the codimension-3 bound L_m.
    #[command(after_help = "CSV columns: m, q_star_sphere, inf_l, s_root, c_star, method")]
    Table3(Table3Range),

    /// Every bound known at one (m, k), optionally at one value of c.
    #[command(after_help = "CSV columns: quantity, direction, value")]
    Bound {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        c: Option<f64>,
    },

    /// Samples c in [0, 1] and the explicit bound for Q* of the model space.
    /// Available for k = m-2 and for k = m-3 with m >= 6. Values are raw.
    #[command(after_help = "CSV columns: c, bound, codim_condition")]
    Scan {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 101)]
        samples: u32,
    },

    /// Nonlinear Dirac eigenvalue of a spherical cap and its renormalization.
    #[command(after_help = "CSV columns: quantity, direction, value")]
    Cap {
        #[arg(long)]
        m: u32,
        /// Geodesic radius in (0, pi].
        #[arg(long)]
        r: f64,
    },

    /// The inequality graph between the invariant families.
    #[command(subcommand)]
    Relations(RelationsCommand),

    /// The bound registry.
    #[command(subcommand)]
    Registry(RegistryCommand),
}

#[derive(Debug, Args)]
pub struct Table1Range {
    #[arg(long, default_value_t = 5)]
    pub from: u32,
    #[arg(long, default_value_t = 13)]
    pub to: u32,
}

#[derive(Debug, Args)]
pub struct Table3Range {
    #[arg(long, default_value_t = 7)]
    pub from: u32,
    #[arg(long, default_value_t = 15)]
    pub to: u32,
}

#[derive(Debug, Args)]
pub struct GraphRange {
    #[arg(long, default_value_t = 2)]
    pub m_min: u32,
    #[arg(long, default_value_t = 15)]
    pub m_max: u32,
}

#[derive(Debug, Subcommand)]
pub enum RelationsCommand {
    /// Propagates all facts and reports the first contradiction, if any.
    /// Exits with status 3 when an injected fact contradicts the graph.
    #[command(after_help = "CSV columns: quantity, value\n\
        Injections: `LambdaSpin(7,4) < 65.2`, `QTildeSpin(7,4,0.5) < QStar(7,4,0.5)`")]
    Check {
        #[command(flatten)]
        range: GraphRange,
        /// A bound or a relation between two nodes; repeatable.
        #[arg(long, value_name = "FACT")]
        inject: Vec<String>,
    },

    /// The propagated graph: edge list for text and csv, full graph for json.
    Export {
        #[command(flatten)]
        range: GraphRange,
    },
}

#[derive(Debug, Subcommand)]
pub enum RegistryCommand {
    /// One entry per line: invariant|m|k|direction|value|provenance|citation.
    #[command(after_help = "CSV columns: invariant, m, k, direction, value, provenance, citation")]
    Dump,
}
