//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qrgroups", version, about = "Exact checks of representation and product-free bounds for finite groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Run settings. Each one may also come from the config file; flags win.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Seed for every randomized step [default: 42]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Numerical tolerance for floating-point checks [default: 1e-9]
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Worker threads; 1 runs everything sequentially [default: 1]
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Maximum number of group elements to enumerate [default: 100000]
    #[arg(long, global = true)]
    pub element_budget: Option<u64>,
    /// Maximum number of search nodes for exact product-free search [default: 10000000]
    #[arg(long, global = true)]
    pub node_budget: Option<u64>,
    /// Write the JSON document here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// TOML file with any of the settings above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Sl2,
    Sl,
    Sp,
    Alt,
    Sym,
    Tree,
    Abelian,
    Quaternion,
}

/// Which group to build.
#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Matrix size for `sl`, half size for `sp`, degree for `alt`/`sym`,
    /// branching number for `tree`
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Exponent of the modulus p^n
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Tree level
    #[arg(long, default_value_t = 1)]
    pub level: u32,
    /// Cyclic factor orders for `abelian`, e.g. 2,4
    #[arg(long, value_delimiter = ',')]
    pub factors: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PfMode {
    Search,
    Coset,
    FormulaAbelian,
    FormulaPadic,
    FormulaSeries,
    FormulaTree,
    FormulaProfinite,
}

#[derive(Debug, Clone, Args)]
pub struct PfArgs {
    #[arg(long, value_enum)]
    pub mode: PfMode,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub level: u32,
    #[arg(long, value_delimiter = ',')]
    pub factors: Vec<u32>,
    /// With `formula-abelian`: also run the exact search and compare
    #[arg(long)]
    pub verify: bool,
}

impl PfArgs {
    pub fn group(&self) -> Option<GroupArgs> {
        self.family.map(|family| GroupArgs {
            family,
            k: self.k,
            p: self.p,
            n: self.n,
            level: self.level,
            factors: self.factors.clone(),
        })
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Build a group and describe it
    Group(GroupArgs),
    /// Character table with m(G) and m_f(G)
    Degrees {
        #[command(flatten)]
        group: GroupArgs,
        /// Include every character value
        #[arg(long)]
        full: bool,
    },
    /// Compare computed m and m_f with the closed-form lower bounds
    Bounds(GroupArgs),
    /// Randomized mixing, covering and triple-product suites
    Mixing {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Product-free sets: exact search, coset witnesses, closed forms
    Pf(PfArgs),
    /// Tree quotient orders, m(F_1) and the invariant-subspace scan
    Tree {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// Run every command listed in a JSON manifest
    Report {
        #[arg(long)]
        manifest: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Group(_) => "group",
            Command::Degrees { .. } => "degrees",
            Command::Bounds(_) => "bounds",
            Command::Mixing { .. } => "mixing",
            Command::Pf(_) => "pf",
            Command::Tree { .. } => "tree",
            Command::Report { .. } => "report",
        }
    }
}
