use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Fixed default so repeated runs sample the same sets.
pub const DEFAULT_SEED: u64 = 0x5eed_ca71;

#[derive(Parser, Debug)]
#[command(name = "cayleyiso", version, about = "m-Cayley digraphs, kernel Cayley-isomorphism tests and BCI census")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Symbol checks allowed when scanning Aut(G).
    #[arg(long, global = true)]
    pub budget_aut: Option<u64>,
    /// Candidate extensions allowed in the semiregular subgroup search.
    #[arg(long, global = true)]
    pub budget_search: Option<u64>,
    /// Connection sets allowed in one census run.
    #[arg(long, global = true)]
    pub budget_census: Option<u64>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write the TSV report here.
    #[arg(long, global = true)]
    pub tsv: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Attempt the order-32 table entry.
    #[arg(long = "stretch-z2-5", global = true)]
    pub stretch_z2_5: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite group queries.
    #[command(subcommand)]
    Group(GroupCmd),
    /// m-Cayley digraph construction and isomorphism.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Cayley-isomorphism decision procedures.
    #[command(subcommand)]
    Ci(CiCmd),
    /// Orbit census and shipped cases.
    #[command(subcommand)]
    Census(CensusCmd),
}

#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    /// Group spec such as `Z4`, `Z2^3`, `D8`, `Q8xZ2`, `A4`.
    #[arg(long)]
    pub group: String,
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    Info(GroupArg),
    Aut(GroupArg),
    Subgroups(GroupArg),
    /// Necessary conditions for 2PCI, then the census when it fits the budget.
    Screen(GroupArg),
}

/// Where a digraph comes from: a text file, or a group with a connection set.
#[derive(Args, Debug, Clone)]
pub struct GraphSource {
    #[arg(long)]
    pub group: Option<String>,
    /// Bi-Cayley connection set, comma-separated labels.
    #[arg(long, alias = "set")]
    pub bcay: Option<String>,
    /// Digraph text file with a `mcay m=.. group=..` header and `S i j : labels` lines.
    #[arg(long)]
    pub symbol: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    /// Parts are ignored.
    Uncolored,
    /// Each part is kept in place.
    Fixed,
    /// Parts may be permuted among themselves.
    Permutable,
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Prints the digraph in text form.
    Build {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Aut {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value_t = ModeArg::Uncolored)]
        mode: ModeArg,
    },
    Canon {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value_t = ModeArg::Permutable)]
        mode: ModeArg,
    },
    /// Isomorphism between two digraphs over the same group.
    Iso {
        #[command(flatten)]
        source: GraphSource,
        /// Second connection set over the same group.
        #[arg(long)]
        other_bcay: Option<String>,
        /// Second digraph text file.
        #[arg(long)]
        other_symbol: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Permutable)]
        mode: ModeArg,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SetArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub set: String,
}

#[derive(Subcommand, Debug)]
pub enum CiCmd {
    Kmci(GraphSource),
    Kmpci(GraphSource),
    #[command(name = "2pci")]
    TwoPci {
        #[command(flatten)]
        set: SetArgs,
        /// Compare against every set of the same size instead of orbit representatives.
        #[arg(long)]
        direct: bool,
    },
    K2pci {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        direct: bool,
    },
    /// Searches for an automorphism with `S^α = S⁻¹g`.
    Bci3(SetArgs),
    /// Vertex-transitivity of `BCay(G, S)`.
    Vtx(SetArgs),
}

#[derive(Subcommand, Debug)]
pub enum CensusCmd {
    /// Orbits of connection sets of one size.
    Orbits {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        size: usize,
        /// `S ↦ S^α` instead of the kernel action.
        #[arg(long)]
        automorphisms: bool,
        #[arg(long)]
        contains_identity: bool,
        #[arg(long)]
        connected: bool,
        /// Write the orbit file (kernel action only) into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Random kernel images per representative checked for equal canonical form.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Group-level K2PCI and 2PCI verdicts by census.
    Classify(GroupArg),
    /// Recomputes the K2PCI column of the exceptional-group table.
    Table1 {
        #[arg(long, default_value_t = 18)]
        max_order: usize,
    },
    /// Runs shipped cases: an id or `all`.
    Registry { id: String },
    /// Connected `Z2^4` sets with the identity and 6 to 8 elements, up to `Aut(G)`.
    Z2_4,
}
