use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "polyclone", version, about = "Polynomial clones and central relations on finite carriers")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Group,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Most tables any enumeration or clone level may hold.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    pub cap: usize,
    /// Wall-clock budget per engine call, in seconds.
    #[arg(long, default_value_t = 120.0, global = true)]
    pub time_budget: f64,
    /// Worker threads for the engines; results never depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Exit with status 1 when the command's verdict is false.
    #[arg(long, global = true)]
    pub assert: bool,
    /// Exit with status 3 when any cap was hit.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Where large table sets are written.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest table set printed inline; bigger sets go to a file.
    #[arg(long, default_value_t = 10_000, global = true)]
    pub inline_limit: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Group {
    /// Build and classify relations.
    #[command(subcommand)]
    Rel(RelCmd),
    /// Relation-compatible functions.
    #[command(subcommand)]
    Pol(PolCmd),
    /// Polynomial clones, completeness, probes and identities.
    #[command(subcommand)]
    Clone(CloneCmd),
    /// Construct and check algebra files.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Term synthesis over the R-algebra.
    #[command(subcommand)]
    Synth(SynthCmd),
    /// Audit the completeness claims for the R-algebra and the pattern algebra.
    #[command(subcommand)]
    Paper(PaperCmd),
}

/// `--relation PATH`, or a minimal central relation from `--center`.
#[derive(Args, Debug, Clone)]
pub struct RelationSource {
    #[arg(long, conflicts_with = "center")]
    pub relation: Option<PathBuf>,
    /// Center elements, comma separated (default 0).
    #[arg(long, value_delimiter = ',')]
    pub center: Vec<usize>,
    /// Arity of the central relation built from `--center`.
    #[arg(long, default_value_t = 2)]
    pub rel_arity: usize,
}

/// `--table PATH`, or inline `--entries`.
#[derive(Args, Debug, Clone)]
pub struct TableSource {
    #[arg(long, conflicts_with = "entries")]
    pub table: Option<PathBuf>,
    /// Table entries in tuple-index order, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub entries: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum RelCmd {
    /// The minimal central relation with the given center.
    Central {
        #[arg(long)]
        q: usize,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        center: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        arity: usize,
    },
    /// Profile of a relation.
    Classify {
        #[arg(long)]
        q: Option<usize>,
        #[command(flatten)]
        source: RelationSource,
    },
    /// One relation per partition of the coordinates.
    Diagonal {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        arity: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PolArgs {
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub arity: usize,
    #[command(flatten)]
    pub source: RelationSource,
}

#[derive(Subcommand, Debug)]
pub enum PolCmd {
    /// List every compatible table of the given arity.
    Enumerate(PolArgs),
    /// Count the compatible tables of the given arity.
    Count(PolArgs),
}

#[derive(Subcommand, Debug)]
pub enum CloneCmd {
    /// All polynomial functions of one arity, with witnesses.
    Generate {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        arity: usize,
    },
    /// Whether a table is a polynomial function.
    Member {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        arity: Option<usize>,
        #[command(flatten)]
        table: TableSource,
    },
    /// Compare the compatible functions with the polynomial functions.
    Complete {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        arity: usize,
        #[command(flatten)]
        source: RelationSource,
    },
    /// Bounded maximality or prepolynomial-completeness probes.
    #[command(subcommand)]
    Probe(ProbeCmd),
    /// Check identities by exhaustive evaluation.
    Identities {
        #[arg(long)]
        algebra: PathBuf,
        /// An identity such as `o(x1,x1) = x1`; repeatable.
        #[arg(long = "eq")]
        equations: Vec<String>,
        /// Check idempotence, associativity and x∘y∘z = x∘z for this binary op.
        #[arg(long)]
        pattern_axioms: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ProbeCmd {
    /// Does the clone generated by the generators plus `f` contain every k-ary function?
    Maximal {
        /// JSON array of tables.
        #[arg(long)]
        generators: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        arity: usize,
    },
    /// Adjoin each missing operation and check whether everything becomes polynomial.
    Prepoly {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 1)]
        missing_arity: usize,
        #[arg(long)]
        arity: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// The R-algebra over a lattice (default: the chain).
    BuildR {
        #[arg(long)]
        q: usize,
        /// JSON file with `meet` and `join` tables.
        #[arg(long)]
        lattice: Option<PathBuf>,
        /// Leave out the lifted unaries.
        #[arg(long)]
        no_lifts: bool,
        /// Write every operation explicitly instead of the lattice block.
        #[arg(long)]
        expand: bool,
    },
    /// Validate an algebra file and test its operations against a central relation.
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        center: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SynthCmd {
    /// Indicator term: `value` at `point`, 0 elsewhere.
    Indicator {
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        point: Vec<usize>,
        #[arg(long)]
        value: usize,
    },
    /// Join of indicators, checked against the input table.
    Decompose {
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        arity: Option<usize>,
        #[command(flatten)]
        table: TableSource,
        /// Combine with the zero-neutral join instead of the strict join.
        #[arg(long)]
        repaired: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum PaperCmd {
    /// Completeness verdicts, counts, witnesses and decomposition statistics.
    Audit {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        max_arity: usize,
    },
}
