use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use piercing_core::exact::{parse_rational, Rational};
use piercing_core::pipelines::Route;

/// Exact checks, solvers and certified piercing pipelines for finite
/// families of convex polyhedra.
#[derive(Debug, Parser)]
#[command(name = "piercing", version, propagate_version = true)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of LP solves; exhausting it exits with status 3.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    /// Largest index tried when searching for an escaping member.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(2..))]
    pub n_cap: u64,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for subset scans (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate one of the standard families as family JSON.
    #[command(subcommand)]
    Construct(Construct),
    /// Check an intersection property.
    #[command(subcommand)]
    Check(Check),
    /// Exact piercing and transversal numbers.
    #[command(subcommand)]
    Solve(Solve),
    /// Recession cones, projections and the empty-intersection hypergraph.
    #[command(subcommand)]
    Analyze(Analyze),
    /// Find a member of the unbounded counterexample that avoids given points.
    Escape(EscapeArgs),
    /// Look up catalogued constants.
    #[command(subcommand)]
    Bounds(Bounds),
    /// Run a piercing argument end to end and report every check.
    #[command(subcommand)]
    Pipeline(Pipeline),
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n_max: u64,
    #[arg(long)]
    pub n_bounded: usize,
    /// Extra reach of the bounded boxes beyond the unit cube (default 0).
    #[arg(long, value_parser = rational)]
    pub margin: Option<Rational>,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// The simplices `S_alpha` in `R^d` for sorted `alpha` values.
    Simplex {
        #[arg(long)]
        d: usize,
        /// Explicit values in (0, 1); `d` sorted values are drawn from the
        /// seed when omitted.
        #[arg(long = "alpha", value_parser = rational)]
        alphas: Vec<Rational>,
    },
    /// The unbounded members `A_2..A_{n_max}` followed by the bounded boxes.
    Counterexample(CounterexampleArgs),
    /// Copies of `{0}` and the rays `[n, inf)` on the line.
    Gruenbaum {
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    /// Random compact pieces of `(k-1)`-flats forming a `k`-free family.
    FreeFlats {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value = "10", value_parser = rational)]
        radius: Rational,
    },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Every `p` members contain `q` with a common point.
    Pq {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// No `m+1` members share a point and every member is bounded.
    Free {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum Solve {
    /// Minimum number of points meeting every member.
    Pierce {
        #[arg(long)]
        input: PathBuf,
        /// Stop the search after this many points and report a bound.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Minimum vertex set meeting every edge of a hypergraph.
    Transversal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Analyze {
    /// Recession cone and boundedness of each member.
    Recession {
        #[arg(long)]
        input: PathBuf,
    },
    /// Drop the last coordinate of every member.
    Project {
        #[arg(long)]
        input: PathBuf,
        /// Remove redundant inequalities after elimination.
        #[arg(long)]
        reduce: bool,
    },
    /// The hypergraph of `(d+1)`-subsets with empty intersection.
    Gf {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct EscapeArgs {
    /// Dimension parameter of the counterexample (ambient space `R^{d+1}`).
    #[arg(long)]
    pub d: usize,
    /// Candidate points as `{"points": [...]}`.
    #[arg(long)]
    pub points: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Bounds {
    /// Upper bound on the largest `k`-critical `lam`-uniform hypergraph.
    Eta {
        #[arg(long)]
        lam: u64,
        #[arg(long)]
        k: u64,
    },
    /// The optimal `(p,q)`-theorem constant in `R^d`, when catalogued.
    Xi {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Pipeline {
    /// Transversal of the empty-intersection hypergraph, plus one common point.
    S1 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        p: usize,
    },
    /// A free subfamily of size `p-d` and the hull of its union.
    S2 {
        #[arg(long)]
        input: PathBuf,
        /// Indices of the free subfamily.
        #[arg(long, value_delimiter = ',', required = true)]
        free: Vec<usize>,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// `p-q+1` compact members and recession-direction projections.
    Main {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        compact: Vec<usize>,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Direct)]
        route: RouteArg,
    },
    /// Property checks, case split and escape certificates for a truncation
    /// of the unbounded counterexample.
    Counterexample {
        #[command(flatten)]
        spec: CounterexampleArgs,
        #[arg(long, default_value_t = 1)]
        k_max: usize,
        /// Candidate piercing sets as `{"points": [...]}`; three random sets
        /// of ten points are drawn from the seed when none are given.
        #[arg(long = "candidates")]
        candidates: Vec<PathBuf>,
    },
    /// Intersections inside a box against intersections of shadows.
    Corollary52 {
        /// Family file; the rotated counterexample is used when omitted.
        #[arg(long, requires = "box_file")]
        input: Option<PathBuf>,
        /// Compact box as set JSON.
        #[arg(long = "box")]
        box_file: Option<PathBuf>,
        #[arg(long, required_unless_present = "input")]
        d: Option<usize>,
        #[arg(long, required_unless_present = "input")]
        n_max: Option<u64>,
        #[arg(long, required_unless_present = "input")]
        n_bounded: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_subset: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Direct,
    Projection,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Direct => Route::Direct,
            RouteArg::Projection => Route::Projection,
        }
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}
