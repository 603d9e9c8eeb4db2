use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "chroma",
    version,
    about = "Graph powers, Cayley graphs and exact list-colouring certificates"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format (graphs default to graph6, results to json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutFormat>,
    /// Refuse to build graphs with more vertices than this.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub max_vertices: usize,
    /// Wall-clock limit in seconds for the exact solvers.
    #[arg(long, global = true)]
    pub time_budget: Option<f64>,
    /// Seed for randomized components (all current solvers are deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel stages; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutFormat {
    Json,
    Markdown,
    Graph6,
    Dimacs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph and write it out.
    #[command(subcommand)]
    Construct(Construct),
    /// Run a verifier and write its certificate.
    #[command(subcommand)]
    Verify(Verify),
    /// Run an exact colouring solver on a graph file.
    #[command(subcommand)]
    Color(Color),
    /// Re-check a certificate file from its parameters and witness alone.
    Recheck { certificate: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// The Cayley graph G_m on the zero-sum vectors of Z_3^m.
    Cayley {
        #[arg(long)]
        m: usize,
    },
    /// H_{3n} = G_{3n} □ K_3.
    H {
        #[arg(long)]
        n: usize,
    },
    /// The k-th power of a graph file.
    Power {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Cartesian or lexicographic product of two graph files.
    Product {
        #[arg(long = "type", value_enum)]
        kind: ProductKind,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Complete multipartite graph with `parts` parts of `part` vertices.
    Multipartite {
        #[arg(long)]
        part: usize,
        #[arg(long)]
        parts: usize,
    },
    /// Complete graph K_n.
    Complete {
        #[arg(long)]
        n: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    Cartesian,
    Lexicographic,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Distances from 0 in G_{3n} against 2 nnz(y) / 3.
    DistanceLemma {
        #[arg(long)]
        n: usize,
    },
    /// G_{3n}^{2n-1} equals the complete multipartite graph on the classes.
    PowerMultipartite {
        #[arg(long)]
        n: usize,
    },
    /// H_{3n}^{2n} equals K_{3^{3n-2}}[K_3 □ K_3].
    Structure {
        #[arg(long)]
        n: usize,
    },
    /// The chromatic number of H_{3n}^{2n}.
    ChiH {
        #[arg(long)]
        n: usize,
    },
    /// Counting certificate for the adversarial lists on K_r[K_3 □ K_3].
    Counting {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
    },
    /// The whole pipeline for n = sk.
    Theorem {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
    },
    /// (H^{2s})^k equals H^{2sk} for H = H_{3sk}.
    Composition {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
    },
    /// chi(G[H]) equals chi(G[K_l]) with l = chi(H).
    Lexico {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum Color {
    /// Exact chromatic number with witnesses.
    Chromatic { graph: PathBuf },
    /// Whether a list assignment admits a proper colouring.
    ListFeasible {
        graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
    },
    /// Fewest distinct colours in a proper list colouring (at most 12 vertices).
    MinDistinct {
        graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
    },
    /// Search for a t-list assignment admitting no proper colouring.
    BadAssignment {
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        /// Colour universe; defaults to t times the vertex count.
        #[arg(long)]
        universe: Option<usize>,
    },
}
