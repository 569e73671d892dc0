use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use thinspace_core::curvature::ManifoldFamily;
use thinspace_core::runner::{run_to_string, Command as RunCommand, Format, GraphInput, RunConfig};

/// Thin-space analysis: thinness certification, skeletons, width maps,
/// curvature integrals, and volume growth on finite geodesic spaces.
#[derive(Parser)]
#[command(name = "thinspace", version, about)]
struct Cli {
    /// Worker thread cap (also THINSPACE_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for all randomized subroutines; echoed into reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the primary report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args, Clone)]
struct GraphArgs {
    /// Graph JSON file: {"vertices": [...], "edges": [[u, v, length], ...]}.
    #[arg(long)]
    graph: Option<PathBuf>,

    /// Point-cloud CSV (rows of coordinates); converted via symmetric kNN.
    #[arg(long)]
    points: Option<PathBuf>,

    /// Neighbor count for the point-cloud conversion.
    #[arg(long, default_value_t = 8)]
    knn: usize,
}

impl From<GraphArgs> for GraphInput {
    fn from(a: GraphArgs) -> Self {
        GraphInput { graph: a.graph, points: a.points, knn: Some(a.knn) }
    }
}

#[derive(Subcommand)]
enum CliCommand {
    /// Decide the (R, D)-thin condition; exit 2 with a witness on failure.
    ThinCheck {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long = "R")]
        r: f64,
        #[arg(long = "D")]
        d: f64,
        /// Parameter grid step; "auto" means D/4.
        #[arg(long, default_value = "auto")]
        t_step: String,
        /// Fiber slack; defaults to the space scale.
        #[arg(long)]
        tol: Option<f64>,
        /// Maximum number of segments to check.
        #[arg(long)]
        budget: Option<usize>,
        /// Fail instead of sampling when the budget is exceeded.
        #[arg(long)]
        no_sampling: bool,
    },
    /// Least passing D per R over parameter grids.
    Profile {
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated increasing R values.
        #[arg(long, value_delimiter = ',')]
        r_grid: Vec<f64>,
        /// Comma-separated increasing D values.
        #[arg(long, value_delimiter = ',')]
        d_grid: Vec<f64>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Extract the 1-dimensional skeleton (segment or circle).
    Skeleton {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long = "R")]
        r: f64,
        #[arg(long = "D")]
        d: f64,
        /// Thinness report JSON serving as pass evidence; when omitted a
        /// budgeted thin-check runs first.
        #[arg(long)]
        evidence: Option<PathBuf>,
        #[arg(long)]
        budget: Option<usize>,
        /// Write the support as CSV (vertex, param).
        #[arg(long)]
        emit_csv: Option<PathBuf>,
    },
    /// Build the width map for an extracted skeleton and audit its fibers.
    Urysohn {
        #[command(flatten)]
        graph: GraphArgs,
        /// Skeleton report JSON produced by `thinspace skeleton`.
        #[arg(long)]
        skeleton: PathBuf,
        #[arg(long = "R")]
        r: f64,
        /// Fiber bin width; defaults to R/10.
        #[arg(long)]
        bin: Option<f64>,
        /// Write per-vertex values as CSV (vertex, value).
        #[arg(long)]
        emit_csv: Option<PathBuf>,
    },
    /// Curvature functionals on closed-form manifolds.
    Curvature {
        #[command(subcommand)]
        command: CurvatureCommand,
    },
    /// Ball-growth counts with a linear fit.
    VolumeGrowth {
        #[command(flatten)]
        graph: GraphArgs,
        /// Base vertex id; defaults to the lexicographically first vertex.
        #[arg(long)]
        base: Option<String>,
        /// Comma-separated increasing t values.
        #[arg(long, value_delimiter = ',')]
        t_grid: Vec<f64>,
    },
    /// Re-validate the witness inside a thin-check report.
    Replay {
        /// thin-check report JSON (must reference its graph file).
        report: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Sphere,
    Flat,
    Product,
    Paraboloid,
    CappedCylinder,
}

#[derive(Subcommand)]
enum CurvatureCommand {
    /// Scan F(r) = avg over B_r of 0 v (r^(2-alpha) R_k) ^ L.
    Scan {
        #[arg(long, value_enum)]
        family: FamilyName,
        /// Dimension for sphere/flat families.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Radius for sphere/product/capped-cylinder families.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Flat factor dimension for the product family.
        #[arg(long, default_value_t = 1)]
        flat_dim: usize,
        /// Height for the capped cylinder.
        #[arg(long, default_value_t = 4.0)]
        height: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        k: usize,
        #[arg(long = "L")]
        cap: f64,
        /// Comma-separated increasing radii.
        #[arg(long = "r", value_delimiter = ',')]
        r_grid: Vec<f64>,
        /// Switch to Monte Carlo with this many samples per radius.
        #[arg(long)]
        samples: Option<u64>,
        /// Primary output format (CSV rows r,value,error by default).
        #[arg(long, value_enum, default_value_t = CliFormat::Csv)]
        format: CliFormat,
    },
    /// Randomized falsification search for the eigenvalue inequality.
    L14 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 4.0)]
        c: f64,
        #[arg(long, default_value_t = 1e-4)]
        c1: f64,
        #[arg(long, default_value_t = 1e-4)]
        eps_prime: f64,
        #[arg(long)]
        trials: u64,
    },
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum CliFormat {
    #[default]
    Json,
    Csv,
}

impl From<CliFormat> for Format {
    fn from(f: CliFormat) -> Format {
        match f {
            CliFormat::Json => Format::Json,
            CliFormat::Csv => Format::Csv,
        }
    }
}

fn family_spec(
    name: FamilyName,
    dim: usize,
    radius: f64,
    flat_dim: usize,
    height: f64,
) -> ManifoldFamily {
    match name {
        FamilyName::Sphere => ManifoldFamily::Sphere { dim, radius },
        FamilyName::Flat => ManifoldFamily::Flat { dim },
        FamilyName::Product => ManifoldFamily::ProductSphereFlat { radius, flat_dim },
        FamilyName::Paraboloid => ManifoldFamily::Paraboloid,
        FamilyName::CappedCylinder => ManifoldFamily::CappedCylinder { radius, height },
    }
}

fn parse_t_step(s: &str) -> Option<f64> {
    if s == "auto" {
        None
    } else {
        s.parse().ok()
    }
}

fn main() {
    env_logger::init();
    let cli = Cli::parse();

    let threads = cli
        .threads
        .or_else(|| std::env::var("THINSPACE_THREADS").ok().and_then(|s| s.parse().ok()));
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }

    let (command, format) = match cli.command {
        CliCommand::ThinCheck { graph, r, d, t_step, tol, budget, no_sampling } => (
            RunCommand::ThinCheck {
                input: graph.into(),
                r,
                d,
                t_step: parse_t_step(&t_step),
                tol,
                budget,
                no_sampling,
            },
            Format::Json,
        ),
        CliCommand::Profile { graph, r_grid, d_grid, budget } => {
            (RunCommand::Profile { input: graph.into(), r_grid, d_grid, budget }, Format::Json)
        }
        CliCommand::Skeleton { graph, r, d, evidence, budget, emit_csv } => (
            RunCommand::Skeleton { input: graph.into(), r, d, evidence, budget, emit_csv },
            Format::Json,
        ),
        CliCommand::Urysohn { graph, skeleton, r, bin, emit_csv } => (
            RunCommand::Urysohn { input: graph.into(), skeleton, r, bin, emit_csv },
            Format::Json,
        ),
        CliCommand::Curvature { command } => match command {
            CurvatureCommand::Scan {
                family,
                dim,
                radius,
                flat_dim,
                height,
                alpha,
                k,
                cap,
                r_grid,
                samples,
                format,
            } => (
                RunCommand::CurvatureScan {
                    family: family_spec(family, dim, radius, flat_dim, height),
                    alpha,
                    k,
                    cap,
                    r_grid,
                    samples,
                },
                format.into(),
            ),
            CurvatureCommand::L14 { n, k, eps, c, c1, eps_prime, trials } => (
                RunCommand::EigenSearch { n, k, eps, c, c1, eps_prime, trials },
                Format::Json,
            ),
        },
        CliCommand::VolumeGrowth { graph, base, t_grid } => {
            (RunCommand::VolumeGrowth { input: graph.into(), base, t_grid }, Format::Json)
        }
        CliCommand::Replay { report } => (RunCommand::Replay { report }, Format::Json),
    };

    let config = RunConfig { command, seed: cli.seed, format };
    let (code, out) = run_to_string(&config);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out) {
                eprintln!("failed to write {}: {e}", path.display());
                std::process::exit(1);
            }
        }
        None => print!("{out}"),
    }
    std::process::exit(code);
}
