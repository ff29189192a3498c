//! `symtensor` command line: classification, block partition, extreme
//! H-eigenvalues, row-sum bounds, copositivity certification, instance
//! generation, and inner products over the tensor file format.
//!
//! Exit codes: 0 success (for `certify`: a certified verdict), 10
//! numerically copositive without certificate, 20 not copositive, 1 any
//! error, 2 usage.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use symtensor::generate as gen;
use symtensor::{
    bounds_row_sums, certify, certify_with_oracle, classify, emit_tensor, is_reducible,
    is_weakly_irreducible, lambda_max, lambda_min_ess_nonpos, parse_tensor,
    weakly_irreducible_partition, IterationConfig, SearchConfig, SymTensor, Verdict,
    GRID_ORACLE_DIM_LIMIT,
};

use report::{CertificateSection, ConfigEcho, Report, SpectralSection};

const EXIT_NUMERIC: u8 = 10;
const EXIT_NOT_COPOSITIVE: u8 = 20;

#[derive(Parser)]
#[command(
    name = "symtensor",
    version,
    about = "Symmetric tensor spectral analysis and copositivity certification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Convergence and certification tolerance.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Seed for randomized searches and generators (default: the
    /// SYMTENSOR_SEED environment variable, then 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Restarts for the multi-start searches.
    #[arg(long, global = true)]
    restarts: Option<u32>,

    /// Grid resolution for the brute-force oracle cross-check.
    #[arg(long, global = true)]
    grid: Option<u32>,

    /// Emit machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classification, row and diagonal statistics, reducibility.
    Info { file: PathBuf },
    /// Weakly irreducible block partition.
    Partition { file: PathBuf },
    /// Extreme H-eigenvalues with residuals (lambda_max when essentially
    /// nonnegative, lambda_min when essentially nonpositive).
    Eigen { file: PathBuf },
    /// Row-sum and diagonal eigenvalue bounds.
    Bounds { file: PathBuf },
    /// Copositivity certification ladder.
    Certify { file: PathBuf },
    /// Write a generated tensor.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Inner product of two tensors.
    Pair { file_a: PathBuf, file_b: PathBuf },
}

#[derive(Args)]
struct OutputArg {
    /// Output path; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    /// Diagonal ones tensor.
    Identity {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Tensor with every position equal to 1.
    Allones {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Diagonal tensor with the given values.
    Diagonal {
        #[arg(long)]
        order: usize,
        /// Comma-separated diagonal values.
        #[arg(long)]
        values: String,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Random nonnegative tensor.
    RandomNonneg {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0.7)]
        density: f64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Random essentially nonpositive tensor.
    RandomEssNonpos {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0.7)]
        density: f64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Completely positive tensor from explicit or random factors.
    Cp {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
        /// Number of random factors (ignored when --factors is given).
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Explicit factors: semicolon-separated comma lists, e.g. "1,0;0,1".
        #[arg(long)]
        factors: Option<String>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Adjacency tensor of a uniform hypergraph.
    HypergraphAdjacency {
        #[command(flatten)]
        hypergraph: HypergraphArgs,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Laplacian tensor (degree minus adjacency).
    HypergraphLaplacian {
        #[command(flatten)]
        hypergraph: HypergraphArgs,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Signless Laplacian tensor (degree plus adjacency).
    HypergraphSignlessLaplacian {
        #[command(flatten)]
        hypergraph: HypergraphArgs,
        #[command(flatten)]
        out: OutputArg,
    },
    /// The order-3 copositive example with zero diagonal that fails the
    /// diagonal-dominance tests.
    NonddExample {
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Args)]
struct HypergraphArgs {
    #[arg(long, default_value_t = 3)]
    order: usize,
    #[arg(long)]
    dim: usize,
    /// Explicit 1-based edges: semicolon-separated comma lists, e.g.
    /// "1,2,3;2,3,4".
    #[arg(long, conflicts_with = "regular")]
    edges: Option<String>,
    /// Random regular multigraph of this degree (dim must be a multiple of
    /// the order).
    #[arg(long)]
    regular: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

struct Settings {
    iteration: IterationConfig,
    search: SearchConfig,
    grid: Option<u32>,
    json: bool,
}

impl Settings {
    fn from_cli(cli: &Cli) -> Settings {
        let seed = cli
            .seed
            .or_else(|| {
                std::env::var("SYMTENSOR_SEED")
                    .ok()
                    .and_then(|s| s.parse().ok())
            })
            .unwrap_or(0);
        let mut iteration = IterationConfig::default();
        let mut search = SearchConfig {
            seed,
            ..SearchConfig::default()
        };
        if let Some(tolerance) = cli.tolerance {
            iteration.tolerance = tolerance;
            search.tolerance = tolerance;
        }
        if let Some(restarts) = cli.restarts {
            search.restarts = restarts;
        }
        if let Some(grid) = cli.grid {
            search.grid_resolution = grid;
        }
        Settings {
            iteration,
            search,
            grid: cli.grid,
            json: cli.json,
        }
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            tolerance: self.iteration.tolerance,
            max_iterations: self.iteration.max_iterations,
            shift: self.iteration.shift,
            restarts: self.search.restarts,
            grid_resolution: self.grid,
            seed: self.search.seed,
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let settings = Settings::from_cli(&cli);
    match &cli.command {
        Command::Info { file } => info(file, &settings),
        Command::Partition { file } => partition(file, &settings),
        Command::Eigen { file } => eigen(file, &settings),
        Command::Bounds { file } => bounds(file, &settings),
        Command::Certify { file } => certify_cmd(file, &settings),
        Command::Gen { kind } => generate(kind, &settings),
        Command::Pair { file_a, file_b } => pair(file_a, file_b, &settings),
    }
}

fn load(file: &PathBuf) -> Result<SymTensor> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    parse_tensor(&text).with_context(|| format!("parsing {}", file.display()))
}

fn emit_report(report: &Report, settings: &Settings) {
    if settings.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn base_report(
    command: &'static str,
    file: &PathBuf,
    a: &SymTensor,
    settings: &Settings,
) -> Report {
    let mut report = Report::new(command, a.order(), a.dim(), a.nnz(), settings.echo());
    report.file = Some(file.display().to_string());
    report
}

fn info(file: &PathBuf, settings: &Settings) -> Result<ExitCode> {
    let a = load(file)?;
    let mut report = base_report("info", file, &a, settings);
    report.symmetrized = Some(a.was_symmetrized());
    report.classification = Some(classify(&a));
    report.row_stats = Some(a.row_stats());
    report.diag_stats = Some(a.diag_stats());
    report.weakly_irreducible = Some(is_weakly_irreducible(&a));
    report.reducing_set = is_reducible(&a).map(|set| set.iter().map(|&i| i + 1).collect());
    emit_report(&report, settings);
    Ok(ExitCode::SUCCESS)
}

fn partition(file: &PathBuf, settings: &Settings) -> Result<ExitCode> {
    let a = load(file)?;
    let partition = weakly_irreducible_partition(&a);
    let mut report = base_report("partition", file, &a, settings);
    report.blocks = Some(
        partition
            .blocks()
            .iter()
            .map(|block| block.iter().map(|&i| i + 1).collect())
            .collect(),
    );
    emit_report(&report, settings);
    Ok(ExitCode::SUCCESS)
}

fn eigen(file: &PathBuf, settings: &Settings) -> Result<ExitCode> {
    let a = load(file)?;
    let class = classify(&a);
    if !class.essentially_nonnegative && !class.essentially_nonpositive {
        bail!(
            "eigenvalue computation requires an essentially nonnegative or \
             essentially nonpositive tensor"
        );
    }
    let mut report = base_report("eigen", file, &a, settings);
    if class.essentially_nonnegative {
        let r = lambda_max(&a, &settings.iteration)?;
        report.lambda_max = Some(SpectralSection::from_result(&r));
    }
    if class.essentially_nonpositive {
        let r = lambda_min_ess_nonpos(&a, &settings.iteration)?;
        report.lambda_min = Some(SpectralSection::from_result(&r));
    }
    emit_report(&report, settings);
    Ok(ExitCode::SUCCESS)
}

fn bounds(file: &PathBuf, settings: &Settings) -> Result<ExitCode> {
    let a = load(file)?;
    let class = classify(&a);
    if !class.nonnegative && !class.essentially_nonpositive {
        bail!(
            "bounds require a nonnegative tensor (largest eigenvalue) or an \
             essentially nonpositive tensor (smallest eigenvalue)"
        );
    }
    let mut report = base_report("bounds", file, &a, settings);
    if class.nonnegative {
        report.lambda_max_bounds = Some(bounds_row_sums(&a)?);
    }
    if class.essentially_nonpositive {
        report.lambda_min_bounds = Some(symtensor::lambda_min_bounds(&a)?);
    }
    emit_report(&report, settings);
    Ok(ExitCode::SUCCESS)
}

fn certify_cmd(file: &PathBuf, settings: &Settings) -> Result<ExitCode> {
    let a = load(file)?;
    let certificate = if settings.grid.is_some() && a.dim() <= GRID_ORACLE_DIM_LIMIT {
        certify_with_oracle(&a, &settings.search, settings.search.grid_resolution)?
    } else {
        certify(&a, &settings.search)
    };
    let mut report = base_report("certify", file, &a, settings);
    report.certificate = Some(CertificateSection::from_certificate(&certificate));
    emit_report(&report, settings);
    let code = match certificate.verdict {
        Verdict::StrictlyCopositiveCertified | Verdict::CopositiveCertified => ExitCode::SUCCESS,
        Verdict::NumericallyCopositive | Verdict::Inconclusive => ExitCode::from(EXIT_NUMERIC),
        Verdict::NotCopositive => ExitCode::from(EXIT_NOT_COPOSITIVE),
    };
    Ok(code)
}

fn pair(file_a: &PathBuf, file_b: &PathBuf, settings: &Settings) -> Result<ExitCode> {
    let a = load(file_a)?;
    let b = load(file_b)?;
    let product = a.inner_product(&b)?;
    let mut report = base_report("pair", file_a, &a, settings);
    report.inner_product = Some(product);
    emit_report(&report, settings);
    Ok(ExitCode::SUCCESS)
}

fn parse_values(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|token| {
            token
                .trim()
                .parse::<f64>()
                .map_err(|_| anyhow!("invalid number {token:?}"))
        })
        .collect()
}

fn parse_factors(text: &str) -> Result<Vec<Vec<f64>>> {
    text.split(';').map(parse_values).collect()
}

/// Parses 1-based edges like "1,2,3;2,3,4" into 0-based vertex lists.
fn parse_edges(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split(';')
        .map(|edge| {
            edge.split(',')
                .map(|token| {
                    let v: usize = token
                        .trim()
                        .parse()
                        .map_err(|_| anyhow!("invalid vertex {token:?}"))?;
                    if v == 0 {
                        bail!("vertices are 1-based");
                    }
                    Ok(v - 1)
                })
                .collect()
        })
        .collect()
}

fn hypergraph_edges(args: &HypergraphArgs, settings: &Settings) -> Result<Vec<Vec<usize>>> {
    match (&args.edges, args.regular) {
        (Some(text), None) => parse_edges(text),
        (None, Some(degree)) => Ok(gen::random_regular_edges(
            args.order,
            args.dim,
            degree,
            settings.search.seed,
        )?),
        (None, None) => bail!("provide --edges or --regular"),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn generate(kind: &GenKind, settings: &Settings) -> Result<ExitCode> {
    let seed = settings.search.seed;
    let (tensor, out) = match kind {
        GenKind::Identity { order, dim, out } => (SymTensor::identity(*order, *dim)?, out),
        GenKind::Allones { order, dim, out } => (SymTensor::all_ones(*order, *dim)?, out),
        GenKind::Diagonal { order, values, out } => {
            (SymTensor::diagonal(*order, &parse_values(values)?)?, out)
        }
        GenKind::RandomNonneg {
            order,
            dim,
            density,
            out,
        } => (gen::random_nonneg(*order, *dim, *density, seed)?, out),
        GenKind::RandomEssNonpos {
            order,
            dim,
            density,
            out,
        } => (gen::random_ess_nonpos(*order, *dim, *density, seed)?, out),
        GenKind::Cp {
            order,
            dim,
            rank,
            factors,
            out,
        } => {
            let tensor = match factors {
                Some(text) => {
                    let factors = parse_factors(text)?;
                    for factor in &factors {
                        if factor.len() != *dim {
                            bail!("factor length {} does not match --dim {dim}", factor.len());
                        }
                    }
                    SymTensor::cp_sum(*order, &factors)?
                }
                None => gen::random_cp(*order, *dim, *rank, seed)?,
            };
            (tensor, out)
        }
        GenKind::HypergraphAdjacency { hypergraph, out } => {
            let edges = hypergraph_edges(hypergraph, settings)?;
            (
                gen::hypergraph_adjacency(hypergraph.order, hypergraph.dim, &edges)?,
                out,
            )
        }
        GenKind::HypergraphLaplacian { hypergraph, out } => {
            let edges = hypergraph_edges(hypergraph, settings)?;
            (
                gen::hypergraph_laplacian(hypergraph.order, hypergraph.dim, &edges)?,
                out,
            )
        }
        GenKind::HypergraphSignlessLaplacian { hypergraph, out } => {
            let edges = hypergraph_edges(hypergraph, settings)?;
            (
                gen::hypergraph_signless_laplacian(hypergraph.order, hypergraph.dim, &edges)?,
                out,
            )
        }
        GenKind::NonddExample { out } => (gen::nondd_example(), out),
    };
    let text = emit_tensor(&tensor);
    match &out.output {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            if settings.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "written": path.display().to_string(),
                        "order": tensor.order(),
                        "dim": tensor.dim(),
                        "nnz": tensor.nnz(),
                        "seed": seed,
                    })
                );
            } else {
                println!("wrote {} ({} entries)", path.display(), tensor.nnz());
            }
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
