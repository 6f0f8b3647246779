use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mag::compare::{compare_scores, render, RboSettings};
use mag::experiment::{render_summary, run_experiment, Manifest};
use mag::format::{read_mag, vertex_name, write_mag};
use mag::scores::{read_scores_file, write_scores};
use mag::{parallel, Error};
use mag_core::centrality::{CentralityRequest, Measure, Mode};
use mag_core::generate::{random_mag, GenSpec};
use mag_core::oracle::{compare_orders, Arithmetic};
use mag_core::ranking::TieMode;
use mag_core::subdet::{aggregate_mag_graph, retained_aspects};
use mag_core::{ClosenessMode, DistanceMode, SubDetSpec};

#[derive(Parser)]
#[command(name = "mag", version, about = "Centralities on MultiAspect Graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the aspects and size of a MAG file.
    Info { input: PathBuf },
    /// Check that a MAG file parses.
    Validate { input: PathBuf },
    /// Compute a centrality and write `vertex,score` CSV.
    Centrality(CentralityArgs),
    /// Write the aggregate of a MAG over the retained aspects.
    Aggregate {
        input: PathBuf,
        #[arg(long)]
        zeta: SubDetSpec,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a seeded random MAG.
    Generate {
        /// Aspect sizes, e.g. 1000,10.
        #[arg(long, value_delimiter = ',', required = true)]
        aspects: Vec<usize>,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add both directions of every drawn pair (edges counts arcs).
        #[arg(long)]
        reciprocal: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare two score files with rank-biased overlap.
    Compare(CompareArgs),
    /// Class reachability with and without aggregating first.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        zeta: SubDetSpec,
        #[arg(long, default_value = "boolean", value_parser = ["boolean", "real"])]
        arithmetic: String,
    },
    /// Run an ensemble described by a manifest.
    Experiment {
        #[arg(long)]
        manifest: PathBuf,
        /// Overrides the manifest's output directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CentralityArgs {
    input: PathBuf,
    #[arg(long, default_value = "betweenness")]
    measure: Measure,
    #[arg(long, default_value = "subdet")]
    mode: Mode,
    /// Retained aspects as a 0/1 tuple, e.g. 1,0.
    #[arg(long)]
    zeta: Option<SubDetSpec>,
    #[arg(long, default_value = "faithful")]
    distance: DistanceMode,
    #[arg(long, default_value = "harmonic")]
    closeness: ClosenessMode,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    first: PathBuf,
    second: PathBuf,
    /// Share of the total weight given to the top positions.
    #[arg(long, default_value_t = 0.85)]
    rbo_weight: f64,
    /// The top positions as a fraction of the ranking.
    #[arg(long, default_value_t = 0.10)]
    rbo_depth: f64,
    /// The top positions as a count; overrides --rbo-depth.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, default_value = "identifier")]
    ties: TieMode,
    /// Compare only the first k positions.
    #[arg(long)]
    truncate: Option<usize>,
    /// Positions to list.
    #[arg(long, default_value_t = 10)]
    top: usize,
}

enum Failure {
    Usage(String),
    Data(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Stream(e) if e.kind() != io::ErrorKind::InvalidData => Failure::Internal(e.to_string()),
            e => Failure::Data(e),
        }
    }
}

impl From<mag_core::MagError> for Failure {
    fn from(e: mag_core::MagError) -> Self {
        Failure::Data(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            std::fs::File::create(p).map_err(|e| Failure::Data(Error::Io { path: p.into(), source: e }))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn info(input: &Path) -> Outcome {
    let mag = read_mag(input)?;
    let mut out = io::stdout().lock();
    writeln!(out, "order     {}", mag.order())?;
    for a in mag.aspects() {
        writeln!(out, "aspect    {} {}", a.name(), a.len())?;
    }
    let n = mag.vertex_count();
    let m = mag.edge_count();
    writeln!(out, "vertices  {n}")?;
    writeln!(out, "edges     {m}")?;
    let pairs = (n as f64) * (n as f64 - 1.0);
    let density = if pairs > 0.0 { m as f64 / pairs } else { 0.0 };
    writeln!(out, "density   {density:.6}")?;
    let reciprocated = mag.edges().iter().filter(|&&(u, v)| u != v && mag.edges().binary_search(&(v, u)).is_ok()).count();
    writeln!(out, "reciprocal arcs {reciprocated}")?;
    Ok(())
}

fn centrality(args: &CentralityArgs) -> Outcome {
    let mag = read_mag(&args.input)?;
    if args.mode != Mode::Composite && args.zeta.is_none() {
        return Err(Failure::Usage(format!("--zeta is required in {} mode", args.mode)));
    }
    let request = CentralityRequest {
        measure: args.measure,
        mode: args.mode,
        zeta: args.zeta.clone(),
        distance: args.distance,
        closeness: args.closeness,
    };
    let scores = parallel::compute(&mag, &request)?;
    let aspects = match &request.zeta {
        Some(z) if args.mode != Mode::Composite => retained_aspects(&mag, z)?,
        _ => mag.aspects().to_vec(),
    };
    write_scores(&scores, &aspects, sink(args.output.as_deref())?)?;
    Ok(())
}

fn compare(args: &CompareArgs) -> Outcome {
    let a = read_scores_file(&args.first)?;
    let b = read_scores_file(&args.second)?;
    let b_scores = a.align(&b)?;
    let settings = RboSettings {
        weight: args.rbo_weight,
        depth_fraction: args.rbo_depth,
        depth: args.depth,
        ties: args.ties,
        truncate: args.truncate,
    };
    if !(settings.depth_fraction > 0.0 && settings.depth_fraction <= 1.0) {
        return Err(Failure::Usage("--rbo-depth must lie in (0, 1]".into()));
    }
    let cmp = compare_scores(&a.scores, &b_scores, &settings)?;
    print!("{}", render(&cmp, &a.vertices, &a.scores, &b_scores, args.top));
    Ok(())
}

fn oracle(input: &Path, zeta: &SubDetSpec, arithmetic: &str) -> Outcome {
    let mag = read_mag(input)?;
    let arithmetic = if arithmetic == "real" { Arithmetic::Real } else { Arithmetic::Boolean };
    let cmp = compare_orders(&mag, zeta, arithmetic)?;
    let aspects = retained_aspects(&mag, zeta)?;
    let tau = mag_core::subdet::sub_companion_tuple(mag.companion(), zeta)?;
    let name = |i: usize| vertex_name(&aspects, &tau, i);
    let mut out = io::stdout().lock();
    writeln!(out, "classes   {}", cmp.classes)?;
    for (title, pairs) in [
        ("aggregate-first", &cmp.sub_first),
        ("search-first", &cmp.bfs_first),
        ("spurious", &cmp.spurious),
        ("missing", &cmp.missing),
    ] {
        writeln!(out, "{title} {}", pairs.len())?;
        for &(u, v) in pairs.iter() {
            writeln!(out, "  {} -> {}", name(u)?, name(v)?)?;
        }
    }
    if !cmp.missing.is_empty() {
        return Err(Failure::Internal("search-first reachability is not contained in aggregate-first".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Info { input } => info(&input),
        Command::Validate { input } => {
            let mag = read_mag(&input)?;
            println!("ok: {} vertices, {} edges", mag.vertex_count(), mag.edge_count());
            Ok(())
        }
        Command::Centrality(args) => centrality(&args),
        Command::Aggregate { input, zeta, output } => {
            let mag = read_mag(&input)?;
            let agg = aggregate_mag_graph(&mag, &zeta)?;
            write_mag(&agg, sink(output.as_deref())?)?;
            Ok(())
        }
        Command::Generate {
            aspects,
            edges,
            seed,
            reciprocal,
            output,
        } => {
            let mag = random_mag(&GenSpec::new(aspects, edges, seed).reciprocal(reciprocal))?;
            write_mag(&mag, sink(output.as_deref())?)?;
            Ok(())
        }
        Command::Compare(args) => compare(&args),
        Command::Oracle { input, zeta, arithmetic } => oracle(&input, &zeta, &arithmetic),
        Command::Experiment { manifest, output_dir } => {
            let mut manifest = Manifest::load(&manifest)?;
            if output_dir.is_some() {
                manifest.output_dir = output_dir;
            }
            let report = run_experiment(&manifest)?;
            print!("{}", render_summary(&report));
            if report.failures() > 0 {
                return Err(Failure::Data(Error::Data(format!("{} instance runs failed", report.failures()))));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if cli.threads == Some(0) {
        eprintln!("error: --threads must be positive");
        return ExitCode::from(1);
    }
    let threads = cli.threads;
    let result = std::panic::catch_unwind(|| parallel::with_threads(threads, || run(cli)));
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(Failure::Data(e))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}
