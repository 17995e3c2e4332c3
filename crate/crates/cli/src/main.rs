//! `pmfg`: build planar maximally filtered graphs, census their cliques,
//! and run exhaustive checks over sphere triangulations.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pmfg::cliques::{count_cliques, standard_form_expected, CensusReport};
use pmfg::generator::{
    campaign_lines, diagonal_flip, flip_closure_with_ceiling, generate_all_with_ceiling, normalize_to_standard,
    FlipMove, DEFAULT_CLOSURE_CEILING,
};
use pmfg::pmfg::{build_pmfg, correlation_from_returns, ReturnsTable, SimilarityMatrix, TiePolicy};
use pmfg::verify::{degree_census, run_verify, VerifyReport};
use pmfg::{Error, PlanarEmbedding, Result};

#[derive(Parser)]
#[command(name = "pmfg", version, about = "Planar maximally filtered graphs and sphere triangulations")]
struct Cli {
    /// Worker threads for parallel campaigns (0 = one per core).
    #[arg(long, global = true, env = "PMFG_WORKERS", default_value_t = 0)]
    workers: usize,

    /// Raise the vertex ceiling for exhaustive closures above the default.
    #[arg(long, global = true, env = "PMFG_UNSAFE_CEILING", default_value_t = DEFAULT_CLOSURE_CEILING)]
    unsafe_ceiling: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a PMFG from a similarity matrix or a returns table.
    Build(BuildArgs),
    /// Clique census of a graph JSON file.
    Cliques(CliquesArgs),
    /// Generate every triangulation on n vertices.
    Generate(GenerateArgs),
    /// Flip a triangulation into the standard form.
    Normalize(NormalizeArgs),
    /// Apply one diagonal flip.
    Flip(FlipArgs),
    /// Check the clique bounds over every triangulation up to n vertices.
    Verify(VerifyArgs),
    /// Enumerate degree multisets and count the realizable ones.
    DegreeCensus(DegreeCensusArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    /// Square matrix with row and column labels.
    Matrix,
    /// One column per entity, one row per observation.
    Returns,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ties {
    Lexicographic,
    Strict,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Eberhard,
    Flip,
}

#[derive(Args)]
struct BuildArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "matrix")]
    format: InputFormat,
    #[arg(long, value_enum, default_value = "lexicographic")]
    ties: Ties,
    /// Directory for graph JSON, acceptance log and census report.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Also write a Graphviz file.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct CliquesArgs {
    graph: PathBuf,
    /// Print a CSV summary row instead of the JSON report.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct GenerateArgs {
    n: usize,
    #[arg(long, value_enum, default_value = "eberhard")]
    method: Method,
    /// Directory for the JSON-lines class list.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Also write one Graphviz file per class.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct NormalizeArgs {
    graph: PathBuf,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct FlipArgs {
    graph: PathBuf,
    /// Endpoints of the edge to flip.
    #[arg(long, num_args = 2, value_names = ["A", "C"])]
    edge: Vec<usize>,
    /// Output path; prints to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 9)]
    n_max: usize,
    /// Write the JSON report here; prints to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a table instead of JSON on stdout.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct DegreeCensusArgs {
    n: usize,
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "graph".to_string(), |s| s.to_string_lossy().into_owned())
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn build(args: &BuildArgs) -> Result<()> {
    let file = File::open(&args.input)?;
    let sim = match args.format {
        InputFormat::Matrix => SimilarityMatrix::from_matrix_csv(file)?,
        InputFormat::Returns => correlation_from_returns(&ReturnsTable::from_csv(file)?)?,
    };
    let policy = match args.ties {
        Ties::Lexicographic => TiePolicy::Lexicographic,
        Ties::Strict => TiePolicy::Strict,
    };
    let result = build_pmfg(&sim, policy)?;
    let name = stem(&args.input);
    fs::create_dir_all(&args.out_dir)?;
    write(&args.out_dir.join(format!("{name}.pmfg.json")), &result.embedding.to_json())?;
    let log_path = args.out_dir.join(format!("{name}.log.csv"));
    result.write_log_csv(BufWriter::new(File::create(&log_path)?))?;
    eprintln!("wrote {}", log_path.display());
    let census = count_cliques(&result.embedding)?;
    let report = CensusReport::new(&name, &census)?;
    write(&args.out_dir.join(format!("{name}.census.json")), &serde_json::to_string_pretty(&report)?)?;
    if args.dot {
        write(&args.out_dir.join(format!("{name}.dot")), &result.embedding.to_dot(&name))?;
    }
    println!(
        "{name}: n = {}, edges = {}, total weight = {:.6}, C3 = {}, C4 = {}",
        sim.len(),
        result.accepted.len(),
        result.total_weight,
        census.c3_total,
        census.c4_total
    );
    Ok(())
}

fn cliques(args: &CliquesArgs) -> Result<()> {
    let g = PlanarEmbedding::read_json(&args.graph)?;
    let report = CensusReport::new(&stem(&args.graph), &count_cliques(&g)?)?;
    if args.csv {
        CensusReport::write_csv(&[report], std::io::stdout().lock())?;
    } else {
        println!("{}", serde_json::to_string_pretty(&report)?);
    }
    Ok(())
}

fn generate(args: &GenerateArgs, ceiling: usize) -> Result<()> {
    let (classes, tag) = match args.method {
        Method::Eberhard => (generate_all_with_ceiling(args.n, ceiling)?, "eberhard"),
        Method::Flip => (flip_closure_with_ceiling(args.n, ceiling)?, "flip"),
    };
    fs::create_dir_all(&args.out_dir)?;
    write(&args.out_dir.join(format!("classes_n{}_{tag}.jsonl", args.n)), &campaign_lines(&classes)?)?;
    if args.dot {
        for (i, rec) in classes.values().enumerate() {
            let name = format!("n{}_class{:04}", args.n, i);
            fs::write(args.out_dir.join(format!("{name}.dot")), rec.embedding.to_dot(&name))?;
        }
    }
    println!("n = {}: {} classes", args.n, classes.len());
    Ok(())
}

fn normalize(args: &NormalizeArgs) -> Result<()> {
    let g = PlanarEmbedding::read_json(&args.graph)?;
    g.require_triangulation()?;
    let n = g.vertex_count();
    let before = count_cliques(&g)?;
    let (h, trace) = normalize_to_standard(&g)?;
    let after = count_cliques(&h)?;
    let name = stem(&args.graph);
    fs::create_dir_all(&args.out_dir)?;
    write(&args.out_dir.join(format!("{name}.normalized.json")), &h.to_json())?;
    write(&args.out_dir.join(format!("{name}.flips.json")), &serde_json::to_string_pretty(&trace)?)?;
    println!("before: C3 = {}, C4 = {}", before.c3_total, before.c4_total);
    println!("after:  C3 = {}, C4 = {} ({} flips)", after.c3_total, after.c4_total, trace.len());
    let expected = standard_form_expected(n)?;
    if after.counts() != (expected.c3, expected.c4) {
        return Err(Error::Verification(format!(
            "normalized census ({}, {}) differs from ({}, {})",
            after.c3_total, after.c4_total, expected.c3, expected.c4
        )));
    }
    Ok(())
}

fn flip(args: &FlipArgs) -> Result<()> {
    let g = PlanarEmbedding::read_json(&args.graph)?;
    g.require_triangulation()?;
    let (a, c) = (args.edge[0], args.edge[1]);
    let mv = FlipMove::for_edge(&g, a, c)?;
    let h = diagonal_flip(&g, &mv)?;
    match &args.out {
        Some(path) => write(path, &h.to_json())?,
        None => println!("{}", h.to_json()),
    }
    eprintln!("replaced ({a}, {c}) by ({}, {})", mv.replacement.0, mv.replacement.1);
    Ok(())
}

fn table(report: &VerifyReport) -> String {
    let mut out = String::from(" n  classes  C3 range  C4 range  3n-8  n-3  status\n");
    for r in &report.reports {
        out.push_str(&format!(
            "{:>2}  {:>7}  {:>3}..{:<3}  {:>3}..{:<3}  {:>4}  {:>3}  {}\n",
            r.n,
            r.classes,
            r.c3_min,
            r.c3_max,
            r.c4_min,
            r.c4_max,
            r.bounds.c3_max,
            r.bounds.c4_max,
            if r.passed() { "ok" } else { "FAILED" }
        ));
    }
    out.push_str(&format!(
        "Eberhard applications: {}, clique-change violations: {}\n",
        report.deltas.applications,
        report.deltas.violations.len()
    ));
    out
}

fn verify(args: &VerifyArgs, ceiling: usize) -> Result<()> {
    let report = run_verify(args.n_max, ceiling)?;
    let json = serde_json::to_string_pretty(&report)?;
    if let Some(path) = &args.out {
        write(path, &json)?;
    }
    if args.table {
        print!("{}", table(&report));
    } else if args.out.is_none() {
        println!("{json}");
    }
    if !report.passed {
        return Err(Error::Verification("at least one check failed; see the report".into()));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    let ceiling = cli.unsafe_ceiling;
    match &cli.command {
        Command::Build(a) => build(a),
        Command::Cliques(a) => cliques(a),
        Command::Generate(a) => generate(a, ceiling),
        Command::Normalize(a) => normalize(a),
        Command::Flip(a) => flip(a),
        Command::Verify(a) => verify(a, ceiling),
        Command::DegreeCensus(a) => {
            let census = degree_census(a.n, ceiling)?;
            println!("{}", serde_json::to_string_pretty(&census)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Verification(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
