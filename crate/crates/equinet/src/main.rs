//! Command-line front end: generate single graphs, run sweeps, audit the
//! shared edge totals, and project records onto plot data.
//!
//! Exit codes: 0 on success, 1 when `verify-edges` finds a mismatch, 2 for
//! any other failure (bad arguments, unreadable files, invalid configs).

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use equinet::generators::{generate, Model, ModelSpec};
use equinet::io::{self, FigureId};
use equinet::sweep::{aggregate_records, execute_sweep, sample_stream, verify_edge_identity};

#[derive(Parser)]
#[command(
    name = "equinet",
    version,
    about = "Edge-matched network models and their metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Run the parameter sweep described by a config file.
    Sweep(SweepArgs),
    /// Check that every spec in a config hits its shared edge total.
    VerifyEdges(VerifyEdgesArgs),
    /// Project a records CSV onto one figure as x,y series files.
    PlotData(PlotDataArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Model: random, scale-free, or small-world.
    #[arg(long)]
    model: String,

    /// Vertex count.
    #[arg(long)]
    n: usize,

    /// Edges per arrival; fixes the shared edge total together with --n.
    #[arg(long)]
    s: usize,

    /// Attachment kernel exponent (scale-free only).
    #[arg(long)]
    alpha: Option<f64>,

    /// Rewiring probability (small-world only).
    #[arg(long)]
    p: Option<f64>,

    /// Base seed. Sample 0 of a sweep with the same seed draws the same graph.
    #[arg(long)]
    seed: u64,

    /// Output edge-list path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep config file.
    #[arg(long)]
    config: PathBuf,

    /// Output directory for records.csv, aggregates.csv, and manifest.txt.
    #[arg(long)]
    out: PathBuf,

    /// Worker threads; 0 means one per core. The output does not depend on this.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct VerifyEdgesArgs {
    /// Sweep config file naming the grid to audit.
    #[arg(long)]
    config: PathBuf,

    /// Worker threads; 0 means one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct PlotDataArgs {
    /// Records CSV produced by `sweep`.
    #[arg(long)]
    records: PathBuf,

    /// Figure: edges_vertices, closeness, betweenness, asp, or clustering.
    #[arg(long)]
    figure: FigureId,

    /// Output directory for the series files and the figure manifest.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate(args) => {
            cmd_generate(args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            cmd_sweep(args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyEdges(args) => cmd_verify_edges(args),
        Command::PlotData(args) => {
            cmd_plot_data(args)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn spec_from_args(args: &GenerateArgs) -> Result<ModelSpec> {
    let model = Model::from_tag(&args.model).with_context(|| {
        format!(
            "unknown model `{}`, expected random, scale-free, or small-world",
            args.model
        )
    })?;
    if args.alpha.is_some() && model != Model::ScaleFree {
        bail!("--alpha does not apply to model {model}");
    }
    if args.p.is_some() && model != Model::SmallWorld {
        bail!("--p does not apply to model {model}");
    }
    let spec = match model {
        Model::Random => ModelSpec::random(args.n, args.s)?,
        Model::ScaleFree => {
            let alpha = args.alpha.context("scale-free needs --alpha")?;
            ModelSpec::scale_free(args.n, args.s, alpha)?
        }
        Model::SmallWorld => {
            let p = args.p.context("small-world needs --p")?;
            ModelSpec::small_world(args.n, args.s, p)?
        }
    };
    Ok(spec)
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let spec = spec_from_args(&args)?;
    let mut rng = sample_stream(&spec, args.seed, 0);
    let g = generate(&spec, &mut rng)?;
    io::write_edge_list(&g, &args.out)?;
    println!(
        "wrote {} ({} vertices, {} edges) to {}",
        spec,
        g.vertex_count(),
        g.edge_count(),
        args.out.display()
    );
    Ok(())
}

/// Runs `job` on a dedicated pool of `threads` workers, or on the global
/// pool when `threads` is 0.
fn with_thread_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("failed to build the worker pool")?;
    Ok(pool.install(job))
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let config = io::read_sweep_config(&args.config)?;
    let result = with_thread_pool(args.threads, || execute_sweep(&config))??;
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("failed to create {}", args.out.display()))?;

    let records_path = args.out.join("records.csv");
    let aggregates_path = args.out.join("aggregates.csv");
    let manifest_path = args.out.join("manifest.txt");
    io::write_records(&result.records, &records_path)?;
    io::write_aggregates(&result.aggregates, &aggregates_path)?;
    io::write_manifest(&result.manifest, &manifest_path)?;

    println!(
        "wrote {} records and {} aggregates to {}",
        result.records.len(),
        result.aggregates.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_verify_edges(args: VerifyEdgesArgs) -> Result<ExitCode> {
    let config = io::read_sweep_config(&args.config)?;
    let audits = with_thread_pool(args.threads, || verify_edge_identity(&config))??;
    let failures: Vec<_> = audits.iter().filter(|a| !a.passed()).collect();
    if failures.is_empty() {
        println!("edge identity holds across {} specs", audits.len());
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "edge identity violated in {} of {} specs:",
        failures.len(),
        audits.len()
    );
    for audit in failures {
        println!(
            "  {}: expected m = {}, generated n = {}, m = {}",
            audit.spec, audit.expected_m, audit.actual_n, audit.actual_m
        );
    }
    Ok(ExitCode::from(1))
}

fn cmd_plot_data(args: PlotDataArgs) -> Result<()> {
    let records = io::read_records(&args.records)?;
    let aggregates = aggregate_records(records)?;
    let series = io::plot_series_from_aggregates(&aggregates, args.figure)?;
    let written = io::write_plot_series(&series, &args.out)?;
    println!(
        "wrote {} series files and a figure manifest to {}",
        written.len() - 1,
        args.out.display()
    );
    Ok(())
}
