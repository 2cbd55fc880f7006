use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use swarmlab::harness::{run_plan_with, ExperimentPlan, PlanOutput, RunOptions};
use swarmlab::io::{
    parse_plan, plan_to_text, render_plot, results_csv_string, results_to_json, topology_from_params,
    write_metrics_csv, write_trace_csv, MetricsRow, PlotSpec, XAxis, YAxis,
};
use swarmlab::metrics::GraphMetrics;
use swarmlab::topology::{build_spectrum, parse_edge_list, to_edge_list};

#[derive(Parser)]
#[command(name = "swarmlab", version, about = "Particle swarm experiments over communication topologies")]
struct Cli {
    /// Worker threads for experiment runs (default: all cores).
    #[arg(long, global = true, env = "SWARMLAB_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a topology as an edge list.
    GenTopology(GenTopologyArgs),
    /// Graph metrics of edge-list files as CSV.
    Metrics(MetricsArgs),
    /// Execute an experiment plan file.
    Run(RunArgs),
    /// Execute a built-in plan.
    Sweep(SweepArgs),
    /// Render a results CSV as SVG.
    Plot(PlotArgs),
}

#[derive(Args)]
struct GenTopologyArgs {
    /// complete, star, ring, core-periphery, ring-core-star, multi-ring,
    /// von-neumann, scale-free, random, small-world or spectrum.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    core: Option<usize>,
    #[arg(long)]
    hubs: Option<usize>,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    attach: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    rewire: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Graphs per spectrum segment.
    #[arg(long)]
    per_segment: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, conflicts_with = "out_dir")]
    out: Option<PathBuf>,
    /// Output directory for spectrum graphs.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct MetricsArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Random reference graphs per small-world-ness estimate; 0 skips it.
    #[arg(long, default_value_t = 0)]
    omega_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Base seed, replacing the plan's.
    #[arg(long, env = "SWARMLAB_SEED")]
    seed: Option<u64>,
    /// Repetitions per cell, replacing the plan's.
    #[arg(long)]
    repetitions: Option<usize>,
    /// Results CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the results as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write per-iteration traces of every run into this directory.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Print the effective plan and exit.
    #[arg(long)]
    print_plan: bool,
}

#[derive(Args)]
struct RunArgs {
    plan: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    PaperFig4,
    PaperTables,
}

#[derive(Args)]
struct SweepArgs {
    preset: Preset,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PlotArgs {
    results: PathBuf,
    /// topology-index, avg-path-length or natural-connectivity.
    #[arg(long, default_value = "topology-index")]
    x: String,
    /// Comma-separated: gsr, gs-time, winners, trade-off.
    #[arg(long, value_delimiter = ',', default_value = "gsr,gs-time,winners,trade-off")]
    y: Vec<String>,
    #[arg(long)]
    out: PathBuf,
}

/// Failure before any work was done: bad arguments, plan or input format.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn lib_err(e: swarmlab::Error) -> anyhow::Error {
    if e.is_validation() {
        Invalid(e.to_string()).into()
    } else {
        e.into()
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(p, bytes).with_context(|| format!("writing {}", p.display()))
        }
        None => io::stdout().write_all(bytes).context("writing to stdout"),
    }
}

fn gen_topology(args: GenTopologyArgs) -> anyhow::Result<()> {
    if args.kind == "spectrum" {
        let per = args
            .per_segment
            .ok_or_else(|| Invalid("spectrum needs --per-segment".into()))?;
        let dir = args
            .out_dir
            .ok_or_else(|| Invalid("spectrum needs --out-dir".into()))?;
        let entries = build_spectrum(args.n, per).map_err(lib_err)?;
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        for (k, e) in entries.iter().enumerate() {
            let path = dir.join(format!("spectrum-{k:03}.edges"));
            fs::write(&path, to_edge_list(&e.graph)).with_context(|| format!("writing {}", path.display()))?;
        }
        println!("wrote {} graphs to {}", entries.len(), dir.display());
        return Ok(());
    }
    if args.out_dir.is_some() || args.per_segment.is_some() {
        return Err(Invalid("--out-dir and --per-segment apply to spectrum only".into()).into());
    }

    let mut params = BTreeMap::new();
    params.insert("n".to_string(), args.n.to_string());
    let ints = [
        ("core", args.core),
        ("hubs", args.hubs),
        ("levels", args.levels),
        ("rows", args.rows),
        ("cols", args.cols),
        ("attach", args.attach),
        ("degree", args.degree),
    ];
    for (k, v) in ints {
        if let Some(v) = v {
            params.insert(k.to_string(), v.to_string());
        }
    }
    for (k, v) in [("p", args.p), ("rewire", args.rewire)] {
        if let Some(v) = v {
            params.insert(k.to_string(), v.to_string());
        }
    }
    if let Some(seed) = args.seed {
        params.insert("seed".to_string(), seed.to_string());
    }
    let spec = topology_from_params(&args.kind, &params).map_err(lib_err)?;
    let graph = spec.build().map_err(lib_err)?;
    write_output(args.out.as_deref(), to_edge_list(&graph).as_bytes())?;
    if args.out.is_some() {
        println!("{spec}: {} nodes, {} edges", graph.node_count(), graph.edge_count());
    } else {
        eprintln!("{spec}: {} nodes, {} edges", graph.node_count(), graph.edge_count());
    }
    Ok(())
}

fn metrics(args: MetricsArgs) -> anyhow::Result<()> {
    let mut rows = Vec::with_capacity(args.files.len());
    for path in &args.files {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let graph = parse_edge_list(&text).map_err(|e| lib_err(e).context(format!("{}", path.display())))?;
        let m = GraphMetrics::measure(&graph, args.omega_samples, args.seed).map_err(lib_err)?;
        let id = path
            .file_stem()
            .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        rows.push(MetricsRow::new(id, &m));
    }
    let mut buf = Vec::new();
    write_metrics_csv(&mut buf, &rows).map_err(lib_err)?;
    write_output(args.out.as_deref(), &buf)
}

fn execute(mut plan: ExperimentPlan, output: OutputArgs, workers: Option<usize>) -> anyhow::Result<()> {
    if let Some(seed) = output.seed {
        plan.base_seed = seed;
    }
    if let Some(r) = output.repetitions {
        plan.repetitions = r;
    }
    if workers == Some(0) {
        return Err(Invalid("--workers must be at least 1".into()).into());
    }
    plan.validate().map_err(lib_err)?;
    if output.print_plan {
        return write_output(output.out.as_deref(), plan_to_text(&plan).as_bytes());
    }

    let options = RunOptions {
        workers,
        trace: output.trace.is_some(),
    };
    let PlanOutput { rows, traces, .. } = run_plan_with(&plan, &options).map_err(lib_err)?;

    write_output(output.out.as_deref(), results_csv_string(&rows).map_err(lib_err)?.as_bytes())?;
    if let Some(path) = &output.json {
        write_output(Some(path), results_to_json(&rows).map_err(lib_err)?.as_bytes())?;
    }
    if let Some(dir) = &output.trace {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (cell, runs) in &traces {
            let stem = format!(
                "{}__{}__d{}",
                plan.topologies[cell.topology].id,
                plan.objectives[cell.objective].name,
                plan.death_fractions[cell.death]
            );
            for (rep, records) in runs.iter().enumerate() {
                let path = dir.join(format!("{stem}__r{rep:03}.csv"));
                let mut buf = Vec::new();
                write_trace_csv(&mut buf, records).map_err(lib_err)?;
                fs::write(&path, buf).with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    if output.out.is_some() {
        eprintln!("{} rows", rows.len());
    }
    Ok(())
}

fn run(args: RunArgs, workers: Option<usize>) -> anyhow::Result<()> {
    let text = fs::read_to_string(&args.plan).with_context(|| format!("reading {}", args.plan.display()))?;
    let plan = parse_plan(&text).map_err(|e| lib_err(e).context(format!("{}", args.plan.display())))?;
    execute(plan, args.output, workers)
}

fn sweep(args: SweepArgs, workers: Option<usize>) -> anyhow::Result<()> {
    let plan = match args.preset {
        Preset::PaperFig4 => ExperimentPlan::paper_fig4(),
        Preset::PaperTables => ExperimentPlan::paper_tables(),
    };
    execute(plan, args.output, workers)
}

fn plot(args: PlotArgs) -> anyhow::Result<()> {
    let x: XAxis = args.x.parse().map_err(lib_err)?;
    let y = args
        .y
        .iter()
        .map(|s| s.parse::<YAxis>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(lib_err)?;
    let file = fs::File::open(&args.results).with_context(|| format!("reading {}", args.results.display()))?;
    let svg = render_plot(file, &PlotSpec::new(x, y)).map_err(lib_err)?;
    write_output(Some(&args.out), svg.as_bytes())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let workers = cli.workers;
    let result = match cli.command {
        Command::GenTopology(a) => gen_topology(a),
        Command::Metrics(a) => metrics(a),
        Command::Run(a) => run(a, workers),
        Command::Sweep(a) => sweep(a, workers),
        Command::Plot(a) => plot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.is::<Invalid>()) {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
