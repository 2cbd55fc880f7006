//! Seeded experiment batches over topology × objective × death-rate cells.

mod criteria;
mod measures;
mod plan;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use criteria::{
    count_winners, is_global_success, SuccessCriterion, SuccessJudge, SuccessMode, Tolerance,
    DEFAULT_RADIUS_FRACTION,
};
pub use measures::{death_fraction_to_prob, trade_off};
pub use plan::{
    derive_seed, reference_topologies, run_seed, spectrum_topologies, Cell, ExperimentPlan, PlanTopology,
    DEFAULT_ALPHA, DEFAULT_DEATH_HORIZON, DEFAULT_REPETITIONS,
};

use crate::engine::{simulate, RunResult, SeededDraws, TraceRecord};
use crate::error::{Error, Result};
use crate::metrics::GraphMetrics;
use crate::topology::Graph;

/// Performance summary of one cell over all repetitions.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateMetrics {
    pub cell: Cell,
    pub repetitions: usize,
    pub converged_runs: usize,
    /// Fraction of repetitions reaching global success.
    pub gsr: f64,
    /// Mean convergence iteration over the converged repetitions only.
    pub gs_time: Option<f64>,
    pub winners_mean: f64,
    /// Filled in once the whole plan is known.
    pub trade_off: Option<f64>,
}

impl AggregateMetrics {
    pub fn from_runs(cell: Cell, runs: &[RunResult]) -> Self {
        let repetitions = runs.len();
        let times: Vec<f64> = runs
            .iter()
            .filter_map(|r| r.convergence_iteration)
            .map(|t| t as f64)
            .collect();
        let converged_runs = times.len();
        AggregateMetrics {
            cell,
            repetitions,
            converged_runs,
            gsr: converged_runs as f64 / repetitions as f64,
            gs_time: (!times.is_empty()).then(|| times.iter().sum::<f64>() / times.len() as f64),
            winners_mean: runs.iter().map(|r| r.winners as f64).sum::<f64>() / repetitions as f64,
            trade_off: None,
        }
    }
}

/// One row of the results table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub topology_id: String,
    pub topology_kind: String,
    pub objective: String,
    pub death_fraction: f64,
    pub repetitions: usize,
    pub gsr: f64,
    pub gs_time: Option<f64>,
    pub winners_mean: f64,
    pub trade_off: Option<f64>,
    #[serde(rename = "L")]
    pub average_path_length: Option<f64>,
    pub natural_connectivity: f64,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Keep per-iteration traces of every run.
    pub trace: bool,
}

/// Result of running a single cell.
#[derive(Debug, Clone)]
pub struct CellOutcome {
    pub metrics: AggregateMetrics,
    pub runs: Vec<RunResult>,
}

/// Runs of every repetition of `cell` on a prebuilt graph.
pub fn run_cell_on(plan: &ExperimentPlan, cell: Cell, graph: &Graph, trace: bool) -> Result<CellOutcome> {
    let runs = (0..plan.repetitions)
        .map(|rep| run_repetition(plan, cell, graph, rep, trace))
        .collect::<Result<Vec<_>>>()?;
    Ok(CellOutcome {
        metrics: AggregateMetrics::from_runs(cell, &runs),
        runs,
    })
}

/// Aggregate metrics of one cell, building its graph first.
pub fn run_cell(plan: &ExperimentPlan, cell: Cell) -> Result<AggregateMetrics> {
    plan.validate()?;
    let graph = plan.build_graph(cell.topology)?;
    Ok(run_cell_on(plan, cell, &graph, false)?.metrics)
}

fn run_repetition(plan: &ExperimentPlan, cell: Cell, graph: &Graph, repetition: usize, trace: bool) -> Result<RunResult> {
    let config = plan.run_config(cell, repetition)?;
    let objective = &plan.objectives[cell.objective];
    let judge = plan.success.judge(objective);
    let draws = SeededDraws::new(config.seed);
    Ok(simulate(&config, graph, objective, &judge, &draws, trace)?.0)
}

/// Run `cells` in parallel, one job per repetition. Output order follows
/// `cells`.
pub fn execute_cells(plan: &ExperimentPlan, graphs: &[Graph], cells: &[Cell], trace: bool) -> Result<Vec<CellOutcome>> {
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..plan.repetitions).map(move |r| (c, r)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(c, r)| run_repetition(plan, cells[c], &graphs[cells[c].topology], r, trace))
        .collect::<Result<Vec<_>>>()?;
    Ok(runs
        .chunks(plan.repetitions)
        .zip(cells)
        .map(|(runs, &cell)| CellOutcome {
            metrics: AggregateMetrics::from_runs(cell, runs),
            runs: runs.to_vec(),
        })
        .collect())
}

/// Fill in trade-off values and return metrics in canonical cell order.
///
/// Normalizers are the largest mean winner count and GS time among cells
/// sharing the same objective and death fraction.
pub fn assemble(plan: &ExperimentPlan, mut metrics: Vec<AggregateMetrics>) -> Result<Vec<AggregateMetrics>> {
    metrics.sort_by_key(|m| m.cell);
    for objective in 0..plan.objectives.len() {
        for death in 0..plan.death_fractions.len() {
            let slice = |m: &&AggregateMetrics| m.cell.objective == objective && m.cell.death == death;
            let winners_max = metrics.iter().filter(slice).map(|m| m.winners_mean).fold(0.0, f64::max);
            let time_max = metrics
                .iter()
                .filter(slice)
                .filter_map(|m| m.gs_time)
                .fold(None, |acc: Option<f64>, t| Some(acc.map_or(t, |a| a.max(t))));
            for m in metrics
                .iter_mut()
                .filter(|m| m.cell.objective == objective && m.cell.death == death)
            {
                m.trade_off = match time_max {
                    Some(tmax) if winners_max > 0.0 => trade_off(m.winners_mean, m.gs_time, winners_max, tmax, plan.alpha)?,
                    _ => None,
                };
            }
        }
    }
    Ok(metrics)
}

/// Output of a full plan run.
#[derive(Debug, Clone)]
pub struct PlanOutput {
    pub rows: Vec<ResultRow>,
    pub metrics: Vec<AggregateMetrics>,
    /// Per-cell, per-repetition traces when requested.
    pub traces: Vec<(Cell, Vec<Vec<TraceRecord>>)>,
}

pub fn run_plan(plan: &ExperimentPlan) -> Result<Vec<ResultRow>> {
    Ok(run_plan_with(plan, &RunOptions::default())?.rows)
}

pub fn run_plan_with(plan: &ExperimentPlan, options: &RunOptions) -> Result<PlanOutput> {
    plan.validate()?;
    match options.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?
            .install(|| run_plan_inner(plan, options.trace)),
        None => run_plan_inner(plan, options.trace),
    }
}

fn run_plan_inner(plan: &ExperimentPlan, trace: bool) -> Result<PlanOutput> {
    let graphs = (0..plan.topologies.len())
        .into_par_iter()
        .map(|t| plan.build_graph(t))
        .collect::<Result<Vec<_>>>()?;
    let graph_metrics = graphs
        .par_iter()
        .map(|g| GraphMetrics::measure(g, 0, 0))
        .collect::<Result<Vec<_>>>()?;

    let outcomes = execute_cells(plan, &graphs, &plan.cells(), trace)?;
    let traces = if trace {
        outcomes
            .iter()
            .map(|o| {
                (
                    o.metrics.cell,
                    o.runs.iter().map(|r| r.trace.clone().unwrap_or_default()).collect(),
                )
            })
            .collect()
    } else {
        Vec::new()
    };
    let metrics = assemble(plan, outcomes.into_iter().map(|o| o.metrics).collect())?;
    let rows = metrics
        .iter()
        .map(|m| {
            let topo = &plan.topologies[m.cell.topology];
            let gm = &graph_metrics[m.cell.topology];
            ResultRow {
                topology_id: topo.id.clone(),
                topology_kind: topo.spec.kind.name().to_string(),
                objective: plan.objectives[m.cell.objective].name.to_string(),
                death_fraction: plan.death_fractions[m.cell.death],
                repetitions: m.repetitions,
                gsr: m.gsr,
                gs_time: m.gs_time,
                winners_mean: m.winners_mean,
                trade_off: m.trade_off,
                average_path_length: gm.average_path_length,
                natural_connectivity: gm.natural_connectivity,
            }
        })
        .collect();
    Ok(PlanOutput { rows, metrics, traces })
}
