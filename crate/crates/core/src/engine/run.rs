use serde::{Deserialize, Serialize};

use super::config::SwarmConfig;
use super::draws::{DrawSource, SeededDraws};
use super::swarm::{initialize, randomized_death, step, SwarmState};
use crate::error::{Error, Result};
use crate::objectives::Landscape;
use crate::topology::Graph;

/// Success tests the run loop consults; supplied by the experiment layer.
pub trait RunJudge: Sync {
    /// Whether the swarm as a whole has reached the optimum.
    fn is_global_success(&self, swarm: &SwarmState) -> bool;

    /// Agents (alive or not) whose best position reached the optimum.
    fn count_winners(&self, swarm: &SwarmState) -> usize;
}

/// Per-iteration snapshot, taken after deaths are processed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iter: usize,
    pub alive: usize,
    pub best_score: Option<f64>,
    pub converged_flag: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub converged: bool,
    /// First iteration at which the judge reported global success.
    pub convergence_iteration: Option<usize>,
    pub winners: usize,
    pub survivors: usize,
    pub iterations_executed: usize,
    pub trace: Option<Vec<TraceRecord>>,
}

/// Run with the seeded draw streams of `config.seed`.
pub fn run<L: Landscape + ?Sized, J: RunJudge + ?Sized>(
    config: &SwarmConfig,
    graph: &Graph,
    landscape: &L,
    judge: &J,
) -> Result<RunResult> {
    simulate(config, graph, landscape, judge, &SeededDraws::new(config.seed), false).map(|(r, _)| r)
}

/// Full run loop with an explicit draw source; returns the result and the
/// final swarm.
///
/// Each iteration moves every alive agent, then applies random deaths, then
/// asks the judge for global success. The loop stops after `max_iters`
/// iterations or once no agent is alive; it keeps going after the first
/// success so the final winner count reflects the whole run.
pub fn simulate<L, J, D>(
    config: &SwarmConfig,
    graph: &Graph,
    landscape: &L,
    judge: &J,
    draws: &D,
    record_trace: bool,
) -> Result<(RunResult, SwarmState)>
where
    L: Landscape + ?Sized,
    J: RunJudge + ?Sized,
    D: DrawSource + ?Sized,
{
    config.validate()?;
    if graph.node_count() != config.n_agents {
        return Err(Error::invalid(format!(
            "graph has {} nodes but the swarm has {} agents",
            graph.node_count(),
            config.n_agents
        )));
    }

    let mut swarm = initialize(config, landscape, draws);
    let mut convergence_iteration = None;
    let mut trace = record_trace.then(Vec::new);

    while swarm.iteration < config.max_iters && swarm.alive_count() > 0 {
        step(&mut swarm, graph, landscape, config, draws);
        randomized_death(&mut swarm, config.death_prob, draws)?;
        let success = swarm.alive_count() > 0 && judge.is_global_success(&swarm);
        if success && convergence_iteration.is_none() {
            convergence_iteration = Some(swarm.iteration);
        }
        if let Some(t) = trace.as_mut() {
            t.push(TraceRecord {
                iter: swarm.iteration,
                alive: swarm.alive_count(),
                best_score: swarm.best_alive_score(),
                converged_flag: success,
            });
        }
    }

    let result = RunResult {
        converged: convergence_iteration.is_some(),
        convergence_iteration,
        winners: judge.count_winners(&swarm),
        survivors: swarm.alive_count(),
        iterations_executed: swarm.iteration,
        trace,
    };
    Ok((result, swarm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{make_complete, make_ring};

    struct Sphere;

    impl Landscape for Sphere {
        fn dimension(&self) -> usize {
            1
        }
        fn bounds(&self, _: usize) -> (f64, f64) {
            (-5.0, 5.0)
        }
        fn score(&self, x: &[f64]) -> f64 {
            -x[0] * x[0]
        }
    }

    struct Near(f64);

    impl RunJudge for Near {
        fn is_global_success(&self, swarm: &SwarmState) -> bool {
            swarm
                .agents
                .iter()
                .filter(|a| a.alive)
                .all(|a| a.best_position[0].abs() <= self.0)
        }
        fn count_winners(&self, swarm: &SwarmState) -> usize {
            swarm.agents.iter().filter(|a| a.best_position[0].abs() <= self.0).count()
        }
    }

    fn small_config() -> SwarmConfig {
        SwarmConfig {
            n_agents: 10,
            seed: 5,
            ..SwarmConfig::default()
        }
    }

    #[test]
    fn sphere_converges_quickly() {
        let config = small_config();
        let r = run(&config, &make_complete(10).unwrap(), &Sphere, &Near(1e-3)).unwrap();
        assert!(r.converged);
        assert!(r.convergence_iteration.unwrap() < 200, "{r:?}");
        assert_eq!(r.winners, 10);
        assert_eq!(r.survivors, 10);
        assert_eq!(r.iterations_executed, 1000);
    }

    #[test]
    fn deterministic() {
        let config = SwarmConfig {
            death_prob: 0.01,
            ..small_config()
        };
        let g = make_ring(10).unwrap();
        let a = run(&config, &g, &Sphere, &Near(1e-2)).unwrap();
        let b = run(&config, &g, &Sphere, &Near(1e-2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn everyone_dies_early() {
        let config = SwarmConfig {
            death_prob: 0.9,
            ..small_config()
        };
        let r = run(&config, &make_complete(10).unwrap(), &Sphere, &Near(1e-12)).unwrap();
        assert!(!r.converged);
        assert_eq!(r.convergence_iteration, None);
        assert_eq!(r.survivors, 0);
        assert!(r.iterations_executed < 100);
    }

    #[test]
    fn node_count_mismatch() {
        let err = run(&small_config(), &make_complete(9).unwrap(), &Sphere, &Near(1.0));
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn trace_records_every_iteration() {
        let config = SwarmConfig {
            max_iters: 50,
            death_prob: 0.02,
            ..small_config()
        };
        let g = make_complete(10).unwrap();
        let (r, _) = simulate(&config, &g, &Sphere, &Near(1e-3), &SeededDraws::new(1), true).unwrap();
        let trace = r.trace.unwrap();
        assert_eq!(trace.len(), r.iterations_executed);
        assert!(trace.windows(2).all(|w| w[1].alive <= w[0].alive));
        assert_eq!(trace.iter().position(|t| t.converged_flag).map(|k| k + 1), r.convergence_iteration);
    }
}
