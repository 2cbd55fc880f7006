use super::config::{NeighborhoodMode, SwarmConfig};
use super::draws::{DrawPurpose, DrawSource};
use crate::error::{Error, Result};
use crate::objectives::Landscape;
use crate::topology::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub best_position: Vec<f64>,
    /// Score at `best_position` (higher is better).
    pub best_score: f64,
    pub alive: bool,
}

impl AgentState {
    /// Agent at rest memory: its best is its current position.
    pub fn new<L: Landscape + ?Sized>(position: Vec<f64>, velocity: Vec<f64>, landscape: &L) -> Self {
        let best_score = landscape.score(&position);
        AgentState {
            best_position: position.clone(),
            position,
            velocity,
            best_score,
            alive: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    pub agents: Vec<AgentState>,
    /// Number of completed movement steps.
    pub iteration: usize,
}

impl SwarmState {
    pub fn from_agents(agents: Vec<AgentState>) -> Self {
        SwarmState { agents, iteration: 0 }
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn alive_count(&self) -> usize {
        self.agents.iter().filter(|a| a.alive).count()
    }

    /// Highest best score among alive agents.
    pub fn best_alive_score(&self) -> Option<f64> {
        self.agents
            .iter()
            .filter(|a| a.alive)
            .map(|a| a.best_score)
            .max_by(f64::total_cmp)
    }
}

/// Uniform positions inside the landscape box and uniform velocities inside
/// the velocity bounds; every agent starts alive with its start as its best.
pub fn initialize<L, D>(config: &SwarmConfig, landscape: &L, draws: &D) -> SwarmState
where
    L: Landscape + ?Sized,
    D: DrawSource + ?Sized,
{
    let dim = landscape.dimension();
    let mut u = vec![0.0; 2 * dim];
    let agents = (0..config.n_agents)
        .map(|i| {
            draws.fill(DrawPurpose::Init, i, 0, &mut u);
            let position = (0..dim)
                .map(|k| {
                    let (lo, hi) = landscape.bounds(k);
                    lo + u[k] * (hi - lo)
                })
                .collect();
            let velocity = u[dim..]
                .iter()
                .map(|r| config.v_min + r * (config.v_max - config.v_min))
                .collect();
            AgentState::new(position, velocity, landscape)
        })
        .collect();
    SwarmState::from_agents(agents)
}

/// Index of the agent whose best position agent `i` follows: the highest
/// best score among alive neighbors (and `i` itself unless in strict mode).
/// Ties go to the lowest index. In strict mode an agent without alive
/// neighbors follows itself.
pub fn neighborhood_best_index(i: usize, graph: &Graph, swarm: &SwarmState, mode: NeighborhoodMode) -> usize {
    let agents = &swarm.agents;
    let own = match mode {
        NeighborhoodMode::IncludeSelf => Some(i),
        NeighborhoodMode::StrictNeighbors => None,
    };
    let mut best: Option<usize> = None;
    let candidates = graph
        .neighbors(i)
        .iter()
        .copied()
        .filter(|&j| agents[j].alive)
        .chain(own);
    for j in candidates {
        best = match best {
            None => Some(j),
            Some(b) => {
                let (sj, sb) = (agents[j].best_score, agents[b].best_score);
                if sj > sb || (sj == sb && j < b) {
                    Some(j)
                } else {
                    Some(b)
                }
            }
        };
    }
    best.unwrap_or(i)
}

/// Best position agent `i` is attracted to.
pub fn neighborhood_best<'s>(i: usize, graph: &Graph, swarm: &'s SwarmState, mode: NeighborhoodMode) -> &'s [f64] {
    &swarm.agents[neighborhood_best_index(i, graph, swarm, mode)].best_position
}

/// One synchronous constricted-PSO step over all alive agents.
///
/// Neighborhood bests are read from the swarm as it was before the step.
/// Each agent draws two scalars, one per attraction term, from its own
/// `Move` stream at the new iteration number.
#[allow(clippy::needless_range_loop)]
pub fn step<L, D>(swarm: &mut SwarmState, graph: &Graph, landscape: &L, config: &SwarmConfig, draws: &D)
where
    L: Landscape + ?Sized,
    D: DrawSource + ?Sized,
{
    let iteration = swarm.iteration + 1;
    let targets: Vec<Option<Vec<f64>>> = (0..swarm.len())
        .map(|i| {
            swarm.agents[i]
                .alive
                .then(|| neighborhood_best(i, graph, swarm, config.neighborhood).to_vec())
        })
        .collect();

    let mut r = [0.0; 2];
    for (i, target) in targets.into_iter().enumerate() {
        let Some(target) = target else { continue };
        draws.fill(DrawPurpose::Move, i, iteration, &mut r);
        let agent = &mut swarm.agents[i];
        for k in 0..agent.position.len() {
            let x = agent.position[k];
            let v = config.chi
                * (agent.velocity[k]
                    + config.phi1 * r[0] * (agent.best_position[k] - x)
                    + config.phi2 * r[1] * (target[k] - x));
            let v = v.clamp(config.v_min, config.v_max);
            agent.velocity[k] = v;
            agent.position[k] = x + v;
        }
        let score = landscape.score(&agent.position);
        if score > agent.best_score {
            agent.best_score = score;
            agent.best_position.clone_from(&agent.position);
        }
    }
    swarm.iteration = iteration;
}

/// Deactivate each alive agent independently with probability `p`, using
/// the agent's `Death` stream at the current iteration. Returns the newly
/// deactivated indices in ascending order.
pub fn randomized_death<D: DrawSource + ?Sized>(swarm: &mut SwarmState, p: f64, draws: &D) -> Result<Vec<usize>> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::invalid(format!("death probability {p} outside [0, 1)")));
    }
    let mut died = Vec::new();
    if p == 0.0 {
        return Ok(died);
    }
    let mut r = [0.0];
    for (i, agent) in swarm.agents.iter_mut().enumerate() {
        if !agent.alive {
            continue;
        }
        draws.fill(DrawPurpose::Death, i, swarm.iteration, &mut r);
        if r[0] < p {
            agent.alive = false;
            died.push(i);
        }
    }
    Ok(died)
}

/// Expected survivors of an `n`-agent swarm after `t` iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalExpectation {
    pub expected_active: f64,
    pub fraction_active: f64,
    pub fraction_dead: f64,
}

pub fn survival_expectation(n: usize, p: f64, t: u32) -> Result<SurvivalExpectation> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("death probability {p} outside [0, 1]")));
    }
    let fraction_active = (1.0 - p).powi(t as i32);
    Ok(SurvivalExpectation {
        expected_active: n as f64 * fraction_active,
        fraction_active,
        fraction_dead: 1.0 - fraction_active,
    })
}
