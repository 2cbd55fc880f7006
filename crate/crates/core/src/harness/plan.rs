use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::criteria::SuccessCriterion;
use super::measures::death_fraction_to_prob;
use crate::engine::SwarmConfig;
use crate::error::{Error, Result};
use crate::objectives::{ObjectiveName, ObjectiveSpec};
use crate::topology::{spectrum_specs, Graph, TopologyKind, TopologySpec};

/// Iteration count at which death fractions are converted to probabilities.
pub const DEFAULT_DEATH_HORIZON: u32 = 500;
pub const DEFAULT_REPETITIONS: usize = 50;
pub const DEFAULT_ALPHA: f64 = 0.7;

/// A topology with the identifier it is reported under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanTopology {
    pub id: String,
    pub spec: TopologySpec,
}

impl PlanTopology {
    /// Identified by the spec's canonical string.
    pub fn new(spec: TopologySpec) -> Self {
        PlanTopology {
            id: spec.to_string(),
            spec,
        }
    }

    pub fn named(id: impl Into<String>, spec: TopologySpec) -> Self {
        PlanTopology { id: id.into(), spec }
    }
}

/// Spectrum graphs labelled `spectrum-000`, `spectrum-001`, ...
pub fn spectrum_topologies(n: usize, per_segment: usize) -> Result<Vec<PlanTopology>> {
    Ok(spectrum_specs(n, per_segment)?
        .into_iter()
        .enumerate()
        .map(|(k, (_, spec))| PlanTopology::named(format!("spectrum-{k:03}"), spec))
        .collect())
}

/// Position of one cell in the plan's Cartesian product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub topology: usize,
    pub objective: usize,
    pub death: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub topologies: Vec<PlanTopology>,
    pub objectives: Vec<ObjectiveSpec>,
    /// Expected fraction of agents lost by `death_horizon`.
    pub death_fractions: Vec<f64>,
    pub death_horizon: u32,
    pub repetitions: usize,
    pub base_seed: u64,
    pub success: SuccessCriterion,
    pub alpha: f64,
    /// Template for every run; `seed` and `death_prob` are set per run.
    pub swarm: SwarmConfig,
}

impl ExperimentPlan {
    pub fn new(topologies: Vec<PlanTopology>, objectives: Vec<ObjectiveSpec>, death_fractions: Vec<f64>) -> Self {
        ExperimentPlan {
            topologies,
            objectives,
            death_fractions,
            death_horizon: DEFAULT_DEATH_HORIZON,
            repetitions: DEFAULT_REPETITIONS,
            base_seed: 0,
            success: SuccessCriterion::default(),
            alpha: DEFAULT_ALPHA,
            swarm: SwarmConfig::default(),
        }
    }

    /// The 240-graph spectrum on Shekel at 0, 15 and 30 % loss.
    pub fn paper_fig4() -> Self {
        let topologies = spectrum_topologies(100, 80).expect("valid spectrum arguments");
        ExperimentPlan::new(
            topologies,
            vec![ObjectiveSpec::default_spec(ObjectiveName::Shekel)],
            vec![0.0, 0.15, 0.30],
        )
    }

    /// Nine reference topologies on the four secondary objectives at 0, 15
    /// and 30 % loss.
    pub fn paper_tables() -> Self {
        ExperimentPlan::new(
            reference_topologies(),
            [
                ObjectiveName::Ackley,
                ObjectiveName::Griewank,
                ObjectiveName::Schwefel,
                ObjectiveName::Rastrigin,
            ]
            .into_iter()
            .map(ObjectiveSpec::default_spec)
            .collect(),
            vec![0.0, 0.15, 0.30],
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.topologies.is_empty() {
            return Err(Error::invalid("plan has no topologies"));
        }
        if self.objectives.is_empty() {
            return Err(Error::invalid("plan has no objectives"));
        }
        if self.death_fractions.is_empty() {
            return Err(Error::invalid("plan has no death fractions"));
        }
        if self.repetitions == 0 {
            return Err(Error::invalid("repetitions must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::invalid(format!("alpha {} outside [0, 1]", self.alpha)));
        }
        self.success.validate()?;
        self.swarm.validate()?;
        for &f in &self.death_fractions {
            death_fraction_to_prob(f, self.death_horizon)?;
        }
        let mut ids = HashSet::new();
        for t in &self.topologies {
            if !ids.insert(t.id.as_str()) {
                return Err(Error::invalid(format!("duplicate topology id `{}`", t.id)));
            }
            if t.spec.node_count != self.swarm.n_agents {
                return Err(Error::invalid(format!(
                    "topology `{}` has {} nodes but the swarm has {} agents",
                    t.id, t.spec.node_count, self.swarm.n_agents
                )));
            }
        }
        Ok(())
    }

    /// All cells in canonical order: topology, then objective, then death
    /// fraction.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.topologies.len() * self.objectives.len() * self.death_fractions.len());
        for topology in 0..self.topologies.len() {
            for objective in 0..self.objectives.len() {
                for death in 0..self.death_fractions.len() {
                    out.push(Cell {
                        topology,
                        objective,
                        death,
                    });
                }
            }
        }
        out
    }

    /// Communication graph of topology `index`. Random families without an
    /// explicit seed get one derived from the base seed and topology id.
    pub fn build_graph(&self, index: usize) -> Result<Graph> {
        let t = &self.topologies[index];
        let mut spec = t.spec;
        if spec.kind.is_random() && spec.seed.is_none() {
            spec.seed = Some(derive_seed(&["topology", &self.base_seed.to_string(), &t.id]));
        }
        spec.build()
    }

    /// Engine configuration for one repetition of `cell`.
    pub fn run_config(&self, cell: Cell, repetition: usize) -> Result<SwarmConfig> {
        let fraction = self.death_fractions[cell.death];
        Ok(SwarmConfig {
            death_prob: death_fraction_to_prob(fraction, self.death_horizon)?,
            seed: run_seed(
                self.base_seed,
                &self.topologies[cell.topology].id,
                self.objectives[cell.objective].name,
                fraction,
                repetition,
            ),
            ..self.swarm.clone()
        })
    }
}

/// First eight bytes of the SHA-256 of the `|`-joined parts.
pub fn derive_seed(parts: &[&str]) -> u64 {
    let digest = Sha256::digest(parts.join("|").as_bytes());
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}

/// Seed of one run; depends only on the cell coordinates and repetition.
pub fn run_seed(base_seed: u64, topology_id: &str, objective: ObjectiveName, death_fraction: f64, repetition: usize) -> u64 {
    derive_seed(&[
        "run",
        &base_seed.to_string(),
        topology_id,
        objective.as_str(),
        &death_fraction.to_string(),
        &repetition.to_string(),
    ])
}

/// Complete, star, ring, 8-hub, 9-multi-ring, 10x10 von Neumann, scale-free,
/// random and small-world graphs on 100 nodes.
pub fn reference_topologies() -> Vec<PlanTopology> {
    let n = 100;
    [
        ("complete", TopologyKind::Complete),
        ("star", TopologyKind::Star),
        ("ring", TopologyKind::Ring),
        ("8-hub", TopologyKind::RingCoreStar { hub_count: 8 }),
        ("9-ring", TopologyKind::MultiRing { ring_levels: 9 }),
        ("von-neumann", TopologyKind::VonNeumann { rows: 10, cols: 10 }),
        ("scale-free", TopologyKind::ScaleFree { attach_count: 2 }),
        ("random", TopologyKind::Random { edge_prob: 0.1 }),
        (
            "small-world",
            TopologyKind::SmallWorld {
                degree: 10,
                rewire_prob: 0.1,
            },
        ),
    ]
    .into_iter()
    .map(|(id, kind)| PlanTopology::named(id, TopologySpec::new(kind, n)))
    .collect()
}
