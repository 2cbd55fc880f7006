use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which agents an agent listens to when picking its neighborhood best.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NeighborhoodMode {
    /// The agent itself plus its alive graph neighbors.
    #[default]
    IncludeSelf,
    /// Alive graph neighbors only; an agent with none falls back to its own best.
    StrictNeighbors,
}

/// Constricted PSO hyperparameters plus run controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwarmConfig {
    /// Constriction coefficient.
    pub chi: f64,
    /// Cognitive (personal best) acceleration.
    pub phi1: f64,
    /// Social (neighborhood best) acceleration.
    pub phi2: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub n_agents: usize,
    pub max_iters: usize,
    /// Per-agent, per-iteration deactivation probability.
    pub death_prob: f64,
    pub seed: u64,
    pub neighborhood: NeighborhoodMode,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        SwarmConfig {
            chi: 0.7298438,
            phi1: 0.0,
            phi2: 2.05,
            v_min: -10.0,
            v_max: 10.0,
            n_agents: 100,
            max_iters: 1000,
            death_prob: 0.0,
            seed: 0,
            neighborhood: NeighborhoodMode::IncludeSelf,
        }
    }
}

impl SwarmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.v_min.is_nan() || self.v_max.is_nan() || self.v_min >= self.v_max {
            return Err(Error::invalid(format!(
                "velocity bounds must satisfy v_min < v_max (got {} and {})",
                self.v_min, self.v_max
            )));
        }
        if self.n_agents == 0 {
            return Err(Error::invalid("swarm needs at least one agent"));
        }
        if self.max_iters == 0 {
            return Err(Error::invalid("max_iters must be positive"));
        }
        if !(0.0..1.0).contains(&self.death_prob) {
            return Err(Error::invalid(format!("death probability {} outside [0, 1)", self.death_prob)));
        }
        if ![self.chi, self.phi1, self.phi2].iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("chi, phi1 and phi2 must be finite"));
        }
        Ok(())
    }
}
