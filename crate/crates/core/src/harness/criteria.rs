use serde::{Deserialize, Serialize};

use crate::engine::{AgentState, RunJudge, SwarmState};
use crate::error::{Error, Result};
use crate::objectives::{Landscape, ObjectiveSpec};

/// Default success radius as a fraction of the search-box diagonal.
pub const DEFAULT_RADIUS_FRACTION: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuccessMode {
    /// Euclidean distance from the best position to the optimum location.
    PositionRadius,
    /// Absolute gap between the best value and the optimum value.
    ValueGap,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tolerance {
    Absolute(f64),
    /// Multiple of the objective's range diagonal.
    RangeFraction(f64),
}

/// When an agent counts as having reached the global optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuccessCriterion {
    pub mode: SuccessMode,
    pub tolerance: Tolerance,
}

impl Default for SuccessCriterion {
    fn default() -> Self {
        SuccessCriterion {
            mode: SuccessMode::PositionRadius,
            tolerance: Tolerance::RangeFraction(DEFAULT_RADIUS_FRACTION),
        }
    }
}

impl SuccessCriterion {
    pub fn absolute(mode: SuccessMode, tolerance: f64) -> Self {
        SuccessCriterion {
            mode,
            tolerance: Tolerance::Absolute(tolerance),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let t = match self.tolerance {
            Tolerance::Absolute(t) | Tolerance::RangeFraction(t) => t,
        };
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::invalid(format!("success tolerance must be positive (got {t})")));
        }
        Ok(())
    }

    /// Tolerance in the objective's own units.
    pub fn epsilon(&self, objective: &ObjectiveSpec) -> f64 {
        match self.tolerance {
            Tolerance::Absolute(t) => t,
            Tolerance::RangeFraction(f) => f * objective.range_diagonal(),
        }
    }

    pub fn judge<'a>(&self, objective: &'a ObjectiveSpec) -> SuccessJudge<'a> {
        SuccessJudge {
            objective,
            mode: self.mode,
            epsilon: self.epsilon(objective),
            optimum_score: objective.score(&objective.optimum_location),
        }
    }
}

/// A criterion bound to one objective.
#[derive(Debug, Clone, Copy)]
pub struct SuccessJudge<'a> {
    pub objective: &'a ObjectiveSpec,
    pub mode: SuccessMode,
    pub epsilon: f64,
    optimum_score: f64,
}

impl SuccessJudge<'_> {
    /// Inclusive at the boundary.
    pub fn satisfied(&self, agent: &AgentState) -> bool {
        match self.mode {
            SuccessMode::PositionRadius => {
                let d2: f64 = agent
                    .best_position
                    .iter()
                    .zip(&self.objective.optimum_location)
                    .map(|(x, o)| (x - o).powi(2))
                    .sum();
                d2.sqrt() <= self.epsilon
            }
            SuccessMode::ValueGap => (agent.best_score - self.optimum_score).abs() <= self.epsilon,
        }
    }
}

/// Agents, alive or dead, whose best position satisfies the criterion.
pub fn count_winners(swarm: &SwarmState, judge: &SuccessJudge<'_>) -> usize {
    swarm.agents.iter().filter(|a| judge.satisfied(a)).count()
}

/// Every alive agent satisfies the criterion. False when no agent is alive.
pub fn is_global_success(swarm: &SwarmState, judge: &SuccessJudge<'_>) -> bool {
    let mut alive = swarm.agents.iter().filter(|a| a.alive).peekable();
    alive.peek().is_some() && alive.all(|a| judge.satisfied(a))
}

impl RunJudge for SuccessJudge<'_> {
    fn is_global_success(&self, swarm: &SwarmState) -> bool {
        is_global_success(swarm, self)
    }

    fn count_winners(&self, swarm: &SwarmState) -> usize {
        count_winners(swarm, self)
    }
}
