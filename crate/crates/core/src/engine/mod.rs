//! Constricted particle swarm over a communication graph, with agents that
//! can be permanently deactivated at random.

mod config;
mod draws;
mod run;
mod swarm;

pub use config::{NeighborhoodMode, SwarmConfig};
pub use draws::{DrawPurpose, DrawSource, RelabelledDraws, ScriptedDraws, SeededDraws};
pub use run::{run, simulate, RunJudge, RunResult, TraceRecord};
pub use swarm::{
    initialize, neighborhood_best, neighborhood_best_index, randomized_death, step, survival_expectation,
    AgentState, SurvivalExpectation, SwarmState,
};
