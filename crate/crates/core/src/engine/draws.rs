//! Uniform random draws addressed by `(purpose, agent, iteration)`.
//!
//! A draw depends only on the run seed and its address, never on how many
//! draws other agents made or in which order agents were processed.

use std::collections::HashMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DrawPurpose {
    /// Initial position and velocity.
    Init,
    /// The two scalar coefficients of the velocity update.
    Move,
    /// The deactivation test.
    Death,
}

pub trait DrawSource: Sync {
    /// Fill `out` with uniform values in `[0, 1)` for the given address.
    fn fill(&self, purpose: DrawPurpose, agent: usize, iteration: usize, out: &mut [f64]);
}

/// Keyed generators: each address is hashed with the run seed into the
/// seed of a fresh Xoshiro256++ generator.
#[derive(Debug, Clone, Copy)]
pub struct SeededDraws {
    seed: u64,
}

impl SeededDraws {
    pub fn new(seed: u64) -> Self {
        SeededDraws { seed }
    }

    fn key(&self, purpose: DrawPurpose, agent: usize, iteration: usize) -> u64 {
        let mix = |state: u64, word: u64| SplitMix64::seed_from_u64(state ^ word).next_u64();
        let k = mix(self.seed, purpose as u64 + 1);
        let k = mix(k, agent as u64);
        mix(k, iteration as u64)
    }
}

impl DrawSource for SeededDraws {
    fn fill(&self, purpose: DrawPurpose, agent: usize, iteration: usize, out: &mut [f64]) {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(self.key(purpose, agent, iteration));
        for v in out.iter_mut() {
            *v = rng.random::<f64>();
        }
    }
}

/// Fixed draws for hand-checked traces. Addresses without a script panic.
#[derive(Debug, Clone, Default)]
pub struct ScriptedDraws {
    values: HashMap<(DrawPurpose, usize, usize), Vec<f64>>,
}

impl ScriptedDraws {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, purpose: DrawPurpose, agent: usize, iteration: usize, values: Vec<f64>) -> Self {
        self.values.insert((purpose, agent, iteration), values);
        self
    }
}

impl DrawSource for ScriptedDraws {
    fn fill(&self, purpose: DrawPurpose, agent: usize, iteration: usize, out: &mut [f64]) {
        let values = self
            .values
            .get(&(purpose, agent, iteration))
            .unwrap_or_else(|| panic!("no scripted draws for {purpose:?} agent {agent} iteration {iteration}"));
        assert!(values.len() >= out.len(), "too few scripted draws");
        out.copy_from_slice(&values[..out.len()]);
    }
}

/// Remaps agent indices before delegating, so a relabelled swarm can replay
/// the draws of the original labelling.
pub struct RelabelledDraws<'a, D: DrawSource> {
    pub inner: &'a D,
    /// `original[new_index]` is the index the agent had before relabelling.
    pub original: Vec<usize>,
}

impl<D: DrawSource> DrawSource for RelabelledDraws<'_, D> {
    fn fill(&self, purpose: DrawPurpose, agent: usize, iteration: usize, out: &mut [f64]) {
        self.inner.fill(purpose, self.original[agent], iteration, out);
    }
}
