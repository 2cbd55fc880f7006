use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::generators::*;
use super::Graph;
use crate::error::{Error, Result};

/// Topology family together with its shape parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TopologyKind {
    Complete,
    Star,
    Ring,
    CorePeriphery { core_size: usize },
    RingCoreStar { hub_count: usize },
    MultiRing { ring_levels: usize },
    VonNeumann { rows: usize, cols: usize },
    ScaleFree { attach_count: usize },
    Random { edge_prob: f64 },
    SmallWorld { degree: usize, rewire_prob: f64 },
}

impl TopologyKind {
    /// Short family name used in CSV output and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            TopologyKind::Complete => "complete",
            TopologyKind::Star => "star",
            TopologyKind::Ring => "ring",
            TopologyKind::CorePeriphery { .. } => "core-periphery",
            TopologyKind::RingCoreStar { .. } => "ring-core-star",
            TopologyKind::MultiRing { .. } => "multi-ring",
            TopologyKind::VonNeumann { .. } => "von-neumann",
            TopologyKind::ScaleFree { .. } => "scale-free",
            TopologyKind::Random { .. } => "random",
            TopologyKind::SmallWorld { .. } => "small-world",
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(
            self,
            TopologyKind::ScaleFree { .. } | TopologyKind::Random { .. } | TopologyKind::SmallWorld { .. }
        )
    }
}

/// Everything needed to (re)build a communication graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopologySpec {
    pub kind: TopologyKind,
    pub node_count: usize,
    /// Required by the random families, ignored by the others.
    pub seed: Option<u64>,
}

impl TopologySpec {
    pub fn new(kind: TopologyKind, node_count: usize) -> Self {
        TopologySpec {
            kind,
            node_count,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn build(&self) -> Result<Graph> {
        let n = self.node_count;
        let rng = || {
            self.seed.map(ChaCha8Rng::seed_from_u64).ok_or_else(|| {
                Error::invalid(format!("{} topology requires a seed", self.kind.name()))
            })
        };
        match self.kind {
            TopologyKind::Complete => make_complete(n),
            TopologyKind::Star => make_star(n),
            TopologyKind::Ring => make_ring(n),
            TopologyKind::CorePeriphery { core_size } => make_core_periphery(n, core_size),
            TopologyKind::RingCoreStar { hub_count } => make_ring_core_star(n, hub_count),
            TopologyKind::MultiRing { ring_levels } => make_multi_ring(n, ring_levels),
            TopologyKind::VonNeumann { rows, cols } => {
                if rows * cols != n {
                    return Err(Error::invalid(format!(
                        "von Neumann grid {rows}x{cols} does not have {n} nodes"
                    )));
                }
                make_von_neumann(rows, cols)
            }
            TopologyKind::ScaleFree { attach_count } => make_scale_free(n, attach_count, &mut rng()?),
            TopologyKind::Random { edge_prob } => make_random(n, edge_prob, &mut rng()?),
            TopologyKind::SmallWorld { degree, rewire_prob } => {
                make_small_world(n, degree, rewire_prob, &mut rng()?)
            }
        }
    }
}

impl fmt::Display for TopologySpec {
    /// Canonical identifier, e.g. `small-world-n100-k10-p0.1-s7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-n{}", self.kind.name(), self.node_count)?;
        match self.kind {
            TopologyKind::Complete | TopologyKind::Star | TopologyKind::Ring => {}
            TopologyKind::CorePeriphery { core_size } => write!(f, "-c{core_size}")?,
            TopologyKind::RingCoreStar { hub_count } => write!(f, "-h{hub_count}")?,
            TopologyKind::MultiRing { ring_levels } => write!(f, "-k{ring_levels}")?,
            TopologyKind::VonNeumann { rows, cols } => write!(f, "-{rows}x{cols}")?,
            TopologyKind::ScaleFree { attach_count } => write!(f, "-m{attach_count}")?,
            TopologyKind::Random { edge_prob } => write!(f, "-p{edge_prob}")?,
            TopologyKind::SmallWorld { degree, rewire_prob } => write!(f, "-k{degree}-p{rewire_prob}")?,
        }
        if self.kind.is_random() {
            if let Some(seed) = self.seed {
                write!(f, "-s{seed}")?;
            }
        }
        Ok(())
    }
}
