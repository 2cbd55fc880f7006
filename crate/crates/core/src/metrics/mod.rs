//! Efficiency and robustness measures of communication graphs.

mod eigen;
mod paths;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use eigen::{symmetric_eigenvalues, OFF_DIAGONAL_TOLERANCE};
pub use paths::{average_geodesic, bfs_distances};

use crate::error::{Error, Result};
use crate::topology::{make_multi_ring, make_random_with_edges, Graph};

/// Redraws allowed per random-graph sample before giving up on connectivity.
pub const MAX_CONNECTED_RETRIES: usize = 1000;

/// Adjacency eigenvalues in descending order.
pub fn graph_spectrum(g: &Graph) -> Vec<f64> {
    symmetric_eigenvalues(g.adjacency_matrix()).expect("adjacency matrices are symmetric and square")
}

/// `ln(mean(exp(λ_i)))`, shifted by the largest eigenvalue so large spectra
/// do not overflow.
pub fn natural_connectivity_from_spectrum(eigenvalues: &[f64]) -> f64 {
    let max = eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = eigenvalues.iter().map(|l| (l - max).exp()).sum::<f64>() / eigenvalues.len() as f64;
    max + mean.ln()
}

pub fn natural_connectivity(g: &Graph) -> f64 {
    natural_connectivity_from_spectrum(&graph_spectrum(g))
}

/// Local clustering of node `i`; zero for degree below two.
pub fn local_clustering(g: &Graph, i: usize) -> f64 {
    let nbrs = g.neighbors(i);
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (a, &u) in nbrs.iter().enumerate() {
        for &v in &nbrs[a + 1..] {
            if g.has_edge(u, v) {
                links += 1;
            }
        }
    }
    2.0 * links as f64 / (k * (k - 1)) as f64
}

/// Average of the local clustering coefficients.
pub fn clustering_coefficient(g: &Graph) -> f64 {
    let n = g.node_count();
    (0..n).map(|i| local_clustering(g, i)).sum::<f64>() / n as f64
}

/// Small-world-ness `L_random / L - C / C_lattice`.
///
/// `L_random` averages the geodesic distance of `sample_count` connected
/// random graphs with the same node and edge counts; `C_lattice` is the
/// clustering of the multi-ring with half the mean degree. Returns
/// `Ok(None)` when the lattice clustering is zero.
pub fn small_world_ness<R: Rng + ?Sized>(g: &Graph, rng: &mut R, sample_count: usize) -> Result<Option<f64>> {
    if sample_count == 0 {
        return Err(Error::invalid("small-world-ness needs at least one random sample"));
    }
    let length = average_geodesic(g)?.ok_or(Error::Disconnected)?;
    let n = g.node_count();
    if n < 3 {
        return Ok(None);
    }
    let levels = ((g.mean_degree() / 2.0).round() as usize).clamp(1, n / 2);
    let lattice_clustering = clustering_coefficient(&make_multi_ring(n, levels)?);
    if lattice_clustering == 0.0 {
        return Ok(None);
    }

    let mut random_total = 0.0;
    for _ in 0..sample_count {
        let mut sample = None;
        for _ in 0..MAX_CONNECTED_RETRIES {
            let candidate = make_random_with_edges(n, g.edge_count(), rng)?;
            if let Some(l) = average_geodesic(&candidate)? {
                sample = Some(l);
                break;
            }
        }
        random_total += sample.ok_or_else(|| {
            Error::invalid(format!(
                "no connected random graph with {n} nodes and {} edges after {MAX_CONNECTED_RETRIES} draws",
                g.edge_count()
            ))
        })?;
    }
    let random_length = random_total / sample_count as f64;
    Ok(Some(random_length / length - clustering_coefficient(g) / lattice_clustering))
}

/// One row of graph measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub node_count: usize,
    pub edge_count: usize,
    pub average_path_length: Option<f64>,
    pub natural_connectivity: f64,
    pub clustering_coefficient: f64,
    pub small_world_ness: Option<f64>,
    pub connected: bool,
}

impl GraphMetrics {
    /// Measure `g`. Small-world-ness is computed only for connected graphs
    /// and only when `omega_samples > 0`, using a generator seeded by
    /// `omega_seed`.
    pub fn measure(g: &Graph, omega_samples: usize, omega_seed: u64) -> Result<Self> {
        let average_path_length = if g.node_count() >= 2 {
            average_geodesic(g)?
        } else {
            None
        };
        let connected = g.is_connected();
        let small_world_ness = if connected && omega_samples > 0 && g.node_count() >= 2 {
            let mut rng = ChaCha8Rng::seed_from_u64(omega_seed);
            small_world_ness(g, &mut rng, omega_samples)?
        } else {
            None
        };
        Ok(GraphMetrics {
            node_count: g.node_count(),
            edge_count: g.edge_count(),
            average_path_length,
            natural_connectivity: natural_connectivity(g),
            clustering_coefficient: clustering_coefficient(g),
            small_world_ness,
            connected,
        })
    }
}
