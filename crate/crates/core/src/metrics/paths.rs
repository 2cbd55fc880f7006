use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::topology::Graph;

/// Hop distances from `source`; `None` for unreachable nodes.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.node_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued nodes have a distance");
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Mean shortest-path hop count over ordered node pairs.
///
/// Returns `Ok(None)` when some pair is unreachable.
pub fn average_geodesic(g: &Graph) -> Result<Option<f64>> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::invalid("average geodesic distance needs at least 2 nodes"));
    }
    let mut total: u64 = 0;
    for s in 0..n {
        for d in bfs_distances(g, s) {
            match d {
                Some(d) => total += d as u64,
                None => return Ok(None),
            }
        }
    }
    Ok(Some(total as f64 / (n * (n - 1)) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::*;

    #[test]
    fn complete_is_one() {
        assert_eq!(average_geodesic(&make_complete(100).unwrap()).unwrap(), Some(1.0));
    }

    #[test]
    fn ring_and_star_closed_forms() {
        let ring = average_geodesic(&make_ring(100).unwrap()).unwrap().unwrap();
        assert!((ring - 2500.0 / 99.0).abs() < 1e-9);
        let star = average_geodesic(&make_star(100).unwrap()).unwrap().unwrap();
        assert!((star - 1.98).abs() < 1e-9);
    }

    #[test]
    fn disconnected_and_degenerate() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(average_geodesic(&g).unwrap(), None);
        assert!(average_geodesic(&make_complete(1).unwrap()).is_err());
    }
}
