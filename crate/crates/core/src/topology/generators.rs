//! Graph constructors: the three base classes, the spectrum families that
//! interpolate between them, and the standard structured/random families.

use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("complete graph needs n >= 1"));
    }
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Hub-and-spoke graph with node 0 as the hub.
pub fn make_star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::invalid("star graph needs n >= 2"));
    }
    Graph::from_edges(n, (1..n).map(|j| (0, j)))
}

pub fn make_ring(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("ring graph needs n >= 3"));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Fully connected core `0..core_size`; every periphery node carries a single
/// edge to a core node, assigned round-robin in index order.
pub fn make_core_periphery(n: usize, core_size: usize) -> Result<Graph> {
    if n == 0 || core_size == 0 || core_size > n {
        return Err(Error::invalid(format!(
            "core size {core_size} out of range 1..={n}"
        )));
    }
    let core = (0..core_size).flat_map(|i| (i + 1..core_size).map(move |j| (i, j)));
    let periphery = (core_size..n).map(|j| ((j - core_size) % core_size, j));
    Graph::from_edges(n, core.chain(periphery))
}

/// Hubs `0..hub_count` joined in a ring (a single edge for two hubs, none for
/// one); remaining nodes are leaves attached round-robin to the hubs.
pub fn make_ring_core_star(n: usize, hub_count: usize) -> Result<Graph> {
    if n == 0 || hub_count == 0 || hub_count > n {
        return Err(Error::invalid(format!(
            "hub count {hub_count} out of range 1..={n}"
        )));
    }
    let mut edges = Vec::with_capacity(n);
    match hub_count {
        1 => {}
        2 => edges.push((0, 1)),
        h => edges.extend((0..h).map(|i| (i, (i + 1) % h))),
    }
    edges.extend((hub_count..n).map(|j| ((j - hub_count) % hub_count, j)));
    Graph::from_edges(n, edges)
}

/// Circulant graph: node `i` is joined to `i ± d (mod n)` for `d` in
/// `1..=ring_levels`.
pub fn make_multi_ring(n: usize, ring_levels: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("multi-ring graph needs n >= 3"));
    }
    if ring_levels == 0 || ring_levels > n / 2 {
        return Err(Error::invalid(format!(
            "ring levels {ring_levels} out of range 1..={}",
            n / 2
        )));
    }
    Graph::from_edges(
        n,
        (1..=ring_levels).flat_map(|d| (0..n).map(move |i| (i, (i + d) % n))),
    )
}

/// Toroidal grid where every node has exactly four neighbors.
pub fn make_von_neumann(rows: usize, cols: usize) -> Result<Graph> {
    if rows < 3 || cols < 3 {
        return Err(Error::invalid(format!(
            "von Neumann grid needs rows, cols >= 3 (got {rows}x{cols})"
        )));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let edges = (0..rows).flat_map(|r| {
        (0..cols).flat_map(move |c| [(id(r, c), id((r + 1) % rows, c)), (id(r, c), id(r, (c + 1) % cols))])
    });
    Graph::from_edges(rows * cols, edges)
}

/// Barabási–Albert preferential attachment. Starts from `attach_count`
/// isolated seed nodes; each new node links to `attach_count` distinct
/// targets drawn with probability proportional to degree.
pub fn make_scale_free<R: Rng + ?Sized>(n: usize, attach_count: usize, rng: &mut R) -> Result<Graph> {
    if attach_count == 0 || attach_count >= n {
        return Err(Error::invalid(format!(
            "attach count {attach_count} out of range 1..{n}"
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut targets: Vec<usize> = (0..attach_count).collect();
    let mut repeated: Vec<usize> = Vec::with_capacity(2 * attach_count * n);
    for source in attach_count..n {
        for &t in &targets {
            g.add_edge_unchecked(source, t);
        }
        repeated.extend_from_slice(&targets);
        repeated.extend(std::iter::repeat_n(source, attach_count));

        let mut next = Vec::with_capacity(attach_count);
        while next.len() < attach_count {
            let pick = repeated[rng.random_range(0..repeated.len())];
            if !next.contains(&pick) {
                next.push(pick);
            }
        }
        targets = next;
    }
    Ok(g)
}

/// Erdős–Rényi G(n, p): every unordered pair independently present.
pub fn make_random<R: Rng + ?Sized>(n: usize, edge_prob: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::invalid(format!("edge probability {edge_prob} outside [0, 1]")));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < edge_prob {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Random graph with exactly `edge_count` edges chosen uniformly.
pub fn make_random_with_edges<R: Rng + ?Sized>(n: usize, edge_count: usize, rng: &mut R) -> Result<Graph> {
    let max = n * n.saturating_sub(1) / 2;
    if edge_count > max {
        return Err(Error::invalid(format!(
            "{edge_count} edges exceed the {max} possible for {n} nodes"
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut placed = 0;
    while placed < edge_count {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i != j && !g.has_edge(i, j) {
            g.add_edge_unchecked(i, j);
            placed += 1;
        }
    }
    Ok(g)
}

/// Watts–Strogatz: a `degree/2` multi-ring whose edges are each rewired with
/// probability `rewire_prob` to a uniformly chosen node, avoiding self-loops
/// and duplicate edges. Edge count is preserved.
pub fn make_small_world<R: Rng + ?Sized>(
    n: usize,
    degree: usize,
    rewire_prob: f64,
    rng: &mut R,
) -> Result<Graph> {
    if !degree.is_multiple_of(2) || degree < 2 || degree >= n {
        return Err(Error::invalid(format!(
            "small-world degree must be even with 2 <= degree < n (got {degree}, n = {n})"
        )));
    }
    if !(0.0..=1.0).contains(&rewire_prob) {
        return Err(Error::invalid(format!("rewire probability {rewire_prob} outside [0, 1]")));
    }
    let half = degree / 2;
    let mut g = make_multi_ring(n, half)?;
    for d in 1..=half {
        for u in 0..n {
            let v = (u + d) % n;
            if rng.random::<f64>() >= rewire_prob {
                continue;
            }
            let mut w = rng.random_range(0..n);
            let mut saturated = false;
            while w == u || g.has_edge(u, w) {
                w = rng.random_range(0..n);
                if g.degree(u) >= n - 1 {
                    saturated = true;
                    break;
                }
            }
            if !saturated {
                g.remove_edge_unchecked(u, v);
                g.add_edge_unchecked(u, w);
            }
        }
    }
    Ok(g)
}
