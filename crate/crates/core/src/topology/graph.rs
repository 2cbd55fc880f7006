use crate::error::{Error, Result};

/// Undirected, unweighted simple graph over node indices `0..n`.
///
/// Neighbor lists are kept sorted, so two graphs compare equal exactly when
/// their edge sets are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph must have at least one node"));
        }
        Ok(Graph {
            neighbors: vec![Vec::new(); n],
        })
    }

    /// Build from an edge list. Duplicate edges collapse; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::invalid(format!(
                    "edge ({i}, {j}) out of range for {n} nodes"
                )));
            }
            if i == j {
                return Err(Error::invalid(format!("self-loop at node {i}")));
            }
            g.neighbors[i].push(j);
            g.neighbors[j].push(i);
        }
        for list in &mut g.neighbors {
            list.sort_unstable();
            list.dedup();
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    /// Sorted neighbors of node `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// Dense row-major 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.node_count();
        let mut a = vec![vec![0.0; n]; n];
        for (i, j) in self.edges() {
            a[i][j] = 1.0;
            a[j][i] = 1.0;
        }
        a
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edge_count() as f64 / self.node_count() as f64
    }

    /// Whether every node is reachable from node 0.
    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// Graph with nodes relabelled so that old node `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::invalid("permutation length differs from node count"));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("not a permutation"));
            }
        }
        Graph::from_edges(n, self.edges().map(|(i, j)| (perm[i], perm[j])))
    }

    pub(crate) fn add_edge_unchecked(&mut self, i: usize, j: usize) {
        if let Err(pos) = self.neighbors[i].binary_search(&j) {
            self.neighbors[i].insert(pos, j);
        }
        if let Err(pos) = self.neighbors[j].binary_search(&i) {
            self.neighbors[j].insert(pos, i);
        }
    }

    pub(crate) fn remove_edge_unchecked(&mut self, i: usize, j: usize) {
        if let Ok(pos) = self.neighbors[i].binary_search(&j) {
            self.neighbors[i].remove(pos);
        }
        if let Ok(pos) = self.neighbors[j].binary_search(&i) {
            self.neighbors[j].remove(pos);
        }
    }
}
