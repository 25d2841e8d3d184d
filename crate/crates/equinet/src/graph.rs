//! Undirected simple graphs over dense vertex ids.
//!
//! Vertices are `0..n`. Self-loops and parallel edges are rejected at
//! insertion, so `degree(v)` always sums to `2 * edge_count()`. Adjacency
//! lists are kept sorted ascending, which makes neighbor iteration, edge
//! iteration, and therefore everything built on top of them deterministic.
//!
//! Vertex arguments are bounds-checked like slice indexing: passing an id
//! `>= vertex_count()` panics.

/// An undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Creates a graph with `n` vertices and no edges. `n = 0` is valid.
    pub fn new(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of edges incident to `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (probe, target) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[probe].binary_search(&target).is_ok()
    }

    /// Inserts the edge `{u, v}`. Returns `false` and leaves the graph
    /// unchanged if the edge would be a self-loop or already exists.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        let n = self.adj.len();
        assert!(
            u < n && v < n,
            "vertex out of range: ({u}, {v}) with n = {n}"
        );
        if u == v {
            return false;
        }
        let slot_v = match self.adj[u].binary_search(&v) {
            Ok(_) => return false,
            Err(slot) => slot,
        };
        self.adj[u].insert(slot_v, v);
        let slot_u = self.adj[v]
            .binary_search(&u)
            .expect_err("adjacency lists out of sync");
        self.adj[v].insert(slot_u, u);
        self.edge_count += 1;
        true
    }

    /// Removes the edge `{u, v}`. Returns `false` if it was not present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let n = self.adj.len();
        assert!(
            u < n && v < n,
            "vertex out of range: ({u}, {v}) with n = {n}"
        );
        let slot_v = match self.adj[u].binary_search(&v) {
            Ok(slot) => slot,
            Err(_) => return false,
        };
        self.adj[u].remove(slot_v);
        let slot_u = self.adj[v]
            .binary_search(&u)
            .expect("adjacency lists out of sync");
        self.adj[v].remove(slot_u);
        self.edge_count -= 1;
        true
    }

    /// Edges as `(u, v)` pairs with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }
}
