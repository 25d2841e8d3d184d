//! Distance, centrality, and clustering metrics for unweighted graphs.
//!
//! Disconnected inputs are legal everywhere, under one uniform convention:
//! vertex pairs with no connecting path are excluded from distance sums and
//! pair counts (they are never assigned a sentinel distance), and a vertex
//! with no reachable peer has closeness 0. Betweenness is unnormalized, each
//! unordered pair is counted once, and endpoints are excluded.
//!
//! Every function accumulates in a fixed order (ascending vertex id), so for
//! a given graph the results are bit-identical across runs, platforms, and
//! thread counts.

use std::collections::VecDeque;

use crate::generators::ModelSpec;
use crate::graph::Graph;

/// Breadth-first distances from `source`. Unreachable vertices are `None`.
///
/// Panics if `source` is out of range.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<u32>> {
    let n = g.vertex_count();
    assert!(source < n, "source out of range: {source} with n = {n}");
    let mut dist = vec![None; n];
    dist[source] = Some(0);
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued vertices have distances");
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Mean shortest-path length over unordered reachable pairs, or 0 if no two
/// vertices are connected.
pub fn average_shortest_path(g: &Graph) -> f64 {
    let n = g.vertex_count();
    let mut total: u64 = 0;
    let mut pairs: u64 = 0;
    for source in 0..n {
        for (v, d) in bfs_distances(g, source).into_iter().enumerate() {
            if v == source {
                continue;
            }
            if let Some(d) = d {
                total += u64::from(d);
                pairs += 1;
            }
        }
    }
    // Ordered sums count every unordered pair twice, so the ratio is the
    // same either way.
    if pairs == 0 {
        0.0
    } else {
        total as f64 / pairs as f64
    }
}

/// Closeness of every vertex: the reciprocal of its distance sum to all
/// reachable peers, 0 for vertices with no reachable peer.
pub fn closeness_centrality(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut closeness = Vec::with_capacity(n);
    for v in 0..n {
        let sum: u64 = bfs_distances(g, v)
            .into_iter()
            .flatten()
            .map(u64::from)
            .sum();
        closeness.push(if sum == 0 { 0.0 } else { 1.0 / sum as f64 });
    }
    closeness
}

/// Mean of [`closeness_centrality`] over all vertices, or 0 for the empty
/// graph.
pub fn mean_closeness(g: &Graph) -> f64 {
    mean(&closeness_centrality(g))
}

/// Shortest-path betweenness of every vertex: for each unordered vertex pair
/// (counted once, endpoints excluded), the fraction of shortest paths
/// passing through the vertex. No normalization is applied.
///
/// One accumulation pass per source, visited in ascending order, with the
/// usual predecessor/path-count bookkeeping and a final halving because the
/// per-source passes see each unordered pair from both ends.
pub fn betweenness_centrality(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut betweenness = vec![0.0; n];
    let mut dist: Vec<i64> = vec![0; n];
    let mut paths: Vec<f64> = vec![0.0; n];
    let mut dependency: Vec<f64> = vec![0.0; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut queue = VecDeque::new();

    for source in 0..n {
        dist.fill(-1);
        paths.fill(0.0);
        dependency.fill(0.0);
        for p in &mut preds {
            p.clear();
        }
        order.clear();
        queue.clear();

        dist[source] = 0;
        paths[source] = 1.0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    paths[w] += paths[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = order.pop() {
            for &v in &preds[w] {
                dependency[v] += paths[v] / paths[w] * (1.0 + dependency[w]);
            }
            if w != source {
                betweenness[w] += dependency[w];
            }
        }
    }
    for b in &mut betweenness {
        *b *= 0.5;
    }
    betweenness
}

/// Mean of [`betweenness_centrality`] over all vertices, or 0 for the empty
/// graph.
pub fn mean_betweenness(g: &Graph) -> f64 {
    mean(&betweenness_centrality(g))
}

/// Global clustering coefficient: three times the triangle count over the
/// number of connected triples, or 0 if the graph has no triples.
pub fn global_clustering(g: &Graph) -> f64 {
    let mut closed: u64 = 0;
    for (u, v) in g.edges() {
        closed += sorted_intersection_count(g.neighbors(u), g.neighbors(v));
    }
    let triples: u64 = (0..g.vertex_count())
        .map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    // Each triangle closes one triple at each of its three edges, so the
    // per-edge neighbor intersections already sum to 3 * triangles.
    if triples == 0 {
        0.0
    } else {
        closed as f64 / triples as f64
    }
}

fn sorted_intersection_count(a: &[usize], b: &[usize]) -> u64 {
    let (mut i, mut j) = (0, 0);
    let mut count = 0;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// All metrics of one generated graph, tagged with the spec and seed that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricRecord {
    pub spec: ModelSpec,
    /// Derived 64-bit stream key of this sample.
    pub seed: u64,
    pub sample_index: usize,
    /// Measured vertex count of the graph.
    pub n: usize,
    /// Measured edge count of the graph.
    pub m: usize,
    pub mean_closeness: f64,
    pub mean_betweenness: f64,
    pub avg_shortest_path: f64,
    pub global_clustering: f64,
}

/// Computes every metric of `g` in one pass. Pure: same graph, same record.
pub fn metric_report(g: &Graph, spec: &ModelSpec, seed: u64, sample_index: usize) -> MetricRecord {
    MetricRecord {
        spec: spec.clone(),
        seed,
        sample_index,
        n: g.vertex_count(),
        m: g.edge_count(),
        mean_closeness: mean_closeness(g),
        mean_betweenness: mean_betweenness(g),
        avg_shortest_path: average_shortest_path(g),
        global_clustering: global_clustering(g),
    }
}
