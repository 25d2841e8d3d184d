//! Graph generators that produce size-matched instances of three models.
//!
//! The point of this module is comparability: for a vertex count `n` and a
//! per-arrival attachment count `s`, all three generators emit graphs with
//! exactly the same number of edges,
//!
//! ```text
//! m = n * s - s * (s + 1) / 2
//! ```
//!
//! which is the total a growth process reaches when arrival `i` attaches
//! `min(i, s)` edges. The uniform model hits `m` by construction. The
//! small-world model starts from a ring lattice with `n * nei` edges and
//! deletes
//!
//! ```text
//! x = n * (nei - s) + s * (s + 1) / 2
//! ```
//!
//! edges before rewiring, which lands on the same `m` for any feasible
//! `nei`; the comparable configuration pins `nei = s`, making `x` a constant
//! `s * (s + 1) / 2` independent of `n`.
//!
//! All generators draw from a caller-supplied [`RngStream`] and are pure
//! functions of `(parameters, stream)`.

use std::fmt;

use rand::Rng;

use crate::error::Error;
use crate::graph::Graph;
use crate::rng::RngStream;

/// Candidate draws per rewired edge before giving up and keeping the edge
/// unchanged. Exhaustion is only reachable in near-complete graphs, where a
/// valid replacement endpoint may not exist at all.
pub const REWIRE_ATTEMPTS: usize = 100;

/// The three generated families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    Random,
    ScaleFree,
    SmallWorld,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Random, Model::ScaleFree, Model::SmallWorld];

    /// Stable identifier used in CSV files and config files.
    pub fn tag(self) -> &'static str {
        match self {
            Model::Random => "random",
            Model::ScaleFree => "scale_free",
            Model::SmallWorld => "small_world",
        }
    }

    /// Parses a model identifier; hyphenated spellings are accepted.
    pub fn from_tag(tag: &str) -> Option<Model> {
        match tag {
            "random" => Some(Model::Random),
            "scale_free" | "scale-free" => Some(Model::ScaleFree),
            "small_world" | "small-world" => Some(Model::SmallWorld),
            _ => None,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A fully resolved generation target: model, size parameters, and the edge
/// total they imply.
///
/// Use the per-model constructors; they validate parameters and compute `m`,
/// so a `ModelSpec` always describes a generable graph. `m` is identical
/// across models at the same `(n, s)`, which is what makes metric
/// comparisons between models meaningful.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub model: Model,
    pub n: usize,
    /// Edges attached per arrival (scale-free); shared size parameter for
    /// the other models.
    pub s: usize,
    /// Ring lattice radius; present only for small-world specs, where it
    /// equals `s`.
    pub nei: Option<usize>,
    /// Attachment kernel power; present only for scale-free specs.
    pub alpha: Option<f64>,
    /// Rewiring probability; present only for small-world specs.
    pub p: Option<f64>,
    /// Edge total implied by `(n, s)`.
    pub m: usize,
}

impl ModelSpec {
    /// Uniform simple graph with the shared edge total for `(n, s)`.
    pub fn random(n: usize, s: usize) -> Result<ModelSpec, Error> {
        let m = shared_edge_total(n, s)?;
        Ok(ModelSpec {
            model: Model::Random,
            n,
            s,
            nei: None,
            alpha: None,
            p: None,
            m,
        })
    }

    /// Growth with attachment probability proportional to `degree^alpha + 1`.
    pub fn scale_free(n: usize, s: usize, alpha: f64) -> Result<ModelSpec, Error> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidAlpha { alpha });
        }
        let m = shared_edge_total(n, s)?;
        Ok(ModelSpec {
            model: Model::ScaleFree,
            n,
            s,
            nei: None,
            alpha: Some(alpha),
            p: None,
            m,
        })
    }

    /// Ring lattice of radius `s`, trimmed to the shared edge total, then
    /// rewired with probability `p` per edge.
    pub fn small_world(n: usize, s: usize, p: f64) -> Result<ModelSpec, Error> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::InvalidProbability { p });
        }
        let m = shared_edge_total(n, s)?;
        if n < 2 * s + 1 {
            return Err(Error::LatticeTooSmall { n, nei: s });
        }
        Ok(ModelSpec {
            model: Model::SmallWorld,
            n,
            s,
            nei: Some(s),
            alpha: None,
            p: Some(p),
            m,
        })
    }

    /// Total ordering key: model, then `n`, `s`, `alpha`, `p`. Floats are
    /// compared by their IEEE bits, which is monotone for the non-negative
    /// values a spec can hold.
    pub fn sort_key(&self) -> (u8, usize, usize, u64, u64) {
        (
            self.model as u8,
            self.n,
            self.s,
            self.alpha.map_or(0, f64::to_bits),
            self.p.map_or(0, f64::to_bits),
        )
    }

    /// Legend-style series identifier: the model plus its swept parameter.
    pub fn series_key(&self) -> String {
        match self.model {
            Model::Random => "random".to_string(),
            Model::ScaleFree => format!("scale_free alpha={}", self.alpha.unwrap()),
            Model::SmallWorld => format!("small_world p={}", self.p.unwrap()),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} s={}", self.model, self.n, self.s)?;
        if let Some(alpha) = self.alpha {
            write!(f, " alpha={alpha}")?;
        }
        if let Some(p) = self.p {
            write!(f, " p={p}")?;
        }
        Ok(())
    }
}

fn validate_s(s: usize) -> Result<(), Error> {
    if s == 0 {
        return Err(Error::InvalidSpec {
            reason: "s must be at least 1".to_string(),
        });
    }
    Ok(())
}

fn shared_edge_total(n: usize, s: usize) -> Result<usize, Error> {
    validate_s(s)?;
    scale_free_edge_count(n, s)
}

/// Edge total of the growth model: `n * s - s * (s + 1) / 2`.
///
/// The first `s` arrivals attach fewer than `s` edges (arrival `i` can reach
/// only `i` earlier vertices), and the shortfall sums to `s * (s + 1) / 2`.
pub fn scale_free_edge_count(n: usize, s: usize) -> Result<usize, Error> {
    if n < s + 1 {
        return Err(Error::GrowthTooSmall { n, s });
    }
    Ok(n * s - s * (s + 1) / 2)
}

/// Edge total of a ring lattice of radius `nei`: `n * nei`.
pub fn lattice_edge_count(n: usize, nei: usize) -> Result<usize, Error> {
    if n < 2 * nei + 1 {
        return Err(Error::LatticeTooSmall { n, nei });
    }
    Ok(n * nei)
}

/// Edges to delete from a radius-`nei` lattice so that the remainder equals
/// the growth model's total: `n * (nei - s) + s * (s + 1) / 2`.
///
/// Errors if the count is negative (lattice already too sparse) or exceeds
/// the lattice's edge supply.
pub fn deletion_count(n: usize, nei: usize, s: usize) -> Result<usize, Error> {
    let n_i = n as i128;
    let nei_i = nei as i128;
    let s_i = s as i128;
    let x = n_i * (nei_i - s_i) + s_i * (s_i + 1) / 2;
    if x < 0 || x > n_i * nei_i {
        return Err(Error::BudgetInfeasible { n, nei, s });
    }
    Ok(x as usize)
}

/// Edge arithmetic for the small-world pipeline: the shared target total `m`
/// and the lattice deletions `x` needed to reach it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeBudget {
    pub m: usize,
    pub x: usize,
}

impl EdgeBudget {
    /// Budget for trimming a radius-`nei` lattice on `n` vertices down to
    /// the shared total for `(n, s)`. `n * nei - x = m` holds on success.
    pub fn for_lattice(n: usize, nei: usize, s: usize) -> Result<EdgeBudget, Error> {
        let lattice = lattice_edge_count(n, nei)?;
        let m = scale_free_edge_count(n, s)?;
        let x = deletion_count(n, nei, s)?;
        debug_assert_eq!(lattice - x, m);
        Ok(EdgeBudget { m, x })
    }
}

/// Uniform random simple graph with exactly `m` edges.
///
/// Draws unordered pairs uniformly and keeps the first `m` distinct valid
/// ones, which makes every `m`-edge simple graph on `n` vertices equally
/// likely.
pub fn generate_random_gnm(n: usize, m: usize, rng: &mut RngStream) -> Result<Graph, Error> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(Error::TooManyEdges { n, m, max });
    }
    let mut g = Graph::new(n);
    while g.edge_count() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

// Attachment weights memoized by degree: `degree^alpha + 1`. The `+ 1`
// keeps isolated vertices reachable, so growth can never stall.
struct AttachmentWeights {
    alpha: f64,
    by_degree: Vec<f64>,
}

impl AttachmentWeights {
    fn new(alpha: f64) -> AttachmentWeights {
        AttachmentWeights {
            alpha,
            by_degree: Vec::new(),
        }
    }

    fn get(&mut self, degree: usize) -> f64 {
        while self.by_degree.len() <= degree {
            let d = self.by_degree.len() as f64;
            self.by_degree.push(d.powf(self.alpha) + 1.0);
        }
        self.by_degree[degree]
    }
}

/// Growth model: starting from a single vertex, arrival `i` attaches
/// `min(i, s)` edges to distinct existing vertices, each target drawn with
/// probability proportional to `degree^alpha + 1` over the not-yet-chosen
/// candidates (weights renormalized after every pick).
pub fn generate_scale_free(
    n: usize,
    s: usize,
    alpha: f64,
    rng: &mut RngStream,
) -> Result<Graph, Error> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidAlpha { alpha });
    }
    let expected = scale_free_edge_count(n, s)?;
    let mut g = Graph::new(n);
    let mut weights = AttachmentWeights::new(alpha);
    let mut candidates: Vec<f64> = Vec::with_capacity(n);
    for arrival in 1..n {
        let picks = arrival.min(s);
        candidates.clear();
        candidates.extend((0..arrival).map(|v| weights.get(g.degree(v))));
        let mut total: f64 = candidates.iter().sum();
        for _ in 0..picks {
            let mut ticket = rng.random::<f64>() * total;
            let mut pick = None;
            for (v, &w) in candidates.iter().enumerate() {
                if w <= 0.0 {
                    continue;
                }
                if ticket < w {
                    pick = Some(v);
                    break;
                }
                ticket -= w;
            }
            // Floating-point slack can push the ticket past the last bucket;
            // that mass belongs to the final remaining candidate.
            let v = match pick {
                Some(v) => v,
                None => candidates
                    .iter()
                    .rposition(|&w| w > 0.0)
                    .expect("picks never exceed candidate count"),
            };
            total -= candidates[v];
            candidates[v] = 0.0;
            let inserted = g.add_edge(arrival, v);
            debug_assert!(inserted, "targets are distinct by construction");
        }
    }
    debug_assert_eq!(g.edge_count(), expected);
    Ok(g)
}

/// Ring lattice: vertex `v` is adjacent to `(v ± d) mod n` for
/// `d = 1..=nei`. Requires `n >= 2 * nei + 1` so all chords are distinct.
pub fn generate_ring_lattice(n: usize, nei: usize) -> Result<Graph, Error> {
    let expected = lattice_edge_count(n, nei)?;
    let mut g = Graph::new(n);
    for v in 0..n {
        for d in 1..=nei {
            let inserted = g.add_edge(v, (v + d) % n);
            debug_assert!(inserted, "chords are distinct when n >= 2 * nei + 1");
        }
    }
    debug_assert_eq!(g.edge_count(), expected);
    Ok(g)
}

/// Removes `x` edges chosen uniformly without replacement.
pub fn delete_random_edges(g: &mut Graph, x: usize, rng: &mut RngStream) -> Result<(), Error> {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    if x > edges.len() {
        return Err(Error::DeletionExceedsEdges {
            requested: x,
            available: edges.len(),
        });
    }
    // Partial Fisher-Yates: the first x slots end up holding a uniform
    // x-subset in uniform order.
    for i in 0..x {
        let j = rng.random_range(i..edges.len());
        edges.swap(i, j);
        let (u, v) = edges[i];
        let removed = g.remove_edge(u, v);
        debug_assert!(removed);
    }
    Ok(())
}

/// Rewires each edge independently with probability `p`: one endpoint
/// (chosen uniformly) stays, the other is replaced by a uniform random
/// vertex, rejecting self-loops and duplicate edges. After
/// [`REWIRE_ATTEMPTS`] rejected candidates the edge is kept unchanged, so
/// the edge count is always preserved.
///
/// Panics if `p` is outside `[0, 1]`.
pub fn rewire_edges(g: &mut Graph, p: f64, rng: &mut RngStream) {
    assert!(
        (0.0..=1.0).contains(&p) && !p.is_nan(),
        "rewiring probability out of range: {p}"
    );
    let n = g.vertex_count();
    let snapshot: Vec<(usize, usize)> = g.edges().collect();
    for (u, v) in snapshot {
        if rng.random::<f64>() >= p {
            continue;
        }
        let kept = if rng.random::<bool>() { u } else { v };
        let removed = g.remove_edge(u, v);
        debug_assert!(removed, "rewiring never removes other snapshot edges");
        let mut replaced = false;
        for _ in 0..REWIRE_ATTEMPTS {
            let candidate = rng.random_range(0..n);
            if candidate != kept && !g.has_edge(kept, candidate) {
                g.add_edge(kept, candidate);
                replaced = true;
                break;
            }
        }
        if !replaced {
            g.add_edge(u, v);
        }
    }
}

/// Small-world pipeline: ring lattice, then uniform deletions down to the
/// shared edge total, then rewiring. Requires `nei = s`; with that pinned,
/// the deletion count is `s * (s + 1) / 2` regardless of `n`, and the result
/// has exactly as many edges as the other models at `(n, s)`.
pub fn generate_small_world(
    n: usize,
    nei: usize,
    s: usize,
    p: f64,
    rng: &mut RngStream,
) -> Result<Graph, Error> {
    if nei != s {
        return Err(Error::NeighborhoodMismatch { nei, s });
    }
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidProbability { p });
    }
    let budget = EdgeBudget::for_lattice(n, nei, s)?;
    let mut g = generate_ring_lattice(n, nei)?;
    delete_random_edges(&mut g, budget.x, rng)?;
    rewire_edges(&mut g, p, rng);
    debug_assert_eq!(g.edge_count(), budget.m);
    Ok(g)
}

/// Generates the graph a spec describes.
pub fn generate(spec: &ModelSpec, rng: &mut RngStream) -> Result<Graph, Error> {
    match spec.model {
        Model::Random => generate_random_gnm(spec.n, spec.m, rng),
        Model::ScaleFree => generate_scale_free(
            spec.n,
            spec.s,
            spec.alpha.expect("scale-free specs carry alpha"),
            rng,
        ),
        Model::SmallWorld => generate_small_world(
            spec.n,
            spec.nei.expect("small-world specs carry nei"),
            spec.s,
            spec.p.expect("small-world specs carry p"),
            rng,
        ),
    }
}
