//! Error type shared by the generator, sweep, and aggregation layers.
//!
//! File-format and I/O failures have their own type in [`crate::io`]; this
//! enum covers everything that can go wrong before bytes hit a disk.

use thiserror::Error;

/// Parameter and pipeline errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Growth needs at least `s + 1` vertices so the last arrival can still
    /// attach `s` distinct edges.
    #[error("scale-free growth requires n >= s + 1 (n = {n}, s = {s})")]
    GrowthTooSmall { n: usize, s: usize },

    /// A ring lattice with radius `nei` only has `n * nei` distinct edges
    /// when `n >= 2 * nei + 1`; below that the chords wrap onto each other.
    #[error("ring lattice requires n >= 2 * nei + 1 (n = {n}, nei = {nei})")]
    LatticeTooSmall { n: usize, nei: usize },

    /// The deletion count that would match the lattice to the growth model's
    /// edge total is negative or exceeds the lattice's edge count.
    #[error("edge budget infeasible for n = {n}, nei = {nei}, s = {s}")]
    BudgetInfeasible { n: usize, nei: usize, s: usize },

    #[error("m = {m} exceeds the {max} edges a simple graph on {n} vertices can hold")]
    TooManyEdges { n: usize, m: usize, max: usize },

    #[error("cannot delete {requested} edges from a graph with {available}")]
    DeletionExceedsEdges { requested: usize, available: usize },

    #[error("probability must lie in [0, 1], got {p}")]
    InvalidProbability { p: f64 },

    #[error("attachment power must be positive and finite, got {alpha}")]
    InvalidAlpha { alpha: f64 },

    /// Small-world graphs are only comparable to the other models when the
    /// lattice radius equals the attachment count.
    #[error("small-world generation requires nei = s (nei = {nei}, s = {s})")]
    NeighborhoodMismatch { nei: usize, s: usize },

    #[error("invalid spec: {reason}")]
    InvalidSpec { reason: String },

    #[error("invalid sweep configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("cannot aggregate records with mixed specs: {left} vs {right}")]
    MixedAggregation { left: String, right: String },

    #[error("cannot aggregate an empty record set")]
    EmptyAggregation,

    #[error("sample {sample_index} of {spec} failed")]
    SampleFailed {
        spec: String,
        sample_index: usize,
        #[source]
        source: Box<Error>,
    },
}
