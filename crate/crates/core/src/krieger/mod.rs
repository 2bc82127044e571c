//! Past equivalence of rays and the left Krieger cover.
//!
//! Everything here runs on a right-resolving essential presentation. A ray
//! `x` is summarized by its survivor set `I(x)`, the vertices that can emit
//! it. A word `μ` can precede `x` exactly when the range of `R_μ` meets
//! `I(x)`, so past equivalence is a relation between survivor sets and the
//! finite transition semigroup decides it.

mod cover;
mod partition;
mod semigroup;
mod survivor;

pub use cover::{build_cover, build_cover_with_limit, edge_matrix, CoverClass, EdgeMatrix, KriegerCover};
pub use partition::{
    partition_by_words, past_partition, refine_once, stabilization_level, PastPartition,
};
pub use semigroup::{
    transition_semigroup, transition_semigroup_with_limit, TransitionRelation,
    TransitionSemigroup, DEFAULT_SEMIGROUP_LIMIT,
};
pub use survivor::{
    enumerate_survivor_sets, periodic_emitters, prepend, realized_survivor_sets, survivor_set,
    RealizedSet,
};
