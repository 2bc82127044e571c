//! Left Krieger covers of sofic shifts.
//!
//! Given a labeled-graph presentation of a sofic shift (or a list of
//! forbidden words for a shift of finite type), this crate computes the
//! past-equivalence classes of right-infinite rays, builds the left Krieger
//! cover graph together with its edge matrix, models the commutative
//! diagonal algebra of the shift as clopen sets of rays, checks the finite
//! identities that tie the shift's operator algebra to the Cuntz-Krieger
//! algebra of the cover, and computes the K-groups of that Cuntz-Krieger
//! algebra by Smith normal form.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod automata;
pub mod diagonal;
mod error;
pub mod isocheck;
pub mod krieger;
pub mod ktheory;
pub mod shift;
mod vertex_set;

pub use error::{Error, Result};
pub use vertex_set::VertexSet;
