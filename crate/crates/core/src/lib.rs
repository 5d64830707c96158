//! Rainbow spanning trees in 1-factorized complete graphs.
//!
//! The crate collects the algorithmic pieces around decomposing an
//! edge-coloured `K_n` (colour classes forming a 1-factorization) into
//! `n/2` rainbow spanning trees:
//!
//! * [`colouring`]: 1-factorizations, rainbow predicates, boundedness audits.
//! * [`rmbg`]: robustly matchable bipartite graphs, max flow, bipartite matching.
//! * [`hypermatch`]: hypergraphs, the rainbow-cycle encoding and nibble matchings.
//! * [`embed`]: greedy rainbow rooted embeddings.
//! * [`matchings`]: quasirandomness and rainbow perfect matchings.
//! * [`trees`]: the target trees, connectors and canonical forms.
//! * [`pipeline`]: the exact solver, absorber demos and a staged strategy run.
//!
//! All randomized operations take an explicit `u64` seed and are deterministic.

pub mod cli;
pub mod colouring;
pub mod embed;
pub mod error;
pub mod hypermatch;
pub mod matchings;
pub mod pipeline;
pub mod rmbg;
pub mod rng;
pub mod trees;

pub use colouring::{Colour, Edge, EdgeColouredKn, EdgeSet, Vertex};
pub use error::{Error, Result};
