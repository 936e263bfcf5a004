//! Exact Mostar index computation with certified upper bounds for
//! bipartite and split graphs.
//!
//! * [`graph`]: graphs, BFS distances, edge unbalance and Mo(G)
//! * [`families`]: complete bipartite and split constructions
//! * [`lp`]: degree-profile relaxation and an exact rational simplex
//! * [`duality`]: dual certificates and the bipartite bound
//! * [`split_bounds`]: the split-graph bound chain
//! * [`search`]: exhaustive searches, scans and sharpness tables

pub mod duality;
pub mod edgelist;
pub mod error;
pub mod families;
pub mod graph;
pub mod lp;
pub mod rational;
pub mod search;
pub mod split_bounds;

pub use error::{Error, Result};
pub use graph::{mostar_index, Graph};
