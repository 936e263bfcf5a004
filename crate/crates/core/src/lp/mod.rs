//! The degree-profile relaxation of the bipartite Mostar bound and an exact
//! simplex solver for it.

pub mod profile;
pub mod program;
pub mod simplex;

pub use profile::{degree_profile, profile_to_point, relaxation_bound, DegreeProfile, PrimalPoint};
pub use program::{build_primal, primal_scale, LinearProgram, PrimalLayout, Sense};
pub use simplex::{solve_simplex, SimplexResult, SimplexStatus};
