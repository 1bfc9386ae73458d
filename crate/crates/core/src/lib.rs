//! Exact recurrences for the growth of cosets `yH ∩ Sₙ` of finite-index
//! subgroups `H` of the free group `F₂ = ⟨a, b⟩`.
//!
//! Letters are written `a`, `b`, `A = a⁻¹`, `B = b⁻¹`. A subgroup is given
//! either by generators (folded into its coset graph) or directly as a
//! transitive permutation action.

pub mod cli;
pub mod conjectures;
pub mod corpus;
pub mod cosetgraph;
pub mod counting;
pub mod error;
pub mod freegroup;
pub mod recurrence;
pub mod subgroup;

pub use cosetgraph::CosetGraph;
pub use error::{Error, Result};
pub use freegroup::{Letter, Word};
pub use recurrence::CoefficientTable;
pub use subgroup::{CosetAction, SubgroupSpec};
