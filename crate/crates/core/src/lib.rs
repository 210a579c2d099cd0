//! Infinitesimal rigidity of hypergraph realisations in Lie group models.
//!
//! A realisation assigns a Lie subalgebra to every vertex, edge and incidence of a
//! hypergraph. The motion space, counting bounds, sparsity checks and
//! finite-group colouring criteria are all computed exactly over the rationals.

pub mod cli;
pub mod counting;
pub mod error;
pub mod finite;
pub mod hypergraph;
pub mod instance;
pub mod json;
pub mod liemodels;
pub mod linalg;
pub mod motionspace;
pub mod oracles;
pub mod realisation;

pub use error::{Error, Result};
