//! Planar maximally filtered graphs and the combinatorics of sphere
//! triangulations: construction from similarity data, 3- and 4-clique
//! census, Eberhard generation, diagonal flips, and exhaustive checks of
//! the clique bounds at small sizes.

pub mod cliques;
pub mod embedding;
pub mod error;
pub mod generator;
pub mod graph;
pub mod planarity;
pub mod pmfg;
pub mod verify;

pub use embedding::{EulerReport, Face, PlanarEmbedding};
pub use error::{Error, Result};
pub use graph::SimpleGraph;
