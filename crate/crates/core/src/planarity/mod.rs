//! Planarity decision and Kuratowski witnesses.
//!
//! [`is_planar`] runs the linear-time left-right test from scratch on each
//! call. [`kuratowski_oracle`] is an independent, exponential check by
//! direct search for K5 and K3,3 subdivisions; the two must agree.

mod kuratowski;
mod lr;

pub use kuratowski::{kuratowski_oracle, kuratowski_oracle_with_ceiling, DEFAULT_ORACLE_CEILING};

use crate::embedding::PlanarEmbedding;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Which Kuratowski graph a witness subdivides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 contained in a non-planar graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub embedding: Option<PlanarEmbedding>,
    pub witness: Option<KuratowskiWitness>,
}

/// Decides planarity; a planar answer carries a sphere embedding.
pub fn is_planar(graph: &SimpleGraph) -> PlanarityVerdict {
    match lr::LrState::new(graph).run() {
        Some(rotation) => {
            let embedding = PlanarEmbedding::from_rotation(rotation)
                .expect("left-right test produced an invalid rotation system");
            PlanarityVerdict {
                planar: true,
                embedding: Some(embedding),
                witness: None,
            }
        }
        None => PlanarityVerdict {
            planar: false,
            embedding: None,
            witness: None,
        },
    }
}

/// Planarity of a graph given as an edge list; rejects loops and repeats.
pub fn is_planar_edges(n: usize, edges: &[(usize, usize)]) -> Result<PlanarityVerdict> {
    Ok(is_planar(&SimpleGraph::from_edges(n, edges)?))
}

/// Cheap yes/no gate used by the PMFG builder.
pub fn planar(graph: &SimpleGraph) -> bool {
    lr::LrState::new(graph).run().is_some()
}

/// Like [`is_planar`], additionally extracting a Kuratowski subdivision
/// when the graph is non-planar.
pub fn is_planar_with_witness(graph: &SimpleGraph) -> PlanarityVerdict {
    let mut verdict = is_planar(graph);
    if !verdict.planar {
        verdict.witness = Some(kuratowski_witness(graph).expect("non-planar graph has a witness"));
    }
    verdict
}

/// Deletes edges one at a time while the graph stays non-planar. What is
/// left is an edge-minimal non-planar subgraph, hence a subdivision of K5
/// or K3,3.
pub fn kuratowski_witness(graph: &SimpleGraph) -> Result<KuratowskiWitness> {
    if planar(graph) {
        return Err(Error::Precondition("graph is planar; no Kuratowski witness".into()));
    }
    let n = graph.vertex_count();
    let mut kept = graph.edges();
    let mut i = 0;
    while i < kept.len() {
        let trial: Vec<(usize, usize)> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        let g = SimpleGraph::from_edges(n, &trial).expect("subset of a simple graph");
        if planar(&g) {
            i += 1;
        } else {
            kept = trial;
        }
    }
    let g = SimpleGraph::from_edges(n, &kept).expect("subset of a simple graph");
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 2).collect();
    let kind = match (branch.len(), branch.iter().all(|&v| g.degree(v) == 4)) {
        (5, true) => KuratowskiKind::K5,
        (6, false) if branch.iter().all(|&v| g.degree(v) == 3) => KuratowskiKind::K33,
        _ => {
            return Err(Error::Structural(format!(
                "minimal non-planar subgraph has unexpected branch set {branch:?}"
            )))
        }
    };
    Ok(KuratowskiWitness {
        kind,
        branch_vertices: branch,
        edges: kept,
    })
}
