//! Eberhard operations: clear the chords of a pure chord-cycle of length
//! 3, 4 or 5 and put a new hub vertex inside, joined to the whole cycle.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::cycles::{interior_chords, CycleRef};
use crate::cliques::CliqueCensus;
use crate::embedding::PlanarEmbedding;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EberhardKind {
    Phi1,
    Phi2,
    Phi3,
}

impl EberhardKind {
    pub const ALL: [EberhardKind; 3] = [EberhardKind::Phi1, EberhardKind::Phi2, EberhardKind::Phi3];

    pub fn cycle_len(self) -> usize {
        match self {
            EberhardKind::Phi1 => 3,
            EberhardKind::Phi2 => 4,
            EberhardKind::Phi3 => 5,
        }
    }

    pub fn chord_count(self) -> usize {
        self.cycle_len() - 3
    }

    /// 3- and 4-cliques the operation creates inside the cycle: those of
    /// the wheel on the cycle minus those of the triangulated polygon.
    pub fn created_cliques(self) -> (i64, i64) {
        match self {
            EberhardKind::Phi1 => (3, 1),
            EberhardKind::Phi2 | EberhardKind::Phi3 => (2, 0),
        }
    }
}

impl fmt::Display for EberhardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EberhardKind::Phi1 => "phi1",
            EberhardKind::Phi2 => "phi2",
            EberhardKind::Phi3 => "phi3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EberhardOp {
    pub kind: EberhardKind,
    pub cycle: CycleRef,
    pub new_vertex: usize,
}

impl EberhardOp {
    /// The operation matching the length of `cycle`, adding vertex `n`.
    pub fn on_cycle(emb: &PlanarEmbedding, cycle: CycleRef) -> Result<EberhardOp> {
        let kind = match cycle.len() {
            3 => EberhardKind::Phi1,
            4 => EberhardKind::Phi2,
            5 => EberhardKind::Phi3,
            k => return Err(Error::Precondition(format!("no Eberhard operation on a {k}-cycle"))),
        };
        Ok(EberhardOp { kind, cycle, new_vertex: emb.vertex_count() })
    }
}

/// Applies `op`: the cycle's chords are deleted and the new vertex becomes
/// a hub adjacent to every cycle vertex.
pub fn apply_eberhard(emb: &PlanarEmbedding, op: &EberhardOp) -> Result<PlanarEmbedding> {
    let k = op.kind.cycle_len();
    let c = &op.cycle.vertices;
    if c.len() != k {
        return Err(Error::Precondition(format!("{} needs a {k}-cycle, got {} vertices", op.kind, c.len())));
    }
    if op.cycle.chords.len() != op.kind.chord_count() {
        return Err(Error::Precondition(format!(
            "{} needs {} chords, got {}",
            op.kind,
            op.kind.chord_count(),
            op.cycle.chords.len()
        )));
    }
    if op.new_vertex != emb.vertex_count() {
        return Err(Error::Precondition(format!(
            "new vertex must be {}, got {}",
            emb.vertex_count(),
            op.new_vertex
        )));
    }
    match interior_chords(emb, c) {
        Some(chords) if chords == op.cycle.chords => {}
        _ => {
            return Err(Error::Precondition(format!(
                "{:?} is not a pure chord-cycle with chords {:?}",
                c, op.cycle.chords
            )))
        }
    }

    let mut out = emb.clone();
    for &(a, b) in &op.cycle.chords {
        out.remove_neighbor(a, b);
        out.remove_neighbor(b, a);
    }
    let h = out.add_vertex(c.clone());
    for i in 0..k {
        // the interior side of v lies between next and prev, turning
        // counter-clockwise from next
        let (v, next) = (c[i], c[(i + 1) % k]);
        out.insert_after(v, next, h);
    }
    out.refresh_outer_face();
    debug_assert!(out.revalidate().is_ok());
    Ok(out)
}

/// Clique bookkeeping for one application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CliqueDelta {
    pub kind: EberhardKind,
    /// Cliques of the wheel on the cycle minus cliques of the polygon.
    pub created_c3: i64,
    pub created_c4: i64,
    /// Change in the global counts.
    pub net_c3: i64,
    pub net_c4: i64,
}

impl CliqueDelta {
    /// Created counts match the operation, and the net change never
    /// exceeds what a phi1 step adds.
    pub fn holds(&self) -> bool {
        (self.created_c3, self.created_c4) == self.kind.created_cliques() && self.net_c3 <= 3 && self.net_c4 <= 1
    }
}

fn local_cliques(vertices: &[usize], edges: &[(usize, usize)]) -> (i64, i64) {
    let adj = |a: usize, b: usize| edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
    let m = vertices.len();
    let (mut c3, mut c4) = (0, 0);
    for i in 0..m {
        for j in i + 1..m {
            if !adj(vertices[i], vertices[j]) {
                continue;
            }
            for l in j + 1..m {
                if !(adj(vertices[i], vertices[l]) && adj(vertices[j], vertices[l])) {
                    continue;
                }
                c3 += 1;
                for t in l + 1..m {
                    if adj(vertices[i], vertices[t]) && adj(vertices[j], vertices[t]) && adj(vertices[l], vertices[t]) {
                        c4 += 1;
                    }
                }
            }
        }
    }
    (c3, c4)
}

/// Measures the clique change of `op`, which turned `before` into `after`.
pub fn clique_delta(
    op: &EberhardOp,
    after: &PlanarEmbedding,
    before_census: &CliqueCensus,
    after_census: &CliqueCensus,
) -> CliqueDelta {
    let c = &op.cycle.vertices;
    let k = c.len();
    let h = op.new_vertex;
    let rim: Vec<(usize, usize)> = (0..k).map(|i| (c[i], c[(i + 1) % k])).collect();
    let mut polygon = rim.clone();
    polygon.extend_from_slice(&op.cycle.chords);
    let mut wheel = rim;
    wheel.extend(c.iter().filter(|&&v| after.has_edge(h, v)).map(|&v| (h, v)));
    let mut wheel_vertices = c.clone();
    wheel_vertices.push(h);
    let (p3, p4) = local_cliques(c, &polygon);
    let (w3, w4) = local_cliques(&wheel_vertices, &wheel);
    CliqueDelta {
        kind: op.kind,
        created_c3: w3 - p3,
        created_c4: w4 - p4,
        net_c3: after_census.c3_total as i64 - before_census.c3_total as i64,
        net_c4: after_census.c4_total as i64 - before_census.c4_total as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::count_cliques;
    use crate::generator::canonical::{canonical_code, canonical_standard_form};
    use crate::generator::cycles::pure_chord_regions;

    #[test]
    fn k4_to_p5_by_phi1() {
        let k4 = PlanarEmbedding::standard_form(4).unwrap();
        let p5 = canonical_standard_form(5).unwrap();
        for cycle in pure_chord_regions(&k4, 3).unwrap() {
            let op = EberhardOp::on_cycle(&k4, cycle).unwrap();
            let g = apply_eberhard(&k4, &op).unwrap();
            assert!(g.is_triangulation());
            assert_eq!((g.vertex_count(), g.edge_count()), (5, 9));
            assert_eq!(g.degree(4), 3);
            assert_eq!(canonical_code(&g), p5);
        }
    }

    #[test]
    fn p5_to_both_p6_forms() {
        let p5 = PlanarEmbedding::standard_form(5).unwrap();
        let standard = canonical_standard_form(6).unwrap();
        let before = count_cliques(&p5).unwrap();
        let mut by_kind = std::collections::BTreeMap::new();
        for k in 3..=5 {
            for cycle in pure_chord_regions(&p5, k).unwrap() {
                let op = EberhardOp::on_cycle(&p5, cycle).unwrap();
                let g = apply_eberhard(&p5, &op).unwrap();
                assert!(g.is_triangulation());
                assert_eq!(g.edge_count(), p5.edge_count() + 3);
                let delta = clique_delta(&op, &g, &before, &count_cliques(&g).unwrap());
                assert!(delta.holds(), "{delta:?}");
                by_kind
                    .entry(op.kind)
                    .or_insert_with(std::collections::BTreeSet::new)
                    .insert(canonical_code(&g) == standard);
            }
        }
        assert_eq!(by_kind[&EberhardKind::Phi1], [true].into());
        assert_eq!(by_kind[&EberhardKind::Phi2], [false, true].into());
        assert_eq!(by_kind[&EberhardKind::Phi3], [true].into());
    }

    #[test]
    fn preconditions() {
        let g = PlanarEmbedding::standard_form(6).unwrap();
        let face = pure_chord_regions(&g, 3).unwrap().remove(0);
        let mut op = EberhardOp::on_cycle(&g, face.clone()).unwrap();
        op.kind = EberhardKind::Phi2;
        assert!(matches!(apply_eberhard(&g, &op), Err(Error::Precondition(_))));
        let separating = CycleRef { vertices: vec![0, 1, 3], chords: vec![] };
        let op = EberhardOp::on_cycle(&g, separating).unwrap();
        assert!(matches!(apply_eberhard(&g, &op), Err(Error::Precondition(_))));
        let mut op = EberhardOp::on_cycle(&g, face).unwrap();
        op.new_vertex = 9;
        assert!(apply_eberhard(&g, &op).is_err());
    }
}
