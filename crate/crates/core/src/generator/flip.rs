//! Diagonal flips: swap the shared edge of two adjacent triangles for the
//! other diagonal of the quadrilateral they form.

use serde::{Deserialize, Serialize};

use crate::embedding::PlanarEmbedding;
use crate::error::{Error, Result};

/// Replaces `shared_edge = (a, c)` by `replacement = (b, d)`, where
/// `(a, c, b)` and `(c, a, d)` are the counter-clockwise faces on the two
/// sides of `a -> c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipMove {
    pub shared_edge: (usize, usize),
    pub replacement: (usize, usize),
}

impl FlipMove {
    /// The flip of edge `a - c` in `emb`, without the legality check.
    pub fn for_edge(emb: &PlanarEmbedding, a: usize, c: usize) -> Result<FlipMove> {
        if !emb.has_edge(a, c) {
            return Err(Error::Input(format!("({a}, {c}) is not an edge")));
        }
        let left = emb.face_left_of(a, c);
        let right = emb.face_left_of(c, a);
        if left.degree() != 3 || right.degree() != 3 {
            return Err(Error::Structural(format!(
                "edge ({a}, {c}) does not lie between two triangles"
            )));
        }
        Ok(FlipMove {
            shared_edge: (a, c),
            replacement: (left.boundary[2], right.boundary[2]),
        })
    }

    /// True when the replacement edge would not duplicate an existing one.
    pub fn is_legal(&self, emb: &PlanarEmbedding) -> bool {
        let (b, d) = self.replacement;
        b != d && !emb.has_edge(b, d)
    }

    pub fn reversed(&self) -> FlipMove {
        let (a, c) = self.shared_edge;
        let (b, d) = self.replacement;
        // after the flip, (b, d, c) and (d, b, a) are the faces beside b -> d
        FlipMove {
            shared_edge: (b, d),
            replacement: (c, a),
        }
    }
}

/// Applies `mv`, returning the flipped triangulation.
pub fn diagonal_flip(emb: &PlanarEmbedding, mv: &FlipMove) -> Result<PlanarEmbedding> {
    let (a, c) = mv.shared_edge;
    let expected = FlipMove::for_edge(emb, a, c)?;
    if expected.replacement != mv.replacement {
        return Err(Error::Precondition(format!(
            "flip of ({a}, {c}) must introduce {:?}, not {:?}",
            expected.replacement, mv.replacement
        )));
    }
    let (x, y) = mv.replacement;
    if !mv.is_legal(emb) {
        return Err(Error::FlipForbidden { a, c, b: x, d: y });
    }
    let mut out = emb.clone();
    out.remove_neighbor(a, c);
    out.remove_neighbor(c, a);
    out.insert_after(x, a, y);
    out.insert_after(y, c, x);
    out.refresh_outer_face();
    debug_assert!(out.revalidate().is_ok());
    Ok(out)
}

/// Every legal flip of `emb`, one per edge, in edge order.
pub fn legal_flips(emb: &PlanarEmbedding) -> Vec<FlipMove> {
    emb.edges()
        .into_iter()
        .filter_map(|(a, c)| FlipMove::for_edge(emb, a, c).ok())
        .filter(|m| m.is_legal(emb))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrilateral_flip() {
        // A B C D around a square with diagonal A-C, plus apex E outside
        let (a, b, c, d, e) = (0, 1, 2, 3, 4);
        let tris = [[a, c, b], [c, a, d], [a, b, e], [b, c, e], [c, d, e], [d, a, e]];
        let g = PlanarEmbedding::from_triangles(5, &tris).unwrap();
        let mv = FlipMove::for_edge(&g, a, c).unwrap();
        assert_eq!(mv.replacement, (b, d));
        let h = diagonal_flip(&g, &mv).unwrap();
        assert!(h.has_edge(b, d) && !h.has_edge(a, c));
        assert!(h.is_triangulation());
        let back = diagonal_flip(&h, &mv.reversed()).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.faces().len(), g.faces().len());
    }

    #[test]
    fn flip_twice_restores_rotation_system() {
        let g = PlanarEmbedding::standard_form(9).unwrap();
        for mv in legal_flips(&g) {
            let h = diagonal_flip(&g, &mv).unwrap();
            assert!(h.is_triangulation());
            assert_eq!(h.edge_count(), g.edge_count());
            let back = diagonal_flip(&h, &mv.reversed()).unwrap();
            let mut a: Vec<Vec<usize>> = back.rotations().to_vec();
            let mut b: Vec<Vec<usize>> = g.rotations().to_vec();
            for r in a.iter_mut().chain(b.iter_mut()) {
                let m = r.iter().position(|&x| x == *r.iter().min().unwrap()).unwrap();
                r.rotate_left(m);
            }
            assert_eq!(a, b);
        }
    }

    #[test]
    fn k4_flips_are_forbidden() {
        let g = PlanarEmbedding::standard_form(4).unwrap();
        assert!(legal_flips(&g).is_empty());
        let mv = FlipMove::for_edge(&g, 0, 1).unwrap();
        assert!(matches!(diagonal_flip(&g, &mv), Err(Error::FlipForbidden { .. })));
    }

    #[test]
    fn wrong_replacement_rejected() {
        let g = PlanarEmbedding::standard_form(6).unwrap();
        let mv = FlipMove { shared_edge: (2, 3), replacement: (4, 5) };
        assert!(matches!(diagonal_flip(&g, &mv), Err(Error::Precondition(_))));
        let missing = FlipMove { shared_edge: (2, 5), replacement: (0, 1) };
        assert!(matches!(diagonal_flip(&g, &missing), Err(Error::Input(_))));
    }
}
