//! Isomorphism keys for sphere triangulations.
//!
//! From a starting dart `u -> v` and an orientation, vertices are numbered
//! in breadth-first order: `u` first, and each vertex lists its neighbors
//! starting from the one it was reached from, turning in the chosen
//! direction. The sequence of neighbor numbers, one block per vertex, is
//! the code of that start. The minimum over every dart and both
//! orientations is an invariant of the unoriented map. A 3-connected
//! planar graph has one map up to reflection, so for triangulations on
//! at least 4 vertices equal codes mean isomorphic graphs.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::embedding::PlanarEmbedding;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

const SEPARATOR: u32 = 0;

struct Labeller<'a> {
    rotation: &'a [Vec<usize>],
    label: Vec<u32>,
    order: Vec<usize>,
    parent: Vec<usize>,
    code: Vec<u32>,
}

impl<'a> Labeller<'a> {
    fn new(rotation: &'a [Vec<usize>]) -> Self {
        let n = rotation.len();
        Labeller {
            rotation,
            label: vec![0; n],
            order: Vec::with_capacity(n),
            parent: vec![0; n],
            code: Vec::new(),
        }
    }

    /// Code of one start, abandoned as soon as it exceeds `best`.
    fn run(&mut self, u: usize, v: usize, ccw: bool, best: Option<&[u32]>) -> Option<Ordering> {
        self.label.iter_mut().for_each(|l| *l = 0);
        self.order.clear();
        self.code.clear();
        self.label[u] = 1;
        self.order.push(u);
        self.parent[u] = v;
        let mut next = 2;
        let mut head = 0;
        let mut tie = true;
        while head < self.order.len() {
            let x = self.order[head];
            head += 1;
            let rot = &self.rotation[x];
            let d = rot.len();
            let start = rot.iter().position(|&w| w == self.parent[x]).expect("symmetric rotation");
            for step in 0..d {
                let i = if ccw { (start + step) % d } else { (start + d - step) % d };
                let w = rot[i];
                if self.label[w] == 0 {
                    self.label[w] = next;
                    next += 1;
                    self.parent[w] = x;
                    self.order.push(w);
                }
                let sym = self.label[w];
                if tie {
                    if let Some(b) = best {
                        match b.get(self.code.len()).map_or(Ordering::Greater, |t| sym.cmp(t)) {
                            Ordering::Greater => return None,
                            Ordering::Less => tie = false,
                            Ordering::Equal => {}
                        }
                    }
                }
                self.code.push(sym);
            }
            if tie {
                if let Some(b) = best {
                    match b.get(self.code.len()).map_or(Ordering::Greater, |t| SEPARATOR.cmp(t)) {
                        Ordering::Greater => return None,
                        Ordering::Less => tie = false,
                        Ordering::Equal => {}
                    }
                }
            }
            self.code.push(SEPARATOR);
        }
        match best {
            Some(b) if tie && self.code.len() == b.len() => Some(Ordering::Equal),
            _ => Some(Ordering::Less),
        }
    }
}

/// Canonical code of a connected embedding; mirror images and relabelings
/// share a code.
pub fn canonical_code(emb: &PlanarEmbedding) -> CanonicalCode {
    let n = emb.vertex_count();
    let rotation = emb.rotations();
    let mut best: Option<Vec<u32>> = None;
    let mut lab = Labeller::new(rotation);
    for u in 0..n {
        for &v in &rotation[u] {
            for ccw in [true, false] {
                if let Some(Ordering::Less) = lab.run(u, v, ccw, best.as_deref()) {
                    best = Some(lab.code.clone());
                }
            }
        }
    }
    encode(n, &best.unwrap_or_default())
}

fn encode(n: usize, symbols: &[u32]) -> CanonicalCode {
    let wide = n > 254;
    let mut bytes = Vec::with_capacity(4 + symbols.len() * if wide { 2 } else { 1 });
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    for &s in symbols {
        if wide {
            bytes.extend_from_slice(&(s as u16).to_be_bytes());
        } else {
            bytes.push(s as u8);
        }
    }
    CanonicalCode(bytes)
}

/// Code of the standard spherical triangulation on `n` vertices.
pub fn canonical_standard_form(n: usize) -> Result<CanonicalCode> {
    Ok(canonical_code(&PlanarEmbedding::standard_form(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> PlanarEmbedding {
        let tris = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 1],
            [5, 2, 1],
            [5, 3, 2],
            [5, 4, 3],
            [5, 1, 4],
        ];
        PlanarEmbedding::from_triangles(6, &tris).unwrap()
    }

    #[test]
    fn invariant_under_relabel_and_mirror() {
        let g = PlanarEmbedding::standard_form(9).unwrap();
        let code = canonical_code(&g);
        let perm: Vec<usize> = (0..9).map(|v| (v * 4 + 3) % 9).collect();
        assert_eq!(canonical_code(&g.relabel(&perm)), code);
        assert_eq!(canonical_code(&g.mirror()), code);
    }

    #[test]
    fn separates_p6_classes() {
        let a = canonical_standard_form(6).unwrap();
        let b = canonical_code(&octahedron());
        assert_ne!(a, b);
        assert_eq!(a, canonical_code(&PlanarEmbedding::standard_form(6).unwrap().mirror()));
    }

    #[test]
    fn k4_code_layout() {
        let code = canonical_standard_form(4).unwrap();
        // n, then 4 blocks of 3 neighbors plus a separator
        assert_eq!(code.as_bytes().len(), 4 + 4 * 4);
        assert_eq!(&code.as_bytes()[..4], &[0, 0, 0, 4]);
        assert_eq!(&code.as_bytes()[4..8], &[2, 3, 4, 0]);
        assert_eq!(code.to_hex().len(), 40);
    }

    #[test]
    fn wide_encoding_above_254_vertices() {
        let code = canonical_standard_form(300).unwrap();
        let e = 3 * 300 - 6;
        assert_eq!(code.as_bytes().len(), 4 + 2 * (2 * e + 300));
    }
}
