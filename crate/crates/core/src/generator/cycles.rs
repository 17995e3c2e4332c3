//! Pure chord-cycles: cycles with no vertex inside whose interior is
//! triangulated by chords.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::embedding::PlanarEmbedding;
use crate::error::{Error, Result};

/// A cycle listed counter-clockwise, so that the region it encloses lies
/// to the left of every step `vertices[i] -> vertices[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleRef {
    pub vertices: Vec<usize>,
    /// Interior edges, each as `(min, max)`, sorted.
    pub chords: Vec<(usize, usize)>,
}

impl CycleRef {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.vertices.iter().copied().collect();
        set.into_iter().collect()
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn check_k(k: usize) -> Result<()> {
    if (3..=5).contains(&k) {
        Ok(())
    } else {
        Err(Error::Input(format!("pure chord-cycles are enumerated for k in 3..=5, got {k}")))
    }
}

/// A pure region with the faces it is made of, each face given by its
/// counter-clockwise walk.
struct Region {
    cycle: CycleRef,
    faces: Vec<[usize; 3]>,
}

fn face_at(emb: &PlanarEmbedding, u: usize, v: usize) -> [usize; 3] {
    let w = emb.pred(v, u);
    [u, v, w]
}

/// Every pure chord-cycle region of length `k` of a triangulation, one per
/// region: faces for `k = 3`, pairs of faces across an edge for `k = 4`,
/// and fans of three faces around a vertex for `k = 5`.
fn regions(emb: &PlanarEmbedding, k: usize) -> Result<Vec<Region>> {
    check_k(k)?;
    emb.require_triangulation()?;
    let n = emb.vertex_count();
    let mut out = Vec::new();
    match k {
        3 => {
            for u in 0..n {
                for &v in emb.rotation(u) {
                    let f = face_at(emb, u, v);
                    if u == *f.iter().min().unwrap() {
                        out.push(Region {
                            cycle: CycleRef { vertices: f.to_vec(), chords: Vec::new() },
                            faces: vec![f],
                        });
                    }
                }
            }
        }
        4 => {
            for (a, c) in emb.edges() {
                // faces on either side of the chord a-c
                let left = face_at(emb, a, c);
                let right = face_at(emb, c, a);
                let (x, y) = (left[2], right[2]);
                out.push(Region {
                    cycle: CycleRef { vertices: vec![a, y, c, x], chords: vec![(a, c)] },
                    faces: vec![left, right],
                });
            }
        }
        _ => {
            // Middle face (a, b, c) with b the common endpoint of both chords.
            for u in 0..n {
                for &v in emb.rotation(u) {
                    let mid = face_at(emb, u, v);
                    if u != *mid.iter().min().unwrap() {
                        continue;
                    }
                    for i in 0..3 {
                        let (a, b, c) = (mid[i], mid[(i + 1) % 3], mid[(i + 2) % 3]);
                        let f1 = face_at(emb, b, a);
                        let f3 = face_at(emb, c, b);
                        let (x, y) = (f1[2], f3[2]);
                        if x == y {
                            continue;
                        }
                        let mut chords = vec![ordered(a, b), ordered(b, c)];
                        chords.sort_unstable();
                        out.push(Region {
                            cycle: CycleRef { vertices: vec![a, x, b, y, c], chords },
                            faces: vec![f1, mid, f3],
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every pure chord-cycle of length `k`, one entry per enclosed region.
/// Two entries may share a vertex set when both sides of a cycle qualify
/// or several triangulated regions have the same corners.
pub fn pure_chord_regions(emb: &PlanarEmbedding, k: usize) -> Result<Vec<CycleRef>> {
    Ok(regions(emb, k)?.into_iter().map(|r| r.cycle).collect())
}

/// Pure chord-cycles of length `k` as a reader of a drawing counts them:
/// regions that contain the marked outer face are skipped, and cycles are
/// reported once per vertex set.
pub fn find_pure_chord_cycles(emb: &PlanarEmbedding, k: usize) -> Result<Vec<CycleRef>> {
    let outer: Option<BTreeSet<usize>> = emb.outer_face().map(|f| f.iter().copied().collect());
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in regions(emb, k)? {
        let covers_outer = outer.as_ref().is_some_and(|o| {
            r.faces
                .iter()
                .any(|f| f.iter().copied().collect::<BTreeSet<_>>() == *o)
        });
        if covers_outer {
            continue;
        }
        if seen.insert(r.cycle.vertex_set()) {
            out.push(r.cycle);
        }
    }
    Ok(out)
}

/// Checks that `cycle` is a simple cycle of `emb` enclosing, on its left,
/// exactly `k - 2` triangular faces, no vertices, and the listed chords.
pub fn is_pure_chord_cycle(emb: &PlanarEmbedding, cycle: &CycleRef) -> bool {
    interior_chords(emb, &cycle.vertices).is_some_and(|chords| chords == cycle.chords)
}

/// Chords enclosed by `vertices` if it bounds a pure region on its left.
pub(crate) fn interior_chords(emb: &PlanarEmbedding, vertices: &[usize]) -> Option<Vec<(usize, usize)>> {
    let k = vertices.len();
    let n = emb.vertex_count();
    if k < 3 || vertices.iter().any(|&v| v >= n) {
        return None;
    }
    let on_cycle: HashSet<usize> = vertices.iter().copied().collect();
    if on_cycle.len() != k {
        return None;
    }
    let boundary: HashSet<(usize, usize)> = (0..k).map(|i| (vertices[i], vertices[(i + 1) % k])).collect();
    if boundary.iter().any(|&(a, b)| !emb.has_edge(a, b)) {
        return None;
    }

    // Flood the faces left of the cycle without crossing it.
    let mut seen_faces: HashSet<Vec<usize>> = HashSet::new();
    let mut stack = vec![(vertices[0], vertices[1])];
    let mut chords = BTreeSet::new();
    while let Some((u, v)) = stack.pop() {
        let face = emb.face_left_of(u, v);
        if face.degree() != 3 {
            return None;
        }
        let mut key = face.boundary.clone();
        key.sort_unstable();
        if !seen_faces.insert(key) {
            continue;
        }
        if seen_faces.len() > k - 2 {
            return None;
        }
        for i in 0..3 {
            let (a, b) = (face.boundary[i], face.boundary[(i + 1) % 3]);
            if !on_cycle.contains(&a) {
                return None;
            }
            if boundary.contains(&(a, b)) {
                continue;
            }
            chords.insert(ordered(a, b));
            stack.push((b, a));
        }
    }
    (seen_faces.len() == k - 2 && chords.len() == k - 3).then(|| chords.into_iter().collect())
}
