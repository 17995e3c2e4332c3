//! Reduction of any sphere triangulation to the standard form by legal
//! diagonal flips.
//!
//! Phase one grows a pole `p` until it is adjacent to every vertex. While
//! `deg p < n - 1` some link edge `v_i v_{i+1}` has an outer apex off the
//! closed neighborhood of `p` (flipping it adds that apex to the link), or
//! else a chord between two link vertices can be flipped towards a vertex
//! off the neighborhood, which removes one chord. Phase two does the same
//! for a second pole `q` inside the triangulated polygon left by `p`.
//! Every step is checked by [`diagonal_flip`].

use super::canonical::{canonical_code, canonical_standard_form};
use super::flip::{diagonal_flip, FlipMove};
use crate::embedding::PlanarEmbedding;
use crate::error::{Error, Result};

fn max_degree_vertex(emb: &PlanarEmbedding, among: impl Iterator<Item = usize>) -> usize {
    among
        .map(|v| (std::cmp::Reverse(emb.degree(v)), v))
        .min()
        .map(|(_, v)| v)
        .expect("non-empty vertex set")
}

/// A legal flip that makes `p` adjacent to one more vertex, or failing
/// that, removes a chord of the link of `p`.
fn grow_pole_step(emb: &PlanarEmbedding, p: usize) -> Option<FlipMove> {
    let link = emb.rotation(p).to_vec();
    let d = link.len();
    let in_closed = |w: usize| w == p || emb.has_edge(p, w);

    for i in 0..d {
        let (a, b) = (link[i], link[(i + 1) % d]);
        // face (p, a, b) lies left of a -> b; the outer apex sits across it
        let Ok(mv) = FlipMove::for_edge(emb, b, a) else { continue };
        if mv.replacement.0 == p && !in_closed(mv.replacement.1) && mv.is_legal(emb) {
            return Some(mv);
        }
        if mv.replacement.1 == p && !in_closed(mv.replacement.0) && mv.is_legal(emb) {
            return Some(mv);
        }
    }

    let consecutive = |a: usize, b: usize| {
        let i = link.iter().position(|&x| x == a).unwrap();
        link[(i + 1) % d] == b || link[(i + d - 1) % d] == b
    };
    for (i, &a) in link.iter().enumerate() {
        for &b in &link[i + 1..] {
            if !emb.has_edge(a, b) || consecutive(a, b) {
                continue;
            }
            let Ok(mv) = FlipMove::for_edge(emb, a, b) else { continue };
            let (x, y) = mv.replacement;
            if (!in_closed(x) || !in_closed(y)) && mv.is_legal(emb) {
                return Some(mv);
            }
        }
    }
    None
}

/// With `p` universal, a legal flip that makes `q` adjacent to one more
/// vertex of the polygon.
fn grow_second_pole_step(emb: &PlanarEmbedding, p: usize, q: usize) -> Option<FlipMove> {
    let rot = emb.rotation(q);
    let d = rot.len();
    for i in 0..d {
        let (a, b) = (rot[i], rot[(i + 1) % d]);
        if a == p || b == p {
            continue;
        }
        // face (q, a, b); its far edge a-b is a chord when both sides avoid p
        let Ok(mv) = FlipMove::for_edge(emb, b, a) else { continue };
        let other = if mv.replacement.0 == q { mv.replacement.1 } else { mv.replacement.0 };
        if other != p && mv.is_legal(emb) {
            return Some(mv);
        }
    }
    None
}

/// Flips `emb` into the standard spherical triangulation. Returns the final
/// embedding together with the flips applied, in order.
pub fn normalize_to_standard(emb: &PlanarEmbedding) -> Result<(PlanarEmbedding, Vec<FlipMove>)> {
    emb.require_triangulation()?;
    let n = emb.vertex_count();
    if n < 4 {
        return Err(Error::Input(format!("normalization needs n >= 4, got {n}")));
    }
    let mut cur = emb.clone();
    let mut trace = Vec::new();
    let stalled = |phase: &str| Error::Verification(format!("normalization stalled in {phase} at n = {n}"));

    let p = max_degree_vertex(&cur, 0..n);
    while cur.degree(p) < n - 1 {
        let mv = grow_pole_step(&cur, p).ok_or_else(|| stalled("the first phase"))?;
        cur = diagonal_flip(&cur, &mv)?;
        trace.push(mv);
    }
    let q = max_degree_vertex(&cur, (0..n).filter(|&v| v != p));
    while cur.degree(q) < n - 1 {
        let mv = grow_second_pole_step(&cur, p, q).ok_or_else(|| stalled("the second phase"))?;
        cur = diagonal_flip(&cur, &mv)?;
        trace.push(mv);
    }
    if canonical_code(&cur) != canonical_standard_form(n)? {
        return Err(Error::Verification(format!(
            "normalization ended off the standard form at n = {n}"
        )));
    }
    Ok((cur, trace))
}

/// Replays a flip trace, checking each step.
pub fn replay_flips(emb: &PlanarEmbedding, trace: &[FlipMove]) -> Result<PlanarEmbedding> {
    let mut cur = emb.clone();
    for mv in trace {
        cur = diagonal_flip(&cur, mv)?;
    }
    Ok(cur)
}
