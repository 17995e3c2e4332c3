//! Rotation systems for graphs embedded on the sphere.
//!
//! A [`PlanarEmbedding`] stores, for every vertex, the counter-clockwise
//! cyclic order of its neighbors. Faces are recovered by the usual face
//! walk: the face to the left of the dart `u -> v` continues with
//! `v -> w`, where `w` precedes `u` in the rotation at `v`. Bounded faces
//! of a drawing are therefore walked counter-clockwise.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// A face of an embedding, given by the vertices met along its boundary
/// walk. A vertex can appear more than once when the boundary is not a
/// simple cycle (trees, bridges).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub boundary: Vec<usize>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }

    /// Sorted boundary vertex set.
    pub fn vertex_set(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.boundary.iter().copied().collect();
        set.into_iter().collect()
    }
}

/// Counts reported by [`PlanarEmbedding::euler_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub components: usize,
    /// `n - e + f = 2` per component, i.e. the rotation system is spherical.
    pub spherical: bool,
    /// Every face has degree 3 and the graph is connected with `n >= 3`.
    pub is_triangulation: bool,
}

/// Graph embedded on the sphere as a rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rotation: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    outer_face: Option<Vec<usize>>,
}

/// Walks all faces of a raw rotation system.
///
/// Every directed edge lands in exactly one returned face. Asymmetric or
/// out-of-range adjacency is reported as a structural error.
pub fn trace_faces(rotation: &[Vec<usize>]) -> Result<Vec<Face>> {
    let n = rotation.len();
    let mut index: Vec<HashMap<usize, usize>> = Vec::with_capacity(n);
    for (v, rot) in rotation.iter().enumerate() {
        let mut map = HashMap::with_capacity(rot.len());
        for (i, &w) in rot.iter().enumerate() {
            if w >= n {
                return Err(Error::Structural(format!(
                    "vertex {v} lists neighbor {w} outside 0..{n}"
                )));
            }
            if map.insert(w, i).is_some() {
                return Err(Error::Structural(format!(
                    "vertex {v} lists neighbor {w} twice"
                )));
            }
        }
        index.push(map);
    }
    for (v, rot) in rotation.iter().enumerate() {
        for &w in rot {
            if !index[w].contains_key(&v) {
                return Err(Error::Structural(format!(
                    "asymmetric adjacency: {w} is in the rotation of {v} but not vice versa"
                )));
            }
        }
    }

    let mut visited: Vec<Vec<bool>> = rotation.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = Vec::new();
    for start in 0..n {
        for start_pos in 0..rotation[start].len() {
            if visited[start][start_pos] {
                continue;
            }
            let mut boundary = Vec::new();
            let (mut u, mut i) = (start, start_pos);
            while !visited[u][i] {
                visited[u][i] = true;
                boundary.push(u);
                let v = rotation[u][i];
                let back = index[v][&u];
                let deg = rotation[v].len();
                let j = (back + deg - 1) % deg;
                u = v;
                i = j;
            }
            faces.push(Face { boundary });
        }
    }
    Ok(faces)
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    rotation: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer_face: Option<Vec<usize>>,
}

impl PlanarEmbedding {
    /// Validates and wraps a rotation system: symmetric, free of loops and
    /// repeated neighbors, and of genus zero.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self> {
        for (v, rot) in rotation.iter().enumerate() {
            if rot.contains(&v) {
                return Err(Error::Structural(format!("self-loop at vertex {v}")));
            }
        }
        let emb = PlanarEmbedding {
            rotation,
            labels: None,
            outer_face: None,
        };
        let faces = trace_faces(&emb.rotation)?;
        let report = emb.report_from_faces(&faces);
        if !report.spherical {
            return Err(Error::Structural(format!(
                "rotation system is not spherical: n={} e={} f={} components={}",
                report.n, report.e, report.f, report.components
            )));
        }
        Ok(emb)
    }

    /// Builds an embedding from consistently oriented triangles: each
    /// `[a, b, c]` must be listed counter-clockwise, so that every directed
    /// edge occurs in exactly one triangle.
    pub fn from_triangles(n: usize, triangles: &[[usize; 3]]) -> Result<Self> {
        // succ[v][w] = neighbor following w counter-clockwise around v
        let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
        for t in triangles {
            for k in 0..3 {
                let (a, b, c) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
                if a >= n || b >= n || c >= n {
                    return Err(Error::Input(format!("triangle {t:?} has a vertex outside 0..{n}")));
                }
                if succ[b].insert(c, a).is_some() {
                    return Err(Error::Structural(format!(
                        "directed edge ({b}, {c}) appears in two triangles"
                    )));
                }
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, map) in succ.iter().enumerate() {
            let Some(&first) = map.keys().min() else {
                rotation.push(Vec::new());
                continue;
            };
            let mut rot = vec![first];
            let mut cur = first;
            loop {
                let next = *map.get(&cur).ok_or_else(|| {
                    Error::Structural(format!("triangles around vertex {v} do not close up"))
                })?;
                if next == first {
                    break;
                }
                if rot.len() > map.len() {
                    return Err(Error::Structural(format!("vertex {v} has a pinched link")));
                }
                rot.push(next);
                cur = next;
            }
            if rot.len() != map.len() {
                return Err(Error::Structural(format!("vertex {v} has a pinched link")));
            }
            rotation.push(rot);
        }
        Self::from_rotation(rotation)
    }

    /// The standard spherical triangulation on `n >= 4` vertices.
    ///
    /// Vertices 0 and 1 are the poles, adjacent to every other vertex and to
    /// each other; vertices `2..n` form a path. Degrees are
    /// `[n-1, n-1, 4, ..., 4, 3, 3]`. The outer face is `[1, 0, n-1]`.
    pub fn standard_form(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Input(format!(
                "standard form needs at least 4 vertices, got {n}"
            )));
        }
        let (p, q) = (0, 1);
        let mut tris = Vec::with_capacity(2 * n - 4);
        for i in 2..n - 1 {
            tris.push([p, i, i + 1]);
            tris.push([q, i + 1, i]);
        }
        tris.push([p, q, 2]);
        tris.push([q, p, n - 1]);
        let mut emb = Self::from_triangles(n, &tris)?;
        emb.outer_face = Some(vec![q, p, n - 1]);
        Ok(emb)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Counter-clockwise neighbor order around `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.rotation.len() && self.rotation[u].contains(&v)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label if present, else its id.
    pub fn label(&self, v: usize) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get(v).cloned())
            .unwrap_or_else(|| v.to_string())
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.rotation.len() {
            return Err(Error::Input(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.rotation.len()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn outer_face(&self) -> Option<&[usize]> {
        self.outer_face.as_deref()
    }

    /// Marks the face whose boundary walk is `face` (in any rotation) as the
    /// unbounded face. Only used for rendering and accounting.
    pub fn set_outer_face(&mut self, face: Option<Vec<usize>>) -> Result<()> {
        if let Some(f) = &face {
            if self.find_face(f).is_none() {
                return Err(Error::Input(format!("{f:?} is not a face of the embedding")));
            }
        }
        self.outer_face = face;
        Ok(())
    }

    /// Returns the face whose boundary walk is a cyclic shift of `walk`.
    pub fn find_face(&self, walk: &[usize]) -> Option<Face> {
        let k = walk.len();
        if k < 2 || !self.has_edge(walk[0], walk[1]) {
            return None;
        }
        let face = self.face_left_of(walk[0], walk[1]);
        (face.boundary.len() == k && face.boundary == walk).then_some(face)
    }

    /// Position of `w` in the rotation of `v`.
    pub fn position(&self, v: usize, w: usize) -> Option<usize> {
        self.rotation[v].iter().position(|&x| x == w)
    }

    /// Neighbor after `w` counter-clockwise around `v`.
    pub fn succ(&self, v: usize, w: usize) -> usize {
        let rot = &self.rotation[v];
        let i = self.position(v, w).expect("succ: not a neighbor");
        rot[(i + 1) % rot.len()]
    }

    /// Neighbor before `w` counter-clockwise around `v`.
    pub fn pred(&self, v: usize, w: usize) -> usize {
        let rot = &self.rotation[v];
        let i = self.position(v, w).expect("pred: not a neighbor");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// The dart following `u -> v` on the face to its left.
    pub fn next_dart(&self, u: usize, v: usize) -> (usize, usize) {
        (v, self.pred(v, u))
    }

    /// Boundary walk of the face to the left of `u -> v`, starting at `u`.
    pub fn face_left_of(&self, u: usize, v: usize) -> Face {
        let mut boundary = vec![u];
        let (mut a, mut b) = self.next_dart(u, v);
        while (a, b) != (u, v) {
            boundary.push(a);
            (a, b) = self.next_dart(a, b);
        }
        Face { boundary }
    }

    pub fn faces(&self) -> Vec<Face> {
        trace_faces(&self.rotation).expect("validated rotation system")
    }

    fn report_from_faces(&self, faces: &[Face]) -> EulerReport {
        let n = self.vertex_count();
        let e = self.edge_count();
        let f = faces.len();
        let graph = self.to_graph_unchecked();
        let components = graph.component_count();
        let isolated = (0..n).filter(|&v| self.rotation[v].is_empty()).count();
        let spherical = n + f + isolated == e + 2 * components;
        let is_triangulation = spherical
            && n >= 3
            && components == 1
            && faces.iter().all(|face| face.degree() == 3);
        EulerReport {
            n,
            e,
            f,
            components,
            spherical,
            is_triangulation,
        }
    }

    /// Vertex, edge and face counts plus the triangulation flag.
    pub fn euler_check(&self) -> EulerReport {
        let faces = self.faces();
        let report = self.report_from_faces(&faces);
        if report.is_triangulation {
            let (n, e, f) = (report.n, report.e, report.f);
            assert_eq!(e, 3 * n - 6, "triangulation with e != 3n - 6");
            assert_eq!(f, 2 * n - 4, "triangulation with f != 2n - 4");
            assert_eq!(3 * f, 2 * e, "triangulation with 3f != 2e");
        }
        report
    }

    pub fn is_triangulation(&self) -> bool {
        self.euler_check().is_triangulation
    }

    pub fn require_triangulation(&self) -> Result<()> {
        let r = self.euler_check();
        if r.is_triangulation {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "not a sphere triangulation (n={}, e={}, f={}, components={})",
                r.n, r.e, r.f, r.components
            )))
        }
    }

    /// Vertex degrees in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.rotation.iter().map(Vec::len).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    fn to_graph_unchecked(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.vertex_count());
        for (u, rot) in self.rotation.iter().enumerate() {
            for &v in rot {
                if u < v {
                    g.add_edge(u, v).expect("validated rotation system");
                }
            }
        }
        g
    }

    /// The underlying abstract graph.
    pub fn to_graph(&self) -> SimpleGraph {
        self.to_graph_unchecked()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.to_graph_unchecked().edges()
    }

    /// Applies the vertex permutation `perm` (old id -> new id).
    pub fn relabel(&self, perm: &[usize]) -> PlanarEmbedding {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n);
        let mut rotation = vec![Vec::new(); n];
        for (v, rot) in self.rotation.iter().enumerate() {
            rotation[perm[v]] = rot.iter().map(|&w| perm[w]).collect();
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for (v, name) in l.iter().enumerate() {
                out[perm[v]] = name.clone();
            }
            out
        });
        PlanarEmbedding {
            rotation,
            labels,
            outer_face: self
                .outer_face
                .as_ref()
                .map(|f| f.iter().map(|&v| perm[v]).collect()),
        }
    }

    /// The mirror image: every rotation reversed.
    pub fn mirror(&self) -> PlanarEmbedding {
        PlanarEmbedding {
            rotation: self
                .rotation
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
            labels: self.labels.clone(),
            outer_face: self
                .outer_face
                .as_ref()
                .map(|f| f.iter().rev().copied().collect()),
        }
    }

    // Raw editing primitives for the generator. Callers restore validity.

    pub(crate) fn add_vertex(&mut self, rot: Vec<usize>) -> usize {
        self.rotation.push(rot);
        if let Some(labels) = &mut self.labels {
            labels.push((self.rotation.len() - 1).to_string());
        }
        self.rotation.len() - 1
    }

    pub(crate) fn remove_neighbor(&mut self, v: usize, w: usize) {
        let i = self.position(v, w).expect("remove_neighbor: not a neighbor");
        self.rotation[v].remove(i);
    }

    /// Inserts `w` into the rotation of `v` right after `anchor`.
    pub(crate) fn insert_after(&mut self, v: usize, anchor: usize, w: usize) {
        let i = self.position(v, anchor).expect("insert_after: anchor not a neighbor");
        self.rotation[v].insert(i + 1, w);
    }

    /// Drops the outer-face marker if edits destroyed that face.
    pub(crate) fn refresh_outer_face(&mut self) {
        if let Some(f) = self.outer_face.take() {
            if self.find_face(&f).is_some() {
                self.outer_face = Some(f);
            }
        }
    }

    /// Re-checks an edited rotation system.
    pub(crate) fn revalidate(&self) -> Result<()> {
        Self::from_rotation(self.rotation.clone()).map(|_| ())
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            n: self.vertex_count(),
            rotation: self.rotation.clone(),
            labels: self.labels.clone(),
            outer_face: self.outer_face.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("graph json")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphJson = serde_json::from_str(text)?;
        if doc.rotation.len() != doc.n {
            return Err(Error::Input(format!(
                "\"n\" is {} but {} rotations given",
                doc.n,
                doc.rotation.len()
            )));
        }
        let mut emb = Self::from_rotation(doc.rotation)?;
        if let Some(labels) = doc.labels {
            emb.set_labels(labels)?;
        }
        emb.set_outer_face(doc.outer_face)?;
        Ok(emb)
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Graphviz rendering; the outer face, when marked, is drawn bold.
    pub fn to_dot(&self, name: &str) -> String {
        let outer: BTreeSet<(usize, usize)> = self
            .outer_face
            .as_ref()
            .map(|f| {
                (0..f.len())
                    .map(|i| {
                        let (a, b) = (f[i], f[(i + 1) % f.len()]);
                        (a.min(b), a.max(b))
                    })
                    .collect()
            })
            .unwrap_or_default();
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{name}\" {{");
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", self.label(v).replace('"', "\\\""));
        }
        for (u, v) in self.edges() {
            if outer.contains(&(u, v)) {
                let _ = writeln!(out, "  {u} -- {v} [style=bold];");
            } else {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> PlanarEmbedding {
        PlanarEmbedding::standard_form(4).unwrap()
    }

    #[test]
    fn k4_faces() {
        let faces = k4().faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.degree() == 3));
        let r = k4().euler_check();
        assert_eq!((r.n, r.e, r.f, r.is_triangulation), (4, 6, 4, true));
        assert_eq!(k4().degree_sequence(), vec![3, 3, 3, 3]);
    }

    #[test]
    fn path_has_one_face_of_degree_four() {
        let emb = PlanarEmbedding::from_rotation(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        let faces = emb.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].degree(), 4);
        assert!(!emb.euler_check().is_triangulation);
    }

    #[test]
    fn asymmetric_rotation_is_structural_error() {
        let err = trace_faces(&[vec![1], vec![]]).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
        assert!(PlanarEmbedding::from_rotation(vec![vec![0]]).is_err());
    }

    #[test]
    fn toroidal_rotation_rejected() {
        // K5 cannot be embedded on the sphere, so any rotation has genus > 0
        let rot: Vec<Vec<usize>> = (0..5).map(|v| (0..5).filter(|&w| w != v).collect()).collect();
        assert!(PlanarEmbedding::from_rotation(rot).is_err());
    }

    #[test]
    fn standard_forms() {
        for n in 4..=12 {
            let emb = PlanarEmbedding::standard_form(n).unwrap();
            let r = emb.euler_check();
            assert!(r.is_triangulation);
            assert_eq!(r.e, 3 * n - 6);
            assert_eq!(r.f, 2 * n - 4);
            let mut expected = vec![n - 1, n - 1];
            expected.extend(std::iter::repeat_n(4, n - 4));
            expected.extend([3, 3]);
            assert_eq!(emb.degree_sequence(), expected);
            assert!(emb.find_face(emb.outer_face().unwrap()).is_some());
        }
        let p6 = PlanarEmbedding::standard_form(6).unwrap();
        assert_eq!(p6.faces().len(), 8);
        assert_eq!(p6.edge_count(), 12);
    }

    #[test]
    fn json_round_trip() {
        let mut emb = PlanarEmbedding::standard_form(7).unwrap();
        emb.set_labels((0..7).map(|i| format!("S{i}")).collect()).unwrap();
        let back = PlanarEmbedding::from_json(&emb.to_json()).unwrap();
        assert_eq!(back, emb);
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(PlanarEmbedding::from_json(r#"{"n": 2, "rotation": [[1]]}"#).is_err());
        assert!(PlanarEmbedding::from_json(r#"{"n": 2, "rotation": [[1], []]}"#).is_err());
        let k4 = r#"{"n": 4, "rotation": [[1,2,3],[0,3,2],[0,1,3],[0,2,1]], "outer_face": [0,1,2]}"#;
        assert!(PlanarEmbedding::from_json(k4).is_ok());
        assert!(PlanarEmbedding::from_json(&k4.replace("[0,1,2]}", "[0,1,3]}")).is_err());
    }

    #[test]
    fn mirror_and_relabel_stay_valid() {
        let emb = PlanarEmbedding::standard_form(8).unwrap();
        let m = emb.mirror();
        assert!(PlanarEmbedding::from_rotation(m.rotations().to_vec()).is_ok());
        let perm: Vec<usize> = (0..8).rev().collect();
        let r = emb.relabel(&perm);
        assert!(r.is_triangulation());
        assert_eq!(r.degree_sequence(), emb.degree_sequence());
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = k4().to_dot("k4");
        assert_eq!(dot.matches(" -- ").count(), 6);
    }
}
