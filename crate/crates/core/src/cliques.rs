//! 3- and 4-clique census of sphere triangulations.

use std::collections::HashSet;
use std::io::Write;

use serde::Serialize;

use crate::embedding::PlanarEmbedding;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

const BRUTE_FORCE_CEILING: usize = 16;

/// Clique counts of one triangulation. Cliques are vertex sets, listed
/// with ascending ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueCensus {
    pub n: usize,
    pub c3_total: usize,
    /// 3-cliques whose vertex set bounds a face.
    pub c3_surface: usize,
    /// 3-cliques with vertices on both sides.
    pub c3_separating: usize,
    pub c4_total: usize,
    pub surface: Vec<[usize; 3]>,
    pub separating: Vec<[usize; 3]>,
    pub four_cliques: Vec<[usize; 4]>,
}

impl CliqueCensus {
    pub fn counts(&self) -> (usize, usize) {
        (self.c3_total, self.c4_total)
    }
}

/// Bounds on clique counts of an n-vertex triangulation, n >= 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CliqueBounds {
    pub c3_min: usize,
    pub c3_max: usize,
    pub c4_max: usize,
}

impl CliqueBounds {
    pub fn for_n(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Input(format!("clique bounds need n >= 4, got {n}")));
        }
        Ok(CliqueBounds {
            c3_min: 2 * n - 4,
            c3_max: 3 * n - 8,
            c4_max: n - 3,
        })
    }

    pub fn admits(&self, c3: usize, c4: usize) -> bool {
        (self.c3_min..=self.c3_max).contains(&c3) && c4 <= self.c4_max
    }
}

/// Clique counts of the standard spherical triangulation, with the
/// decomposition of its 3-cliques into surface and enclosing triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StandardFormExpectation {
    pub c3: usize,
    pub c4: usize,
    pub surface_triangles: usize,
    /// Triangles through both poles; one per non-pole vertex.
    pub enclosing_triangles: usize,
    /// The unbounded face, counted once among the surface triangles and
    /// once among the enclosing ones.
    pub unbounded_face: usize,
}

pub fn standard_form_expected(n: usize) -> Result<StandardFormExpectation> {
    if n < 4 {
        return Err(Error::Input(format!("standard form needs n >= 4, got {n}")));
    }
    let surface_triangles = 2 * n - 4;
    let enclosing_triangles = n - 3;
    let unbounded_face = 1;
    let c3 = surface_triangles + enclosing_triangles - unbounded_face;
    debug_assert_eq!(c3, 3 * n - 8);
    Ok(StandardFormExpectation {
        c3,
        c4: n - 3,
        surface_triangles,
        enclosing_triangles,
        unbounded_face,
    })
}

fn sorted_adjacency(emb: &PlanarEmbedding) -> Vec<Vec<usize>> {
    (0..emb.vertex_count())
        .map(|v| {
            let mut nb = emb.rotation(v).to_vec();
            nb.sort_unstable();
            nb
        })
        .collect()
}

/// Enumerates and classifies every 3- and 4-clique of a triangulation.
pub fn count_cliques(emb: &PlanarEmbedding) -> Result<CliqueCensus> {
    emb.require_triangulation()?;
    let n = emb.vertex_count();
    if n < 4 {
        return Err(Error::Input(format!("clique census needs n >= 4, got {n}")));
    }
    let adj = sorted_adjacency(emb);
    let adjacent = |a: usize, b: usize| adj[a].binary_search(&b).is_ok();

    let faces: HashSet<[usize; 3]> = emb
        .faces()
        .iter()
        .map(|f| {
            let s = f.vertex_set();
            [s[0], s[1], s[2]]
        })
        .collect();

    let mut surface = Vec::new();
    let mut separating = Vec::new();
    let mut four_cliques = Vec::new();
    for u in 0..n {
        for &v in adj[u].iter().filter(|&&v| v > u) {
            let common: Vec<usize> = adj[u]
                .iter()
                .copied()
                .filter(|&w| w > v && adjacent(v, w))
                .collect();
            for (i, &w) in common.iter().enumerate() {
                let t = [u, v, w];
                if faces.contains(&t) {
                    surface.push(t);
                } else {
                    separating.push(t);
                }
                for &x in &common[i + 1..] {
                    if adjacent(w, x) {
                        four_cliques.push([u, v, w, x]);
                    }
                }
            }
        }
    }
    surface.sort_unstable();
    separating.sort_unstable();
    four_cliques.sort_unstable();
    Ok(CliqueCensus {
        n,
        c3_total: surface.len() + separating.len(),
        c3_surface: surface.len(),
        c3_separating: separating.len(),
        c4_total: four_cliques.len(),
        surface,
        separating,
        four_cliques,
    })
}

/// Counts 3- and 4-cliques by testing every vertex subset of size 3 and 4.
pub fn brute_force_cliques(graph: &SimpleGraph) -> Result<(usize, usize)> {
    let n = graph.vertex_count();
    if n > BRUTE_FORCE_CEILING {
        return Err(Error::CeilingExceeded {
            n,
            ceiling: BRUTE_FORCE_CEILING,
            estimate: None,
        });
    }
    let mut m = [[false; BRUTE_FORCE_CEILING]; BRUTE_FORCE_CEILING];
    for (u, v) in graph.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    let (mut c3, mut c4) = (0, 0);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let tri = m[a][b] && m[a][c] && m[b][c];
                if tri {
                    c3 += 1;
                }
                for d in c + 1..n {
                    if tri && m[a][d] && m[b][d] && m[c][d] {
                        c4 += 1;
                    }
                }
            }
        }
    }
    Ok((c3, c4))
}

/// JSON census report for one graph.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub name: String,
    pub n: usize,
    pub c3: usize,
    pub c3_surface: usize,
    pub c3_separating: usize,
    pub c4: usize,
    pub bounds: CliqueBounds,
    pub within_bounds: bool,
    pub attains_c3_max: bool,
    pub attains_c4_max: bool,
    pub surface: Vec<[usize; 3]>,
    pub separating: Vec<[usize; 3]>,
    pub four_cliques: Vec<[usize; 4]>,
}

impl CensusReport {
    pub fn new(name: &str, census: &CliqueCensus) -> Result<Self> {
        let bounds = CliqueBounds::for_n(census.n)?;
        Ok(CensusReport {
            name: name.to_string(),
            n: census.n,
            c3: census.c3_total,
            c3_surface: census.c3_surface,
            c3_separating: census.c3_separating,
            c4: census.c4_total,
            bounds,
            within_bounds: bounds.admits(census.c3_total, census.c4_total),
            attains_c3_max: census.c3_total == bounds.c3_max,
            attains_c4_max: census.c4_total == bounds.c4_max,
            surface: census.surface.clone(),
            separating: census.separating.clone(),
            four_cliques: census.four_cliques.clone(),
        })
    }

    pub const CSV_HEADER: [&'static str; 10] = [
        "name",
        "n",
        "c3",
        "c3_surface",
        "c3_separating",
        "c4",
        "c3_max",
        "c4_max",
        "attains_c3_max",
        "attains_c4_max",
    ];

    pub fn csv_row(&self) -> [String; 10] {
        [
            self.name.clone(),
            self.n.to_string(),
            self.c3.to_string(),
            self.c3_surface.to_string(),
            self.c3_separating.to_string(),
            self.c4.to_string(),
            self.bounds.c3_max.to_string(),
            self.bounds.c4_max.to_string(),
            self.attains_c3_max.to_string(),
            self.attains_c4_max.to_string(),
        ]
    }

    /// Writes header plus one summary row per report.
    pub fn write_csv<W: Write>(reports: &[CensusReport], writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(Self::CSV_HEADER)?;
        for r in reports {
            w.write_record(r.csv_row())?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> PlanarEmbedding {
        // poles 0 and 5 around the equator 1-2-3-4
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
    fn k4_census() {
        let k4 = PlanarEmbedding::standard_form(4).unwrap();
        let c = count_cliques(&k4).unwrap();
        assert_eq!(c.counts(), (4, 1));
        assert_eq!(c.c3_separating, 0);
        assert_eq!(brute_force_cliques(&k4.to_graph()).unwrap(), (4, 1));
    }

    #[test]
    fn p6_fixtures() {
        let standard = count_cliques(&PlanarEmbedding::standard_form(6).unwrap()).unwrap();
        assert_eq!(standard.counts(), (10, 3));
        assert_eq!(standard.c3_surface, 8);
        let alt = count_cliques(&octahedron()).unwrap();
        assert_eq!(alt.counts(), (8, 0));
        assert_eq!(alt.c3_separating, 0);
    }

    #[test]
    fn k5_brute_force() {
        let mut g = SimpleGraph::empty(5);
        for u in 0..5 {
            for v in u + 1..5 {
                g.add_edge(u, v).unwrap();
            }
        }
        assert_eq!(brute_force_cliques(&g).unwrap(), (10, 5));
        assert!(brute_force_cliques(&SimpleGraph::empty(17)).is_err());
    }

    #[test]
    fn standard_form_expectation() {
        let e = standard_form_expected(6).unwrap();
        assert_eq!((e.c3, e.c4), (10, 3));
        assert_eq!((e.surface_triangles, e.enclosing_triangles, e.unbounded_face), (8, 3, 1));
        assert_eq!(standard_form_expected(4).map(|e| (e.c3, e.c4)).unwrap(), (4, 1));
        assert_eq!(standard_form_expected(8).map(|e| (e.c3, e.c4)).unwrap(), (16, 5));
        assert!(standard_form_expected(3).is_err());
        for n in 4..=12 {
            let c = count_cliques(&PlanarEmbedding::standard_form(n).unwrap()).unwrap();
            let e = standard_form_expected(n).unwrap();
            assert_eq!(c.counts(), (e.c3, e.c4), "n={n}");
            assert_eq!(c.c3_surface, e.surface_triangles);
        }
    }

    #[test]
    fn non_triangulation_rejected() {
        let path = PlanarEmbedding::from_rotation(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        assert!(matches!(count_cliques(&path), Err(Error::Structural(_))));
    }

    #[test]
    fn report_flags() {
        let c = count_cliques(&PlanarEmbedding::standard_form(7).unwrap()).unwrap();
        let r = CensusReport::new("std7", &c).unwrap();
        assert!(r.within_bounds && r.attains_c3_max && r.attains_c4_max);
        let mut out = Vec::new();
        CensusReport::write_csv(&[r], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "std7,7,13,10,3,4,13,4,true,true");
    }
}
