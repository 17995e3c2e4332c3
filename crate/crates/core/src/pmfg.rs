//! Planar Maximally Filtered Graph construction.
//!
//! Edges of the complete similarity graph are scanned in descending weight
//! order and kept whenever the kept set stays planar. The scan stops once
//! `3(n - 2)` edges are kept, at which point the result is a triangulation
//! of the sphere and no further edge could be added.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::io::{Read, Write};

use serde::Serialize;

use crate::embedding::PlanarEmbedding;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::planarity;

const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Symmetric matrix of similarity coefficients between labelled entities.
/// The diagonal is never read.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    labels: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl SimilarityMatrix {
    pub fn new(labels: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return Err(Error::Input(format!(
                "similarity matrix must be {n}x{n} to match its labels"
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Input(format!("duplicate label {l:?}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (values[i][j], values[j][i]);
                if a.is_nan() {
                    return Err(Error::Input(format!(
                        "NaN similarity between {} and {}",
                        labels[i], labels[j]
                    )));
                }
                if (a - b).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::Input(format!(
                        "matrix not symmetric at ({}, {}): {a} vs {b}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(SimilarityMatrix { labels, values })
    }

    /// Like [`SimilarityMatrix::new`], additionally requiring every
    /// off-diagonal entry to lie in [-1, 1].
    pub fn correlation(labels: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        let m = Self::new(labels, values)?;
        for i in 0..m.len() {
            for j in 0..m.len() {
                let x = m.values[i][j];
                if i != j && !(-1.0 - SYMMETRY_TOLERANCE..=1.0 + SYMMETRY_TOLERANCE).contains(&x) {
                    return Err(Error::Input(format!(
                        "correlation between {} and {} is {x}, outside [-1, 1]",
                        m.labels[i], m.labels[j]
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    /// Reads a square matrix CSV: the header row holds the labels after one
    /// leading cell, and every following row starts with its label.
    pub fn from_matrix_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).flexible(true).trim(csv::Trim::All).from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.len() < 2 {
            return Err(Error::Input("line 1: matrix header needs a corner cell and labels".into()));
        }
        let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut values = Vec::with_capacity(labels.len());
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            let line = record.position().map_or(i + 2, |p| p.line() as usize);
            if record.len() != labels.len() + 1 {
                return Err(Error::Input(format!(
                    "line {line}: expected {} fields, found {}",
                    labels.len() + 1,
                    record.len()
                )));
            }
            match labels.get(i) {
                Some(expected) if expected == &record[0] => {}
                Some(expected) => {
                    return Err(Error::Input(format!(
                        "line {line}: row label {:?} does not match column label {expected:?}",
                        &record[0]
                    )))
                }
                None => return Err(Error::Input(format!("line {line}: more rows than labels"))),
            }
            let row = record
                .iter()
                .skip(1)
                .enumerate()
                .map(|(j, cell)| parse_number(cell, line, j + 2))
                .collect::<Result<Vec<f64>>>()?;
            values.push(row);
        }
        if values.len() != labels.len() {
            return Err(Error::Input(format!(
                "matrix has {} rows for {} labels",
                values.len(),
                labels.len()
            )));
        }
        Self::new(labels, values)
    }
}

fn parse_number(cell: &str, line: usize, column: usize) -> Result<f64> {
    let x: f64 = cell
        .parse()
        .map_err(|_| Error::Input(format!("line {line}, column {column}: {cell:?} is not a number")))?;
    if x.is_nan() {
        return Err(Error::Input(format!("line {line}, column {column}: NaN")));
    }
    Ok(x)
}

/// A returns table: one column per entity, one row per observation.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnsTable {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ReturnsTable {
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).flexible(true).trim(csv::Trim::All).from_reader(reader);
        let labels: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            let line = record.position().map_or(i + 2, |p| p.line() as usize);
            if record.len() != labels.len() {
                return Err(Error::Input(format!(
                    "line {line}: expected {} fields, found {}",
                    labels.len(),
                    record.len()
                )));
            }
            let row = record
                .iter()
                .enumerate()
                .map(|(j, cell)| parse_number(cell, line, j + 1))
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        Ok(ReturnsTable { labels, rows })
    }
}

/// Pearson correlation matrix of the columns of a returns table.
pub fn correlation_from_returns(table: &ReturnsTable) -> Result<SimilarityMatrix> {
    let n = table.labels.len();
    let t = table.rows.len();
    if t < 2 {
        return Err(Error::Input(format!("need at least 2 observations, got {t}")));
    }
    if let Some(i) = table.rows.iter().position(|r| r.len() != n) {
        return Err(Error::Input(format!("observation {} has the wrong width", i + 1)));
    }
    let columns: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mean = table.rows.iter().map(|r| r[j]).sum::<f64>() / t as f64;
            table.rows.iter().map(|r| r[j] - mean).collect()
        })
        .collect();
    let norms: Vec<f64> = columns
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    for (j, &norm) in norms.iter().enumerate() {
        if norm == 0.0 {
            return Err(Error::Input(format!(
                "column {:?} is constant (zero variance)",
                table.labels[j]
            )));
        }
    }
    let mut values = vec![vec![1.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let dot: f64 = columns[i].iter().zip(&columns[j]).map(|(a, b)| a * b).sum();
            let r = (dot / (norms[i] * norms[j])).clamp(-1.0, 1.0);
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    SimilarityMatrix::correlation(table.labels.clone(), values)
}

/// How equal weights are ordered in the scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// Order ties by (smaller label, larger label).
    #[default]
    Lexicographic,
    /// Refuse to build when the scan meets tied weights.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// All off-diagonal pairs sorted by weight, heaviest first.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedEdgeList {
    pub entries: Vec<WeightedEdge>,
}

impl WeightedEdgeList {
    pub fn from_similarity(sim: &SimilarityMatrix) -> Self {
        let labels = sim.labels();
        let n = sim.len();
        let mut entries = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let (u, v) = if labels[i] <= labels[j] { (i, j) } else { (j, i) };
                entries.push(WeightedEdge {
                    u,
                    v,
                    weight: sim.get(i, j),
                });
            }
        }
        entries.sort_by(|a, b| {
            b.weight
                .total_cmp(&a.weight)
                .then_with(|| labels[a.u].cmp(&labels[b.u]))
                .then_with(|| labels[a.v].cmp(&labels[b.v]))
        });
        WeightedEdgeList { entries }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEntry {
    pub rank: usize,
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone)]
pub struct PmfgResult {
    pub embedding: PlanarEmbedding,
    pub accepted: Vec<WeightedEdge>,
    pub rejected: Vec<WeightedEdge>,
    pub total_weight: f64,
    pub log: Vec<ScanEntry>,
}

impl PmfgResult {
    /// Acceptance log as CSV: `rank,u,v,weight,status`.
    pub fn write_log_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["rank", "u", "v", "weight", "status"])?;
        for entry in &self.log {
            w.write_record([
                entry.rank.to_string(),
                self.embedding.label(entry.u),
                self.embedding.label(entry.v),
                entry.weight.to_string(),
                if entry.accepted { "accepted" } else { "rejected" }.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Builds the PMFG, gating each candidate with the left-right planarity test.
pub fn build_pmfg(sim: &SimilarityMatrix, policy: TiePolicy) -> Result<PmfgResult> {
    build_pmfg_gated(sim, policy, |g| Ok(planarity::planar(g)))
}

/// The greedy scan with a caller-supplied planarity gate.
pub fn build_pmfg_gated<G>(sim: &SimilarityMatrix, policy: TiePolicy, mut gate: G) -> Result<PmfgResult>
where
    G: FnMut(&SimpleGraph) -> Result<bool>,
{
    let n = sim.len();
    if n < 3 {
        return Err(Error::Input(format!("PMFG needs at least 3 entities, got {n}")));
    }
    let list = WeightedEdgeList::from_similarity(sim);
    let target = 3 * (n - 2);

    let mut graph = SimpleGraph::empty(n);
    let mut accepted = Vec::with_capacity(target);
    let mut rejected = Vec::new();
    let mut log = Vec::new();
    let mut scanned = 0;
    for (rank, edge) in list.entries.iter().enumerate() {
        if accepted.len() == target {
            break;
        }
        scanned = rank + 1;
        let mut candidate = graph.clone();
        candidate.add_edge(edge.u, edge.v)?;
        let ok = gate(&candidate)?;
        if ok {
            graph = candidate;
            accepted.push(edge.clone());
        } else {
            rejected.push(edge.clone());
        }
        log.push(ScanEntry {
            rank: rank + 1,
            u: edge.u,
            v: edge.v,
            weight: edge.weight,
            accepted: ok,
        });
    }

    if policy == TiePolicy::Strict {
        let window = &list.entries[..(scanned + 1).min(list.entries.len())];
        let ties: Vec<(String, String, f64)> = window
            .windows(2)
            .filter(|w| w[0].weight.total_cmp(&w[1].weight) == Ordering::Equal)
            .flat_map(|w| w.iter())
            .map(|e| (sim.labels()[e.u].clone(), sim.labels()[e.v].clone(), e.weight))
            .fold(Vec::new(), |mut acc, t| {
                if !acc.contains(&t) {
                    acc.push(t);
                }
                acc
            });
        if !ties.is_empty() {
            return Err(Error::Ties(ties));
        }
    }

    if accepted.len() != target {
        return Err(Error::Structural(format!(
            "scan ended with {} accepted edges, expected {target}",
            accepted.len()
        )));
    }
    let mut embedding = planarity::is_planar(&graph)
        .embedding
        .ok_or_else(|| Error::Structural("accepted edge set is not planar".into()))?;
    embedding.set_labels(sim.labels().to_vec())?;
    let total_weight = accepted.iter().map(|e| e.weight).sum();
    Ok(PmfgResult {
        embedding,
        accepted,
        rejected,
        total_weight,
        log,
    })
}
