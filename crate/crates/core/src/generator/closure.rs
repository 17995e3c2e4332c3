//! Exhaustive generation of sphere triangulations, two ways: Eberhard
//! operations grown from K4, and diagonal flips spread from the standard
//! form. Both deduplicate by canonical code at every level.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canonical::{canonical_code, CanonicalCode};
use super::cycles::pure_chord_regions;
use super::eberhard::{apply_eberhard, clique_delta, CliqueDelta, EberhardKind, EberhardOp};
use super::flip::{diagonal_flip, legal_flips, FlipMove};
use crate::cliques::count_cliques;
use crate::embedding::PlanarEmbedding;
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_CEILING: usize = 10;

/// Isomorphism classes of sphere triangulations with n = 4, 5, ... vertices.
const CLASS_COUNTS: [u64; 14] = [
    1, 1, 2, 5, 14, 50, 233, 1249, 7595, 49566, 339722, 2406841, 17490241, 129664753,
];

/// Number of triangulation classes on `n` vertices, when tabulated.
pub fn expected_class_count(n: usize) -> Option<u64> {
    n.checked_sub(4).and_then(|i| CLASS_COUNTS.get(i)).copied()
}

fn check_range(n: usize, ceiling: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::Input(format!("triangulations are generated for n >= 4, got {n}")));
    }
    if n > ceiling {
        return Err(Error::CeilingExceeded { n, ceiling, estimate: expected_class_count(n) });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "lowercase")]
pub enum TraceStep {
    Eberhard(EberhardOp),
    Flip(FlipMove),
}

/// One triangulation with the steps that built it from
/// `standard_form(seed_n)`.
#[derive(Debug, Clone)]
pub struct GenerationRecord {
    pub embedding: PlanarEmbedding,
    pub seed_n: usize,
    pub trace: Vec<TraceStep>,
    pub code: CanonicalCode,
}

impl GenerationRecord {
    fn seed(n: usize) -> Result<Self> {
        let embedding = PlanarEmbedding::standard_form(n)?;
        let code = canonical_code(&embedding);
        Ok(GenerationRecord { embedding, seed_n: n, trace: Vec::new(), code })
    }

    fn child(&self, embedding: PlanarEmbedding, step: TraceStep, code: CanonicalCode) -> Self {
        let mut trace = self.trace.clone();
        trace.push(step);
        GenerationRecord { embedding, seed_n: self.seed_n, trace, code }
    }

    /// Rebuilds the embedding from the seed, checking every step.
    pub fn replay(&self) -> Result<PlanarEmbedding> {
        let mut cur = PlanarEmbedding::standard_form(self.seed_n)?;
        for step in &self.trace {
            cur = match step {
                TraceStep::Eberhard(op) => apply_eberhard(&cur, op)?,
                TraceStep::Flip(mv) => diagonal_flip(&cur, mv)?,
            };
        }
        Ok(cur)
    }
}

pub type ClassMap = BTreeMap<CanonicalCode, GenerationRecord>;

/// An application whose clique change broke the expected pattern.
#[derive(Debug, Clone, Serialize)]
pub struct DeltaViolation {
    pub parent: String,
    pub op: EberhardOp,
    pub delta: CliqueDelta,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DeltaStats {
    pub applications: u64,
    pub per_kind: BTreeMap<String, u64>,
    /// Observed `(net_c3, net_c4)` pairs per kind with their frequency.
    pub net_changes: BTreeMap<String, BTreeMap<String, u64>>,
    pub violations: Vec<DeltaViolation>,
}

impl DeltaStats {
    fn record(&mut self, parent: &CanonicalCode, op: &EberhardOp, delta: CliqueDelta) {
        self.applications += 1;
        let kind = op.kind.to_string();
        *self.per_kind.entry(kind.clone()).or_default() += 1;
        *self
            .net_changes
            .entry(kind)
            .or_default()
            .entry(format!("({}, {})", delta.net_c3, delta.net_c4))
            .or_default() += 1;
        if !delta.holds() {
            self.violations.push(DeltaViolation { parent: parent.to_hex(), op: op.clone(), delta });
        }
    }
}

/// Level-by-level Eberhard closure from K4.
#[derive(Debug, Clone)]
pub struct EberhardCampaign {
    /// Classes on `4 + i` vertices at index `i`.
    pub levels: Vec<ClassMap>,
    pub stats: DeltaStats,
}

struct Child {
    code: CanonicalCode,
    embedding: PlanarEmbedding,
    op: EberhardOp,
    delta: CliqueDelta,
}

fn expand(parent: &GenerationRecord) -> Result<Vec<Child>> {
    let host = &parent.embedding;
    let before = count_cliques(host)?;
    let mut out = Vec::new();
    for kind in EberhardKind::ALL {
        for cycle in pure_chord_regions(host, kind.cycle_len())? {
            let op = EberhardOp::on_cycle(host, cycle)?;
            let embedding = apply_eberhard(host, &op)?;
            let after = count_cliques(&embedding)?;
            let delta = clique_delta(&op, &embedding, &before, &after);
            out.push(Child { code: canonical_code(&embedding), embedding, op, delta });
        }
    }
    Ok(out)
}

impl EberhardCampaign {
    pub fn run(n: usize, ceiling: usize) -> Result<Self> {
        check_range(n, ceiling)?;
        let seed = GenerationRecord::seed(4)?;
        let mut levels = vec![BTreeMap::from([(seed.code.clone(), seed)])];
        let mut stats = DeltaStats::default();
        while levels.len() < n - 3 {
            let frontier: Vec<&GenerationRecord> = levels.last().unwrap().values().collect();
            let expanded: Vec<Result<Vec<Child>>> = frontier.par_iter().map(|r| expand(r)).collect();
            let mut next = ClassMap::new();
            for (parent, children) in frontier.iter().zip(expanded) {
                for c in children? {
                    stats.record(&parent.code, &c.op, c.delta);
                    next.entry(c.code.clone())
                        .or_insert_with(|| parent.child(c.embedding, TraceStep::Eberhard(c.op), c.code));
                }
            }
            levels.push(next);
        }
        Ok(EberhardCampaign { levels, stats })
    }

    pub fn classes(&self) -> &ClassMap {
        self.levels.last().expect("at least the seed level")
    }
}

/// All triangulations on `n` vertices from K4 by Eberhard operations,
/// with the default ceiling. Fails if any application breaks the clique
/// change pattern.
pub fn generate_all(n: usize) -> Result<ClassMap> {
    generate_all_with_ceiling(n, DEFAULT_CLOSURE_CEILING)
}

pub fn generate_all_with_ceiling(n: usize, ceiling: usize) -> Result<ClassMap> {
    let mut campaign = EberhardCampaign::run(n, ceiling)?;
    if let Some(v) = campaign.stats.violations.first() {
        return Err(Error::Verification(format!(
            "{} clique deltas off pattern, first: {} on {:?} gave {:?}",
            campaign.stats.violations.len(),
            v.op.kind,
            v.op.cycle.vertices,
            v.delta
        )));
    }
    Ok(campaign.levels.pop().unwrap())
}

/// All triangulations reachable from the standard form on `n` vertices
/// by legal diagonal flips.
pub fn flip_closure(n: usize) -> Result<ClassMap> {
    flip_closure_with_ceiling(n, DEFAULT_CLOSURE_CEILING)
}

pub fn flip_closure_with_ceiling(n: usize, ceiling: usize) -> Result<ClassMap> {
    check_range(n, ceiling)?;
    let seed = GenerationRecord::seed(n)?;
    let mut frontier = vec![seed.code.clone()];
    let mut classes = BTreeMap::from([(seed.code.clone(), seed)]);
    while !frontier.is_empty() {
        let expanded: Vec<Result<Vec<(CanonicalCode, PlanarEmbedding, FlipMove)>>> = frontier
            .par_iter()
            .map(|code| {
                let host = &classes[code].embedding;
                legal_flips(host)
                    .into_iter()
                    .map(|mv| {
                        let g = diagonal_flip(host, &mv)?;
                        Ok((canonical_code(&g), g, mv))
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (parent, children) in frontier.iter().zip(expanded) {
            for (code, g, mv) in children? {
                if !classes.contains_key(&code) {
                    let rec = classes[parent].child(g, TraceStep::Flip(mv), code.clone());
                    classes.insert(code.clone(), rec);
                    next.push(code);
                }
            }
        }
        frontier = next;
    }
    Ok(classes)
}

/// One JSON-lines row of campaign output.
#[derive(Debug, Clone, Serialize)]
pub struct CampaignLine {
    pub code: String,
    pub degree_sequence: Vec<usize>,
    pub c3: usize,
    pub c4: usize,
    pub trace_length: usize,
}

pub fn campaign_lines(classes: &ClassMap) -> Result<String> {
    let mut out = String::new();
    for rec in classes.values() {
        let census = count_cliques(&rec.embedding)?;
        let line = CampaignLine {
            code: rec.code.to_hex(),
            degree_sequence: rec.embedding.degree_sequence(),
            c3: census.c3_total,
            c4: census.c4_total,
            trace_length: rec.trace.len(),
        };
        out.push_str(&serde_json::to_string(&line)?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_counts() {
        for n in 4..=8 {
            let classes = generate_all(n).unwrap();
            assert_eq!(classes.len() as u64, expected_class_count(n).unwrap(), "n={n}");
            let flips = flip_closure(n).unwrap();
            assert!(classes.keys().eq(flips.keys()), "n={n}");
        }
    }

    #[test]
    fn traces_replay() {
        for rec in generate_all(7).unwrap().values().chain(flip_closure(7).unwrap().values()) {
            assert_eq!(rec.replay().unwrap(), rec.embedding);
            assert_eq!(canonical_code(&rec.embedding), rec.code);
        }
    }

    #[test]
    fn ceiling_and_range() {
        assert!(matches!(
            generate_all(11),
            Err(Error::CeilingExceeded { n: 11, ceiling: 10, estimate: Some(1249) })
        ));
        assert!(matches!(flip_closure(3), Err(Error::Input(_))));
        assert_eq!(expected_class_count(3), None);
    }

    #[test]
    fn campaign_output() {
        let text = campaign_lines(&generate_all(6).unwrap()).unwrap();
        let rows: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(rows.len(), 2);
        let mut censuses: Vec<(u64, u64)> =
            rows.iter().map(|r| (r["c3"].as_u64().unwrap(), r["c4"].as_u64().unwrap())).collect();
        censuses.sort_unstable();
        assert_eq!(censuses, vec![(8, 0), (10, 3)]);
    }

    #[test]
    fn trace_json_round_trip() {
        let rec = generate_all(6).unwrap().into_values().last().unwrap();
        let text = serde_json::to_string(&rec.trace).unwrap();
        let back: Vec<TraceStep> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec.trace);
    }
}
