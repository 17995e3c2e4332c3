//! Exhaustive checks of the clique bounds and of the generation machinery
//! at small vertex counts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cliques::{brute_force_cliques, count_cliques, CliqueBounds};
use crate::error::{Error, Result};
use crate::generator::{
    canonical_code, canonical_standard_form, flip_closure_with_ceiling, generate_all_with_ceiling,
    normalize_to_standard, ClassMap, DeltaStats, EberhardCampaign,
};

/// Canonical codes (hex) of the classes attaining each observed extreme.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AttainingCodes {
    pub c3_min: Vec<String>,
    pub c3_max: Vec<String>,
    pub c4_min: Vec<String>,
    pub c4_max: Vec<String>,
}

/// Clique statistics over every isomorphism class on `n` vertices.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub classes: usize,
    pub flip_classes: usize,
    pub closure_agreement: bool,
    pub bounds: CliqueBounds,
    pub c3_min: usize,
    pub c3_max: usize,
    pub c4_min: usize,
    pub c4_max: usize,
    pub attaining_codes: AttainingCodes,
    pub standard_form_code: String,
    pub standard_attains_both: bool,
    /// Some class has no separating 3-cycle. Not required: the lower
    /// bound 2n - 4 is only reached when a 4-connected triangulation
    /// exists, which fails for n = 5.
    pub c3_min_attained: bool,
    pub bound_violations: Vec<String>,
    pub attainment_failures: Vec<String>,
    pub oracle_mismatches: Vec<String>,
    pub normalization_failures: Vec<String>,
    pub max_normalization_flips: usize,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.closure_agreement
            && self.standard_attains_both
            && self.bound_violations.is_empty()
            && self.attainment_failures.is_empty()
            && self.oracle_mismatches.is_empty()
            && self.normalization_failures.is_empty()
    }

    /// Censuses every class of `classes`, compares against `flips`.
    pub fn from_classes(n: usize, classes: &ClassMap, flips: &ClassMap) -> Result<Self> {
        let bounds = CliqueBounds::for_n(n)?;
        let standard = canonical_standard_form(n)?;

        struct Row {
            code: String,
            c3: usize,
            c4: usize,
            oracle: Option<String>,
            normalization: std::result::Result<usize, String>,
        }
        let rows: Vec<Result<Row>> = classes
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|rec| {
                let census = count_cliques(&rec.embedding)?;
                let code = rec.code.to_hex();
                let brute = brute_force_cliques(&rec.embedding.to_graph())?;
                let oracle = (brute != census.counts())
                    .then(|| format!("{code}: census {:?} vs subsets {brute:?}", census.counts()));
                let normalization = match normalize_to_standard(&rec.embedding) {
                    Ok((h, trace)) if canonical_code(&h) == standard => Ok(trace.len()),
                    Ok(_) => Err(format!("{code}: ended off the standard form")),
                    Err(e) => Err(format!("{code}: {e}")),
                };
                Ok(Row { code, c3: census.c3_total, c4: census.c4_total, oracle, normalization })
            })
            .collect();
        let rows = rows.into_iter().collect::<Result<Vec<Row>>>()?;
        if rows.is_empty() {
            return Err(Error::Verification(format!("no classes generated at n = {n}")));
        }

        let c3_min = rows.iter().map(|r| r.c3).min().unwrap();
        let c3_max = rows.iter().map(|r| r.c3).max().unwrap();
        let c4_min = rows.iter().map(|r| r.c4).min().unwrap();
        let c4_max = rows.iter().map(|r| r.c4).max().unwrap();
        let pick = |f: &dyn Fn(&Row) -> bool| rows.iter().filter(|r| f(r)).map(|r| r.code.clone()).collect();
        let attaining_codes = AttainingCodes {
            c3_min: pick(&|r| r.c3 == c3_min),
            c3_max: pick(&|r| r.c3 == c3_max),
            c4_min: pick(&|r| r.c4 == c4_min),
            c4_max: pick(&|r| r.c4 == c4_max),
        };
        let bound_violations = rows
            .iter()
            .filter(|r| !bounds.admits(r.c3, r.c4))
            .map(|r| format!("{}: (C3, C4) = ({}, {})", r.code, r.c3, r.c4))
            .collect();
        let mut attainment_failures = Vec::new();
        if c3_max != bounds.c3_max {
            attainment_failures.push(format!("max C3 is {c3_max}, expected {}", bounds.c3_max));
        }
        if c4_max != bounds.c4_max {
            attainment_failures.push(format!("max C4 is {c4_max}, expected {}", bounds.c4_max));
        }
        let standard_row = rows.iter().find(|r| r.code == standard.to_hex());
        let standard_attains_both =
            standard_row.is_some_and(|r| r.c3 == bounds.c3_max && r.c4 == bounds.c4_max);

        Ok(BoundsReport {
            n,
            classes: classes.len(),
            flip_classes: flips.len(),
            closure_agreement: classes.keys().eq(flips.keys()),
            bounds,
            c3_min,
            c3_max,
            c4_min,
            c4_max,
            attaining_codes,
            standard_form_code: standard.to_hex(),
            standard_attains_both,
            c3_min_attained: c3_min == bounds.c3_min,
            bound_violations,
            attainment_failures,
            oracle_mismatches: rows.iter().filter_map(|r| r.oracle.clone()).collect(),
            normalization_failures: rows.iter().filter_map(|r| r.normalization.clone().err()).collect(),
            max_normalization_flips: rows.iter().filter_map(|r| r.normalization.clone().ok()).max().unwrap_or(0),
        })
    }
}

/// Result of a verification campaign over `4..=n_max`.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub reports: Vec<BoundsReport>,
    pub deltas: DeltaStats,
    pub passed: bool,
}

/// Generates every class for `n = 4..=n_max` both ways, censuses each,
/// and checks bounds, attainment, the subset oracle, normalization and
/// the per-operation clique changes.
pub fn run_verify(n_max: usize, ceiling: usize) -> Result<VerifyReport> {
    let campaign = EberhardCampaign::run(n_max, ceiling)?;
    let mut reports = Vec::new();
    for (i, classes) in campaign.levels.iter().enumerate() {
        let n = 4 + i;
        let flips = flip_closure_with_ceiling(n, ceiling)?;
        reports.push(BoundsReport::from_classes(n, classes, &flips)?);
    }
    let passed = reports.iter().all(BoundsReport::passed) && campaign.stats.violations.is_empty();
    Ok(VerifyReport { n_max, reports, deltas: campaign.stats, passed })
}

/// Degree multisets of `n`-vertex triangulations.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeSequenceCensus {
    pub n: usize,
    /// Multisets with entries in `3..=n-1` summing to `2(3n - 6)`.
    pub total_combinations: usize,
    pub realizable: usize,
    /// Realized by at least two non-isomorphic triangulations.
    pub ambiguous: usize,
    /// Every candidate sequence (non-increasing) with its class count.
    pub sequences: Vec<(Vec<usize>, usize)>,
}

fn degree_multisets(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, sum: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in (3..=max).rev() {
            if d > sum || sum - d < 3 * (left - 1) || sum - d > max.min(d) * (left - 1) {
                continue;
            }
            cur.push(d);
            rec(left - 1, sum - d, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 6 * n - 12, n - 1, &mut Vec::new(), &mut out);
    out
}

/// Enumerates candidate degree multisets and marks those realized by a
/// generated triangulation.
pub fn degree_census(n: usize, ceiling: usize) -> Result<DegreeSequenceCensus> {
    let classes = generate_all_with_ceiling(n, ceiling)?;
    let mut realized: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for rec in classes.values() {
        *realized.entry(rec.embedding.degree_sequence()).or_default() += 1;
    }
    let candidates = degree_multisets(n);
    if let Some(stray) = realized.keys().find(|s| !candidates.contains(s)) {
        return Err(Error::Verification(format!(
            "triangulation degree sequence {stray:?} is outside the candidate range"
        )));
    }
    let sequences: Vec<(Vec<usize>, usize)> = candidates
        .into_iter()
        .map(|s| {
            let k = realized.get(&s).copied().unwrap_or(0);
            (s, k)
        })
        .collect();
    Ok(DegreeSequenceCensus {
        n,
        total_combinations: sequences.len(),
        realizable: sequences.iter().filter(|(_, k)| *k > 0).count(),
        ambiguous: sequences.iter().filter(|(_, k)| *k > 1).count(),
        sequences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::DEFAULT_CLOSURE_CEILING;

    /// Multisets by plain counting over all non-increasing n-tuples.
    fn count_multisets(n: usize) -> usize {
        fn rec(left: usize, max: usize, sum: usize) -> usize {
            if left == 0 {
                return usize::from(sum == 0);
            }
            (3..=max).filter(|&d| d <= sum).map(|d| rec(left - 1, d, sum - d)).sum()
        }
        rec(n, n - 1, 6 * n - 12)
    }

    #[test]
    fn multiset_enumeration() {
        for n in 4..=10 {
            assert_eq!(degree_multisets(n).len(), count_multisets(n), "n={n}");
        }
        assert_eq!(degree_multisets(4), vec![vec![3, 3, 3, 3]]);
    }

    #[test]
    fn census_small() {
        let c = degree_census(4, DEFAULT_CLOSURE_CEILING).unwrap();
        assert_eq!((c.total_combinations, c.realizable, c.ambiguous), (1, 1, 0));
        let c = degree_census(6, DEFAULT_CLOSURE_CEILING).unwrap();
        assert_eq!(c.realizable, 2);
        assert!(c.realizable <= c.total_combinations);
    }

    #[test]
    fn verify_through_seven() {
        let r = run_verify(7, DEFAULT_CLOSURE_CEILING).unwrap();
        assert!(r.passed);
        let six = &r.reports[2];
        assert_eq!((six.n, six.classes, six.c3_min, six.c3_max, six.c4_min, six.c4_max), (6, 2, 8, 10, 0, 3));
        assert!(six.attaining_codes.c3_max.contains(&six.standard_form_code));
        let minima: Vec<bool> = r.reports.iter().map(|b| b.c3_min_attained).collect();
        assert_eq!(minima, vec![true, false, true, true]);
        assert!(run_verify(12, DEFAULT_CLOSURE_CEILING).is_err());
    }
}
