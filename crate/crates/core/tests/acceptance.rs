//! Acceptance gate. Each test prints one `PASS`/`FAIL` line for its
//! criterion before asserting it.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use pmfg::cliques::{brute_force_cliques, count_cliques};
use pmfg::generator::{
    canonical_standard_form, diagonal_flip, expected_class_count, flip_closure, generate_all, legal_flips,
    normalize_to_standard, EberhardCampaign, DEFAULT_CLOSURE_CEILING,
};
use pmfg::planarity::{is_planar, kuratowski_oracle};
use pmfg::pmfg::{build_pmfg, build_pmfg_gated, correlation_from_returns, ReturnsTable, SimilarityMatrix, TiePolicy};
use pmfg::verify::{degree_census, run_verify};
use pmfg::PlanarEmbedding;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, title: &str, pass: bool, detail: String) {
    println!("[{}] criterion {id}: {title}: {detail}", if pass { "PASS" } else { "FAIL" });
}

fn random_correlation(rng: &mut ChaCha8Rng, n: usize) -> SimilarityMatrix {
    let t = 80;
    let factors = 3;
    let loadings: Vec<Vec<f64>> = (0..n).map(|_| (0..factors).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let rows = (0..t)
        .map(|_| {
            let f: Vec<f64> = (0..factors).map(|_| rng.gen_range(-1.0..1.0)).collect();
            (0..n)
                .map(|j| loadings[j].iter().zip(&f).map(|(b, x)| b * x).sum::<f64>() + rng.gen_range(-0.5..0.5))
                .collect()
        })
        .collect();
    let labels = (0..n).map(|j| format!("s{j:02}")).collect();
    correlation_from_returns(&ReturnsTable { labels, rows }).unwrap()
}

fn euler_holds(g: &PlanarEmbedding) -> bool {
    let r = g.euler_check();
    r.is_triangulation && r.e == 3 * r.n - 6 && r.f == 2 * r.n - 4
}

#[test]
fn criterion_1_euler_identities() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut failures = 0usize;
    let mut check = |g: &PlanarEmbedding| {
        checked += 1;
        if !euler_holds(g) {
            failures += 1;
        }
    };

    let campaign = EberhardCampaign::run(10, DEFAULT_CLOSURE_CEILING).unwrap();
    campaign.levels.iter().flat_map(|l| l.values()).for_each(|r| check(&r.embedding));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for walk in 0..96 {
        let n = 5 + walk % 36;
        let mut g = PlanarEmbedding::standard_form(n).unwrap();
        for _ in 0..100 {
            let mv = *legal_flips(&g).choose(&mut rng).unwrap();
            g = diagonal_flip(&g, &mv).unwrap();
            check(&g);
        }
    }

    for i in 0..200 {
        let n = 6 + i % 25;
        let sim = random_correlation(&mut rng, n);
        check(&build_pmfg(&sim, TiePolicy::Lexicographic).unwrap().embedding);
    }

    let elapsed = start.elapsed();
    let pass = checked >= 10_000 && failures == 0 && elapsed < Duration::from_secs(60);
    report(
        1,
        "e = 3n-6 and f = 2n-4 on builder, generator and flip output",
        pass,
        format!("{checked} graphs, {failures} failures, {:.1?}", elapsed),
    );
    assert!(pass);
}

#[test]
fn criterion_2_degree_sequence_census_n8() {
    let start = Instant::now();
    let census = degree_census(8, DEFAULT_CLOSURE_CEILING).unwrap();
    let elapsed = start.elapsed();
    let pass = census.total_combinations == 53 && census.realizable == 13 && elapsed < Duration::from_secs(10);
    report(
        2,
        "degree multisets for n = 8",
        pass,
        format!(
            "total = {} (expected 53), realizable = {} (expected 13), ambiguous = {}, {:.1?}",
            census.total_combinations, census.realizable, census.ambiguous, elapsed
        ),
    );
    assert_eq!(census.total_combinations, 53);
    assert_eq!(census.realizable, 13);
    assert!(elapsed < Duration::from_secs(10));
}

#[test]
fn criterion_3_six_vertex_censuses() {
    let classes = generate_all(6).unwrap();
    let censuses: BTreeSet<(usize, usize)> =
        classes.values().map(|r| count_cliques(&r.embedding).unwrap().counts()).collect();
    let pass = classes.len() == 2 && censuses == BTreeSet::from([(10, 3), (8, 0)]);
    report(3, "the two 6-vertex classes", pass, format!("(C3, C4) = {censuses:?}"));
    assert!(pass);
}

#[test]
fn criterion_4_closure_counts() {
    let start = Instant::now();
    let mut counts = Vec::new();
    let mut agree = true;
    for n in 4..=9 {
        let eberhard = generate_all(n).unwrap();
        let flips = flip_closure(n).unwrap();
        agree &= eberhard.keys().eq(flips.keys());
        counts.push(eberhard.len());
    }
    let elapsed = start.elapsed();
    let expected: Vec<usize> = (4..=9).map(|n| expected_class_count(n).unwrap() as usize).collect();
    let pass = agree && counts == vec![1, 1, 2, 5, 14, 50] && counts == expected && elapsed < Duration::from_secs(300);
    report(
        4,
        "Eberhard and flip closures for n = 4..9",
        pass,
        format!("counts {counts:?}, closures agree = {agree}, {:.1?}", elapsed),
    );
    assert!(pass);
}

#[test]
fn criterion_5_clique_bounds() {
    let verify = run_verify(9, DEFAULT_CLOSURE_CEILING).unwrap();
    let mut lines = Vec::new();
    let mut pass = true;
    for r in &verify.reports {
        let n = r.n;
        let ok = r.bound_violations.is_empty()
            && r.c3_min >= 2 * n - 4
            && r.c3_max == 3 * n - 8
            && r.c4_max == n - 3
            && r.standard_attains_both;
        pass &= ok;
        lines.push(format!("n={n}: C3 {}..{}, C4 {}..{}", r.c3_min, r.c3_max, r.c4_min, r.c4_max));
    }
    report(
        5,
        "2n-4 <= C3 <= 3n-8 and C4 <= n-3 with maxima attained by the standard form",
        pass,
        lines.join("; "),
    );
    assert!(pass);
}

#[test]
fn criterion_6_census_oracle() {
    let mut graphs = 0;
    let mut mismatches = 0;
    for n in 4..=9 {
        for rec in generate_all(n).unwrap().values() {
            graphs += 1;
            let fast = count_cliques(&rec.embedding).unwrap().counts();
            if fast != brute_force_cliques(&rec.embedding.to_graph()).unwrap() {
                mismatches += 1;
            }
        }
    }
    let pass = mismatches == 0;
    report(6, "clique census against subset enumeration", pass, format!("{graphs} classes, {mismatches} mismatches"));
    assert!(pass);
}

#[test]
fn criterion_7_normalization() {
    let mut classes = 0;
    let mut flips = 0;
    let mut failures = Vec::new();
    for n in 4..=8 {
        let standard = canonical_standard_form(n).unwrap();
        let mut expected = vec![n - 1, n - 1];
        expected.extend(std::iter::repeat_n(4, n - 4));
        expected.extend([3, 3]);
        for rec in generate_all(n).unwrap().values() {
            classes += 1;
            let Ok((h, trace)) = normalize_to_standard(&rec.embedding) else {
                failures.push(rec.code.to_hex());
                continue;
            };
            let mut cur = rec.embedding.clone();
            let mut legal = true;
            for mv in &trace {
                legal &= mv.is_legal(&cur);
                match diagonal_flip(&cur, mv) {
                    Ok(next) if next.is_triangulation() => cur = next,
                    _ => legal = false,
                }
            }
            flips += trace.len();
            if !legal || cur != h || h.degree_sequence() != expected || pmfg::generator::canonical_code(&h) != standard {
                failures.push(rec.code.to_hex());
            }
        }
    }
    let pass = failures.is_empty();
    report(
        7,
        "every class for n = 4..8 flips to the standard form",
        pass,
        format!("{classes} classes, {flips} flips in total, {} failures", failures.len()),
    );
    assert!(pass, "{failures:?}");
}

#[test]
fn criterion_8_pmfg_builder_soundness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    for i in 0..200 {
        let n = 6 + i % 7;
        let sim = random_correlation(&mut rng, n);
        let fast = build_pmfg(&sim, TiePolicy::Lexicographic).unwrap();
        let oracle = build_pmfg_gated(&sim, TiePolicy::Lexicographic, kuratowski_oracle).unwrap();
        let graph = fast.embedding.to_graph();
        let same = fast.accepted.iter().map(|e| (e.u, e.v)).eq(oracle.accepted.iter().map(|e| (e.u, e.v)));
        let ok = fast.accepted.len() == 3 * (n - 2) && graph.is_connected() && is_planar(&graph).planar && same;
        if !ok {
            failures.push(i);
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(120);
    report(
        8,
        "greedy builder on 200 random correlation matrices, n = 6..12",
        pass,
        format!("{} failures, {:.1?}", failures.len(), elapsed),
    );
    assert!(pass, "{failures:?}");
}

#[test]
fn criterion_9_eberhard_clique_deltas() {
    let campaign = EberhardCampaign::run(11, 11).unwrap();
    let stats = &campaign.stats;
    let pass = stats.applications >= 10_000 && stats.violations.is_empty();
    report(
        9,
        "per-operation clique changes (phi1: +3/+1, phi2 and phi3: +2/+0)",
        pass,
        format!(
            "{} applications {:?}, {} violations",
            stats.applications,
            stats.per_kind,
            stats.violations.len()
        ),
    );
    assert!(pass);
}
