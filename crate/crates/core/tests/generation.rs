use pmfg::cliques::{brute_force_cliques, count_cliques};
use pmfg::generator::{
    canonical_code, canonical_standard_form, diagonal_flip, flip_closure, generate_all, legal_flips,
    normalize_to_standard, replay_flips, EberhardCampaign,
};
use pmfg::PlanarEmbedding;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Backtracking graph isomorphism on adjacency matrices.
fn isomorphic(a: &PlanarEmbedding, b: &PlanarEmbedding) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.degree_sequence() != b.degree_sequence() {
        return false;
    }
    fn extend(a: &PlanarEmbedding, b: &PlanarEmbedding, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let v = map.len();
        if v == a.vertex_count() {
            return true;
        }
        for w in 0..b.vertex_count() {
            if used[w] || a.degree(v) != b.degree(w) {
                continue;
            }
            if (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w)) {
                map.push(w);
                used[w] = true;
                if extend(a, b, map, used) {
                    return true;
                }
                used[w] = false;
                map.pop();
            }
        }
        false
    }
    extend(a, b, &mut Vec::new(), &mut vec![false; n])
}

#[test]
fn closures_agree_through_nine() {
    for (n, expected) in (4..=9).zip([1, 1, 2, 5, 14, 50]) {
        let eberhard = generate_all(n).unwrap();
        let flips = flip_closure(n).unwrap();
        assert_eq!(eberhard.len(), expected, "n={n}");
        assert!(eberhard.keys().eq(flips.keys()), "n={n}");
    }
}

#[test]
fn canonical_codes_match_isomorphism_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 4..=8 {
        let classes: Vec<PlanarEmbedding> = generate_all(n).unwrap().into_values().map(|r| r.embedding).collect();
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                assert!(!isomorphic(a, b));
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let c = a.relabel(&perm).mirror();
            assert!(isomorphic(a, &c));
            assert_eq!(canonical_code(a), canonical_code(&c));
        }
    }
}

#[test]
fn census_matches_brute_force_through_nine() {
    for n in 4..=9 {
        for rec in generate_all(n).unwrap().values() {
            let census = count_cliques(&rec.embedding).unwrap();
            assert_eq!(census.counts(), brute_force_cliques(&rec.embedding.to_graph()).unwrap());
            for k4 in &census.four_cliques {
                let inside = census
                    .surface
                    .iter()
                    .chain(&census.separating)
                    .filter(|t| t.iter().all(|v| k4.contains(v)))
                    .count();
                assert_eq!(inside, 4);
                if n >= 5 {
                    assert!(census.separating.iter().any(|t| t.iter().all(|v| k4.contains(v))));
                }
            }
        }
    }
}

#[test]
fn every_class_normalizes_through_ten() {
    for n in 4..=10 {
        let standard = canonical_standard_form(n).unwrap();
        let mut expected = vec![n - 1, n - 1];
        expected.extend(std::iter::repeat_n(4, n - 4));
        expected.extend([3, 3]);
        for rec in generate_all(n).unwrap().values() {
            let (h, trace) = normalize_to_standard(&rec.embedding).unwrap();
            assert_eq!(canonical_code(&h), standard);
            assert_eq!(h.degree_sequence(), expected);
            let mut cur = rec.embedding.clone();
            for mv in &trace {
                assert!(mv.is_legal(&cur));
                cur = diagonal_flip(&cur, mv).unwrap();
                assert!(cur.is_triangulation());
            }
            assert_eq!(replay_flips(&rec.embedding, &trace).unwrap(), h);
        }
    }
}

#[test]
fn eberhard_bookkeeping() {
    let campaign = EberhardCampaign::run(9, 9).unwrap();
    assert!(campaign.stats.violations.is_empty());
    for (i, level) in campaign.levels.iter().enumerate() {
        for rec in level.values() {
            let g = &rec.embedding;
            assert_eq!((g.vertex_count(), g.edge_count()), (4 + i, 3 * (4 + i) - 6));
            let degree_sum: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            assert_eq!(degree_sum, 2 * g.edge_count());
        }
    }
}

fn random_triangulation(n: usize, seed: u64, flips: usize) -> PlanarEmbedding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = PlanarEmbedding::standard_form(n).unwrap();
    for _ in 0..flips {
        let moves = legal_flips(&g);
        let mv = moves.choose(&mut rng).unwrap();
        g = diagonal_flip(&g, mv).unwrap();
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_walks_stay_triangulated_and_normalize(n in 5usize..40, seed in any::<u64>(), steps in 0usize..200) {
        let g = random_triangulation(n, seed, steps);
        let r = g.euler_check();
        prop_assert!(r.is_triangulation);
        prop_assert_eq!((r.e, r.f), (3 * n - 6, 2 * n - 4));
        let (h, _) = normalize_to_standard(&g).unwrap();
        prop_assert_eq!(canonical_code(&h), canonical_standard_form(n).unwrap());
    }

    #[test]
    fn flips_are_involutions(n in 5usize..25, seed in any::<u64>()) {
        let g = random_triangulation(n, seed, 50);
        for mv in legal_flips(&g) {
            let h = diagonal_flip(&g, &mv).unwrap();
            let back = diagonal_flip(&h, &mv.reversed()).unwrap();
            prop_assert_eq!(back.edges(), g.edges());
            prop_assert_eq!(canonical_code(&back), canonical_code(&g));
        }
    }

    #[test]
    fn codes_ignore_labels(n in 5usize..30, seed in any::<u64>()) {
        let g = random_triangulation(n, seed, 3 * n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        prop_assert_eq!(canonical_code(&g.relabel(&perm)), canonical_code(&g));
        prop_assert_eq!(canonical_code(&g.mirror()), canonical_code(&g));
    }
}
