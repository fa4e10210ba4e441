mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stable_moead::matching::{verify_stability, MatchMode, Matching};
use stable_moead::selection::*;

#[test]
fn adaptive_lengths_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for case in 0..500 {
        let m = rng.gen_range(2..=3);
        let n = rng.gen_range(m..=20);
        let q = rng.gen_range(n..=40);
        let pop = random_population(&mut rng, m, n, q);
        let ctx = pop.ctx();
        let lists = oracle_lists(&pop);
        let profile = build_preference_profile(&ctx, &ListLengths::Complete).unwrap();
        assert_eq!(profile.left_lists(), &lists.left[..], "case {case}");
        assert_eq!(profile.right_lists(), &lists.right[..], "case {case}");
        let r = adaptive_set_r(&ctx, &lists.right).unwrap();
        assert_eq!(r, oracle_r(&pop), "case {case}");
        assert!(r.iter().all(|&v| m <= v && v <= pop.ell_max), "case {case}");
    }
}

#[test]
fn three_subproblem_example() {
    // Solution 3 is closest to the diagonal, then the second axis, then the
    // first axis, whose representative (solution 1) it dominates.
    let coords = vec![
        vec![0.2, 0.9],
        vec![0.9, 0.3],
        vec![0.6, 0.6],
        vec![0.15, 0.25],
    ];
    let pop = Population {
        weights: vec![vec![1.0, 0.0], vec![0.5, 0.5], vec![0.0, 1.0]],
        normalized: coords.clone(),
        raw: coords,
        ell_max: 3,
    };
    let ctx = pop.ctx();
    let lists = oracle_lists(&pop);
    assert_eq!(lists.right[3], vec![1, 2, 0]);
    let reps = representatives(&ctx, &lists.right).unwrap();
    assert_eq!(reps.association, vec![2, 0, 1, 1]);
    assert_eq!(reps.representative, vec![Some(1), Some(3), Some(0)]);
    let r = adaptive_set_r(&ctx, &lists.right).unwrap();
    assert_eq!(r, oracle_r(&pop));
    assert_eq!(r, vec![3, 3, 3, 2]);
}

#[test]
fn worked_example_greedy_takeover() {
    let profile = worked_example().profile();
    let greedy = greedy_from_profile(&profile);
    let mut distinct: Vec<usize> = greedy.iter().flatten().copied().collect();
    distinct.sort_unstable();
    distinct.dedup();
    assert_eq!(distinct, vec![0, 9]);
}

fn left_optimal_pairs(lists: &Lists, must: bool) -> Vec<(usize, usize)> {
    let stable = stable_one_one(lists, must);
    left_optimal(lists, &stable)
        .expect("left-optimal stable matching exists")
        .iter()
        .enumerate()
        .filter_map(|(p, x)| x.map(|x| (p, x)))
        .collect()
}

/// Both levels of the one-one selection, each solved by exhaustive search.
fn sequential_oracle(pop: &Population) -> Vec<(usize, usize)> {
    let mut lists = oracle_lists(pop);
    lists.lengths = oracle_r(pop);
    let first = left_optimal_pairs(&lists, false);
    let free_p: Vec<usize> = (0..lists.n_left())
        .filter(|p| !first.iter().any(|e| e.0 == *p))
        .collect();
    let free_x: Vec<usize> = (0..lists.n_right())
        .filter(|x| !first.iter().any(|e| e.1 == *x))
        .collect();
    let local = |v: usize, set: &[usize]| set.iter().position(|&s| s == v);
    let sub = Lists {
        left: free_p
            .iter()
            .map(|&p| {
                lists.left[p]
                    .iter()
                    .filter_map(|&x| local(x, &free_x))
                    .collect()
            })
            .collect(),
        right: free_x
            .iter()
            .map(|&x| {
                let full = sorted_by(
                    pop.weights
                        .iter()
                        .map(|w| delta_x(&pop.normalized[x], w))
                        .collect(),
                );
                full.iter().filter_map(|&p| local(p, &free_p)).collect()
            })
            .collect(),
        lengths: vec![free_p.len(); free_x.len()],
    };
    let mut pairs = first;
    if !free_p.is_empty() {
        pairs.extend(
            left_optimal_pairs(&sub, true)
                .into_iter()
                .map(|(p, x)| (free_p[p], free_x[x])),
        );
    }
    pairs.sort_unstable();
    pairs
}

#[test]
fn two_level_selection_matches_sequential_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for case in 0..200 {
        let m = rng.gen_range(2..=3);
        let n = rng.gen_range(m..=6);
        let q = rng.gen_range(n..=9);
        let pop = random_population(&mut rng, m, n, q);
        let got = selection_aoostm(&pop.ctx(), &mut rng).unwrap();
        assert_eq!(got.pairs(), &sequential_oracle(&pop)[..], "case {case}");
    }
}

#[test]
fn many_one_selection_is_oracle_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for case in 0..200 {
        let m = rng.gen_range(2..=3);
        let n = rng.gen_range(m..=5);
        let q = rng.gen_range(n..=8);
        let pop = random_population(&mut rng, m, n, q);
        let got = selection_amostm(&pop.ctx(), &mut rng).unwrap();
        let mut lists = oracle_lists(&pop);
        lists.lengths = oracle_r(&pop);
        let stable = stable_many_one(&lists, n);
        assert!(stable.contains(&many_one_of(&got, q)), "case {case}");
        assert_eq!(got.len(), n);
    }
}

fn population_strategy() -> impl Strategy<Value = (Population, u64)> {
    (2usize..=3, 3usize..=30, 0usize..=30, any::<u64>()).prop_map(|(m, n, extra, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (random_population(&mut rng, m, n, n + extra), seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn aoostm_is_perfect_on_subproblems((pop, seed) in population_strategy()) {
        let m = selection_aoostm(&pop.ctx(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let n = pop.weights.len();
        prop_assert_eq!(m.len(), n);
        let subs: Vec<usize> = m.pairs().iter().map(|e| e.0).collect();
        prop_assert_eq!(subs, (0..n).collect::<Vec<_>>());
        let mut sols: Vec<usize> = m.pairs().iter().map(|e| e.1).collect();
        sols.sort_unstable();
        sols.dedup();
        prop_assert_eq!(sols.len(), n);
    }

    #[test]
    fn amostm_respects_quota((pop, seed) in population_strategy()) {
        let m = selection_amostm(&pop.ctx(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(m.len(), pop.weights.len());
        let mut sols: Vec<usize> = m.pairs().iter().map(|e| e.1).collect();
        let total = sols.len();
        sols.sort_unstable();
        sols.dedup();
        prop_assert_eq!(sols.len(), total);
    }

    #[test]
    fn lengths_stay_in_band((pop, _seed) in population_strategy()) {
        let ctx = pop.ctx();
        let m = pop.weights[0].len();
        let lists = oracle_lists(&pop).right;
        let r = adaptive_set_r(&ctx, &lists).unwrap();
        prop_assert!(r.iter().all(|&v| m <= v && v <= pop.ell_max));
    }

    #[test]
    fn unit_lists_match_nearest_subproblem((pop, seed) in population_strategy()) {
        let ctx = pop.ctx();
        let m = selection_two_level(&ctx, &LengthPolicy::Fixed(1), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        // first-level pairs are exactly those where the solution sits on its nearest subproblem
        let lists = oracle_lists(&pop);
        let profile = build_preference_profile(&ctx, &ListLengths::Prefix(vec![1; pop.raw.len()])).unwrap();
        let first = stable_moead::matching::stable_match_incomplete(&profile, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        for &(p, x) in first.pairs() {
            prop_assert_eq!(lists.right[x][0], p);
            prop_assert!(m.contains(p, x));
        }
    }

    #[test]
    fn rankings_are_scale_invariant(seed in any::<u64>(), c in 0.1f64..10.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pop = random_population(&mut rng, 3, 12, 20);
        for f in &mut pop.normalized {
            f.iter_mut().for_each(|v| *v = rng.gen());
        }
        let a = build_preference_profile(&pop.ctx(), &ListLengths::Complete).unwrap();
        let scaled: Vec<Vec<f64>> = pop.normalized.iter().map(|f| f.iter().map(|v| v * c).collect()).collect();
        let ctx = SelectionContext::new(&pop.weights, &scaled, &pop.raw, pop.ell_max).unwrap();
        let b = build_preference_profile(&ctx, &ListLengths::Complete).unwrap();
        prop_assert_eq!(a.left_lists(), b.left_lists());
        prop_assert_eq!(a.right_lists(), b.right_lists());
    }

    #[test]
    fn stm_baseline_is_stable((pop, seed) in population_strategy()) {
        let ctx = pop.ctx();
        let m: Matching = selection_stm(&ctx, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let profile = build_preference_profile(&ctx, &ListLengths::Complete).unwrap();
        prop_assert!(verify_stability(&profile, &m, MatchMode::OneOne).is_empty());
    }
}
