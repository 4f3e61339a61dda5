mod common;

use common::all_words;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regulargcc::automata::builders::{
    build_gcc_weights, build_sliding_word_counter, build_stretch_count, build_stretch_lengths, build_word_occurrence,
    sequence_dfa, stretch_rule_dfa, word_set_dfa,
};
use regulargcc::automata::{text, CostMatrices, Dfa, ResourceCosts, Symbol, WeightedDfa};
use regulargcc::generators::random_dfa;
use regulargcc::Interval;

/// Lengths of the maximal runs of `set` in `word`.
fn runs(word: &[Symbol], set: &[Symbol]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = 0;
    for v in word {
        if set.contains(v) {
            cur += 1;
        } else if cur > 0 {
            out.push(cur);
            cur = 0;
        }
    }
    if cur > 0 {
        out.push(cur);
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, nsym: usize, max_len: usize) -> Vec<Symbol> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..nsym)).collect()
}

/// Random weighted automaton with `res` resources, some of them positional.
fn random_weighted(rng: &mut ChaCha8Rng, nsym: usize, res: usize, horizon: usize) -> WeightedDfa {
    let states = rng.gen_range(1..=4);
    let dfa = random_dfa(rng, states, nsym, 0.5).unwrap();
    let t = states * nsym;
    let resources = (0..res)
        .map(|_| match rng.gen_range(0..3) {
            0 => ResourceCosts::Zero,
            1 => ResourceCosts::Fixed((0..t).map(|_| rng.gen_range(-2..=3)).collect()),
            _ => ResourceCosts::Positional(
                (0..horizon).map(|_| (0..t).map(|_| rng.gen_range(-2..=3)).collect()).collect(),
            ),
        })
        .collect();
    let costs = CostMatrices::from_resources(t, resources).unwrap();
    let bounds = (0..res)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Interval::unbounded()
            } else {
                let lo = rng.gen_range(-4..=4);
                Interval::new(lo, lo + rng.gen_range(0..=6))
            }
        })
        .collect();
    WeightedDfa::new(dfa, costs, bounds).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_intersects_and_adds(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nsym = rng.gen_range(1..=3);
        let a = random_weighted(&mut rng, nsym, 2, 6);
        let b = random_weighted(&mut rng, nsym, 3, 6);
        let p = a.product(&b).unwrap();
        for _ in 0..20 {
            let w = random_word(&mut rng, nsym, 6);
            let (acc_a, ca) = a.run(&w).unwrap();
            let (acc_b, cb) = b.run(&w).unwrap();
            let (acc_p, cp) = p.run(&w).unwrap();
            prop_assert_eq!(acc_p, acc_a && acc_b);
            for r in 0..3 {
                prop_assert_eq!(cp[r], ca.get(r).copied().unwrap_or(0) + cb[r]);
            }
        }
        // With disjoint resources the bounds of both factors are kept apart.
        let q = a.product(&b.with_resource_offset(a.num_resources())).unwrap();
        for _ in 0..20 {
            let w = random_word(&mut rng, nsym, 6);
            prop_assert_eq!(q.satisfied_by(&w).unwrap(), a.satisfied_by(&w).unwrap() && b.satisfied_by(&w).unwrap());
        }
    }

    #[test]
    fn minimizing_keeps_language_and_costs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nsym = rng.gen_range(1..=3);
        let a = random_weighted(&mut rng, nsym, 2, 5);
        let b = random_weighted(&mut rng, nsym, 1, 5);
        let p = a.product(&b).unwrap();
        let m = p.minimize();
        prop_assert!(m.dfa().num_states() <= p.dfa().num_states());
        for len in 0..=5 {
            for w in all_words(nsym, len) {
                let (acc, costs) = p.run(&w).unwrap();
                let (macc, mcosts) = m.run(&w).unwrap();
                prop_assert_eq!(acc, macc);
                if acc {
                    prop_assert_eq!(costs, mcosts);
                }
            }
        }
        // Idempotent up to the state count.
        prop_assert_eq!(m.minimize().dfa().num_states(), m.dfa().num_states());
    }

    #[test]
    fn dfa_minimization_is_language_preserving(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nsym = rng.gen_range(1..=3);
        let states = rng.gen_range(1..=8);
        let d = random_dfa(&mut rng, states, nsym, 0.4).unwrap();
        let m = d.minimize();
        for len in 0..=6 {
            for w in all_words(nsym, len) {
                prop_assert_eq!(d.accepts(&w).unwrap(), m.accepts(&w).unwrap());
            }
        }
    }

    #[test]
    fn sliding_counter_matches_explicit_product(
        pattern in prop::collection::vec(prop::collection::btree_set(0usize..3, 1..=2), 1..=3),
        seed in any::<u64>(),
    ) {
        let pattern: Vec<Vec<Symbol>> = pattern.into_iter().map(|s| s.into_iter().collect()).collect();
        let n = 6;
        let sliding = build_sliding_word_counter(&pattern, 0, n, 3).unwrap();
        let mut explicit = build_word_occurrence(&pattern, 0, 0, n, 3).unwrap();
        for k in 1..=n - pattern.len() {
            explicit = explicit.product(&build_word_occurrence(&pattern, k, k, n, 3).unwrap()).unwrap();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let w: Vec<Symbol> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let (acc, flags) = sliding.run(&w).unwrap();
            let (eacc, eflags) = explicit.run(&w).unwrap();
            prop_assert!(acc && eacc);
            prop_assert_eq!(&flags, &eflags);
            for (k, &f) in flags.iter().enumerate() {
                let hit = (0..pattern.len()).all(|j| pattern[j].contains(&w[k + j]));
                prop_assert_eq!(f, i64::from(hit));
            }
        }
    }

    #[test]
    fn stretch_properties_match_runs(
        set in prop::collection::btree_set(0usize..3, 1..=2),
        w in prop::collection::vec(0usize..3, 1..=7),
    ) {
        let set: Vec<Symbol> = set.into_iter().collect();
        let r = runs(&w, &set);
        let (_, count) = build_stretch_count(&set, 3, 0).unwrap().run(&w).unwrap();
        prop_assert_eq!(count[0], r.len() as i64);
        let lengths = build_stretch_lengths(&set, 3, 0, 7).unwrap();
        let (acc, v) = lengths.run(&w).unwrap();
        prop_assert!(acc);
        let shortest = r.iter().copied().min().unwrap_or(8) as i64;
        let longest = r.iter().copied().max().unwrap_or(0) as i64;
        prop_assert_eq!(v, vec![shortest, longest]);
        let (_, v2) = lengths.minimize().run(&w).unwrap();
        prop_assert_eq!(v2, vec![shortest, longest]);
    }

    #[test]
    fn rule_automata_match_their_definitions(
        set in prop::collection::btree_set(0usize..3, 1..=2),
        lo in 1usize..=3,
        extra in 0usize..=2,
        w in prop::collection::vec(0usize..3, 0..=7),
    ) {
        let set: Vec<Symbol> = set.into_iter().collect();
        let hi = lo + extra;
        let stretch = stretch_rule_dfa(3, &set, lo, hi).unwrap();
        let expect = runs(&w, &set).iter().all(|&l| (lo..=hi).contains(&l));
        prop_assert_eq!(stretch.accepts(&w).unwrap(), expect);

        let window = lo.min(3);
        let (slo, shi) = (0, window - 1);
        let seq = sequence_dfa(3, &set, slo, shi, window).unwrap();
        let expect = w.len() < window
            || w.windows(window).all(|win| {
                let c = win.iter().filter(|v| set.contains(v)).count();
                (slo..=shi).contains(&c)
            });
        prop_assert_eq!(seq.accepts(&w).unwrap(), expect);
    }

    #[test]
    fn weights_count_symbols(w in prop::collection::vec(0usize..4, 0..=8)) {
        let counted = vec![vec![0], vec![1, 2], vec![3, 0]];
        let (acc, c) = build_gcc_weights(4, &counted, 1).unwrap().run(&w).unwrap();
        prop_assert!(acc);
        prop_assert_eq!(c[0], 0);
        for (i, set) in counted.iter().enumerate() {
            prop_assert_eq!(c[i + 1], w.iter().filter(|v| set.contains(v)).count() as i64);
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nsym = rng.gen_range(1..=3);
        let a = random_weighted(&mut rng, nsym, 2, 4);
        let back = text::parse(&text::dump(&a)).unwrap();
        for len in 0..=4 {
            for w in all_words(nsym, len) {
                prop_assert_eq!(a.run(&w).unwrap(), back.run(&w).unwrap());
                prop_assert_eq!(a.satisfied_by(&w).unwrap(), back.satisfied_by(&w).unwrap());
            }
        }
    }
}

#[test]
fn word_sets_accept_exactly_their_words() {
    let words = vec![vec![0, 1, 1], vec![1, 0, 0], vec![0, 1, 0]];
    let d = word_set_dfa(2, &words).unwrap();
    for w in all_words(2, 3) {
        assert_eq!(d.accepts(&w).unwrap(), words.contains(&w), "{w:?}");
    }
    assert!(!d.accepts(&[0, 1]).unwrap());
}

#[test]
fn symbol_out_of_alphabet_is_an_error() {
    let d = Dfa::universal(2);
    assert!(d.accepts(&[0, 2]).is_err());
    assert!(build_stretch_count(&[5], 2, 0).is_err());
}

#[test]
fn stretch_count_needs_a_proper_subset() {
    assert!(build_stretch_count(&[0, 1], 2, 0).is_err());
    assert!(build_stretch_count(&[], 2, 0).is_err());
}
