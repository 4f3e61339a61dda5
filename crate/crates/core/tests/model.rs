mod common;

use common::{enumerate, pruned, root, supported};
use proptest::prelude::*;
use regulargcc::engine::{solve, solve_all, Outcome, SearchConfig};
use regulargcc::generators::{gen_random, gen_roster, RandomParams};
use regulargcc::model::{build, BuildOptions, Mode};
use regulargcc::nsp::{roster_to_model, RosterInstance};

fn params(seed: u64) -> RandomParams {
    let mut p = RandomParams::new(
        1 + (seed % 3) as usize,
        1 + (seed / 3 % 4) as usize,
        1 + (seed / 12 % 3) as usize,
        1 + (seed / 36 % 3) as usize,
        0.5,
        seed,
    );
    p.weighted = seed.is_multiple_of(2);
    p.random_domains = seed % 5 < 2;
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn search_finds_every_solution(seed in 0u64..10_000) {
        let model = gen_random(&params(seed)).unwrap();
        let expect = enumerate(&model).len() as u64;
        for mode in Mode::ALL {
            let opts = BuildOptions { lex: false, ..BuildOptions::new(mode) };
            let mut built = build(&model, &opts).unwrap();
            let cells = built.cells.clone();
            let res = solve_all(&mut built.store, &cells, &SearchConfig::default(), |values| {
                let m: Vec<usize> = cells.iter().map(|&c| values[c] as usize).collect();
                assert!(model.check(&m));
                true
            });
            prop_assert_eq!(res.solutions, expect, "{}", mode);
        }
    }

    #[test]
    fn root_pruning_is_sound_and_monotone(seed in 0u64..10_000) {
        let model = gen_random(&params(seed)).unwrap();
        let sols = enumerate(&model);
        let keep = supported(&model, &sols);
        let mut last: Option<Vec<Vec<usize>>> = None;
        for mode in Mode::ALL {
            let after = root(&model, mode, false);
            let gone = pruned(&model, &after);
            for (cell, vals) in gone.iter().enumerate() {
                for v in vals {
                    prop_assert!(!keep[cell].contains(v), "{} pruned supported {} at cell {}", mode, v, cell);
                }
            }
            if let Some(prev) = &last {
                for (cell, vals) in prev.iter().enumerate() {
                    for v in vals {
                        prop_assert!(gone[cell].contains(v), "{} keeps {} at cell {}", mode, v, cell);
                    }
                }
            }
            last = Some(gone);
        }
    }
}

#[test]
fn cardinalities_match_the_solution() {
    let model = gen_random(&RandomParams::new(3, 3, 2, 2, 0.3, 7)).unwrap();
    let mut built = build(&model, &BuildOptions::new(Mode::Wa)).unwrap();
    let cells = built.cells.clone();
    let res = solve(&mut built.store, &cells, &SearchConfig::default());
    let Outcome::Sat(values) = res.outcome else {
        assert!(enumerate(&model).is_empty());
        return;
    };
    let m = built.matrix(&values);
    for v in 0..model.num_values() {
        for k in 0..model.cols {
            let count = (0..model.rows).filter(|&r| m[r * model.cols + k] == v).count() as i64;
            assert_eq!(values[built.card(v, k)], count);
        }
    }
}

/// Independent check of a roster against its rules.
fn roster_ok(inst: &RosterInstance, m: &[usize]) -> bool {
    let (n, d, s) = (inst.nurses, inst.days, inst.shifts);
    let covered = (0..d).all(|day| (0..s).all(|sh| (0..n).filter(|&r| m[r * d + day] == sh).count() as i64 >= inst.coverage[day][sh]));
    let rows_ok = (0..n).all(|r| {
        let row = &m[r * d..(r + 1) * d];
        let work = |v: &usize| *v != s - 1;
        let runs = |pred: &dyn Fn(&usize) -> bool| {
            let mut out = Vec::new();
            let mut cur = 0i64;
            for v in row {
                if pred(v) {
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
        };
        let shifts_ok = (0..s).all(|sh| {
            inst.shift_occ[sh].contains(row.iter().filter(|&&v| v == sh).count() as i64)
                && runs(&|v| *v == sh).iter().all(|&l| inst.shift_stretch[sh].contains(l))
        });
        shifts_ok
            && inst.work_occ.contains(row.iter().filter(|v| work(v)).count() as i64)
            && runs(&work).iter().all(|&l| inst.work_stretch.contains(l))
    });
    covered && rows_ok
}

#[test]
fn roster_solutions_obey_the_rules() {
    let mut decided = 0;
    for seed in 0..12 {
        let inst = gen_roster(5, 7, 3, 0.6, seed).unwrap();
        let model = roster_to_model(&inst).unwrap();
        for mode in Mode::ALL {
            let mut built = build(&model, &BuildOptions::new(mode)).unwrap();
            let cells = built.cells.clone();
            let cfg = SearchConfig { node_limit: Some(20_000), ..Default::default() };
            if let Outcome::Sat(values) = solve(&mut built.store, &cells, &cfg).outcome {
                assert!(roster_ok(&inst, &built.matrix(&values)), "seed {seed} {mode}");
                decided += 1;
            }
        }
    }
    assert!(decided > 0);
}

#[test]
fn unconstrained_roster_is_free() {
    let inst = RosterInstance::unconstrained(2, 3, 3);
    let model = roster_to_model(&inst).unwrap();
    assert_eq!(model.row_automaton.dfa().num_states(), 1);
    assert_eq!(enumerate(&model).len(), 27 * 27);
}
