mod common;

use common::enumerate;
use proptest::prelude::*;
use regulargcc::engine::SearchConfig;
use regulargcc::generators::{
    gen_3dm_bc, gen_3sat, gen_hitting_set, gen_random, gen_random_regular2, gen_roster, Cnf, HittingVariant,
    Hypergraph, Matching3d, RandomParams,
};
use regulargcc::model::{BuildOptions, MatrixModel, Mode};
use regulargcc::nsp::{
    bench, emit_canonical, emit_model, emit_roster, parse_canonical, parse_nsp, roster_to_model, run_model, write_tsv,
    Instance, Status, Summary, TSV_HEADER,
};
use regulargcc::Error;

fn round_trip(model: &MatrixModel) {
    let text = emit_model(model);
    let Instance::Matrix(back) = parse_canonical(&text).unwrap() else {
        panic!("matrix text parsed as a roster");
    };
    assert_eq!(emit_model(&back), text);
    assert_eq!((back.rows, back.cols, &back.labels, &back.domains), (model.rows, model.cols, &model.labels, &model.domains));
    assert_eq!(back.columns, model.columns);
    assert_eq!(back.symmetric_rows, model.symmetric_rows);
    let mut a = enumerate(model);
    let mut b = enumerate(&back);
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_models_round_trip(seed in any::<u64>()) {
        let mut p = RandomParams::new(1 + (seed % 3) as usize, 1 + (seed / 3 % 3) as usize, 1 + (seed / 9 % 3) as usize, 3, 0.5, seed);
        p.weighted = seed % 2 == 0;
        p.random_domains = true;
        round_trip(&gen_random(&p).unwrap());
        round_trip(&gen_random_regular2(2, 2, 2, 3, 2, seed).unwrap());
    }

    #[test]
    fn rosters_round_trip(seed in any::<u64>(), nurses in 1usize..=8, days in 1usize..=7, shifts in 2usize..=4) {
        let inst = gen_roster(nurses, days, shifts, 0.7, seed).unwrap();
        let text = emit_roster(&inst);
        prop_assert_eq!(parse_canonical(&text).unwrap(), Instance::Roster(inst.clone()));
        prop_assert_eq!(emit_canonical(&Instance::Roster(inst)), text);
    }
}

#[test]
fn reduction_models_round_trip() {
    round_trip(&gen_3sat(&Cnf { num_vars: 2, clauses: vec![vec![1, -2], vec![-1]] }).unwrap());
    let h = Hypergraph { num_vertices: 3, edges: vec![vec![0, 1], vec![2]] };
    round_trip(&gen_hitting_set(&h, 2, HittingVariant::Sum).unwrap());
    let (bc, _) = gen_3dm_bc(&Matching3d { q: 1, triples: vec![[0, 0, 0], [0, 0, 0]] }).unwrap();
    round_trip(&bc);
    let mut roster = roster_to_model(&gen_roster(3, 4, 3, 0.5, 1).unwrap()).unwrap();
    round_trip(&roster);
    roster.symmetric_rows = false;
    round_trip(&roster);
}

#[test]
fn parse_errors_name_the_problem() {
    assert!(matches!(parse_canonical(""), Err(Error::MissingSection(_))));
    assert!(matches!(parse_canonical("MATRIX 1 1 2\n"), Err(Error::MissingSection(_))));
    let err = parse_canonical("ROSTER 2 1 2\nCOVER 1 1 0\nSHIFT_OCC 9 0 1\n").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
}

#[test]
fn nsp_files_become_rosters() {
    let instance = "3 2 2\n1 0\n2 1\n\n7 7 7 7\n";
    let case = "2 2\n1 2\n1 2\n1 2 0 2\n1 2 0 2\n";
    let inst = parse_nsp(instance, case).unwrap();
    assert_eq!(inst.coverage, vec![vec![1, 0], vec![2, 1]]);
    assert!(parse_nsp(instance, "3 2\n1 2\n1 2\n1 2 0 2\n1 2 0 2\n").is_err());
}

fn suite() -> Vec<(String, MatrixModel)> {
    (0..6)
        .map(|seed| {
            let inst = gen_roster(5, 7, 3, 0.7, seed).unwrap();
            (format!("r{seed}"), roster_to_model(&inst).unwrap())
        })
        .collect()
}

#[test]
fn bench_is_deterministic_and_ordered() {
    let cfg = SearchConfig { node_limit: Some(3000), ..Default::default() };
    let base = BuildOptions::new(Mode::Decomp);
    let a = bench(&suite(), &Mode::ALL, &base, &cfg, true).unwrap();
    let b = bench(&suite(), &Mode::ALL, &base, &cfg, false).unwrap();
    assert_eq!(a.len(), 18);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!((&x.id, x.mode, x.status, x.nodes, x.backtracks), (&y.id, y.mode, y.status, y.nodes, y.backtracks));
    }
    assert_eq!(a[0].mode, Mode::Decomp);
    assert_eq!(a[1].mode, Mode::Wa);
    let mut out = Vec::new();
    write_tsv(&mut out, &a).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().next(), Some(TSV_HEADER));
    assert_eq!(text.lines().count(), 19);
}

#[test]
fn summary_averages_over_commonly_decided_instances() {
    let cfg = SearchConfig { node_limit: Some(3000), ..Default::default() };
    let reports = bench(&suite(), &Mode::ALL, &BuildOptions::new(Mode::Decomp), &cfg, false).unwrap();
    let s = Summary::new(&reports);
    assert_eq!(s.modes, Mode::ALL.to_vec());
    for row in &s.rows {
        assert!(row.common <= row.known);
        for (m, cell) in s.modes.iter().zip(&row.cells) {
            let decided = reports.iter().filter(|r| r.mode == *m && r.status == row.status).count();
            assert_eq!(cell.decided, decided);
        }
    }
    let table = s.table();
    assert!(table.contains("#Bktk"));
    assert_eq!(table.lines().count(), 2 + s.rows.len());
}

#[test]
fn reported_solutions_satisfy_the_model() {
    let model = roster_to_model(&gen_roster(5, 7, 3, 0.5, 3).unwrap()).unwrap();
    let rep = run_model("x", &model, &BuildOptions::new(Mode::Cwa), &SearchConfig::default()).unwrap();
    if rep.status == Status::Sat {
        assert!(model.check(&rep.solution));
    } else {
        assert_eq!(rep.status, Status::Unsat);
        assert!(rep.solution.is_empty());
    }
}
