mod common;

use common::{enumerate, exact_cover_brute, hitting_brute, matching_brute, sat_brute};
use proptest::prelude::*;
use regulargcc::engine::SearchConfig;
use regulargcc::generators::{
    gen_3dm_bc, gen_3dm_dc, gen_3sat, gen_exact_cover, gen_hitting_set, Cnf, HittingVariant, Hypergraph,
    Matching3d,
};
use regulargcc::model::{BuildOptions, MatrixModel, Mode};
use regulargcc::nsp::{run_model, Status};

fn solvable(model: &MatrixModel) -> bool {
    !enumerate(model).is_empty()
}

fn searched(model: &MatrixModel, mode: Mode) -> bool {
    let rep = run_model("t", model, &BuildOptions::new(mode), &SearchConfig::default()).unwrap();
    assert_ne!(rep.status, Status::Timeout);
    rep.status == Status::Sat
}

fn literal() -> impl Strategy<Value = i32> {
    (1i32..=3, any::<bool>()).prop_map(|(p, neg)| if neg { -p } else { p })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_sat(clauses in prop::collection::vec(prop::collection::vec(literal(), 1..=3), 1..=4)) {
        let cnf = Cnf { num_vars: 3, clauses };
        let model = gen_3sat(&cnf).unwrap();
        let expect = sat_brute(&cnf);
        prop_assert_eq!(solvable(&model), expect);
        prop_assert_eq!(searched(&model, Mode::Cwa), expect);
    }

    #[test]
    fn exact_cover(family in prop::collection::vec(prop::collection::btree_set(1usize..=3, 1..=3), 1..=4)) {
        let family: Vec<Vec<usize>> = family.into_iter().map(|s| s.into_iter().collect()).collect();
        let model = gen_exact_cover(3, &family).unwrap();
        let expect = exact_cover_brute(3, &family);
        prop_assert_eq!(solvable(&model), expect);
        prop_assert_eq!(searched(&model, Mode::Wa), expect);
    }

    #[test]
    fn matching(triples in prop::collection::vec([0usize..2, 0usize..2, 0usize..2], 1..=4)) {
        let inst = Matching3d { q: 2, triples };
        let expect = matching_brute(&inst);
        let dc = gen_3dm_dc(&inst).unwrap();
        prop_assert_eq!(solvable(&dc), expect);
        let (bc, _) = gen_3dm_bc(&inst).unwrap();
        prop_assert_eq!(solvable(&bc), expect);
        prop_assert_eq!(searched(&bc, Mode::Decomp), expect);
    }

    #[test]
    fn hitting_set(
        edges in prop::collection::vec(prop::collection::btree_set(0usize..4, 0..=3), 0..=4),
        k in 1usize..=3,
    ) {
        let h = Hypergraph { num_vertices: 4, edges: edges.into_iter().map(|e| e.into_iter().collect()).collect() };
        let expect = hitting_brute(&h, k);
        for variant in [HittingVariant::Gcc, HittingVariant::Sum] {
            let model = gen_hitting_set(&h, k, variant).unwrap();
            prop_assert_eq!(solvable(&model), expect, "{:?}", variant);
        }
    }
}

#[test]
fn contradiction_is_unsat_in_every_mode() {
    let cnf = Cnf { num_vars: 1, clauses: vec![vec![1], vec![-1]] };
    let model = gen_3sat(&cnf).unwrap();
    for mode in Mode::ALL {
        assert!(!searched(&model, mode));
    }
}

#[test]
fn triangle_needs_two_vertices() {
    let h = Hypergraph { num_vertices: 3, edges: vec![vec![0, 1], vec![1, 2], vec![0, 2]] };
    assert!(!solvable(&gen_hitting_set(&h, 1, HittingVariant::Gcc).unwrap()));
    assert!(solvable(&gen_hitting_set(&h, 2, HittingVariant::Gcc).unwrap()));
    assert!(solvable(&gen_hitting_set(&h, 2, HittingVariant::Sum).unwrap()));
}

#[test]
fn malformed_sources_are_rejected() {
    assert!(gen_3sat(&Cnf { num_vars: 2, clauses: vec![vec![3]] }).is_err());
    assert!(gen_3sat(&Cnf { num_vars: 2, clauses: vec![vec![1, 2, -1, -2]] }).is_err());
    assert!(gen_exact_cover(2, &[vec![3]]).is_err());
    assert!(gen_3dm_dc(&Matching3d { q: 1, triples: vec![[0, 1, 0]] }).is_err());
    assert!(gen_hitting_set(&Hypergraph { num_vertices: 2, edges: vec![vec![2]] }, 1, HittingVariant::Gcc).is_err());
}
