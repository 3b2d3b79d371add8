mod common;

use common::*;
use necklace::ilp::{compose_decomposition, primal_graph, BinaryIlp, EnhancedGraph, Graph};
use necklace::labelling::{induced_labelling, labelling_to_cut, satisfies_condition_four};
use necklace::oracle::{enumerate_all_cuts, oracle_solve};
use necklace::walkgraph::build_label_graph;
use necklace::generators::gen_irreducible;
use necklace::{complement_alpha, evaluate_cut, Necklace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_necklace() -> impl Strategy<Value = Necklace> {
    (1usize..=4, 0usize..=4, any::<u64>()).prop_map(|(n, extra, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_necklace(&mut rng, n, n + extra)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composed_decomposition_is_valid(seed in any::<u64>(), n in 1usize..14, hyper in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut base = Graph::new(n);
        for _ in 0..rng.gen_range(0..=2 * n) {
            base.add_edge(rng.gen_range(0..n), rng.gen_range(0..n));
        }
        let mut groups: Vec<Vec<usize>> = (0..hyper)
            .map(|_| (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..n)).collect())
            .collect();
        for v in 0..n {
            if !groups.iter().any(|g| g.contains(&v)) {
                let h = rng.gen_range(0..hyper);
                groups[h].push(v);
            }
        }
        for g in &mut groups {
            g.sort_unstable();
            g.dedup();
        }
        let enhanced = EnhancedGraph::new(&base, groups).unwrap();
        let order = random_order(hyper, &mut rng);
        let td = elimination_td(&enhanced.graph, &order);
        prop_assert!(td.validate(&enhanced.graph));
        let composed = compose_decomposition(&td, &enhanced).unwrap();
        prop_assert!(composed.validate(&base));
        prop_assert!(composed.width() < enhanced.max_hypervertex() * (td.width() + 1));
    }

    #[test]
    fn ilp_text_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ilp = random_ilp(&mut rng, 10);
        let back = BinaryIlp::parse(&ilp.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), ilp.to_text());
        prop_assert_eq!(naive_feasible(&back), naive_feasible(&ilp));
        let _ = primal_graph(&back);
    }

    #[test]
    fn necklace_text_round_trip(neck in small_necklace()) {
        let back = Necklace::parse(&neck.to_text()).unwrap();
        prop_assert_eq!(back, neck);
    }

    #[test]
    fn complement_is_an_involution(neck in small_necklace(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = random_alpha(&mut rng, &neck);
        let bar = complement_alpha(&neck, &alpha).unwrap();
        prop_assert_eq!(complement_alpha(&neck, &bar).unwrap(), alpha);
    }

    #[test]
    fn every_cut_evaluates_to_a_valid_alpha(neck in small_necklace()) {
        for (_, ev) in enumerate_all_cuts(&neck).unwrap() {
            prop_assert!(ev.alpha.validate(&neck).is_ok());
        }
    }
}

#[test]
fn oracle_inverts_evaluation_on_separable_necklaces() {
    for n in 3..=6 {
        for seed in 0..4 {
            let neck = gen_irreducible(n, 2, seed).unwrap();
            for (cut, ev) in enumerate_all_cuts(&neck).unwrap() {
                assert_eq!(oracle_solve(&neck, &ev.alpha).unwrap(), Some(cut));
            }
        }
    }
}

#[test]
fn oracle_cut_labelling_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 4..=8 {
        for seed in 0..5 {
            let neck = gen_irreducible(n, 2, seed).unwrap();
            let (lg, table) = build_label_graph(&neck).unwrap();
            for _ in 0..5 {
                let alpha = random_alpha(&mut rng, &neck);
                let cut = oracle_solve(&neck, &alpha).unwrap().unwrap();
                let labelling = induced_labelling(&neck, &cut, &lg).unwrap();
                assert!(satisfies_condition_four(&labelling, &neck, &lg, &table));
                let back = labelling_to_cut(&labelling, &neck, &lg, &table, &alpha).unwrap();
                assert_eq!(back, cut);
                assert_eq!(evaluate_cut(&neck, &back).unwrap().alpha, alpha);
            }
        }
    }
}
