mod common;

use std::collections::BTreeSet;
use std::time::Duration;

use common::*;
use necklace::generators::{gen_merged, gen_separable, Padding};
use necklace::hardness::{decide_alpha_or_complement, Decision};
use necklace::oracle::{enumerate_all_cuts, uniqueness_census};
use necklace::reduction::{solve_alpha_pair, solve_alpha_pair_traced, solve_two_component, StepKind};
use necklace::walkgraph::separability;
use necklace::{complement_alpha, Necklace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_family(necklaces: &[Necklace], seen: &mut BTreeSet<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for neck in necklaces {
        let census = uniqueness_census(neck).unwrap();
        assert!(census.is_bijection(neck), "{neck}");
        for _ in 0..8 {
            let alpha = random_alpha(&mut rng, neck);
            let (pair, trace) = solve_alpha_pair_traced(neck, &alpha).unwrap();
            assert_eq!(census.unique(&alpha), Some(&pair.s), "{neck}");
            let bar = complement_alpha(neck, &alpha).unwrap();
            assert_eq!(census.unique(&bar), Some(&pair.s_bar), "{neck}");
            assert!(trace.max_depth() <= neck.n());
            for e in &trace.entries {
                seen.insert(format!("{:?}", e.kind));
            }
        }
    }
}

#[test]
fn padded_families_agree_with_oracle() {
    let specs = ["pair", "prepend", "append", "pair,prepend", "append,pair,prepend", "wrap", "pair,wrap"];
    let mut necklaces = Vec::new();
    for seed in 0..6 {
        for spec in specs {
            let pads = Padding::parse_list(spec).unwrap();
            necklaces.push(gen_separable(9, &pads, 2, seed).unwrap());
        }
    }
    for neck in &necklaces {
        assert_eq!(separability(neck).unwrap(), neck.n(), "{neck}");
    }
    let mut seen = BTreeSet::new();
    check_family(&necklaces, &mut seen);
    for kind in [
        StepKind::NeighbouringIntervals,
        StepKind::FirstInterval,
        StepKind::LastInterval,
        StepKind::SameColourEnds,
        StepKind::Irreducible,
    ] {
        assert!(seen.contains(&format!("{kind:?}")), "{kind:?} never fired");
    }
}

#[test]
fn merged_colours_agree_with_oracle() {
    let mut necklaces = Vec::new();
    for seed in 0..6 {
        necklaces.push(gen_merged(11, 1, 1, seed).unwrap());
        necklaces.push(gen_merged(12, 2, 1, seed).unwrap());
    }
    let mut seen = BTreeSet::new();
    check_family(&necklaces, &mut seen);
    assert!(seen.contains("ComponentChoice"));
}

#[test]
fn fresh_interval_before_fixture() {
    let neck = Necklace::parse("x 1 2 3 1 6 5 4 3 5").unwrap();
    let census = uniqueness_census(&neck).unwrap();
    for alpha in all_alphas(&neck) {
        let pair = solve_alpha_pair(&neck, &alpha).unwrap();
        assert_eq!(census.unique(&alpha), Some(&pair.s));
    }
}

#[test]
fn two_component_entry_rejects_three_components() {
    let neck = Necklace::parse("a b a c a").unwrap();
    let alpha = necklace::AlphaVector::new(vec![1, 1, 1]);
    assert!(solve_two_component(&neck, &alpha).is_err());
}

#[test]
fn non_separable_inputs_never_yield_wrong_cuts() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let n = 2 + rand::Rng::gen_range(&mut rng, 0..3);
        let len = n + rand::Rng::gen_range(&mut rng, 0..5);
        let neck = random_necklace(&mut rng, n, len);
        let alpha = random_alpha(&mut rng, &neck);
        if let Ok(pair) = solve_alpha_pair(&neck, &alpha) {
            let cuts = enumerate_all_cuts(&neck).unwrap();
            let matching: Vec<_> = cuts.iter().filter(|(_, e)| e.alpha == alpha).collect();
            assert!(matching.iter().any(|(c, _)| *c == pair.s));
        }
    }
}

#[test]
fn decider_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let n = 1 + rand::Rng::gen_range(&mut rng, 0..4);
        let len = n + rand::Rng::gen_range(&mut rng, 0..6);
        let neck = random_necklace(&mut rng, n, len);
        let alpha = random_alpha(&mut rng, &neck);
        let bar = complement_alpha(&neck, &alpha).unwrap();
        let exists = enumerate_all_cuts(&neck)
            .unwrap()
            .iter()
            .any(|(_, e)| e.alpha == alpha || e.alpha == bar);
        match decide_alpha_or_complement(&neck, &alpha, Duration::from_secs(5)).unwrap() {
            Decision::Yes(_) => assert!(exists),
            Decision::No => assert!(!exists, "{neck} {:?}", alpha.values()),
            Decision::Timeout => panic!("timeout"),
        }
    }
}
