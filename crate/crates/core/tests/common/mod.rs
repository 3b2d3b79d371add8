#![allow(dead_code)]

use std::collections::BTreeSet;

use necklace::ilp::{BinaryIlp, Comparator, Graph, TreeDecomposition};
use necklace::{AlphaVector, Necklace};
use rand::seq::SliceRandom;
use rand::Rng;

/// The tree decomposition produced by eliminating vertices in `order`: each
/// vertex's bag is itself plus its later neighbours in the filled graph, and
/// its parent is the earliest of those neighbours.
pub fn elimination_td(graph: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = graph.vertex_count();
    if n == 0 {
        return TreeDecomposition::new(vec![], vec![]);
    }
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| graph.neighbours(v).collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for &v in order {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&u| rank[u] > rank[v]).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        parent[v] = later.iter().copied().min_by_key(|&u| rank[u]);
        let mut bag = later.clone();
        bag.push(v);
        bags.push(bag);
    }
    // Bag i belongs to order[i]; join parentless bags into a chain so the
    // result is a tree even for disconnected graphs.
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        match parent[v] {
            Some(p) => edges.push((i, rank[p])),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}

pub fn random_order(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

pub fn random_ilp(rng: &mut impl Rng, max_vars: usize) -> BinaryIlp {
    let vars = rng.gen_range(1..=max_vars);
    let mut ilp = BinaryIlp::new(vars);
    for _ in 0..rng.gen_range(0..=12) {
        let terms: Vec<(i64, usize)> = (0..rng.gen_range(1..=4.min(vars)))
            .map(|_| (rng.gen_range(-3..=3), rng.gen_range(0..vars)))
            .collect();
        let cmp = *[Comparator::Le, Comparator::Eq, Comparator::Ge].choose(rng).unwrap();
        ilp.add(terms, cmp, rng.gen_range(-3..=4));
    }
    ilp
}

pub fn naive_feasible(ilp: &BinaryIlp) -> BTreeSet<Vec<bool>> {
    let v = ilp.var_count();
    (0u32..1 << v)
        .map(|bits| (0..v).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(|a| ilp.is_satisfied(a))
        .collect()
}

/// A random necklace using exactly `n` colours and `len` beads.
pub fn random_necklace(rng: &mut impl Rng, n: usize, len: usize) -> Necklace {
    assert!(n <= len);
    let mut beads: Vec<usize> = (0..n).collect();
    beads.extend((n..len).map(|_| rng.gen_range(0..n)));
    beads.shuffle(rng);
    let names = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let neck = Necklace::from_colour_ids(beads, names).unwrap();
    // Re-read so colour ids follow first appearance.
    Necklace::from_tokens(&neck.tokens()).unwrap()
}

pub fn random_alpha(rng: &mut impl Rng, neck: &Necklace) -> AlphaVector {
    AlphaVector::new(neck.colour_sizes().iter().map(|&s| rng.gen_range(1..=s)).collect())
}

/// Every valid alpha in odometer order.
pub fn all_alphas(neck: &Necklace) -> Vec<AlphaVector> {
    let sizes = neck.colour_sizes();
    let mut out = Vec::new();
    let mut cur = vec![1; sizes.len()];
    loop {
        out.push(AlphaVector::new(cur.clone()));
        let mut i = 0;
        while i < sizes.len() && cur[i] == sizes[i] {
            cur[i] = 1;
            i += 1;
        }
        if i == sizes.len() {
            return out;
        }
        cur[i] += 1;
    }
}
