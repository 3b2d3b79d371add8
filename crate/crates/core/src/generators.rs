//! Seeded test necklaces: Euler walks of the irreducible graph, padded
//! separable families, merged-colour variants and exhaustive catalogues.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::necklace::Necklace;
use crate::walkgraph::{make_nn, separability, MultiGraph};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random Euler path (Hierholzer with shuffled adjacency) from one of the
/// odd vertices, or from any vertex if there are none.
fn random_euler_path(g: &MultiGraph, rng: &mut impl Rng) -> Vec<usize> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(id);
        incident[v].push(id);
    }
    for list in &mut incident {
        list.shuffle(rng);
    }
    let odd = g.odd_vertices();
    let start = if odd.is_empty() {
        rng.gen_range(0..g.vertex_count())
    } else {
        *odd.choose(rng).unwrap()
    };
    let mut used = vec![false; g.edge_count()];
    let mut stack = vec![start];
    let mut path = Vec::with_capacity(g.edge_count() + 1);
    while let Some(&v) = stack.last() {
        while incident[v].last().is_some_and(|&e| used[e]) {
            incident[v].pop();
        }
        match incident[v].pop() {
            Some(e) => {
                used[e] = true;
                let (a, b) = g.edge(e);
                stack.push(if a == v { b } else { a });
            }
            None => {
                path.push(v);
                stack.pop();
            }
        }
    }
    path.reverse();
    path
}

fn shuffled_names(n: usize, rng: &mut impl Rng) -> Vec<String> {
    let mut names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    names.shuffle(rng);
    names
}

fn walk_beads(n: usize, rng: &mut ChaCha8Rng) -> Result<(Vec<usize>, Vec<String>)> {
    let walk = random_euler_path(&make_nn(n)?, rng);
    Ok((walk, shuffled_names(n, rng)))
}

fn expand(walk: &[usize], sizes: &[usize], names: Vec<String>) -> Result<Necklace> {
    let beads: Vec<usize> = walk
        .iter()
        .zip(sizes)
        .flat_map(|(&v, &s)| std::iter::repeat_n(v, s))
        .collect();
    Necklace::from_colour_ids(beads, names)
}

/// An irreducible necklace: one component per step of a random Euler path
/// of the irreducible graph on `n` vertices, each of random size in
/// `1..=max_size`.
pub fn gen_irreducible(n: usize, max_size: usize, seed: u64) -> Result<Necklace> {
    if max_size == 0 {
        return Err(Error::precondition("component size bound must be positive"));
    }
    let mut rng = rng(seed);
    let (walk, names) = walk_beads(n, &mut rng)?;
    let sizes: Vec<usize> = walk.iter().map(|_| rng.gen_range(1..=max_size)).collect();
    expand(&walk, &sizes, names)
}

/// As [`gen_irreducible`], with exactly `beads` beads spread at random over
/// the components.
pub fn gen_irreducible_with_beads(n: usize, beads: usize, seed: u64) -> Result<Necklace> {
    let mut rng = rng(seed);
    let (walk, names) = walk_beads(n, &mut rng)?;
    if beads < walk.len() {
        return Err(Error::precondition(format!(
            "{} components need at least as many beads, got {beads}",
            walk.len()
        )));
    }
    let mut sizes = vec![1; walk.len()];
    for _ in walk.len()..beads {
        sizes[rng.gen_range(0..walk.len())] += 1;
    }
    expand(&walk, &sizes, names)
}

/// One inverse reduction applied to a necklace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Padding {
    /// Two fresh interval colours side by side at a random gap.
    Pair,
    /// A fresh interval colour at the start.
    Prepend,
    /// A fresh interval colour at the end.
    Append,
    /// A fresh colour with one component at each end. Not always an inverse
    /// reduction, so the result is checked by brute force.
    Wrap,
}

impl Padding {
    /// Parses a padding spec such as "pair,prepend,append" or "ppa".
    pub fn parse_list(text: &str) -> Result<Vec<Padding>> {
        let word = |w: &str| match w {
            "pair" | "p" => Ok(Padding::Pair),
            "prepend" | "first" | "f" => Ok(Padding::Prepend),
            "append" | "last" | "l" => Ok(Padding::Append),
            "wrap" | "w" => Ok(Padding::Wrap),
            other => Err(Error::Parse(format!("unknown padding {other:?}"))),
        };
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|w| !w.is_empty())
            .map(word)
            .collect()
    }

    /// Colours (and separability) added.
    pub fn colours_added(self) -> usize {
        match self {
            Padding::Pair => 2,
            Padding::Prepend | Padding::Append | Padding::Wrap => 1,
        }
    }
}

/// An irreducible base on `base_n` colours with the paddings applied in
/// order. Fresh colours are named "x1", "x2", ... Any wrap padding makes the
/// result go through a separability check, which fails with a precondition
/// error.
pub fn gen_separable(
    base_n: usize,
    padding: &[Padding],
    max_size: usize,
    seed: u64,
) -> Result<Necklace> {
    let base = gen_irreducible(base_n, max_size, seed)?;
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut beads = base.beads().to_vec();
    let mut names = base.names().to_vec();
    let fresh = |names: &mut Vec<String>| {
        names.push(format!("x{}", names.len() - base_n + 1));
        names.len() - 1
    };
    for &pad in padding {
        let run = |colour: usize, rng: &mut ChaCha8Rng| {
            vec![colour; rng.gen_range(1..=max_size)]
        };
        match pad {
            Padding::Pair => {
                let at = rng.gen_range(0..=beads.len());
                let mut block = run(fresh(&mut names), &mut rng);
                block.extend(run(fresh(&mut names), &mut rng));
                beads.splice(at..at, block);
            }
            Padding::Prepend => {
                let block = run(fresh(&mut names), &mut rng);
                beads.splice(0..0, block);
            }
            Padding::Append => {
                let block = run(fresh(&mut names), &mut rng);
                beads.extend(block);
            }
            Padding::Wrap => {
                let colour = fresh(&mut names);
                let head = run(colour, &mut rng);
                beads.splice(0..0, head);
                let tail = run(colour, &mut rng);
                beads.extend(tail);
            }
        }
    }
    let neck = Necklace::from_colour_ids(beads, names)?;
    if padding.contains(&Padding::Wrap) && separability(&neck)? > neck.n() {
        return Err(Error::precondition("wrap padding broke separability"));
    }
    Ok(neck)
}

/// Merges colour `b` into colour `a`.
fn merge_colours(necklace: &Necklace, a: usize, b: usize) -> Result<Necklace> {
    let names: Vec<String> = necklace
        .names()
        .iter()
        .enumerate()
        .filter(|&(c, _)| c != b)
        .map(|(_, s)| s.clone())
        .collect();
    let beads = necklace
        .beads()
        .iter()
        .map(|&c| {
            let c = if c == b { a } else { c };
            if c > b {
                c - 1
            } else {
                c
            }
        })
        .collect();
    Necklace::from_colour_ids(beads, names)
}

/// A necklace on `n` colours where `merges` colours (1 or 2) have three or
/// four components. Built from a padded necklace on `n + merges` colours by
/// merging colour pairs, keeping only merges whose result has separability
/// at most its colour count. Merging colours of an irreducible necklace
/// rarely qualifies, so the base always carries end or pair paddings.
pub fn gen_merged(n: usize, merges: usize, max_size: usize, seed: u64) -> Result<Necklace> {
    if !(1..=2).contains(&merges) {
        return Err(Error::precondition("merges must be 1 or 2"));
    }
    if n < 4 {
        return Err(Error::precondition("merged necklaces need n >= 4"));
    }
    const ATTEMPTS: usize = 200;
    let mut rng = rng(seed);
    let options = [Padding::Prepend, Padding::Append, Padding::Pair];
    'attempt: for _ in 0..ATTEMPTS {
        let mut pads = Vec::new();
        let mut added = 0;
        while added < 2 * merges + 1 {
            let pad = *options.choose(&mut rng).unwrap();
            pads.push(pad);
            added += pad.colours_added();
        }
        let mut neck = gen_separable(n + merges - added, &pads, max_size, rng.gen())?;
        for _ in 0..merges {
            let many = |k: &Necklace| (0..k.n()).filter(|&c| k.component_count(c) >= 3).count();
            let before = many(&neck);
            let mut pairs: Vec<(usize, usize)> = (0..neck.n())
                .flat_map(|a| (a + 1..neck.n()).map(move |b| (a, b)))
                .collect();
            pairs.shuffle(&mut rng);
            let mut next = None;
            for (a, b) in pairs {
                let merged = merge_colours(&neck, a, b)?;
                let counts_ok = (0..merged.n()).all(|c| merged.component_count(c) <= 4);
                if counts_ok && many(&merged) == before + 1 && separability(&merged)? <= merged.n() {
                    next = Some(merged);
                    break;
                }
            }
            match next {
                Some(merged) => neck = merged,
                None => continue 'attempt,
            }
        }
        return Ok(neck);
    }
    Err(Error::LimitExceeded {
        what: "merge attempts",
        limit: ATTEMPTS as u128,
        actual: ATTEMPTS as u128,
    })
}

/// Every necklace on exactly `n` colours with at most `max_len` beads, one
/// per relabelling class (colours named "a", "b", ... in order of first
/// appearance), whose separability is at most `n`. With `irreducible_only`
/// the walk graph must also be irreducible.
pub fn catalogue_small(n: usize, max_len: usize, irreducible_only: bool) -> Result<Vec<Necklace>> {
    if n == 0 || n > 26 {
        return Err(Error::precondition("catalogue needs 1..=26 colours"));
    }
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut out = Vec::new();
    for len in n..=max_len {
        let mut seq = vec![0usize; len];
        growth_strings(&mut seq, 0, 0, n, &mut |beads| {
            out.push(beads.to_vec());
        });
    }
    let mut kept = Vec::new();
    for beads in out {
        let neck = Necklace::from_colour_ids(beads, names.clone())?;
        if separability(&neck)? > n {
            continue;
        }
        if irreducible_only && !crate::walkgraph::is_necklace_irreducible(&neck) {
            continue;
        }
        kept.push(neck);
    }
    Ok(kept)
}

/// Restricted growth strings using exactly `n` symbols.
fn growth_strings(
    seq: &mut Vec<usize>,
    at: usize,
    used: usize,
    n: usize,
    emit: &mut impl FnMut(&[usize]),
) {
    if seq.len() - at < n - used {
        return;
    }
    if at == seq.len() {
        emit(seq);
        return;
    }
    for s in 0..=used.min(n - 1) {
        seq[at] = s;
        growth_strings(seq, at + 1, used.max(s + 1), n, emit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walkgraph::{build_walk_graph, is_isomorphic, is_necklace_irreducible};

    #[test]
    fn irreducible_outputs() {
        for n in 3..=10 {
            for seed in 0..5 {
                let neck = gen_irreducible(n, 3, seed).unwrap();
                assert_eq!(neck.n(), n);
                assert!(is_necklace_irreducible(&neck), "{}", neck);
                let g = build_walk_graph(&neck);
                assert!(is_isomorphic(&g, &make_nn(n).unwrap()).unwrap());
                assert_eq!(separability(&neck).unwrap(), n);
            }
        }
    }

    #[test]
    fn seeded() {
        assert_eq!(gen_irreducible(7, 2, 5).unwrap(), gen_irreducible(7, 2, 5).unwrap());
        assert_eq!(gen_irreducible(6, 1, 1).unwrap().len(), 9);
    }

    #[test]
    fn exact_beads() {
        let neck = gen_irreducible_with_beads(9, 1000, 3).unwrap();
        assert_eq!(neck.len(), 1000);
        assert!(is_necklace_irreducible(&neck));
    }

    #[test]
    fn padded() {
        let pads = Padding::parse_list("pair,prepend,append").unwrap();
        let neck = gen_separable(6, &pads, 2, 11).unwrap();
        assert_eq!(neck.n(), 10);
        assert_eq!(separability(&neck).unwrap(), 10);
        let first = neck.components()[0].colour;
        assert!(neck.is_interval(first));

        let neck = gen_separable(9, &[Padding::Wrap], 1, 2).unwrap();
        let comps = neck.components();
        assert_eq!(comps[0].colour, comps[comps.len() - 1].colour);
        assert_eq!(neck.name(comps[0].colour), "x1");
    }

    #[test]
    fn merged() {
        for (merges, seed) in [(1, 4), (2, 5)] {
            let neck = gen_merged(10, merges, 1, seed).unwrap();
            assert_eq!(neck.n(), 10);
            assert!(separability(&neck).unwrap() <= 10);
            let many = (0..10).filter(|&c| neck.component_count(c) >= 3).count();
            assert_eq!(many, merges);
        }
    }

    #[test]
    fn catalogue() {
        let one = catalogue_small(1, 3, false).unwrap();
        let texts: Vec<String> = one.iter().map(Necklace::to_text).collect();
        assert_eq!(texts, vec!["a", "a a", "a a a"]);
        let two = catalogue_small(2, 4, false).unwrap();
        assert!(two.iter().any(|n| n.to_text() == "a a b b"));
        assert!(!two.iter().any(|n| n.to_text() == "a b a b"));
    }
}
