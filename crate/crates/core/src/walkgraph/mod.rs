//! Walk graphs and the graph-side view of separability.

mod iso;
mod label;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::necklace::Necklace;

pub use iso::{is_isomorphic, is_isomorphic_with_limit, ISOMORPHISM_LIMIT};
pub use label::{build_label_graph, label_graph_dot, LabelGraph, Traversal, TraversalTable};

/// Default vertex limit for exhaustive max-cut.
pub const MAX_CUT_LIMIT: usize = 24;

/// An undirected multigraph. Edges are identified by their index in
/// [`MultiGraph::edges`]; parallel edges are distinct entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    degree: Vec<usize>,
}

impl MultiGraph {
    pub fn new(vertices: usize) -> Self {
        MultiGraph {
            vertices,
            edges: Vec::new(),
            degree: vec![0; vertices],
        }
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = MultiGraph::new(vertices);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds an edge and returns its id.
    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u < self.vertices && v < self.vertices, "edge endpoint out of range");
        self.edges.push((u, v));
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.edges.len() - 1
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertices += 1;
        self.degree.push(0);
        self.vertices - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    /// Among the edges parallel to `id`, the position of `id` (0-based).
    pub fn occurrence(&self, id: usize) -> usize {
        let key = normalise(self.edges[id]);
        self.edges[..id]
            .iter()
            .filter(|&&e| normalise(e) == key)
            .count()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = normalise((u, v));
        self.edges.iter().filter(|&&e| normalise(e) == key).count()
    }

    /// Dense multiplicity matrix.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![vec![0; self.vertices]; self.vertices];
        for &(u, v) in &self.edges {
            adj[u][v] += 1;
            if u != v {
                adj[v][u] += 1;
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices <= 1 {
            return true;
        }
        let mut nbrs = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &nbrs[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertices
    }

    pub fn odd_vertices(&self) -> Vec<usize> {
        (0..self.vertices).filter(|&v| self.degree[v] % 2 == 1).collect()
    }

    /// Number of edges with endpoints on different sides of `side`.
    pub fn cut_size(&self, side: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| side[u] != side[v]).count()
    }

    /// DOT rendering with vertices labelled by `names`.
    pub fn to_dot(&self, names: &[String]) -> String {
        let mut out = String::from("graph {\n");
        for name in names {
            out.push_str(&format!("  \"{}\";\n", escape(name)));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\";\n",
                escape(&names[u]),
                escape(&names[v])
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn normalise((u, v): (usize, usize)) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

pub(crate) fn escape(name: &str) -> String {
    name.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One vertex per colour and one edge per colour change. Edge `j` is the gap
/// between component `j` and component `j + 1`.
pub fn build_walk_graph(necklace: &Necklace) -> MultiGraph {
    let mut g = MultiGraph::new(necklace.n());
    for pair in necklace.components().windows(2) {
        g.add_edge(pair[0].colour, pair[1].colour);
    }
    g
}

/// Exhaustive max-cut with the default vertex limit.
pub fn max_cut_bruteforce(graph: &MultiGraph) -> Result<(usize, Vec<bool>)> {
    max_cut_with_limit(graph, MAX_CUT_LIMIT)
}

/// Exhaustive max-cut over all bipartitions, walked in Gray-code order so
/// each step flips one vertex. The last vertex stays on the `false` side.
pub fn max_cut_with_limit(graph: &MultiGraph, limit: usize) -> Result<(usize, Vec<bool>)> {
    let n = graph.vertex_count();
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "max-cut vertex",
            limit: limit as u128,
            actual: n as u128,
        });
    }
    if n <= 1 {
        return Ok((0, vec![false; n]));
    }
    let mut nbrs: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let adj = graph.adjacency();
    for u in 0..n {
        for v in 0..n {
            if u != v && adj[u][v] > 0 {
                nbrs[u].push((v, adj[u][v] as i64));
            }
        }
    }
    let mut side = vec![false; n];
    let mut current: i64 = 0;
    let mut best = 0i64;
    let mut best_mask = 0u64;
    let mut mask = 0u64;
    let free = n - 1;
    for step in 1u64..(1u64 << free) {
        let v = step.trailing_zeros() as usize;
        let delta: i64 = nbrs[v]
            .iter()
            .map(|&(u, w)| if side[u] == side[v] { w } else { -w })
            .sum();
        side[v] = !side[v];
        mask ^= 1 << v;
        current += delta;
        if current > best {
            best = current;
            best_mask = mask;
        }
    }
    let witness = (0..n).map(|v| best_mask >> v & 1 == 1).collect();
    Ok((best as usize, witness))
}

/// Separability as the max-cut of the walk graph.
pub fn separability(necklace: &Necklace) -> Result<usize> {
    Ok(max_cut_bruteforce(&build_walk_graph(necklace))?.0)
}

/// Separability straight from the definition: the most separator points any
/// colour subset needs, counted as adjacent bead pairs that straddle it.
pub fn separability_direct(necklace: &Necklace) -> Result<usize> {
    separability_direct_with_limit(necklace, MAX_CUT_LIMIT)
}

pub fn separability_direct_with_limit(necklace: &Necklace, limit: usize) -> Result<usize> {
    let n = necklace.n();
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "separability colour",
            limit: limit as u128,
            actual: n as u128,
        });
    }
    let beads = necklace.beads();
    let mut best = 0;
    for subset in 0u64..(1u64 << n) {
        let switches = beads
            .windows(2)
            .filter(|w| (subset >> w[0] & 1) != (subset >> w[1] & 1))
            .count();
        best = best.max(switches);
    }
    Ok(best)
}

/// The lower bound m/2 + (n-1)/4 on the max-cut of a connected multigraph.
pub fn poljak_turzik_bound(graph: &MultiGraph) -> Result<Ratio<i64>> {
    if !graph.is_connected() {
        return Err(Error::precondition("graph is not connected"));
    }
    let m = graph.edge_count() as i64;
    let n = graph.vertex_count() as i64;
    Ok(Ratio::new(2 * m + n - 1, 4))
}

/// The irreducible necklace graph on vertices `0..n`, where vertex `i`
/// stands for `i + 1`: a cycle plus the chords {2i-1, 2i+1}.
pub fn make_nn(n: usize) -> Result<MultiGraph> {
    if n < 3 {
        return Err(Error::precondition(format!("N_n needs n >= 3, got {n}")));
    }
    let mut g = MultiGraph::new(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n);
    }
    for i in 1..=(n - 1) / 2 {
        g.add_edge(2 * i - 2, 2 * i);
    }
    Ok(g)
}

/// The structural conditions every irreducible walk graph satisfies:
/// connected with exactly two odd vertices, degrees in {2,3,4}, no two
/// adjacent degree-2 vertices, and max-cut at most `n`.
pub fn irreducible_graph_check(graph: &MultiGraph, n: usize) -> Result<bool> {
    if graph.vertex_count() != n || !graph.is_connected() || graph.odd_vertices().len() != 2 {
        return Ok(false);
    }
    if graph.degrees().iter().any(|d| !(2..=4).contains(d)) {
        return Ok(false);
    }
    if graph
        .edges()
        .iter()
        .any(|&(u, v)| graph.degree(u) == 2 && graph.degree(v) == 2)
    {
        return Ok(false);
    }
    Ok(max_cut_bruteforce(graph)?.0 <= n)
}

/// At most two components per colour, no neighbouring intervals, and the
/// end components are non-intervals of different colours.
pub fn is_necklace_irreducible(necklace: &Necklace) -> bool {
    let comps = necklace.components();
    if comps.is_empty() {
        return false;
    }
    if (0..necklace.n()).any(|c| necklace.component_count(c) > 2) {
        return false;
    }
    if has_neighbouring_intervals(necklace) {
        return false;
    }
    let first = comps[0].colour;
    let last = comps[comps.len() - 1].colour;
    !necklace.is_interval(first) && !necklace.is_interval(last) && first != last
}

pub(crate) fn has_neighbouring_intervals(necklace: &Necklace) -> bool {
    first_neighbouring_intervals(necklace).is_some()
}

/// Index `j` of the first adjacent component pair `j, j+1` whose colours are
/// both intervals.
pub(crate) fn first_neighbouring_intervals(necklace: &Necklace) -> Option<usize> {
    necklace.components().windows(2).position(|w| {
        necklace.is_interval(w[0].colour) && necklace.is_interval(w[1].colour)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neck(s: &str) -> Necklace {
        Necklace::parse(s).unwrap()
    }

    #[test]
    fn walk_graph_examples() {
        let g = build_walk_graph(&neck("a a b b"));
        assert_eq!(g.edges(), &[(0, 1)]);
        let g = build_walk_graph(&neck("a b a b"));
        assert_eq!(g.multiplicity(0, 1), 3);
        assert_eq!(g.occurrence(2), 2);
        let n6 = neck("1 2 3 1 6 5 4 3 5");
        let g = build_walk_graph(&n6);
        assert_eq!(g.edge_count(), 8);
        let by_name: Vec<usize> = ["1", "2", "3", "4", "5", "6"]
            .iter()
            .map(|s| g.degree(n6.colour_by_name(s).unwrap()))
            .collect();
        assert_eq!(by_name, vec![3, 2, 4, 2, 3, 2]);
    }

    #[test]
    fn max_cut_examples() {
        let edge = MultiGraph::from_edges(2, &[(0, 1)]);
        assert_eq!(max_cut_bruteforce(&edge).unwrap().0, 1);
        let tri = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let (mu, side) = max_cut_bruteforce(&tri).unwrap();
        assert_eq!(mu, 2);
        assert_eq!(tri.cut_size(&side), 2);
        assert_eq!(max_cut_bruteforce(&build_walk_graph(&neck("a b a b"))).unwrap().0, 3);
    }

    #[test]
    fn max_cut_limit() {
        let g = MultiGraph::new(25);
        assert!(matches!(
            max_cut_bruteforce(&g),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn separability_examples() {
        assert_eq!(separability(&neck("a a b b")).unwrap(), 1);
        assert_eq!(separability(&neck("a b a")).unwrap(), 2);
        assert_eq!(separability(&neck("a b a b")).unwrap(), 3);
        assert_eq!(separability_direct(&neck("a a b b")).unwrap(), 1);
        assert_eq!(separability_direct(&neck("a b a")).unwrap(), 2);
        assert_eq!(separability_direct(&neck("q q q q")).unwrap(), 0);
    }

    #[test]
    fn bound_examples() {
        let tri = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(poljak_turzik_bound(&tri).unwrap(), Ratio::from_integer(2));
        let edge = MultiGraph::from_edges(2, &[(0, 1)]);
        assert_eq!(poljak_turzik_bound(&edge).unwrap(), Ratio::new(3, 4));
        let n7 = make_nn(7).unwrap();
        assert_eq!(poljak_turzik_bound(&n7).unwrap(), Ratio::new(13, 2));
        assert_eq!(max_cut_bruteforce(&n7).unwrap().0, 7);
        let split = MultiGraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(poljak_turzik_bound(&split).is_err());
    }

    #[test]
    fn nn_shapes() {
        let n7 = make_nn(7).unwrap();
        assert_eq!(n7.edge_count(), 10);
        assert_eq!(n7.degrees(), &[3, 2, 4, 2, 4, 2, 3]);
        let n8 = make_nn(8).unwrap();
        assert_eq!(n8.edge_count(), 11);
        let deg2: Vec<usize> = (0..8).filter(|&v| n8.degree(v) == 2).map(|v| v + 1).collect();
        assert_eq!(deg2, vec![2, 4, 6, 8]);
        let n3 = make_nn(3).unwrap();
        assert_eq!(n3.edge_count(), 4);
        assert_eq!(n3.multiplicity(0, 2), 2);
        assert!(make_nn(2).is_err());
    }

    #[test]
    fn irreducible_graph_examples() {
        assert!(irreducible_graph_check(&make_nn(7).unwrap(), 7).unwrap());
        let tri = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(!irreducible_graph_check(&tri, 3).unwrap());
        let path = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(!irreducible_graph_check(&path, 3).unwrap());
    }

    #[test]
    fn irreducible_necklace_examples() {
        assert!(is_necklace_irreducible(&neck("1 2 3 1 6 5 4 3 5")));
        assert!(!is_necklace_irreducible(&neck("a a b b")));
        assert!(!is_necklace_irreducible(&neck("a b a")));
    }

    #[test]
    fn dot_has_parallel_edges() {
        let dot = build_walk_graph(&neck("a b a b")).to_dot(&["a".into(), "b".into()]);
        assert_eq!(dot.matches("\"a\" -- \"b\"").count() + dot.matches("\"b\" -- \"a\"").count(), 3);
    }
}
