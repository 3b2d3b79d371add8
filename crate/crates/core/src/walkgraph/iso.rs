use super::MultiGraph;
use crate::error::{Error, Result};

pub const ISOMORPHISM_LIMIT: usize = 16;

pub fn is_isomorphic(g1: &MultiGraph, g2: &MultiGraph) -> Result<bool> {
    is_isomorphic_with_limit(g1, g2, ISOMORPHISM_LIMIT)
}

/// Multigraph isomorphism by backtracking. Vertices are matched in BFS order
/// so each new vertex has mapped neighbours to check against, and candidates
/// must agree on degree and on the sorted multiset of neighbour degrees.
pub fn is_isomorphic_with_limit(g1: &MultiGraph, g2: &MultiGraph, limit: usize) -> Result<bool> {
    let n = g1.vertex_count();
    for g in [g1, g2] {
        if g.vertex_count() > limit {
            return Err(Error::LimitExceeded {
                what: "isomorphism vertex",
                limit: limit as u128,
                actual: g.vertex_count() as u128,
            });
        }
    }
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let sig1 = signatures(g1);
    let sig2 = signatures(g2);
    let mut s1 = sig1.clone();
    let mut s2 = sig2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(false);
    }
    let adj1 = g1.adjacency();
    let adj2 = g2.adjacency();
    let order = bfs_order(&adj1);
    let mut state = Search {
        adj1: &adj1,
        adj2: &adj2,
        sig1: &sig1,
        sig2: &sig2,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    Ok(state.extend(0))
}

fn signatures(g: &MultiGraph) -> Vec<(usize, Vec<usize>)> {
    let adj = g.adjacency();
    (0..g.vertex_count())
        .map(|v| {
            let mut nd: Vec<usize> = Vec::new();
            for (u, &m) in adj[v].iter().enumerate() {
                for _ in 0..m {
                    nd.push(g.degree(u));
                }
            }
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

fn bfs_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let degree = |v: usize| adj[v].iter().sum::<usize>();
    while order.len() < n {
        let root = (0..n)
            .filter(|&v| !seen[v])
            .max_by_key(|&v| degree(v))
            .unwrap();
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in 0..n {
                if adj[u][w] > 0 && !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    adj1: &'a [Vec<usize>],
    adj2: &'a [Vec<usize>],
    sig1: &'a [(usize, Vec<usize>)],
    sig2: &'a [(usize, Vec<usize>)],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.adj2.len() {
            if self.used[w] || self.sig1[v] != self.sig2[w] || self.adj1[v][v] != self.adj2[w][w] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.adj1[v][u] == self.adj2[w][self.map[u]]);
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = usize::MAX;
        }
        false
    }
}
