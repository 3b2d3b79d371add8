use std::collections::BTreeSet;

use super::BinaryIlp;

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(vertices: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); vertices],
        }
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(vertices);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `{u, v}`; loops and duplicates are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }
}

/// Vertices are variables; two are adjacent iff some constraint uses both.
pub fn primal_graph(ilp: &BinaryIlp) -> Graph {
    let mut g = Graph::new(ilp.var_count());
    for c in ilp.constraints() {
        let vars: Vec<usize> = c.vars().collect();
        for (i, &u) in vars.iter().enumerate() {
            for &v in &vars[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ilp::Comparator;

    #[test]
    fn single_constraint_is_a_clique() {
        let mut ilp = BinaryIlp::new(3);
        ilp.add(vec![(1, 0), (1, 1), (1, 2)], Comparator::Le, 2);
        let g = primal_graph(&ilp);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn disjoint_constraints() {
        let mut ilp = BinaryIlp::new(4);
        ilp.add(vec![(1, 0), (1, 1)], Comparator::Eq, 1);
        ilp.add(vec![(1, 2), (1, 3)], Comparator::Eq, 1);
        ilp.add(vec![(1, 3), (1, 2)], Comparator::Ge, 1);
        let g = primal_graph(&ilp);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }
}
