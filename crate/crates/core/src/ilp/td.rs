use std::collections::BTreeSet;

use super::Graph;
use crate::error::{Error, Result};

/// A tree with a bag of graph vertices at every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated.
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|b| {
                let set: BTreeSet<usize> = b.into_iter().collect();
                set.into_iter().collect()
            })
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// A path of bags in the given order.
    pub fn path(bags: Vec<Vec<usize>>) -> Self {
        let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
        Self::new(bags, edges)
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn validate(&self, graph: &Graph) -> bool {
        self.check(graph).is_ok()
    }

    /// Checks that the nodes form a tree, the bags cover every vertex and
    /// every edge, and the bags containing any vertex form a subtree.
    pub fn check(&self, graph: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        let nodes = self.bags.len();
        if nodes == 0 {
            return if graph.vertex_count() == 0 {
                Ok(())
            } else {
                bad("no bags".into())
            };
        }
        if self.edges.len() != nodes - 1 {
            return bad(format!("{} nodes but {} tree edges", nodes, self.edges.len()));
        }
        let mut tree = vec![Vec::new(); nodes];
        for &(a, b) in &self.edges {
            if a >= nodes || b >= nodes || a == b {
                return bad(format!("bad tree edge ({a}, {b})"));
            }
            tree[a].push(b);
            tree[b].push(a);
        }
        if count_reachable(&tree, 0, |_| true) != nodes {
            return bad("tree is not connected".into());
        }
        let n = graph.vertex_count();
        let mut holders = vec![Vec::new(); n];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return bad(format!("bag {x} holds unknown vertex {v}"));
                }
                holders[v].push(x);
            }
        }
        if let Some(v) = holders.iter().position(Vec::is_empty) {
            return bad(format!("vertex {v} is in no bag"));
        }
        for (u, v) in graph.edges() {
            let covered = holders[u]
                .iter()
                .any(|&x| self.bags[x].contains(&v));
            if !covered {
                return bad(format!("edge ({u}, {v}) is in no bag"));
            }
        }
        let mut inside = vec![false; nodes];
        for (v, xs) in holders.iter().enumerate() {
            for &x in xs {
                inside[x] = true;
            }
            if count_reachable(&tree, xs[0], |x| inside[x]) != xs.len() {
                return bad(format!("bags holding vertex {v} are not connected"));
            }
            for &x in xs {
                inside[x] = false;
            }
        }
        Ok(())
    }
}

fn count_reachable(tree: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> usize {
    let mut seen = vec![false; tree.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &tree[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// A graph on hypervertices, each a set of base vertices. Two hypervertices
/// are adjacent iff they intersect or a base edge joins them that no single
/// hypervertex contains. Edges inside one hypervertex are already covered by
/// any bag holding it, so they add nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnhancedGraph {
    pub hypervertices: Vec<Vec<usize>>,
    pub graph: Graph,
    base_vertices: usize,
}

impl EnhancedGraph {
    pub fn new(base: &Graph, hypervertices: Vec<Vec<usize>>) -> Result<Self> {
        let n = base.vertex_count();
        let mut containing = vec![Vec::new(); n];
        for (i, x) in hypervertices.iter().enumerate() {
            for &v in x {
                if v >= n {
                    return Err(Error::InvalidDecomposition(format!(
                        "hypervertex {i} holds unknown vertex {v}"
                    )));
                }
                containing[v].push(i);
            }
        }
        if let Some(v) = containing.iter().position(Vec::is_empty) {
            return Err(Error::InvalidDecomposition(format!(
                "vertex {v} is in no hypervertex"
            )));
        }
        let mut graph = Graph::new(hypervertices.len());
        for hs in &containing {
            for (a, &i) in hs.iter().enumerate() {
                for &j in &hs[a + 1..] {
                    graph.add_edge(i, j);
                }
            }
        }
        for (u, v) in base.edges() {
            if containing[u].iter().any(|i| containing[v].binary_search(i).is_ok()) {
                continue;
            }
            for &i in &containing[u] {
                for &j in &containing[v] {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(EnhancedGraph {
            hypervertices,
            graph,
            base_vertices: n,
        })
    }

    /// Largest hypervertex size.
    pub fn max_hypervertex(&self) -> usize {
        self.hypervertices.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn base_vertex_count(&self) -> usize {
        self.base_vertices
    }
}

/// Turns a decomposition of the enhanced graph into one of the base graph on
/// the same tree, replacing each bag by the union of its hypervertices.
pub fn compose_decomposition(
    td: &TreeDecomposition,
    enhanced: &EnhancedGraph,
) -> Result<TreeDecomposition> {
    let bags = td
        .bags
        .iter()
        .map(|bag| {
            let mut union = BTreeSet::new();
            for &h in bag {
                let x = enhanced.hypervertices.get(h).ok_or_else(|| {
                    Error::InvalidDecomposition(format!("bag refers to unknown hypervertex {h}"))
                })?;
                union.extend(x.iter().copied());
            }
            Ok(union.into_iter().collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition {
        bags,
        edges: td.edges.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn single_bag() {
        let td = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![]);
        assert!(td.validate(&triangle()));
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn missing_edge() {
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2]]);
        assert!(!td.validate(&triangle()));
    }

    #[test]
    fn disconnected_occurrence() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![2], vec![1, 2]]);
        assert!(!td.validate(&g));
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2]]);
        assert!(td.validate(&g));
    }

    #[test]
    fn not_a_tree() {
        let td = TreeDecomposition::new(vec![vec![0, 1, 2], vec![0]], vec![]);
        assert!(!td.validate(&triangle()));
    }

    #[test]
    fn enhanced_edges() {
        let g = Graph::from_edges(4, &[(1, 2)]);
        let e = EnhancedGraph::new(&g, vec![vec![0, 1], vec![2], vec![3], vec![3, 0]]).unwrap();
        let edges: Vec<_> = e.graph.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 3), (2, 3)]);
    }

    #[test]
    fn inner_edges_add_nothing() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let e = EnhancedGraph::new(&g, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0]]).unwrap();
        let edges: Vec<_> = e.graph.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn cover_violation() {
        let g = Graph::new(3);
        assert!(EnhancedGraph::new(&g, vec![vec![0], vec![1]]).is_err());
    }

    #[test]
    fn singleton_hypervertices_are_identity() {
        let g = triangle();
        let e = EnhancedGraph::new(&g, vec![vec![0], vec![1], vec![2]]).unwrap();
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![0, 1, 2]]);
        assert_eq!(compose_decomposition(&td, &e).unwrap(), td);
    }

    #[test]
    fn shared_vertex_pair() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let e = EnhancedGraph::new(&g, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        let composed = compose_decomposition(&td, &e).unwrap();
        assert_eq!(composed.bags, vec![vec![0, 1, 2]]);
        assert!(composed.width() < 2 * (td.width() + 1));
        assert!(composed.validate(&g));
    }
}
