//! The label graph: the walk graph closed up into an Euler tour.
//!
//! With `K` components the walk edges are `0..K-1`, edge `j` being the gap
//! after component `j`. For even `n` a closure edge `K-1` joins the last
//! colour to the first. For odd `n` an auxiliary vertex `n` is spliced in
//! instead, with half edges `K-1` (aux to first colour) and `K` (last colour
//! to aux).

use super::{build_walk_graph, escape, is_necklace_irreducible, MultiGraph};
use crate::error::{Error, Result};
use crate::necklace::Necklace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelGraph {
    pub graph: MultiGraph,
    /// Number of colours of the underlying necklace.
    pub colours: usize,
    pub aux_vertex: Option<usize>,
    /// The closure edge, or the two half edges (first colour side first).
    pub aux_edges: Vec<usize>,
    /// The closed Euler tour starting at the first colour.
    pub euler_order: Vec<usize>,
}

impl LabelGraph {
    pub fn is_aux_edge(&self, e: usize) -> bool {
        self.aux_edges.contains(&e)
    }

    /// Edges that stand for gaps between components.
    pub fn gap_edge_count(&self) -> usize {
        self.graph.edge_count() - self.aux_edges.len()
    }
}

/// A pair of edges entering and leaving one component, or the auxiliary
/// vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Traversal {
    pub vertex: usize,
    /// 0 or 1: which component of the colour, in position order.
    pub index: usize,
    pub edges: (usize, usize),
    /// Bead count of the component; 0 for the auxiliary vertex.
    pub size: usize,
    /// Index into the necklace's component list.
    pub component: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraversalTable {
    by_vertex: Vec<Vec<usize>>,
    traversals: Vec<Traversal>,
}

impl TraversalTable {
    pub fn of_vertex(&self, v: usize) -> impl Iterator<Item = &Traversal> + '_ {
        self.by_vertex[v].iter().map(|&t| &self.traversals[t])
    }

    /// Global traversal ids of vertex `v`.
    pub fn ids_of_vertex(&self, v: usize) -> &[usize] {
        &self.by_vertex[v]
    }

    pub fn get(&self, id: usize) -> &Traversal {
        &self.traversals[id]
    }

    /// All traversals, grouped by vertex and ordered by index.
    pub fn all(&self) -> &[Traversal] {
        &self.traversals
    }

    pub fn len(&self) -> usize {
        self.traversals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traversals.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.by_vertex.len()
    }
}

pub fn build_label_graph(necklace: &Necklace) -> Result<(LabelGraph, TraversalTable)> {
    if !is_necklace_irreducible(necklace) {
        return Err(Error::precondition("label graph needs an irreducible necklace"));
    }
    let n = necklace.n();
    let comps = necklace.components();
    let k = comps.len();
    let first = comps[0].colour;
    let last = comps[k - 1].colour;
    let mut graph = build_walk_graph(necklace);
    let (aux_vertex, aux_edges, enter_first, leave_last) = if n.is_multiple_of(2) {
        let closure = graph.add_edge(last, first);
        (None, vec![closure], closure, closure)
    } else {
        let aux = graph.add_vertex();
        let h1 = graph.add_edge(aux, first);
        let h2 = graph.add_edge(last, aux);
        (Some(aux), vec![h1, h2], h1, h2)
    };
    let mut euler_order: Vec<usize> = (0..k - 1).collect();
    euler_order.extend(aux_edges.iter().rev());

    let mut by_vertex = vec![Vec::new(); graph.vertex_count()];
    let mut traversals = Vec::with_capacity(k + 1);
    for v in 0..n {
        for (index, &j) in necklace.colour_component_indices(v).iter().enumerate() {
            let enter = if j == 0 { enter_first } else { j - 1 };
            let leave = if j == k - 1 { leave_last } else { j };
            by_vertex[v].push(traversals.len());
            traversals.push(Traversal {
                vertex: v,
                index,
                edges: (enter, leave),
                size: comps[j].size(),
                component: Some(j),
            });
        }
    }
    if let Some(aux) = aux_vertex {
        by_vertex[aux].push(traversals.len());
        traversals.push(Traversal {
            vertex: aux,
            index: 0,
            edges: (aux_edges[1], aux_edges[0]),
            size: 0,
            component: None,
        });
    }
    let lg = LabelGraph {
        graph,
        colours: n,
        aux_vertex,
        aux_edges,
        euler_order,
    };
    Ok((
        lg,
        TraversalTable {
            by_vertex,
            traversals,
        },
    ))
}

/// DOT rendering of a label graph; auxiliary elements are dashed.
pub fn label_graph_dot(necklace: &Necklace, lg: &LabelGraph) -> String {
    let name = |v: usize| match lg.aux_vertex {
        Some(a) if a == v => "aux".to_string(),
        _ => escape(necklace.name(v)),
    };
    let mut out = String::from("graph {\n");
    for v in 0..lg.graph.vertex_count() {
        if lg.aux_vertex == Some(v) {
            out.push_str(&format!("  \"{}\" [style=dashed];\n", name(v)));
        } else {
            out.push_str(&format!("  \"{}\";\n", name(v)));
        }
    }
    for (e, &(u, v)) in lg.graph.edges().iter().enumerate() {
        let style = if lg.is_aux_edge(e) { " [style=dashed]" } else { "" };
        out.push_str(&format!("  \"{}\" -- \"{}\"{};\n", name(u), name(v), style));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n6_label_graph() {
        let neck = Necklace::parse("1 2 3 1 6 5 4 3 5").unwrap();
        let (lg, table) = build_label_graph(&neck).unwrap();
        assert_eq!(lg.graph.edge_count(), 9);
        assert_eq!(table.len(), 9);
        assert!(lg.aux_vertex.is_none());
        assert!(lg.graph.degrees().iter().all(|d| d % 2 == 0));
        // C_6 plus a triangle on the odd-named colours.
        for name in ["1", "3", "5"] {
            assert_eq!(lg.graph.degree(neck.colour_by_name(name).unwrap()), 4);
        }
    }

    #[test]
    fn odd_n_gets_aux_vertex() {
        // An Euler path of N_7 from 1 to 7.
        let neck = Necklace::parse("1 2 3 1 7 6 5 3 4 5 7").unwrap();
        let (lg, table) = build_label_graph(&neck).unwrap();
        let aux = lg.aux_vertex.unwrap();
        assert_eq!(aux, 7);
        assert_eq!(lg.graph.degree(aux), 2);
        assert_eq!(table.ids_of_vertex(aux).len(), 1);
        assert_eq!(lg.graph.edge_count(), 12);
        assert!(lg.graph.degrees().iter().all(|d| d % 2 == 0));
    }

    #[test]
    fn every_edge_in_two_traversals() {
        let neck = Necklace::parse("1 2 3 1 7 6 5 3 4 5 7").unwrap();
        let (lg, table) = build_label_graph(&neck).unwrap();
        let mut uses = vec![0; lg.graph.edge_count()];
        for t in table.all() {
            uses[t.edges.0] += 1;
            uses[t.edges.1] += 1;
        }
        assert!(uses.iter().all(|&u| u == 2));
    }

    #[test]
    fn rejects_reducible() {
        assert!(build_label_graph(&Necklace::parse("a b a").unwrap()).is_err());
    }

    #[test]
    fn dot_marks_aux() {
        let neck = Necklace::parse("1 2 3 1 7 6 5 3 4 5 7").unwrap();
        let (lg, _) = build_label_graph(&neck).unwrap();
        let dot = label_graph_dot(&neck, &lg);
        assert_eq!(dot.matches("dashed").count(), 3);
    }
}
