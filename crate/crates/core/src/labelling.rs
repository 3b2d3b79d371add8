//! Cut labellings of label graphs and the ILP that finds them.
//!
//! A cut labelling marks every label-graph edge positive or negative. Per
//! vertex exactly one traversal has differently labelled edges: that is the
//! component holding the colour's cut point. The ILP encodes these local
//! rules together with the alpha bounds; among its feasible solutions the
//! one that agrees with the cut it induces is the answer.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ilp::{
    compose_decomposition, enumerate_feasible, primal_graph, BinaryIlp, Comparator,
    EnhancedGraph, Graph, TreeDecomposition,
};
use crate::necklace::{complement_unchecked, evaluate_unchecked, AlphaVector, Cut, Necklace};
use crate::reduction::CutPair;
use crate::walkgraph::{build_label_graph, LabelGraph, TraversalTable};

/// Positive/negative label per label-graph edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutLabelling {
    pub positive: Vec<bool>,
}

impl CutLabelling {
    pub fn flipped(&self) -> Self {
        CutLabelling {
            positive: self.positive.iter().map(|p| !p).collect(),
        }
    }

    /// Debug dump, one `e<id> <u>-<v> +|-` line per edge.
    pub fn dump(&self, necklace: &Necklace, lg: &LabelGraph) -> String {
        let name = |v: usize| {
            if lg.aux_vertex == Some(v) {
                "aux".to_string()
            } else {
                necklace.name(v).to_string()
            }
        };
        lg.graph
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| {
                let sign = if self.positive[e] { '+' } else { '-' };
                format!("e{e} {}-{} {sign}\n", name(u), name(v))
            })
            .collect()
    }
}

/// Variable layout: `p_e = 2e`, `n_e = 2e + 1`, then three variables
/// `p, n, s` per traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IlpVariableSchema {
    pub edges: usize,
    pub traversals: usize,
}

impl IlpVariableSchema {
    pub fn p_edge(&self, e: usize) -> usize {
        2 * e
    }

    pub fn n_edge(&self, e: usize) -> usize {
        2 * e + 1
    }

    pub fn p_trav(&self, t: usize) -> usize {
        2 * self.edges + 3 * t
    }

    pub fn n_trav(&self, t: usize) -> usize {
        2 * self.edges + 3 * t + 1
    }

    pub fn s_trav(&self, t: usize) -> usize {
        2 * self.edges + 3 * t + 2
    }

    pub fn var_count(&self) -> usize {
        2 * self.edges + 3 * self.traversals
    }

    /// The seven variables of traversal `t`.
    pub fn traversal_vars(&self, table: &TraversalTable, t: usize) -> Vec<usize> {
        let (e1, e2) = table.get(t).edges;
        vec![
            self.p_edge(e1),
            self.n_edge(e1),
            self.p_edge(e2),
            self.n_edge(e2),
            self.p_trav(t),
            self.n_trav(t),
            self.s_trav(t),
        ]
    }
}

fn check_table(lg: &LabelGraph, table: &TraversalTable) -> Result<()> {
    if table.vertex_count() != lg.graph.vertex_count() {
        return Err(Error::precondition("traversal table does not match label graph"));
    }
    for v in 0..lg.graph.vertex_count() {
        let deg = lg.graph.degree(v);
        if !(deg == 2 || deg == 4) || table.ids_of_vertex(v).len() * 2 != deg {
            return Err(Error::precondition(format!(
                "vertex {v} has degree {deg} and {} traversals",
                table.ids_of_vertex(v).len()
            )));
        }
        for t in table.of_vertex(v) {
            for e in [t.edges.0, t.edges.1] {
                let (a, b) = lg.graph.edge(e);
                if a != v && b != v {
                    return Err(Error::precondition(format!(
                        "traversal of vertex {v} uses edge {e} not incident to it"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The cut-labelling ILP for `alpha`. Alpha is not range checked here, so an
/// out-of-range value simply yields an infeasible program.
pub fn build_ilp(
    lg: &LabelGraph,
    table: &TraversalTable,
    alpha: &AlphaVector,
) -> Result<(BinaryIlp, IlpVariableSchema)> {
    check_table(lg, table)?;
    if alpha.len() != lg.colours {
        return Err(Error::InvalidAlpha(format!(
            "expected {} entries, got {}",
            lg.colours,
            alpha.len()
        )));
    }
    let schema = IlpVariableSchema {
        edges: lg.graph.edge_count(),
        traversals: table.len(),
    };
    let mut ilp = BinaryIlp::new(schema.var_count());
    for e in 0..schema.edges {
        ilp.add(vec![(1, schema.p_edge(e)), (1, schema.n_edge(e))], Comparator::Eq, 1);
    }
    for (t, trav) in table.all().iter().enumerate() {
        let (e1, e2) = trav.edges;
        let (p, n, s) = (schema.p_trav(t), schema.n_trav(t), schema.s_trav(t));
        for (x, a, b) in [
            (p, schema.p_edge(e1), schema.p_edge(e2)),
            (n, schema.n_edge(e1), schema.n_edge(e2)),
        ] {
            ilp.add(vec![(1, x), (-1, a)], Comparator::Le, 0);
            ilp.add(vec![(1, x), (-1, b)], Comparator::Le, 0);
            ilp.add(vec![(1, a), (1, b), (-1, x)], Comparator::Le, 1);
        }
        ilp.add(vec![(1, s), (-1, p), (-1, n)], Comparator::Eq, 0);
    }
    for v in 0..lg.graph.vertex_count() {
        let ids = table.ids_of_vertex(v);
        if ids.len() == 1 {
            ilp.add(vec![(1, schema.s_trav(ids[0]))], Comparator::Eq, 0);
            continue;
        }
        let (t1, t2) = (ids[0], ids[1]);
        ilp.add(
            vec![(1, schema.s_trav(t1)), (1, schema.s_trav(t2))],
            Comparator::Eq,
            1,
        );
        let w1 = table.get(t1).size as i64;
        let w2 = table.get(t2).size as i64;
        let total = w1 + w2;
        let a = alpha.get(v) as i64;
        // n_i * w_other + (1 - n_i) * |C| >= alpha
        ilp.add(vec![(w2 - total, schema.n_trav(t1))], Comparator::Ge, a - total);
        ilp.add(vec![(w1 - total, schema.n_trav(t2))], Comparator::Ge, a - total);
        // p_i * w_i + 1 <= alpha
        ilp.add(vec![(w1, schema.p_trav(t1))], Comparator::Le, a - 1);
        ilp.add(vec![(w2, schema.p_trav(t2))], Comparator::Le, a - 1);
    }
    Ok((ilp, schema))
}

/// Decompositions of the label graph, of the traversal-level enhanced graph
/// and of the ILP's primal graph.
#[derive(Debug, Clone)]
pub struct LabelDecomposition {
    pub label_level: TreeDecomposition,
    pub traversal_level: TreeDecomposition,
    pub primal_level: TreeDecomposition,
    /// Hypervertices grouping traversals by vertex, over the traversal graph.
    pub vertex_groups: EnhancedGraph,
    /// Hypervertices grouping the seven variables of each traversal.
    pub traversal_groups: EnhancedGraph,
    pub primal: Graph,
}

impl LabelDecomposition {
    /// Validates every level against its graph.
    pub fn check(&self) -> Result<()> {
        self.label_level.check(&self.vertex_groups.graph)?;
        self.traversal_level.check(&self.traversal_groups.graph)?;
        self.primal_level.check(&self.primal)
    }
}

/// Reads the label graph as a cycle `v_1, i_1, v_2, i_2, ...` alternating
/// degree-4 and degree-2 vertices, plus chords `{v_j, v_j+1}`. Returns the
/// degree-4 and degree-2 sequences.
fn cycle_with_chords(lg: &LabelGraph) -> Result<(Vec<usize>, Vec<usize>)> {
    let g = &lg.graph;
    let shape = || Error::precondition("label graph is not a cycle with chords on every other vertex");
    let vcount = g.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vcount];
    for (u, v) in g.edges().iter().copied() {
        incident[u].push(v);
        incident[v].push(u);
    }
    let big: Vec<usize> = (0..vcount).filter(|&v| g.degree(v) == 4).collect();
    let small: Vec<usize> = (0..vcount).filter(|&v| g.degree(v) == 2).collect();
    let h = big.len();
    if h < 2 || small.len() != h || big.len() + small.len() != vcount || g.edge_count() != 3 * h {
        return Err(shape());
    }
    let small_nbrs = |v: usize| -> Vec<usize> {
        incident[v]
            .iter()
            .copied()
            .filter(|&u| g.degree(u) == 2)
            .collect()
    };
    let mut vs = vec![big[0]];
    let mut is = Vec::new();
    let mut prev_interval = usize::MAX;
    loop {
        let cur = *vs.last().unwrap();
        let nbrs = small_nbrs(cur);
        if nbrs.len() != 2 {
            return Err(shape());
        }
        let next_i = if nbrs[0] != prev_interval { nbrs[0] } else { nbrs[1] };
        let ends = &incident[next_i];
        let next_v = if ends[0] == cur { ends[1] } else { ends[0] };
        if g.degree(next_v) != 4 || (ends[0] != cur && ends[1] != cur) {
            return Err(shape());
        }
        is.push(next_i);
        prev_interval = next_i;
        if next_v == vs[0] {
            break;
        }
        if vs.len() == h {
            return Err(shape());
        }
        vs.push(next_v);
    }
    if vs.len() != h {
        return Err(shape());
    }
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let mut expected: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for j in 0..h {
        let (v, w) = (vs[j], vs[(j + 1) % h]);
        *expected.entry(key(v, is[j])).or_default() += 1;
        *expected.entry(key(is[j], w)).or_default() += 1;
        *expected.entry(key(v, w)).or_default() += 1;
    }
    let mut actual: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in g.edges() {
        *actual.entry(key(u, v)).or_default() += 1;
    }
    if expected != actual {
        return Err(shape());
    }
    Ok((vs, is))
}

/// Builds the width-bounded decomposition of the ILP's primal graph in three
/// steps: a path decomposition of the label graph, expanded through the
/// vertex-to-traversals grouping, then through the traversal-to-variables
/// grouping.
pub fn tree_decomposition_for_label_ilp(
    lg: &LabelGraph,
    table: &TraversalTable,
    ilp: &BinaryIlp,
    schema: &IlpVariableSchema,
) -> Result<LabelDecomposition> {
    let (vs, is) = cycle_with_chords(lg)?;
    let h = vs.len();
    let pin = vs[0];
    let label_level = TreeDecomposition::path(
        (0..h)
            .map(|j| vec![vs[j], is[j], vs[(j + 1) % h], pin])
            .collect(),
    );

    let primal = primal_graph(ilp);
    let traversal_groups = EnhancedGraph::new(
        &primal,
        (0..table.len())
            .map(|t| schema.traversal_vars(table, t))
            .collect(),
    )?;
    let vertex_groups = EnhancedGraph::new(
        &traversal_groups.graph,
        (0..lg.graph.vertex_count())
            .map(|v| table.ids_of_vertex(v).to_vec())
            .collect(),
    )?;
    let traversal_level = compose_decomposition(&label_level, &vertex_groups)?;
    let primal_level = compose_decomposition(&traversal_level, &traversal_groups)?;
    Ok(LabelDecomposition {
        label_level,
        traversal_level,
        primal_level,
        vertex_groups,
        traversal_groups,
        primal,
    })
}

/// For each colour, the traversal whose two edges carry different labels.
fn cut_traversals(labelling: &CutLabelling, lg: &LabelGraph, table: &TraversalTable) -> Option<Vec<usize>> {
    (0..lg.colours)
        .map(|v| {
            let mut differing = table
                .ids_of_vertex(v)
                .iter()
                .copied()
                .filter(|&t| {
                    let (a, b) = table.get(t).edges;
                    labelling.positive[a] != labelling.positive[b]
                });
            let t = differing.next()?;
            differing.next().is_none().then_some(t)
        })
        .collect()
}

fn first_bead_cut(
    labelling: &CutLabelling,
    necklace: &Necklace,
    lg: &LabelGraph,
    table: &TraversalTable,
) -> Option<Cut> {
    let travs = cut_traversals(labelling, lg, table)?;
    let comps = necklace.components();
    Some(Cut::new(
        travs
            .iter()
            .map(|&t| comps[table.get(t).component.unwrap()].start)
            .collect(),
    ))
}

/// The labelling a cut induces: each gap edge takes the side of the interval
/// it lies in; the closure edge and the first half edge take the side of
/// the interval before all cut points, the second half edge the side of the
/// one after them.
pub fn induced_labelling(necklace: &Necklace, cut: &Cut, lg: &LabelGraph) -> Result<CutLabelling> {
    cut.validate(necklace)?;
    Ok(induced_unchecked(necklace, cut, lg))
}

fn induced_unchecked(necklace: &Necklace, cut: &Cut, lg: &LabelGraph) -> CutLabelling {
    let ev = evaluate_unchecked(necklace, cut);
    let comps = necklace.components();
    let mut positive: Vec<bool> = (0..comps.len() - 1)
        .map(|j| ev.interval_positive(ev.interval_after(comps[j].end)))
        .collect();
    positive.push(ev.interval_positive(0));
    if lg.aux_edges.len() == 2 {
        positive.push(ev.interval_positive(necklace.n()));
    }
    CutLabelling { positive }
}

/// Whether the labelling coincides with the labelling of the cut it
/// induces. Equality is the same as every positive edge lying on the
/// positive side, since both labellings flip at the same components.
pub fn satisfies_condition_four(
    labelling: &CutLabelling,
    necklace: &Necklace,
    lg: &LabelGraph,
    table: &TraversalTable,
) -> bool {
    match first_bead_cut(labelling, necklace, lg, table) {
        Some(cut) => induced_unchecked(necklace, &cut, lg) == *labelling,
        None => false,
    }
}

/// All feasible labellings of the ILP and which of them pass condition (4).
#[derive(Debug, Clone)]
pub struct LabellingCandidates {
    pub feasible: Vec<CutLabelling>,
    pub overflow: bool,
    pub passing: Vec<usize>,
}

const FEASIBLE_CAP: usize = 16;

pub fn labelling_candidates(
    lg: &LabelGraph,
    table: &TraversalTable,
    necklace: &Necklace,
    alpha: &AlphaVector,
) -> Result<LabellingCandidates> {
    let (ilp, schema) = build_ilp(lg, table, alpha)?;
    let td = tree_decomposition_for_label_ilp(lg, table, &ilp, &schema)?;
    let found = enumerate_feasible(&ilp, &td.primal_level, FEASIBLE_CAP)?;
    let feasible: Vec<CutLabelling> = found
        .solutions
        .iter()
        .map(|a| CutLabelling {
            positive: (0..schema.edges).map(|e| a[schema.p_edge(e)]).collect(),
        })
        .collect();
    let passing = feasible
        .iter()
        .enumerate()
        .filter(|(_, l)| satisfies_condition_four(l, necklace, lg, table))
        .map(|(i, _)| i)
        .collect();
    Ok(LabellingCandidates {
        feasible,
        overflow: found.overflow,
        passing,
    })
}

/// The unique labelling for `alpha` that passes condition (4).
pub fn solve_labelling(
    lg: &LabelGraph,
    table: &TraversalTable,
    necklace: &Necklace,
    alpha: &AlphaVector,
) -> Result<CutLabelling> {
    alpha.validate(necklace)?;
    let cands = labelling_candidates(lg, table, necklace, alpha)?;
    let count = cands.feasible.len();
    if cands.overflow || !(1..=2).contains(&count) {
        return Err(Error::promise(format!(
            "labelling ILP has {}{} feasible solutions",
            count,
            if cands.overflow { "+" } else { "" }
        )));
    }
    match cands.passing.as_slice() {
        [i] => Ok(cands.feasible[*i].clone()),
        [] => Err(Error::promise("no feasible labelling agrees with its induced cut")),
        _ => Err(Error::promise("several feasible labellings agree with their induced cuts")),
    }
}

/// Places each cut point at the first bead of its cut component, then slides
/// it inside the component until the colour's positive count is `alpha`.
pub fn labelling_to_cut(
    labelling: &CutLabelling,
    necklace: &Necklace,
    lg: &LabelGraph,
    table: &TraversalTable,
    alpha: &AlphaVector,
) -> Result<Cut> {
    alpha.validate(necklace)?;
    let mut cut = first_bead_cut(labelling, necklace, lg, table)
        .ok_or_else(|| Error::precondition("labelling does not pick one cut component per colour"))?;
    let ev = evaluate_unchecked(necklace, &cut);
    let comps = necklace.components();
    let travs = cut_traversals(labelling, lg, table).expect("checked by first_bead_cut");
    for v in 0..necklace.n() {
        let comp = comps[table.get(travs[v]).component.unwrap()];
        let cur = ev.alpha.get(v) as i64;
        let target = alpha.get(v) as i64;
        let shift = if ev.left_side_positive(v) {
            target - cur
        } else {
            cur - target
        };
        if shift < 0 || shift as usize >= comp.size() {
            return Err(Error::precondition(format!(
                "colour {} cannot reach {} inside its cut component",
                necklace.name(v),
                target
            )));
        }
        cut.set(v, comp.start + shift as usize);
    }
    let check = evaluate_unchecked(necklace, &cut);
    if check.alpha != *alpha {
        return Err(Error::precondition("swept cut does not realise alpha"));
    }
    Ok(cut)
}

/// Solves an irreducible instance for alpha and its complement.
pub fn solve_irreducible(necklace: &Necklace, alpha: &AlphaVector) -> Result<CutPair> {
    alpha.validate(necklace)?;
    let (lg, table) = build_label_graph(necklace)?;
    let bar = complement_unchecked(necklace, alpha);
    let mut cuts = Vec::with_capacity(2);
    for a in [alpha, &bar] {
        let labelling = solve_labelling(&lg, &table, necklace, a)?;
        cuts.push(labelling_to_cut(&labelling, necklace, &lg, &table, a)?);
    }
    let s_bar = cuts.pop().unwrap();
    let s = cuts.pop().unwrap();
    Ok(CutPair { s, s_bar })
}
