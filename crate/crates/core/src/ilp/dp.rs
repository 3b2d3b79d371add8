//! Enumeration of all feasible assignments by dynamic programming over a
//! tree decomposition.
//!
//! Bottom up, each node keeps the assignments of its bag that satisfy every
//! constraint lying inside the bag and agree with some kept assignment of
//! each child on the shared variables. Such an assignment always extends to
//! a solution of the whole subtree, so the top-down pass that stitches
//! solutions together never backtracks out of a dead end.

use std::collections::{HashMap, HashSet};

use super::{BinaryIlp, Comparator, Constraint, TreeDecomposition};
use crate::error::{Error, Result};

/// Bag states are bitmasks, so a bag may hold at most this many variables.
pub const MAX_BAG: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub solutions: Vec<Vec<bool>>,
    /// Set when more than `cap` solutions exist; `solutions` then holds the
    /// first `cap`.
    pub overflow: bool,
}

struct Node {
    bag: Vec<usize>,
    parent: Option<usize>,
    children: Vec<usize>,
    /// Positions in the parent's bag and in this bag of the shared variables.
    up_positions: Vec<usize>,
    own_positions: Vec<usize>,
    states: Vec<u64>,
    /// Shared-variable key -> indices into `states`.
    by_key: HashMap<u64, Vec<usize>>,
}

fn gather(state: u64, positions: &[usize]) -> u64 {
    positions
        .iter()
        .enumerate()
        .fold(0, |key, (i, &p)| key | ((state >> p & 1) << i))
}

fn scatter(key: u64, positions: &[usize]) -> u64 {
    positions
        .iter()
        .enumerate()
        .fold(0, |state, (i, &p)| state | ((key >> i & 1) << p))
}

/// All feasible 0/1 assignments of `ilp`, stopping after `cap`.
///
/// `td` must be a valid decomposition of the primal graph. Every variable
/// has to appear in some bag and every constraint inside some bag.
pub fn enumerate_feasible(ilp: &BinaryIlp, td: &TreeDecomposition, cap: usize) -> Result<Enumeration> {
    if cap == 0 {
        return Err(Error::precondition("cap must be at least 1"));
    }
    let vars = ilp.var_count();
    if td.bags.is_empty() {
        let feasible = vars == 0 && ilp.is_satisfied(&[]);
        return Ok(Enumeration {
            solutions: if feasible { vec![Vec::new()] } else { Vec::new() },
            overflow: false,
        });
    }
    if let Some(b) = td.bags.iter().find(|b| b.len() > MAX_BAG) {
        return Err(Error::LimitExceeded {
            what: "bag size",
            limit: MAX_BAG as u128,
            actual: b.len() as u128,
        });
    }
    let mut nodes = root_tree(td)?;
    let order = preorder(&nodes);

    let mut holders = vec![Vec::new(); vars];
    for (x, node) in nodes.iter().enumerate() {
        for &v in &node.bag {
            if v >= vars {
                return Err(Error::InvalidDecomposition(format!("bag holds unknown variable {v}")));
            }
            holders[v].push(x);
        }
    }
    if let Some(v) = holders.iter().position(Vec::is_empty) {
        return Err(Error::InvalidDecomposition(format!("variable {v} is in no bag")));
    }
    let mut local: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (ci, c) in ilp.constraints().iter().enumerate() {
        let vs: Vec<usize> = c.vars().collect();
        let Some(&first) = vs.first() else {
            if !c.is_satisfied(|_| false) {
                return Ok(Enumeration {
                    solutions: Vec::new(),
                    overflow: false,
                });
            }
            continue;
        };
        let mut placed = false;
        for &x in &holders[first] {
            if vs.iter().all(|v| nodes[x].bag.contains(v)) {
                local[x].push(ci);
                placed = true;
            }
        }
        if !placed {
            return Err(Error::InvalidDecomposition(format!(
                "constraint {ci} lies in no single bag"
            )));
        }
    }

    for &x in order.iter().rev() {
        let states = node_states(ilp, &nodes, x, &local[x]);
        let node = &mut nodes[x];
        node.by_key.clear();
        for (i, &s) in states.iter().enumerate() {
            node.by_key
                .entry(gather(s, &node.own_positions))
                .or_default()
                .push(i);
        }
        node.states = states;
    }

    let mut out = Enumeration {
        solutions: Vec::new(),
        overflow: false,
    };
    let mut chosen = vec![0u64; nodes.len()];
    let mut assignment = vec![false; vars];
    stitch(&nodes, &order, 0, &mut chosen, &mut assignment, cap, &mut out);
    Ok(out)
}

fn root_tree(td: &TreeDecomposition) -> Result<Vec<Node>> {
    let n = td.bags.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &td.edges {
        if a >= n || b >= n {
            return Err(Error::InvalidDecomposition(format!("bad tree edge ({a}, {b})")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                reached += 1;
                stack.push(y);
            }
        }
    }
    if reached != n || td.edges.len() != n - 1 {
        return Err(Error::InvalidDecomposition("decomposition is not a tree".into()));
    }
    let mut nodes: Vec<Node> = (0..n)
        .map(|x| Node {
            bag: td.bags[x].clone(),
            parent: parent[x],
            children: Vec::new(),
            up_positions: Vec::new(),
            own_positions: Vec::new(),
            states: Vec::new(),
            by_key: HashMap::new(),
        })
        .collect();
    for x in 0..n {
        if let Some(p) = parent[x] {
            nodes[p].children.push(x);
            let mut up = Vec::new();
            let mut own = Vec::new();
            for (i, v) in nodes[x].bag.iter().enumerate() {
                if let Some(j) = nodes[p].bag.iter().position(|w| w == v) {
                    up.push(j);
                    own.push(i);
                }
            }
            nodes[x].up_positions = up;
            nodes[x].own_positions = own;
        }
    }
    Ok(nodes)
}

fn preorder(nodes: &[Node]) -> Vec<usize> {
    let mut order = Vec::with_capacity(nodes.len());
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        order.push(x);
        stack.extend(nodes[x].children.iter().rev());
    }
    order
}

/// A constraint in bag coordinates.
struct Local {
    terms: Vec<(i64, usize)>,
    cmp: Comparator,
    bound: i64,
}

impl Local {
    fn new(c: &Constraint, bag: &[usize]) -> Self {
        Local {
            terms: c
                .terms
                .iter()
                .map(|&(k, v)| (k, bag.iter().position(|&w| w == v).unwrap()))
                .collect(),
            cmp: c.cmp,
            bound: c.bound,
        }
    }

    /// Whether some completion of the assigned bits can still satisfy it.
    fn possible(&self, state: u64, assigned: u64) -> bool {
        let mut lo = 0i64;
        let mut hi = 0i64;
        for &(k, p) in &self.terms {
            if assigned >> p & 1 == 1 {
                if state >> p & 1 == 1 {
                    lo += k;
                    hi += k;
                }
            } else if k > 0 {
                hi += k;
            } else {
                lo += k;
            }
        }
        match self.cmp {
            Comparator::Le => lo <= self.bound,
            Comparator::Ge => hi >= self.bound,
            Comparator::Eq => lo <= self.bound && self.bound <= hi,
        }
    }
}

struct ChildCheck {
    positions: Vec<usize>,
    mask: u64,
    keys: HashSet<u64>,
}

struct Search<'a> {
    order: &'a [usize],
    constraints: Vec<Local>,
    /// Per search depth, constraints touching that variable.
    touching: Vec<Vec<usize>>,
    /// Per search depth, children whose shared variables are all assigned
    /// once that depth is reached.
    closing: Vec<Vec<usize>>,
    children: Vec<ChildCheck>,
    out: Vec<u64>,
}

impl Search<'_> {
    fn consistent(&self, state: u64, assigned: u64, constraints: &[usize]) -> bool {
        constraints
            .iter()
            .all(|&c| self.constraints[c].possible(state, assigned))
    }

    fn run(&mut self, depth: usize, state: u64, assigned: u64) {
        if depth == self.order.len() {
            self.out.push(state);
            return;
        }
        let p = self.order[depth];
        let assigned = assigned | 1 << p;
        for bit in [0u64, 1] {
            let state = state | bit << p;
            if !self.consistent(state, assigned, &self.touching[depth]) {
                continue;
            }
            let children_ok = self.closing[depth].iter().all(|&c| {
                let check = &self.children[c];
                check.keys.contains(&gather(state, &check.positions))
            });
            if children_ok {
                self.run(depth + 1, state, assigned);
            }
        }
    }
}

fn node_states(ilp: &BinaryIlp, nodes: &[Node], x: usize, local: &[usize]) -> Vec<u64> {
    let node = &nodes[x];
    let bag = &node.bag;
    let constraints: Vec<Local> = local
        .iter()
        .map(|&c| Local::new(&ilp.constraints()[c], bag))
        .collect();
    let mut children: Vec<ChildCheck> = node
        .children
        .iter()
        .map(|&c| {
            let child = &nodes[c];
            let keys: HashSet<u64> = child.by_key.keys().copied().collect();
            ChildCheck {
                mask: child.up_positions.iter().fold(0, |m, &p| m | 1 << p),
                positions: child.up_positions.clone(),
                keys,
            }
        })
        .collect();
    if children.iter().any(|c| c.keys.is_empty()) {
        return Vec::new();
    }
    // The child with the widest interface seeds the search with its keys.
    children.sort_by_key(|c| std::cmp::Reverse(c.positions.len()));
    let seed = if children.is_empty() {
        None
    } else {
        Some(children.remove(0))
    };
    let seeded = seed.as_ref().map_or(0, |s| s.mask);

    let mut order = Vec::new();
    let mut assigned = seeded;
    let mut remaining: Vec<usize> = (0..bag.len()).filter(|&p| seeded >> p & 1 == 0).collect();
    while !remaining.is_empty() {
        // Prefer the variable that completes the most constraints, then the
        // one sharing the most constraints with what is already assigned.
        let (idx, _) = remaining
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let with = assigned | 1 << p;
                let mut closes = 0;
                let mut touches = 0;
                for c in &constraints {
                    if c.terms.iter().any(|&(_, q)| q == p) {
                        if c.terms.iter().all(|&(_, q)| with >> q & 1 == 1) {
                            closes += 1;
                        }
                        touches += c.terms.iter().filter(|&&(_, q)| assigned >> q & 1 == 1).count();
                    }
                }
                (i, (closes, touches))
            })
            .max_by_key(|&(i, score)| (score, std::cmp::Reverse(i)))
            .unwrap();
        let p = remaining.remove(idx);
        assigned |= 1 << p;
        order.push(p);
    }

    let mut touching = vec![Vec::new(); order.len()];
    for (d, &p) in order.iter().enumerate() {
        for (ci, c) in constraints.iter().enumerate() {
            if c.terms.iter().any(|&(_, q)| q == p) {
                touching[d].push(ci);
            }
        }
    }
    let mut closing = vec![Vec::new(); order.len()];
    let mut late_children = Vec::new();
    for (ci, c) in children.iter().enumerate() {
        let unseeded = c.mask & !seeded;
        if unseeded == 0 {
            late_children.push(ci);
            continue;
        }
        let last = order
            .iter()
            .rposition(|&p| unseeded >> p & 1 == 1)
            .unwrap();
        closing[last].push(ci);
    }

    let mut search = Search {
        order: &order,
        constraints,
        touching,
        closing,
        children,
        out: Vec::new(),
    };
    let all: Vec<usize> = (0..search.constraints.len()).collect();
    let start = |search: &mut Search, state: u64| {
        if !search.consistent(state, seeded, &all) {
            return;
        }
        let ok = late_children.iter().all(|&c| {
            let check = &search.children[c];
            check.keys.contains(&gather(state, &check.positions))
        });
        if ok {
            search.run(0, state, seeded);
        }
    };
    match &seed {
        Some(s) => {
            let mut keys: Vec<u64> = s.keys.iter().copied().collect();
            keys.sort_unstable();
            for key in keys {
                start(&mut search, scatter(key, &s.positions));
            }
        }
        None => start(&mut search, 0),
    }
    let mut states = search.out;
    states.sort_unstable();
    states.dedup();
    states
}

fn stitch(
    nodes: &[Node],
    order: &[usize],
    i: usize,
    chosen: &mut [u64],
    assignment: &mut [bool],
    cap: usize,
    out: &mut Enumeration,
) {
    if out.overflow {
        return;
    }
    if i == order.len() {
        if out.solutions.len() == cap {
            out.overflow = true;
        } else {
            out.solutions.push(assignment.to_vec());
        }
        return;
    }
    let x = order[i];
    let node = &nodes[x];
    let candidates: &[usize] = match node.parent {
        None => &(0..node.states.len()).collect::<Vec<_>>(),
        Some(p) => match node.by_key.get(&gather(chosen[p], &node.up_positions)) {
            Some(c) => c,
            None => return,
        },
    };
    for &s in candidates {
        let state = node.states[s];
        chosen[x] = state;
        for (pos, &v) in node.bag.iter().enumerate() {
            assignment[v] = state >> pos & 1 == 1;
        }
        stitch(nodes, order, i + 1, chosen, assignment, cap, out);
        if out.overflow {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_bag(ilp: &BinaryIlp) -> TreeDecomposition {
        TreeDecomposition::new(vec![(0..ilp.var_count()).collect()], vec![])
    }

    #[test]
    fn exactly_one() {
        let ilp = BinaryIlp::parse("1:0 1:1 = 1").unwrap();
        let res = enumerate_feasible(&ilp, &single_bag(&ilp), 10).unwrap();
        let mut sols = res.solutions;
        sols.sort();
        assert_eq!(sols, vec![vec![false, true], vec![true, false]]);
        assert!(!res.overflow);
    }

    #[test]
    fn infeasible() {
        let ilp = BinaryIlp::parse("1:0 <= 0\n1:0 >= 1").unwrap();
        let res = enumerate_feasible(&ilp, &single_bag(&ilp), 10).unwrap();
        assert!(res.solutions.is_empty());
    }

    #[test]
    fn overflow_flagged() {
        let ilp = BinaryIlp::parse("1:0 1:1 1:2 >= 0").unwrap();
        let res = enumerate_feasible(&ilp, &single_bag(&ilp), 5).unwrap();
        assert_eq!(res.solutions.len(), 5);
        assert!(res.overflow);
    }

    #[test]
    fn path_decomposition() {
        // A chain x0 != x1 != x2 != x3.
        let ilp = BinaryIlp::parse("1:0 1:1 = 1\n1:1 1:2 = 1\n1:2 1:3 = 1").unwrap();
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        let mut sols = enumerate_feasible(&ilp, &td, 10).unwrap().solutions;
        sols.sort();
        assert_eq!(
            sols,
            vec![vec![false, true, false, true], vec![true, false, true, false]]
        );
    }

    #[test]
    fn constraint_outside_bags() {
        let ilp = BinaryIlp::parse("1:0 1:2 = 1\n1:1 >= 0").unwrap();
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2]]);
        assert!(enumerate_feasible(&ilp, &td, 10).is_err());
    }
}
