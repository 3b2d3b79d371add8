//! The recursive solver for a cut and its complement cut.
//!
//! Instances shrink through five kinds of step until they are small enough
//! for brute force or irreducible:
//!
//! * two neighbouring intervals are removed together;
//! * colours with three or more components are cut down to one chosen
//!   component each, trying every choice;
//! * an interval at either end is removed;
//! * a colour owning both end components is removed.
//!
//! The child's pair of cuts is lifted back by inserting a cut point for each
//! removed colour and sliding it inside its component. Whether the child's
//! cut or its complement cut lifts to the parent's cut depends on whether
//! the insertion flips the permutation sign, see [`parity_flip_on_insert`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::labelling::solve_irreducible;
use crate::necklace::{
    complement_unchecked, evaluate_unchecked, AlphaVector, Component, Cut, Necklace, Restriction,
};
use crate::walkgraph::{first_neighbouring_intervals, is_necklace_irreducible};

/// Instances with at most this many colours are solved by brute force.
pub const BRUTE_FORCE_COLOURS: usize = 8;

/// The cut for alpha and the cut for its complement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutPair {
    pub s: Cut,
    pub s_bar: Cut,
}

impl CutPair {
    fn swapped(self) -> Self {
        CutPair {
            s: self.s_bar,
            s_bar: self.s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    BruteForce,
    NeighbouringIntervals,
    ComponentChoice,
    FirstInterval,
    LastInterval,
    SameColourEnds,
    Irreducible,
}

/// One reduction: the child necklace and how to put cut points back.
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub restriction: Restriction,
    /// Per parent colour absent from the child, the components that may
    /// hold its cut point.
    pub removed: Vec<(usize, Vec<Component>)>,
    /// Components of colours kept in the child whose cut point is slid after
    /// lifting.
    pub kept_movable: Vec<Component>,
}

impl ReductionStep {
    fn removal(kind: StepKind, parent: &Necklace, removed: Vec<(usize, Vec<Component>)>) -> Self {
        let colours: Vec<usize> = removed.iter().map(|(c, _)| *c).collect();
        ReductionStep {
            kind,
            restriction: parent.without_colours(&colours),
            removed,
            kept_movable: Vec::new(),
        }
    }

    pub fn child(&self) -> &Necklace {
        &self.restriction.necklace
    }

    /// Restricts a parent alpha to the child's colours.
    pub fn child_alpha(&self, alpha: &AlphaVector) -> AlphaVector {
        self.restriction.restrict_alpha(alpha)
    }

    fn placements(&self) -> Vec<Vec<(usize, Component)>> {
        let mut combos = vec![Vec::new()];
        for (colour, comps) in &self.removed {
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    comps.iter().map(move |&comp| {
                        let mut next = prefix.clone();
                        next.push((*colour, comp));
                        next
                    })
                })
                .collect();
        }
        combos
    }

    /// Every parent cut realising `target` that restricts to `child_cut`,
    /// with removed colours cut anywhere in their candidate components and
    /// kept movable colours slid within theirs.
    pub fn lifts(&self, parent: &Necklace, child_cut: &Cut, target: &AlphaVector) -> Vec<Cut> {
        let mut found = BTreeSet::new();
        for placement in self.placements() {
            let fill: Vec<(usize, usize)> = placement.iter().map(|&(c, comp)| (c, comp.start)).collect();
            let lifted = self.restriction.lift(child_cut, parent.n(), &fill);
            let mut movable: Vec<Component> = placement.iter().map(|&(_, comp)| comp).collect();
            movable.extend(self.kept_movable.iter().copied());
            if let Some(cut) = shift_to_alpha(&lifted, parent, &movable, target) {
                found.insert(cut);
            }
        }
        found.into_iter().collect()
    }

    /// The unique lift, or a promise violation.
    fn lift_one(&self, parent: &Necklace, child_cut: &Cut, target: &AlphaVector) -> Result<Cut> {
        unique(self.lifts(parent, child_cut, target), target)
    }
}

fn unique(mut cuts: Vec<Cut>, target: &AlphaVector) -> Result<Cut> {
    match cuts.len() {
        1 => Ok(cuts.pop().unwrap()),
        0 => Err(Error::promise(format!(
            "no cut realises {:?} after reinsertion",
            target.values()
        ))),
        _ => Err(Error::NotUnique(target.values().to_vec())),
    }
}

/// A diagnostic record of one step taken by the solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub depth: usize,
    pub colours: usize,
    pub kind: StepKind,
    /// Names of the colours removed (or cut down) by the step.
    pub touched: Vec<String>,
    pub parity_flip: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub entries: Vec<TraceEntry>,
}

impl ReductionTrace {
    pub fn max_depth(&self) -> usize {
        self.entries.iter().map(|e| e.depth).max().unwrap_or(0)
    }

    pub fn count(&self, kind: StepKind) -> usize {
        self.entries.iter().filter(|e| e.kind == kind).count()
    }
}

/// Slides the cut points of the colours owning `movable` inside those
/// components so the cut realises `alpha`. Sliding a point within its
/// component keeps the order of all cut points, so each colour's count
/// moves by one per bead while every other colour stays put.
pub fn shift_to_alpha(
    candidate: &Cut,
    necklace: &Necklace,
    movable: &[Component],
    alpha: &AlphaVector,
) -> Option<Cut> {
    if candidate.validate(necklace).is_err() || alpha.len() != necklace.n() {
        return None;
    }
    let ev = evaluate_unchecked(necklace, candidate);
    let mut cut = candidate.clone();
    for comp in movable {
        let c = comp.colour;
        let at = candidate.point(c);
        if !comp.contains(at) {
            return None;
        }
        let cur = ev.alpha.get(c) as i64;
        let target = alpha.get(c) as i64;
        let offset = at as i64 - comp.start as i64;
        // Count with the point at the first bead of the component.
        let (base, step) = if ev.left_side_positive(c) {
            (cur - offset, 1)
        } else {
            (cur + offset, -1)
        };
        let shift = (target - base) * step;
        if shift < 0 || shift >= comp.size() as i64 {
            return None;
        }
        cut.set(c, comp.start + shift as usize);
    }
    (evaluate_unchecked(necklace, &cut).alpha == *alpha).then_some(cut)
}

/// Tries every choice of cut component, sliding each cut point to its
/// target. Equivalent to trying every bead per colour, since for a fixed
/// component choice the count of a colour is strictly monotone in the
/// position of its cut point.
pub fn brute_force_cut(necklace: &Necklace, alpha: &AlphaVector) -> Result<CutPair> {
    alpha.validate(necklace)?;
    if necklace.n() > BRUTE_FORCE_COLOURS {
        return Err(Error::precondition(format!(
            "brute force needs at most {} colours, got {}",
            BRUTE_FORCE_COLOURS,
            necklace.n()
        )));
    }
    let bar = complement_unchecked(necklace, alpha);
    let (hits, bar_hits) = sweep_component_choices(necklace, alpha, &bar);
    Ok(CutPair {
        s: unique(hits, alpha)?,
        s_bar: unique(bar_hits, &bar)?,
    })
}

fn sweep_component_choices(
    necklace: &Necklace,
    alpha: &AlphaVector,
    bar: &AlphaVector,
) -> (Vec<Cut>, Vec<Cut>) {
    let n = necklace.n();
    let comps = necklace.components();
    let choices: Vec<&[usize]> = (0..n).map(|c| necklace.colour_component_indices(c)).collect();
    let mut pick = vec![0usize; n];
    let mut hits = Vec::new();
    let mut bar_hits = Vec::new();
    loop {
        let movable: Vec<Component> = (0..n).map(|c| comps[choices[c][pick[c]]]).collect();
        let start = Cut::new(movable.iter().map(|m| m.start).collect());
        if let Some(cut) = shift_to_alpha(&start, necklace, &movable, alpha) {
            hits.push(cut);
        }
        if let Some(cut) = shift_to_alpha(&start, necklace, &movable, bar) {
            bar_hits.push(cut);
        }
        let mut c = 0;
        while c < n && pick[c] + 1 == choices[c].len() {
            pick[c] = 0;
            c += 1;
        }
        if c == n {
            break;
        }
        pick[c] += 1;
    }
    (hits, bar_hits)
}

/// Removes the first pair of neighbouring intervals.
pub fn remove_neighbouring_intervals(
    necklace: &Necklace,
    alpha: &AlphaVector,
) -> Result<(Necklace, AlphaVector, ReductionStep)> {
    let step = neighbouring_step(necklace)
        .ok_or_else(|| Error::precondition("no neighbouring intervals"))?;
    let child_alpha = step.child_alpha(alpha);
    Ok((step.child().clone(), child_alpha, step))
}

fn neighbouring_step(necklace: &Necklace) -> Option<ReductionStep> {
    let j = first_neighbouring_intervals(necklace)?;
    let comps = necklace.components();
    let (a, b) = (comps[j], comps[j + 1]);
    Some(ReductionStep::removal(
        StepKind::NeighbouringIntervals,
        necklace,
        vec![(a.colour, vec![a]), (b.colour, vec![b])],
    ))
}

/// Whether putting cut points back into the removed colours changes the
/// permutation sign. The change is the same for every cut of the child, so
/// one representative cut decides it.
pub fn parity_flip_on_insert(parent: &Necklace, step: &ReductionStep) -> bool {
    let child = step.child();
    let rep = Cut::new(
        (0..child.n())
            .map(|c| child.colour_components(c).next().unwrap().start)
            .collect(),
    );
    let fill: Vec<(usize, usize)> = step
        .removed
        .iter()
        .map(|(c, comps)| (*c, comps[0].start))
        .collect();
    let lifted = step.restriction.lift(&rep, parent.n(), &fill);
    evaluate_unchecked(child, &rep).sign != evaluate_unchecked(parent, &lifted).sign
}

struct Solver {
    trace: ReductionTrace,
}

impl Solver {
    fn record(&mut self, depth: usize, necklace: &Necklace, kind: StepKind, touched: &[usize], flip: Option<bool>) {
        self.trace.entries.push(TraceEntry {
            depth,
            colours: necklace.n(),
            kind,
            touched: touched.iter().map(|&c| necklace.name(c).to_string()).collect(),
            parity_flip: flip,
        });
    }

    /// Solves the child of a removal step and lifts the pair back, swapping
    /// the child's cuts when `swap` says so.
    fn via_removal(
        &mut self,
        necklace: &Necklace,
        alpha: &AlphaVector,
        bar: &AlphaVector,
        step: &ReductionStep,
        swap: impl Fn(bool) -> bool,
        depth: usize,
        two_component: bool,
    ) -> Result<CutPair> {
        let flip = parity_flip_on_insert(necklace, step);
        let touched: Vec<usize> = step.removed.iter().map(|(c, _)| *c).collect();
        self.record(depth, necklace, step.kind, &touched, Some(flip));
        let child_alpha = step.child_alpha(alpha);
        let pair = if two_component {
            self.two_component(step.child(), &child_alpha, depth + 1)?
        } else {
            self.general(step.child(), &child_alpha, depth + 1)?
        };
        let pair = if swap(flip) { pair.swapped() } else { pair };
        Ok(CutPair {
            s: step.lift_one(necklace, &pair.s, alpha)?,
            s_bar: step.lift_one(necklace, &pair.s_bar, bar)?,
        })
    }

    fn general(&mut self, necklace: &Necklace, alpha: &AlphaVector, depth: usize) -> Result<CutPair> {
        let n = necklace.n();
        if n <= BRUTE_FORCE_COLOURS {
            self.record(depth, necklace, StepKind::BruteForce, &[], None);
            return brute_force_cut(necklace, alpha);
        }
        let bar = complement_unchecked(necklace, alpha);
        if let Some(step) = neighbouring_step(necklace) {
            return self.via_removal(necklace, alpha, &bar, &step, |f| f, depth, false);
        }
        let c3: Vec<usize> = (0..n).filter(|&c| necklace.component_count(c) >= 3).collect();
        if let Some(c) = (0..n).find(|&c| necklace.component_count(c) > 4) {
            return Err(Error::promise(format!(
                "colour {} has {} components",
                necklace.name(c),
                necklace.component_count(c)
            )));
        }
        if c3.len() > 2 {
            return Err(Error::promise(format!(
                "{} colours have three or more components",
                c3.len()
            )));
        }
        if c3.is_empty() {
            return self.two_component(necklace, alpha, depth);
        }
        self.record(depth, necklace, StepKind::ComponentChoice, &c3, None);
        let mut hits = BTreeSet::new();
        let mut bar_hits = BTreeSet::new();
        for choice in component_choices(necklace, &c3) {
            let drop: Vec<bool> = {
                let mut drop = vec![false; necklace.len()];
                for (&c, chosen) in c3.iter().zip(&choice) {
                    for comp in necklace.colour_components(c) {
                        if comp != chosen {
                            drop[comp.start..=comp.end].iter_mut().for_each(|d| *d = true);
                        }
                    }
                }
                drop
            };
            let step = ReductionStep {
                kind: StepKind::ComponentChoice,
                restriction: necklace.restrict(|p| !drop[p]),
                removed: Vec::new(),
                kept_movable: choice.clone(),
            };
            let mut dummy = alpha.clone().into_inner();
            for &c in &c3 {
                dummy[c] = 1;
            }
            let pair = match self.two_component(step.child(), &AlphaVector::new(dummy), depth + 1) {
                Ok(pair) => pair,
                Err(e) if e.is_promise_violation() => continue,
                Err(e) => return Err(e),
            };
            hits.extend(step.lifts(necklace, &pair.s, alpha));
            bar_hits.extend(step.lifts(necklace, &pair.s_bar, &bar));
        }
        Ok(CutPair {
            s: unique(hits.into_iter().collect(), alpha)?,
            s_bar: unique(bar_hits.into_iter().collect(), &bar)?,
        })
    }

    fn two_component(&mut self, necklace: &Necklace, alpha: &AlphaVector, depth: usize) -> Result<CutPair> {
        let n = necklace.n();
        if let Some(c) = (0..n).find(|&c| necklace.component_count(c) > 2) {
            return Err(Error::precondition(format!(
                "colour {} has more than two components",
                necklace.name(c)
            )));
        }
        if n <= BRUTE_FORCE_COLOURS {
            self.record(depth, necklace, StepKind::BruteForce, &[], None);
            return brute_force_cut(necklace, alpha);
        }
        let bar = complement_unchecked(necklace, alpha);
        if let Some(step) = neighbouring_step(necklace) {
            return self.via_removal(necklace, alpha, &bar, &step, |f| f, depth, true);
        }
        let comps = necklace.components();
        let first = comps[0];
        let last = comps[comps.len() - 1];
        if necklace.is_interval(first.colour) {
            let step = ReductionStep::removal(StepKind::FirstInterval, necklace, vec![(first.colour, vec![first])]);
            return self.via_removal(necklace, alpha, &bar, &step, |f| !f, depth, true);
        }
        if necklace.is_interval(last.colour) {
            let step = ReductionStep::removal(StepKind::LastInterval, necklace, vec![(last.colour, vec![last])]);
            return self.via_removal(necklace, alpha, &bar, &step, |f| f, depth, true);
        }
        if first.colour == last.colour {
            let step = ReductionStep::removal(
                StepKind::SameColourEnds,
                necklace,
                vec![(first.colour, vec![first, last])],
            );
            self.record(depth, necklace, StepKind::SameColourEnds, &[first.colour], None);
            let pair = self.two_component(step.child(), &step.child_alpha(alpha), depth + 1)?;
            let mut s = BTreeSet::new();
            let mut s_bar = BTreeSet::new();
            for child_cut in [&pair.s, &pair.s_bar] {
                s.extend(step.lifts(necklace, child_cut, alpha));
                s_bar.extend(step.lifts(necklace, child_cut, &bar));
            }
            return Ok(CutPair {
                s: unique(s.into_iter().collect(), alpha)?,
                s_bar: unique(s_bar.into_iter().collect(), &bar)?,
            });
        }
        if !is_necklace_irreducible(necklace) {
            return Err(Error::promise("reduced necklace is not irreducible"));
        }
        self.record(depth, necklace, StepKind::Irreducible, &[], None);
        // The structural checks passed, so a misshapen label graph means the
        // input was not separable.
        solve_irreducible(necklace, alpha).map_err(|e| match e {
            Error::Precondition(msg) => Error::PromiseViolation(msg),
            e => e,
        })
    }
}

/// Every way to pick one component of each listed colour, in lexicographic
/// order by colour then position.
fn component_choices(necklace: &Necklace, colours: &[usize]) -> Vec<Vec<Component>> {
    let mut combos = vec![Vec::new()];
    for &c in colours {
        combos = combos
            .into_iter()
            .flat_map(|prefix: Vec<Component>| {
                necklace.colour_components(c).map(move |&comp| {
                    let mut next = prefix.clone();
                    next.push(comp);
                    next
                })
            })
            .collect();
    }
    combos
}

fn verified(necklace: &Necklace, alpha: &AlphaVector, pair: CutPair) -> Result<CutPair> {
    let bar = complement_unchecked(necklace, alpha);
    for (cut, target) in [(&pair.s, alpha), (&pair.s_bar, &bar)] {
        cut.validate(necklace)
            .map_err(|e| Error::promise(format!("solver produced an invalid cut: {e}")))?;
        if evaluate_unchecked(necklace, cut).alpha != *target {
            return Err(Error::promise(format!(
                "solver cut does not realise {:?}",
                target.values()
            )));
        }
    }
    Ok(pair)
}

/// The unique cut for `alpha` and the unique cut for its complement, on an
/// n-separable necklace. Both cuts are re-evaluated before returning.
pub fn solve_alpha_pair(necklace: &Necklace, alpha: &AlphaVector) -> Result<CutPair> {
    solve_alpha_pair_traced(necklace, alpha).map(|(pair, _)| pair)
}

pub fn solve_alpha_pair_traced(
    necklace: &Necklace,
    alpha: &AlphaVector,
) -> Result<(CutPair, ReductionTrace)> {
    alpha.validate(necklace)?;
    let mut solver = Solver {
        trace: ReductionTrace::default(),
    };
    let pair = solver.general(necklace, alpha, 0)?;
    Ok((verified(necklace, alpha, pair)?, solver.trace))
}

/// The same pipeline entered at the at-most-two-components stage.
pub fn solve_two_component(necklace: &Necklace, alpha: &AlphaVector) -> Result<CutPair> {
    alpha.validate(necklace)?;
    let mut solver = Solver {
        trace: ReductionTrace::default(),
    };
    let pair = solver.two_component(necklace, alpha, 0)?;
    verified(necklace, alpha, pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::evaluate_cut;

    fn neck(s: &str) -> Necklace {
        Necklace::parse(s).unwrap()
    }

    fn named_cut(neck: &Necklace, named: &[(&str, usize)]) -> Cut {
        let mut points = vec![0; neck.n()];
        for &(name, pos) in named {
            points[neck.colour_by_name(name).unwrap()] = pos - 1;
        }
        Cut::new(points)
    }

    #[test]
    fn brute_force_examples() {
        let n = neck("a b a");
        let pair = brute_force_cut(&n, &AlphaVector::new(vec![2, 1])).unwrap();
        assert_eq!(pair.s, named_cut(&n, &[("a", 1), ("b", 2)]));

        let n = neck("a a b b");
        let pair = brute_force_cut(&n, &AlphaVector::new(vec![2, 2])).unwrap();
        assert_eq!(pair.s, named_cut(&n, &[("a", 2), ("b", 3)]));
    }

    #[test]
    fn brute_force_split_colour_both_orders() {
        let alpha_order =
            Necklace::from_tokens_with_order(&["b", "a", "a", "b"], &["a", "b"]).unwrap();
        let pair = brute_force_cut(&alpha_order, &AlphaVector::new(vec![1, 1])).unwrap();
        assert_eq!(pair.s, named_cut(&alpha_order, &[("a", 2), ("b", 1)]));

        let first_seen = neck("b a a b");
        let pair = brute_force_cut(&first_seen, &AlphaVector::new(vec![1, 1])).unwrap();
        assert_eq!(pair.s, named_cut(&first_seen, &[("a", 3), ("b", 4)]));
    }

    #[test]
    fn solve_examples() {
        let n = neck("a a b b");
        let pair = solve_alpha_pair(&n, &AlphaVector::new(vec![1, 1])).unwrap();
        assert_eq!(pair.s, named_cut(&n, &[("a", 1), ("b", 4)]));

        let n = neck("a a a");
        let pair = solve_alpha_pair(&n, &AlphaVector::new(vec![2])).unwrap();
        assert_eq!(pair.s, Cut::new(vec![1]));
        assert_eq!(pair.s_bar, pair.s);
    }

    #[test]
    fn shift_examples() {
        let n = neck("a a a");
        let cut = Cut::new(vec![1]);
        let comp = n.components()[0];
        let same = shift_to_alpha(&cut, &n, &[comp], &AlphaVector::new(vec![2])).unwrap();
        assert_eq!(same, cut);

        // With the sign even, the left side of a's only point is positive.
        let start = Cut::new(vec![0]);
        let moved = shift_to_alpha(&start, &n, &[comp], &AlphaVector::new(vec![3])).unwrap();
        assert_eq!(moved, Cut::new(vec![2]));

        let n = neck("a b b b a");
        let b = n.components()[1];
        let start = named_cut(&n, &[("a", 5), ("b", 2)]);
        assert!(shift_to_alpha(&start, &n, &[b], &AlphaVector::new(vec![2, 4])).is_none());
    }

    #[test]
    fn neighbouring_removal_examples() {
        let n = neck("c a b c");
        let alpha = AlphaVector::new(vec![1, 1, 1]);
        let (child, child_alpha, step) = remove_neighbouring_intervals(&n, &alpha).unwrap();
        assert_eq!(child.to_text(), "c c");
        assert_eq!(child_alpha.values(), &[1]);
        let starts: Vec<(String, usize)> = step
            .removed
            .iter()
            .map(|(c, comps)| (n.name(*c).to_string(), comps[0].start + 1))
            .collect();
        assert_eq!(starts, vec![("a".to_string(), 2), ("b".to_string(), 3)]);

        let n = neck("a b");
        let (child, _, _) =
            remove_neighbouring_intervals(&n, &AlphaVector::new(vec![1, 1])).unwrap();
        assert!(child.is_empty());
        assert_eq!(child.n(), 0);

        let n = neck("a b a b");
        assert!(remove_neighbouring_intervals(&n, &AlphaVector::new(vec![1, 1])).is_err());
    }

    #[test]
    fn parity_flip_adjacent_pair() {
        // a and b sit between c's beads; every other colour has a larger id.
        let n = neck("a b c c");
        let step = neighbouring_step(&n).unwrap();
        assert!(!parity_flip_on_insert(&n, &step));
    }

    #[test]
    fn parity_flip_first_interval() {
        // Removing the first interval z (id 0) adds no inversions...
        let n = neck("z a b a b");
        let z = n.components()[0];
        let step = ReductionStep::removal(StepKind::FirstInterval, &n, vec![(0, vec![z])]);
        assert!(!parity_flip_on_insert(&n, &step));
        // ...but with ids fixed so that one remaining colour precedes z, it
        // adds exactly one.
        let n = Necklace::from_tokens_with_order(&["z", "a", "b", "a", "b"], &["a", "z", "b"]).unwrap();
        let z = n.components()[0];
        let step = ReductionStep::removal(StepKind::FirstInterval, &n, vec![(1, vec![z])]);
        assert!(parity_flip_on_insert(&n, &step));
    }

    #[test]
    fn pair_is_verified() {
        let n = neck("x 1 2 3 1 6 5 4 3 5");
        let alpha = AlphaVector::new(vec![1, 2, 1, 2, 1, 2, 1]);
        let pair = solve_alpha_pair(&n, &alpha).unwrap();
        assert_eq!(evaluate_cut(&n, &pair.s).unwrap().alpha, alpha);
    }

    #[test]
    fn non_separable_never_returns_wrong_cut() {
        let n = neck("a b a b");
        for a in 1..=2 {
            for b in 1..=2 {
                let alpha = AlphaVector::new(vec![a, b]);
                if let Ok(pair) = solve_alpha_pair(&n, &alpha) {
                    assert_eq!(evaluate_cut(&n, &pair.s).unwrap().alpha, alpha);
                }
            }
        }
    }
}
