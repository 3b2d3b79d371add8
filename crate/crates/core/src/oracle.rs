//! Exhaustive ground truth: every cut of a necklace, evaluated from the
//! definition with no shared code paths beyond the data types.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::necklace::{evaluate_unchecked, AlphaVector, Cut, CutEvaluation, Necklace, Parity};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Number of cuts, the product of the colour sizes.
pub fn cut_count(necklace: &Necklace) -> u128 {
    necklace
        .colour_sizes()
        .iter()
        .fold(1u128, |acc, &s| acc.saturating_mul(s as u128))
}

fn check_budget(necklace: &Necklace, budget: u128) -> Result<()> {
    let count = cut_count(necklace);
    if count > budget {
        return Err(Error::LimitExceeded {
            what: "cut enumeration",
            limit: budget,
            actual: count,
        });
    }
    Ok(())
}

/// Sign by inversion count, positive class by counting cut points left of
/// each bead.
pub fn reference_alpha(necklace: &Necklace, cut: &Cut) -> (Parity, AlphaVector) {
    let points = cut.points();
    let n = points.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&c| points[c]);
    let inversions = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| order[i] > order[j])
        .count();
    let sign = Parity::of(inversions);
    let mut alpha = vec![0; n];
    for (pos, &c) in necklace.beads().iter().enumerate() {
        if points[c] == pos {
            alpha[c] += 1;
            continue;
        }
        let before = points.iter().filter(|&&p| p < pos).count();
        if before % 2 == inversions % 2 {
            alpha[c] += 1;
        }
    }
    (sign, AlphaVector::new(alpha))
}

/// Calls `f` on every cut in odometer order over bead positions, stopping
/// early if `f` breaks.
pub fn for_each_cut(
    necklace: &Necklace,
    budget: u128,
    mut f: impl FnMut(&Cut) -> ControlFlow<()>,
) -> Result<()> {
    check_budget(necklace, budget)?;
    let n = necklace.n();
    let choices: Vec<Vec<usize>> = (0..n).map(|c| necklace.positions_of(c)).collect();
    let mut pick = vec![0usize; n];
    let mut cut = Cut::new(choices.iter().map(|p| p[0]).collect());
    loop {
        if f(&cut).is_break() {
            return Ok(());
        }
        let mut c = 0;
        while c < n && pick[c] + 1 == choices[c].len() {
            pick[c] = 0;
            cut.set(c, choices[c][0]);
            c += 1;
        }
        if c == n {
            return Ok(());
        }
        pick[c] += 1;
        cut.set(c, choices[c][pick[c]]);
    }
}

/// Every cut with its evaluation.
pub fn enumerate_all_cuts(necklace: &Necklace) -> Result<Vec<(Cut, CutEvaluation)>> {
    enumerate_all_cuts_with_budget(necklace, DEFAULT_BUDGET)
}

pub fn enumerate_all_cuts_with_budget(
    necklace: &Necklace,
    budget: u128,
) -> Result<Vec<(Cut, CutEvaluation)>> {
    let mut out = Vec::new();
    for_each_cut(necklace, budget, |cut| {
        out.push((cut.clone(), evaluate_unchecked(necklace, cut)));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The unique cut realising `alpha`, if any. More than one is an error.
pub fn oracle_solve(necklace: &Necklace, alpha: &AlphaVector) -> Result<Option<Cut>> {
    oracle_solve_with_budget(necklace, alpha, DEFAULT_BUDGET)
}

pub fn oracle_solve_with_budget(
    necklace: &Necklace,
    alpha: &AlphaVector,
    budget: u128,
) -> Result<Option<Cut>> {
    let mut found: Option<Cut> = None;
    let mut multiple = false;
    for_each_cut(necklace, budget, |cut| {
        if reference_alpha(necklace, cut).1 == *alpha {
            if found.is_some() {
                multiple = true;
                return ControlFlow::Break(());
            }
            found = Some(cut.clone());
        }
        ControlFlow::Continue(())
    })?;
    if multiple {
        return Err(Error::NotUnique(alpha.values().to_vec()));
    }
    Ok(found)
}

/// All cuts grouped by the alpha they realise.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlphaCensus {
    pub entries: BTreeMap<AlphaVector, Vec<Cut>>,
    pub total: u128,
}

impl AlphaCensus {
    pub fn get(&self, alpha: &AlphaVector) -> &[Cut] {
        self.entries.get(alpha).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The cut for `alpha` if exactly one realises it.
    pub fn unique(&self, alpha: &AlphaVector) -> Option<&Cut> {
        match self.get(alpha) {
            [cut] => Some(cut),
            _ => None,
        }
    }

    /// Alphas realised by more than one cut.
    pub fn duplicates(&self) -> impl Iterator<Item = (&AlphaVector, &Vec<Cut>)> {
        self.entries.iter().filter(|(_, cuts)| cuts.len() > 1)
    }

    /// Number of valid alphas no cut realises.
    pub fn missing(&self, necklace: &Necklace) -> u128 {
        cut_count(necklace) - self.entries.len() as u128
    }

    /// Every valid alpha is realised by exactly one cut.
    pub fn is_bijection(&self, necklace: &Necklace) -> bool {
        self.total == cut_count(necklace)
            && self.entries.len() as u128 == self.total
            && self.entries.values().all(|cuts| cuts.len() == 1)
    }

    pub fn to_text(&self, necklace: &Necklace) -> String {
        let mut out = format!(
            "cuts {} alphas {} duplicated {} missing {} bijection {}\n",
            self.total,
            self.entries.len(),
            self.duplicates().count(),
            self.missing(necklace),
            if self.is_bijection(necklace) { "yes" } else { "no" }
        );
        for (alpha, cuts) in &self.entries {
            let values: Vec<String> = alpha.values().iter().map(usize::to_string).collect();
            out.push_str(&format!("({}) {}", values.join(","), cuts.len()));
            if cuts.len() > 1 {
                out.push_str(" duplicate");
            }
            out.push('\n');
        }
        out
    }
}

pub fn uniqueness_census(necklace: &Necklace) -> Result<AlphaCensus> {
    uniqueness_census_with_budget(necklace, DEFAULT_BUDGET)
}

pub fn uniqueness_census_with_budget(necklace: &Necklace, budget: u128) -> Result<AlphaCensus> {
    let mut census = AlphaCensus::default();
    for_each_cut(necklace, budget, |cut| {
        census
            .entries
            .entry(reference_alpha(necklace, cut).1)
            .or_default()
            .push(cut.clone());
        census.total += 1;
        ControlFlow::Continue(())
    })?;
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::evaluate_cut;

    fn neck(s: &str) -> Necklace {
        Necklace::parse(s).unwrap()
    }

    #[test]
    fn single_colour() {
        let n = neck("a a a");
        let all = enumerate_all_cuts(&n).unwrap();
        let alphas: Vec<usize> = all.iter().map(|(_, e)| e.alpha.get(0)).collect();
        assert_eq!(alphas, vec![1, 2, 3]);
        assert!(uniqueness_census(&n).unwrap().is_bijection(&n));
    }

    #[test]
    fn two_colours() {
        let n = neck("a a b b");
        let census = uniqueness_census(&n).unwrap();
        assert_eq!(census.total, 4);
        assert!(census.is_bijection(&n));
        let cut = oracle_solve(&n, &AlphaVector::new(vec![1, 1])).unwrap().unwrap();
        assert_eq!(cut, Cut::from_one_based(&[1, 4]));
        assert_eq!(enumerate_all_cuts(&neck("b a a b")).unwrap().len(), 4);
    }

    #[test]
    fn aba() {
        let n = neck("a b a");
        let cut = oracle_solve(&n, &AlphaVector::new(vec![1, 1])).unwrap().unwrap();
        assert_eq!(cut, Cut::from_one_based(&[3, 2]));
    }

    #[test]
    fn abab_is_not_a_bijection() {
        let n = neck("a b a b");
        let census = uniqueness_census(&n).unwrap();
        assert!(!census.is_bijection(&n));
        assert!(census.duplicates().count() > 0);
        assert!(census.missing(&n) > 0);
        let dup = census.duplicates().next().unwrap().0.clone();
        assert!(matches!(oracle_solve(&n, &dup), Err(Error::NotUnique(_))));
    }

    #[test]
    fn reference_agrees_with_evaluation() {
        let n = neck("1 2 3 1 6 5 4 3 5 2 2 6");
        for (cut, ev) in enumerate_all_cuts(&n).unwrap() {
            let (sign, alpha) = reference_alpha(&n, &cut);
            assert_eq!(sign, ev.sign);
            assert_eq!(alpha, ev.alpha);
        }
        assert_eq!(
            evaluate_cut(&n, &Cut::from_one_based(&[1, 2, 3, 5, 6, 7])).unwrap().alpha,
            reference_alpha(&n, &Cut::from_one_based(&[1, 2, 3, 5, 6, 7])).1
        );
    }

    #[test]
    fn budget() {
        let n = neck("a a b b");
        assert!(matches!(
            uniqueness_census_with_budget(&n, 3),
            Err(Error::LimitExceeded { actual: 4, .. })
        ));
    }
}
