//! Necklaces, cuts and cut evaluation.
//!
//! A necklace is a sequence of coloured beads. Bead positions are 0-based
//! indices into that sequence; the text formats in [`crate::format`] use
//! 1-based positions. Colours carry a dense id which fixes the order used for
//! the permutation sign of a cut. Parsing assigns ids by first appearance,
//! [`Necklace::from_tokens_with_order`] takes an explicit order.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A colour of a necklace: its dense id and token name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Colour<'a> {
    pub id: usize,
    pub name: &'a str,
}

/// A maximal run of equally coloured beads. `start..=end` are bead positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    pub colour: usize,
    pub start: usize,
    pub end: usize,
}

impl Component {
    pub fn size(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn contains(&self, position: usize) -> bool {
        self.start <= position && position <= self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Necklace {
    names: Vec<String>,
    beads: Vec<usize>,
    components: Vec<Component>,
    /// Per colour, indices into `components` in position order.
    by_colour: Vec<Vec<usize>>,
    sizes: Vec<usize>,
}

impl Necklace {
    /// Parses whitespace separated colour tokens, one token per bead.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        Self::from_tokens(&tokens)
    }

    /// Builds a necklace from tokens, numbering colours by first appearance.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut names = Vec::new();
        let mut beads = Vec::with_capacity(tokens.len());
        for token in tokens {
            let token = token.as_ref();
            let id = *index.entry(token).or_insert_with(|| {
                names.push(token.to_string());
                names.len() - 1
            });
            beads.push(id);
        }
        Self::from_colour_ids(beads, names)
    }

    /// Builds a necklace whose colour ids follow `order` rather than first
    /// appearance. Every token must occur in `order` and vice versa.
    pub fn from_tokens_with_order<S: AsRef<str>, T: AsRef<str>>(
        tokens: &[S],
        order: &[T],
    ) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut index = HashMap::new();
        for (id, name) in order.iter().enumerate() {
            if index.insert(name.as_ref(), id).is_some() {
                return Err(Error::Parse(format!(
                    "colour {} listed twice in order",
                    name.as_ref()
                )));
            }
        }
        let beads = tokens
            .iter()
            .map(|t| {
                index
                    .get(t.as_ref())
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("colour {} not in order", t.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        let names = order.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_colour_ids(beads, names)
    }

    /// Builds a necklace from colour ids. Every id in `0..names.len()` must
    /// occur at least once. An empty necklace (no colours, no beads) is
    /// allowed here; it arises when reductions remove every colour.
    pub fn from_colour_ids(beads: Vec<usize>, names: Vec<String>) -> Result<Self> {
        let n = names.len();
        let mut sizes = vec![0usize; n];
        for &b in &beads {
            if b >= n {
                return Err(Error::Parse(format!("colour id {b} out of range")));
            }
            sizes[b] += 1;
        }
        if let Some(c) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::Parse(format!("colour {} has no beads", names[c])));
        }
        let mut components: Vec<Component> = Vec::new();
        for (pos, &c) in beads.iter().enumerate() {
            match components.last_mut() {
                Some(last) if last.colour == c => last.end = pos,
                _ => components.push(Component {
                    colour: c,
                    start: pos,
                    end: pos,
                }),
            }
        }
        let mut by_colour = vec![Vec::new(); n];
        for (i, comp) in components.iter().enumerate() {
            by_colour[comp.colour].push(i);
        }
        Ok(Necklace {
            names,
            beads,
            components,
            by_colour,
            sizes,
        })
    }

    /// The necklace with no beads and no colours.
    pub fn empty() -> Self {
        Necklace {
            names: Vec::new(),
            beads: Vec::new(),
            components: Vec::new(),
            by_colour: Vec::new(),
            sizes: Vec::new(),
        }
    }

    /// Number of colours.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// Number of beads.
    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    pub fn beads(&self) -> &[usize] {
        &self.beads
    }

    pub fn colour_at(&self, position: usize) -> usize {
        self.beads[position]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, colour: usize) -> &str {
        &self.names[colour]
    }

    pub fn colour(&self, id: usize) -> Colour<'_> {
        Colour {
            id,
            name: &self.names[id],
        }
    }

    pub fn colours(&self) -> impl Iterator<Item = Colour<'_>> {
        (0..self.n()).map(move |id| self.colour(id))
    }

    pub fn colour_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of beads of `colour`, written |C_i| in the literature.
    pub fn colour_size(&self, colour: usize) -> usize {
        self.sizes[colour]
    }

    pub fn colour_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Components of `colour`, in position order.
    pub fn colour_components(&self, colour: usize) -> impl Iterator<Item = &Component> + '_ {
        self.by_colour[colour].iter().map(|&i| &self.components[i])
    }

    /// Indices into [`Necklace::components`] of the components of `colour`.
    pub fn colour_component_indices(&self, colour: usize) -> &[usize] {
        &self.by_colour[colour]
    }

    pub fn component_count(&self, colour: usize) -> usize {
        self.by_colour[colour].len()
    }

    /// A colour is an interval if it consists of a single component.
    pub fn is_interval(&self, colour: usize) -> bool {
        self.by_colour[colour].len() == 1
    }

    /// Positions of all beads of `colour`, ascending.
    pub fn positions_of(&self, colour: usize) -> Vec<usize> {
        self.colour_components(colour)
            .flat_map(|c| c.start..=c.end)
            .collect()
    }

    pub fn tokens(&self) -> Vec<&str> {
        self.beads.iter().map(|&c| self.names[c].as_str()).collect()
    }

    /// Renders the necklace in its text format: tokens separated by spaces.
    pub fn to_text(&self) -> String {
        self.tokens().join(" ")
    }

    /// Keeps the beads for which `keep` is true. Colours left without beads
    /// are dropped; the survivors keep their relative id order.
    ///
    /// Returns the restricted necklace together with the maps from its
    /// colours and positions back into `self`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Restriction {
        let mut parent_positions = Vec::new();
        let mut present = vec![false; self.n()];
        for pos in 0..self.len() {
            if keep(pos) {
                parent_positions.push(pos);
                present[self.beads[pos]] = true;
            }
        }
        let mut new_id = vec![usize::MAX; self.n()];
        let mut parent_colours = Vec::new();
        for c in 0..self.n() {
            if present[c] {
                new_id[c] = parent_colours.len();
                parent_colours.push(c);
            }
        }
        let beads = parent_positions
            .iter()
            .map(|&p| new_id[self.beads[p]])
            .collect();
        let names = parent_colours
            .iter()
            .map(|&c| self.names[c].clone())
            .collect();
        let necklace = Necklace::from_colour_ids(beads, names)
            .expect("restriction keeps only colours that still have beads");
        Restriction {
            necklace,
            parent_colours,
            parent_positions,
        }
    }

    /// Removes every bead of the listed colours.
    pub fn without_colours(&self, colours: &[usize]) -> Restriction {
        let mut drop = vec![false; self.n()];
        for &c in colours {
            drop[c] = true;
        }
        self.restrict(|p| !drop[self.beads[p]])
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A sub-necklace together with the maps back into its parent.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub necklace: Necklace,
    /// Child colour id -> parent colour id.
    pub parent_colours: Vec<usize>,
    /// Child position -> parent position.
    pub parent_positions: Vec<usize>,
}

impl Restriction {
    /// Maps a cut of the child necklace into the parent. Parent colours not
    /// present in the child take their position from `fill`.
    pub fn lift(&self, child: &Cut, parent_n: usize, fill: &[(usize, usize)]) -> Cut {
        let mut points = vec![usize::MAX; parent_n];
        for (child_colour, &pos) in child.points().iter().enumerate() {
            points[self.parent_colours[child_colour]] = self.parent_positions[pos];
        }
        for &(colour, pos) in fill {
            points[colour] = pos;
        }
        debug_assert!(points.iter().all(|&p| p != usize::MAX));
        Cut::new(points)
    }

    /// Restricts a parent alpha vector to the child's colours.
    pub fn restrict_alpha(&self, alpha: &AlphaVector) -> AlphaVector {
        AlphaVector::new(
            self.parent_colours
                .iter()
                .map(|&c| alpha.get(c))
                .collect(),
        )
    }
}

/// Permutation parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(value: usize) -> Self {
        if value.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn matches(self, value: usize) -> bool {
        Parity::of(value) == self
    }

    /// "+" for even, "-" for odd.
    pub fn symbol(self) -> &'static str {
        match self {
            Parity::Even => "+",
            Parity::Odd => "-",
        }
    }
}

/// Parity of a permutation of `0..perm.len()`, via its cycle count.
pub fn permutation_parity(perm: &[usize]) -> Parity {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    Parity::of(perm.len() - cycles)
}

/// Per-colour positive-side targets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaVector(Vec<usize>);

impl AlphaVector {
    pub fn new(values: Vec<usize>) -> Self {
        AlphaVector(values)
    }

    /// Builds and validates against `necklace`.
    pub fn for_necklace(necklace: &Necklace, values: Vec<usize>) -> Result<Self> {
        let alpha = AlphaVector(values);
        alpha.validate(necklace)?;
        Ok(alpha)
    }

    /// Checks `1 <= alpha_i <= |C_i|` for every colour.
    pub fn validate(&self, necklace: &Necklace) -> Result<()> {
        if self.0.len() != necklace.n() {
            return Err(Error::InvalidAlpha(format!(
                "expected {} entries, got {}",
                necklace.n(),
                self.0.len()
            )));
        }
        for (c, &a) in self.0.iter().enumerate() {
            if a < 1 || a > necklace.colour_size(c) {
                return Err(Error::InvalidAlpha(format!(
                    "alpha({}) = {} outside 1..={}",
                    necklace.name(c),
                    a,
                    necklace.colour_size(c)
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, colour: usize) -> usize {
        self.0[colour]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

/// Returns `(|C_1| - a_1 + 1, ..., |C_n| - a_n + 1)`, the count on the other
/// side of a cut when cut beads are counted on both sides.
pub fn complement_alpha(necklace: &Necklace, alpha: &AlphaVector) -> Result<AlphaVector> {
    alpha.validate(necklace)?;
    Ok(complement_unchecked(necklace, alpha))
}

pub(crate) fn complement_unchecked(necklace: &Necklace, alpha: &AlphaVector) -> AlphaVector {
    AlphaVector(
        alpha
            .0
            .iter()
            .enumerate()
            .map(|(c, &a)| necklace.colour_size(c) + 1 - a)
            .collect(),
    )
}

/// One cut bead position per colour.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut(Vec<usize>);

impl Cut {
    pub fn new(points: Vec<usize>) -> Self {
        Cut(points)
    }

    /// Builds a cut from 1-based positions.
    pub fn from_one_based(points: &[usize]) -> Self {
        Cut(points.iter().map(|p| p - 1).collect())
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }

    pub fn point(&self, colour: usize) -> usize {
        self.0[colour]
    }

    pub fn set(&mut self, colour: usize, position: usize) {
        self.0[colour] = position;
    }

    pub fn validate(&self, necklace: &Necklace) -> Result<()> {
        if self.0.len() != necklace.n() {
            return Err(Error::InvalidCut(format!(
                "expected {} cut points, got {}",
                necklace.n(),
                self.0.len()
            )));
        }
        for (c, &p) in self.0.iter().enumerate() {
            if p >= necklace.len() || necklace.colour_at(p) != c {
                return Err(Error::InvalidCut(format!(
                    "cut point {} for colour {} is not a bead of that colour",
                    p + 1,
                    necklace.name(c)
                )));
            }
        }
        Ok(())
    }
}

/// The outcome of evaluating a cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutEvaluation {
    /// Parity of the colour sequence read in position order.
    pub sign: Parity,
    /// Colours sorted by cut position.
    pub order: Vec<usize>,
    /// Sorted cut positions.
    pub sorted_points: Vec<usize>,
    /// Per colour, its rank in `order`.
    pub rank: Vec<usize>,
    pub alpha: AlphaVector,
}

impl CutEvaluation {
    /// Intervals are indexed 0..=n; interval `j` lies between the `j`-th and
    /// `j+1`-th sorted cut points. The positive class is the one whose index
    /// parity equals the sign.
    pub fn interval_positive(&self, index: usize) -> bool {
        self.sign.matches(index)
    }

    /// Whether the interval just left of `colour`'s cut point is positive.
    pub fn left_side_positive(&self, colour: usize) -> bool {
        self.interval_positive(self.rank[colour])
    }

    /// Index of the interval containing the gap right after `position`.
    pub fn interval_after(&self, position: usize) -> usize {
        self.sorted_points.partition_point(|&s| s <= position)
    }

    /// The positive intervals as 1-based closed bounds; `None` stands for
    /// an unbounded end.
    pub fn positive_intervals(&self) -> Vec<(Option<usize>, Option<usize>)> {
        let n = self.sorted_points.len();
        (0..=n)
            .filter(|&j| self.interval_positive(j))
            .map(|j| {
                let lo = if j == 0 {
                    None
                } else {
                    Some(self.sorted_points[j - 1] + 1)
                };
                let hi = if j == n {
                    None
                } else {
                    Some(self.sorted_points[j] + 1)
                };
                (lo, hi)
            })
            .collect()
    }
}

/// Evaluates a cut: sorts the cut points, takes the permutation sign, and
/// counts per colour the beads on the positive side. Cut beads lie on both
/// closed neighbouring intervals and so always count.
pub fn evaluate_cut(necklace: &Necklace, cut: &Cut) -> Result<CutEvaluation> {
    cut.validate(necklace)?;
    Ok(evaluate_unchecked(necklace, cut))
}

pub(crate) fn evaluate_unchecked(necklace: &Necklace, cut: &Cut) -> CutEvaluation {
    let n = necklace.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&c| cut.point(c));
    let sorted_points: Vec<usize> = order.iter().map(|&c| cut.point(c)).collect();
    let mut rank = vec![0; n];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r;
    }
    let sign = permutation_parity(&order);
    let mut alpha = vec![0usize; n];
    let mut interval = 0usize;
    for (pos, &c) in necklace.beads().iter().enumerate() {
        if interval < n && sorted_points[interval] == pos {
            alpha[c] += 1;
            interval += 1;
        } else if sign.matches(interval) {
            alpha[c] += 1;
        }
    }
    CutEvaluation {
        sign,
        order,
        sorted_points,
        rank,
        alpha: AlphaVector(alpha),
    }
}
