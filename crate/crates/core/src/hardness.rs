//! The E3-SAT reduction to deciding whether a necklace has a cut for alpha
//! or its complement, with witness cuts and an exact backtracking decider.

use std::fmt;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::necklace::{complement_unchecked, evaluate_unchecked, AlphaVector, Cut, Necklace};

/// A CNF formula with exactly three distinct variables per clause. Literals
/// use DIMACS numbering: `v` or `-v` for variable `v` in `1..=variables`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E3SatFormula {
    variables: usize,
    clauses: Vec<[i32; 3]>,
    names: Vec<String>,
}

impl E3SatFormula {
    pub fn new(variables: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        let names = (1..=variables).map(|v| format!("x{v}")).collect();
        Self::with_names(variables, clauses, names)
    }

    pub fn with_names(variables: usize, clauses: Vec<[i32; 3]>, names: Vec<String>) -> Result<Self> {
        if names.len() != variables {
            return Err(Error::Parse(format!(
                "{} names for {variables} variables",
                names.len()
            )));
        }
        for (i, clause) in clauses.iter().enumerate() {
            let vars: Vec<usize> = clause.iter().map(|l| l.unsigned_abs() as usize).collect();
            if vars.iter().any(|&v| v == 0 || v > variables) {
                return Err(Error::Parse(format!("clause {} uses an unknown variable", i + 1)));
            }
            if vars[0] == vars[1] || vars[0] == vars[2] || vars[1] == vars[2] {
                return Err(Error::Parse(format!(
                    "clause {} does not have three distinct variables",
                    i + 1
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::Parse(format!("duplicate variable name {dup:?}")));
        }
        Ok(E3SatFormula {
            variables,
            clauses,
            names,
        })
    }

    /// Reads DIMACS CNF. Comment lines start with `c`; the `p cnf` header is
    /// required and every clause must end with `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::Parse(format!("bad header {line:?}")));
                }
                let num = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad header number {s:?}")))
                };
                header = Some((num(parts[2])?, num(parts[3])?));
                continue;
            }
            if header.is_none() {
                return Err(Error::Parse("clause before the p cnf header".into()));
            }
            for token in line.split_whitespace() {
                let lit: i32 = token
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad literal {token:?}")))?;
                if lit == 0 {
                    let clause: [i32; 3] = current.as_slice().try_into().map_err(|_| {
                        Error::Parse(format!(
                            "clause {} has {} literals, expected 3",
                            clauses.len() + 1,
                            current.len()
                        ))
                    })?;
                    clauses.push(clause);
                    current.clear();
                } else {
                    current.push(lit);
                }
            }
        }
        let (variables, count) = header.ok_or_else(|| Error::Parse("missing p cnf header".into()))?;
        if !current.is_empty() {
            return Err(Error::Parse("last clause is not terminated by 0".into()));
        }
        if clauses.len() != count {
            return Err(Error::Parse(format!(
                "header announces {count} clauses, found {}",
                clauses.len()
            )));
        }
        Self::new(variables, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variables, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var - 1]
    }

    /// Clause indices (1-based) containing `var`, in order.
    pub fn occurrences(&self, var: usize) -> Vec<usize> {
        self.clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().any(|l| l.unsigned_abs() as usize == var))
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `assignment[v - 1]` is the value of variable `v`.
    pub fn literal_true(literal: i32, assignment: &[bool]) -> bool {
        let value = assignment[literal.unsigned_abs() as usize - 1];
        if literal > 0 {
            value
        } else {
            !value
        }
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.variables
            && self
                .clauses
                .iter()
                .all(|c| c.iter().any(|&l| Self::literal_true(l, assignment)))
    }
}

/// What a colour of the reduction stands for. Variables are 1-based, as are
/// clauses; occurrence 0 is the variable's own gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Role {
    A,
    B,
    Positive,
    Negative,
    VarA { var: usize, occurrence: usize },
    VarB { var: usize, occurrence: usize },
    Transfer { var: usize },
    Clause { clause: usize },
    ClauseSeparator { clause: usize },
    VarSeparator { var: usize },
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::A => write!(f, "a"),
            Role::B => write!(f, "b"),
            Role::Positive => write!(f, "P"),
            Role::Negative => write!(f, "N"),
            Role::VarA { var, occurrence } => write!(f, "x{var}_{occurrence}^A"),
            Role::VarB { var, occurrence } => write!(f, "x{var}_{occurrence}^B"),
            Role::Transfer { var } => write!(f, "x{var}_T"),
            Role::Clause { clause } => write!(f, "C_{clause}"),
            Role::ClauseSeparator { clause } => write!(f, "S_{clause}"),
            Role::VarSeparator { var } => write!(f, "S_x{var}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub necklace: Necklace,
    pub alpha: AlphaVector,
    /// Colour id to role, indexed like the necklace's colours.
    pub legend: Vec<Role>,
}

impl ReductionOutput {
    pub fn colour_of(&self, role: &Role) -> Option<usize> {
        self.legend.iter().position(|r| r == role)
    }

    pub fn legend_text(&self) -> String {
        self.legend
            .iter()
            .enumerate()
            .map(|(c, role)| format!("{} {}\n", self.necklace.name(c), role))
            .collect()
    }
}

struct Builder {
    tokens: Vec<String>,
    names: Vec<String>,
    roles: Vec<Role>,
}

impl Builder {
    fn push(&mut self, name: &str, role: Role) {
        if !self.names.iter().any(|n| n == name) {
            self.names.push(name.to_string());
            self.roles.push(role);
        }
        self.tokens.push(name.to_string());
    }
}

fn colour_names(formula: &E3SatFormula, var: usize) -> (String, impl Fn(usize, char) -> String) {
    let base = formula.name(var).to_string();
    let sep = if base.ends_with(|c: char| c.is_ascii_digit()) { "_" } else { "" };
    let prefix = format!("{base}{sep}");
    (format!("{base}T"), move |i: usize, side: char| format!("{prefix}{i}{side}"))
}

/// Builds the necklace and alpha. Variables occurring in no clause get no
/// beads, since their transfer colour would be empty.
pub fn reduce_e3sat(formula: &E3SatFormula) -> Result<ReductionOutput> {
    let mut b = Builder {
        tokens: Vec::new(),
        names: Vec::new(),
        roles: Vec::new(),
    };
    b.push("a", Role::A);
    b.push("b", Role::B);
    b.push("a", Role::A);
    let used: Vec<usize> = (1..=formula.variables())
        .filter(|&v| !formula.occurrences(v).is_empty())
        .collect();

    for &v in &used {
        let k = formula.occurrences(v).len();
        let (t, side) = colour_names(formula, v);
        let (xa, xb) = (side(0, 'A'), side(0, 'B'));
        let ra = Role::VarA { var: v, occurrence: 0 };
        let rb = Role::VarB { var: v, occurrence: 0 };
        b.push("P", Role::Positive);
        b.push(&xa, ra.clone());
        for _ in 0..k {
            b.push(&t, Role::Transfer { var: v });
        }
        b.push(&xb, rb.clone());
        b.push("P", Role::Positive);
        b.push(&xa, ra);
        b.push(&xb, rb);
        b.push("P", Role::Positive);
    }

    for (ci, clause) in formula.clauses().iter().enumerate() {
        let i = ci + 1;
        let c = format!("C{i}");
        for &lit in clause {
            let v = lit.unsigned_abs() as usize;
            let (t, side) = colour_names(formula, v);
            let (xa, xb) = (side(i, 'A'), side(i, 'B'));
            let ra = Role::VarA { var: v, occurrence: i };
            let rb = Role::VarB { var: v, occurrence: i };
            b.push("P", Role::Positive);
            b.push(&xa, ra.clone());
            if lit > 0 {
                b.push(&c, Role::Clause { clause: i });
            }
            b.push(&xb, rb.clone());
            b.push("P", Role::Positive);
            b.push(&xa, ra);
            b.push(&t, Role::Transfer { var: v });
            if lit < 0 {
                b.push(&c, Role::Clause { clause: i });
            }
            b.push(&xb, rb);
            b.push("P", Role::Positive);
        }
    }

    for i in 1..=formula.clauses().len() {
        let c = format!("C{i}");
        b.push("P", Role::Positive);
        for _ in 0..3 {
            b.push(&c, Role::Clause { clause: i });
        }
        b.push(&format!("S{i}"), Role::ClauseSeparator { clause: i });
        b.push("P", Role::Positive);
    }

    for &v in &used {
        let k = formula.occurrences(v).len();
        let (t, _) = colour_names(formula, v);
        for _ in 0..k {
            b.push("P", Role::Positive);
            b.push(&t, Role::Transfer { var: v });
        }
        for _ in 0..k {
            b.push("N", Role::Negative);
            b.push(&t, Role::Transfer { var: v });
        }
        b.push("N", Role::Negative);
        b.push(&format!("S_{}", formula.name(v)), Role::VarSeparator { var: v });
    }
    b.push("P", Role::Positive);
    b.push("N", Role::Negative);

    let necklace = Necklace::from_tokens_with_order(&b.tokens, &b.names)?;
    let alpha = AlphaVector::new(
        b.roles
            .iter()
            .enumerate()
            .map(|(c, role)| {
                let size = necklace.colour_size(c);
                match role {
                    Role::A => 2,
                    Role::B | Role::Negative | Role::ClauseSeparator { .. } | Role::VarSeparator { .. } => 1,
                    Role::Positive => size,
                    Role::VarA { .. } | Role::VarB { .. } => 2,
                    Role::Transfer { .. } => size / 2,
                    Role::Clause { .. } => 3,
                }
            })
            .collect(),
    );
    alpha.validate(&necklace)?;
    Ok(ReductionOutput {
        necklace,
        alpha,
        legend: b.roles,
    })
}

/// The witness cut for a satisfying assignment: variable gadgets cut at
/// their first copies for true and second copies for false, each clause
/// enforcement cut at the occurrence numbered by its count of true
/// literals, the `k`-th transfer bead of each variable enforcement, every
/// separator, and the final `P N`. Colour `a` is cut at its second bead,
/// or at its first if that is what evaluates correctly.
pub fn assignment_to_cut(
    formula: &E3SatFormula,
    assignment: &[bool],
    output: &ReductionOutput,
) -> Result<Cut> {
    if !formula.is_satisfied_by(assignment) {
        return Err(Error::precondition("assignment does not satisfy the formula"));
    }
    let neck = &output.necklace;
    let positions: Vec<Vec<usize>> = (0..neck.n()).map(|c| neck.positions_of(c)).collect();
    let mut points = vec![0usize; neck.n()];
    for (c, role) in output.legend.iter().enumerate() {
        let at = &positions[c];
        points[c] = match *role {
            Role::A => at[1],
            Role::B | Role::ClauseSeparator { .. } | Role::VarSeparator { .. } => at[0],
            Role::Positive | Role::Negative => at[at.len() - 1],
            Role::VarA { var, .. } | Role::VarB { var, .. } => {
                if assignment[var - 1] {
                    at[0]
                } else {
                    at[1]
                }
            }
            Role::Transfer { .. } => {
                // Enforcement holds the last 2k transfer beads.
                let k = at.len() / 4;
                at[at.len() - 2 * k + k - 1]
            }
            Role::Clause { clause } => {
                let t = formula.clauses()[clause - 1]
                    .iter()
                    .filter(|&&l| E3SatFormula::literal_true(l, assignment))
                    .count();
                // The last three beads are the enforcement run.
                at[at.len() - 3 + t - 1]
            }
        };
    }
    let a = output
        .colour_of(&Role::A)
        .ok_or_else(|| Error::precondition("reduction output has no colour a"))?;
    let bar = complement_unchecked(neck, &output.alpha);
    for a_at in [positions[a][1], positions[a][0]] {
        points[a] = a_at;
        let cut = Cut::new(points.clone());
        let got = evaluate_unchecked(neck, &cut).alpha;
        if got == output.alpha || got == bar {
            return Ok(cut);
        }
    }
    Err(Error::promise(
        "witness cut evaluates to neither alpha nor its complement",
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(Cut),
    No,
    Timeout,
}

struct Search<'a> {
    beads: &'a [usize],
    targets: [Vec<usize>; 2],
    remaining: Vec<usize>,
    even: Vec<usize>,
    cut: Vec<Option<usize>>,
    cuts_made: usize,
    live: [bool; 2],
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
}

impl Search<'_> {
    /// Whether `target` is still reachable for colour `c`.
    fn reachable(&self, c: usize, target: usize) -> bool {
        let e = self.even[c];
        let r = self.remaining[c];
        let (lo, hi) = if self.cut[c].is_some() {
            (e, e + r)
        } else {
            (e + 1, e + r)
        };
        lo <= target && target <= hi
    }

    fn run(&mut self, pos: usize) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return false;
        }
        if pos == self.beads.len() {
            return self.cut.iter().all(Option::is_some)
                && (0..2).any(|k| self.live[k] && self.even == self.targets[k]);
        }
        let c = self.beads[pos];
        self.remaining[c] -= 1;
        let on_even = self.cuts_made.is_multiple_of(2);
        let found = if self.cut[c].is_some() {
            self.step(c, on_even as usize, pos)
        } else {
            self.cut[c] = Some(pos);
            self.cuts_made += 1;
            let here = self.step(c, 1, pos);
            self.cuts_made -= 1;
            if here {
                true
            } else {
                self.cut[c] = None;
                self.remaining[c] > 0 && self.step(c, on_even as usize, pos)
            }
        };
        if !found {
            self.remaining[c] += 1;
        }
        found
    }

    fn step(&mut self, c: usize, add: usize, pos: usize) -> bool {
        self.even[c] += add;
        let saved = self.live;
        for k in 0..2 {
            self.live[k] = self.live[k] && self.reachable(c, self.targets[k][c]);
        }
        let found = (self.live[0] || self.live[1]) && self.run(pos + 1);
        self.live = saved;
        if !found {
            self.even[c] -= add;
        }
        found
    }
}

/// Searches for a cut whose positive side realises `alpha` or its
/// complement. Equivalently, a choice of one bead per colour such that the
/// even-indexed intervals (cut beads included) realise one of the two
/// vectors, since the sign only decides which class is positive.
pub fn decide_alpha_or_complement(
    necklace: &Necklace,
    alpha: &AlphaVector,
    budget: Duration,
) -> Result<Decision> {
    alpha.validate(necklace)?;
    let bar = complement_unchecked(necklace, alpha);
    let mut search = Search {
        beads: necklace.beads(),
        targets: [alpha.values().to_vec(), bar.values().to_vec()],
        remaining: necklace.colour_sizes().to_vec(),
        even: vec![0; necklace.n()],
        cut: vec![None; necklace.n()],
        cuts_made: 0,
        live: [true, true],
        deadline: Instant::now() + budget,
        nodes: 0,
        timed_out: false,
    };
    if search.run(0) {
        let cut = Cut::new(search.cut.iter().map(|p| p.unwrap()).collect());
        let got = evaluate_unchecked(necklace, &cut).alpha;
        if got != *alpha && got != bar {
            return Err(Error::promise("decider produced a cut that does not verify"));
        }
        return Ok(Decision::Yes(cut));
    }
    Ok(if search.timed_out {
        Decision::Timeout
    } else {
        Decision::No
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_all_cuts;

    fn two_clauses() -> E3SatFormula {
        E3SatFormula::with_names(
            4,
            vec![[1, -2, 3], [1, -3, 4]],
            ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn dimacs() {
        let f = E3SatFormula::parse_dimacs("c demo\np cnf 4 2\n1 -2 3 0\n1 -3 4 0\n").unwrap();
        assert_eq!(f.clauses(), &[[1, -2, 3], [1, -3, 4]]);
        assert_eq!(E3SatFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
        assert!(E3SatFormula::parse_dimacs("p cnf 3 1\n1 2 0\n").is_err());
        assert!(E3SatFormula::parse_dimacs("p cnf 3 1\n1 -1 2 0\n").is_err());
        assert!(E3SatFormula::parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
    }

    #[test]
    fn two_clause_counts() {
        let out = reduce_e3sat(&two_clauses()).unwrap();
        let neck = &out.necklace;
        let size = |name: &str| neck.colour_size(neck.colour_by_name(name).unwrap());
        assert_eq!(size("P"), 41);
        assert_eq!(out.alpha.get(neck.colour_by_name("P").unwrap()), 41);
        assert_eq!([size("xT"), size("yT"), size("zT"), size("wT")], [8, 4, 8, 4]);
        assert_eq!(out.alpha.get(neck.colour_by_name("xT").unwrap()), 4);
        assert_eq!(size("C1"), 6);
        assert_eq!(neck.tokens()[..6], ["a", "b", "a", "P", "x0A", "xT"]);
        assert!(neck.tokens().ends_with(&["P", "N"]));
    }

    #[test]
    fn two_clause_witness() {
        let f = two_clauses();
        let out = reduce_e3sat(&f).unwrap();
        let cut = assignment_to_cut(&f, &[false, false, false, true], &out).unwrap();
        let neck = &out.necklace;
        let at = |name: &str| cut.point(neck.colour_by_name(name).unwrap());
        let first = |name: &str| neck.positions_of(neck.colour_by_name(name).unwrap());
        assert_eq!(at("x0A"), first("x0A")[1]);
        assert_eq!(at("w0A"), first("w0A")[0]);
        assert_eq!(at("C1"), first("C1")[3]);
        assert_eq!(at("C2"), first("C2")[4]);
        assert_eq!(at("xT"), first("xT")[5]);
        assert_eq!(at("yT"), first("yT")[2]);
        assert!(assignment_to_cut(&f, &[false, true, false, false], &out).is_err());
    }

    #[test]
    fn single_clause_colour_count() {
        let f = E3SatFormula::new(3, vec![[1, 2, 3]]).unwrap();
        let out = reduce_e3sat(&f).unwrap();
        assert_eq!(out.necklace.n(), 24);
        let p = out.colour_of(&Role::Positive).unwrap();
        assert_eq!(out.necklace.colour_size(p), 24);
        for bits in 1..8u32 {
            let assignment: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
            assignment_to_cut(&f, &assignment, &out).unwrap();
        }
    }

    fn brute(neck: &Necklace, alpha: &AlphaVector) -> bool {
        let bar = complement_unchecked(neck, alpha);
        enumerate_all_cuts(neck)
            .unwrap()
            .iter()
            .any(|(_, e)| e.alpha == *alpha || e.alpha == bar)
    }

    #[test]
    fn decider_matches_brute_force() {
        for text in ["a a b b", "a b a b", "a b b a c c a b", "a b c a b c", "a b a c b c a"] {
            let neck = Necklace::parse(text).unwrap();
            let census = enumerate_all_cuts(&neck).unwrap();
            let mut alphas: Vec<AlphaVector> = census.iter().map(|(_, e)| e.alpha.clone()).collect();
            alphas.push(AlphaVector::new(vec![1; neck.n()]));
            alphas.push(AlphaVector::new(neck.colour_sizes().to_vec()));
            for alpha in alphas {
                let d = decide_alpha_or_complement(&neck, &alpha, Duration::from_secs(5)).unwrap();
                match d {
                    Decision::Yes(_) => assert!(brute(&neck, &alpha)),
                    Decision::No => assert!(!brute(&neck, &alpha), "{text} {:?}", alpha),
                    Decision::Timeout => panic!("timeout on {text}"),
                }
            }
        }
        let neck = Necklace::parse("a a b b").unwrap();
        let d = decide_alpha_or_complement(&neck, &AlphaVector::new(vec![1, 1]), Duration::from_secs(1));
        assert!(matches!(d, Ok(Decision::Yes(_))));
    }
}
