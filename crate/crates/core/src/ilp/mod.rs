//! Binary integer programs and feasibility enumeration over tree
//! decompositions of their primal graphs.

mod dp;
mod graph;
mod td;

use std::fmt;

use crate::error::{Error, Result};

pub use dp::{enumerate_feasible, Enumeration};
pub use graph::{primal_graph, Graph};
pub use td::{compose_decomposition, EnhancedGraph, TreeDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparator {
    Le,
    Eq,
    Ge,
}

impl Comparator {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Le => "<=",
            Comparator::Eq => "=",
            Comparator::Ge => ">=",
        }
    }

    fn holds(self, lhs: i64, bound: i64) -> bool {
        match self {
            Comparator::Le => lhs <= bound,
            Comparator::Eq => lhs == bound,
            Comparator::Ge => lhs >= bound,
        }
    }
}

/// `sum coeff * x_var  cmp  bound` over 0/1 variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub terms: Vec<(i64, usize)>,
    pub cmp: Comparator,
    pub bound: i64,
}

impl Constraint {
    /// Merges repeated variables and drops zero coefficients.
    pub fn new(terms: Vec<(i64, usize)>, cmp: Comparator, bound: i64) -> Self {
        let mut merged: Vec<(i64, usize)> = Vec::with_capacity(terms.len());
        let mut sorted = terms;
        sorted.sort_by_key(|&(_, v)| v);
        for (c, v) in sorted {
            match merged.last_mut() {
                Some(last) if last.1 == v => last.0 += c,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|&(c, _)| c != 0);
        Constraint {
            terms: merged,
            cmp,
            bound,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|&(_, v)| v)
    }

    pub fn is_satisfied(&self, value: impl Fn(usize) -> bool) -> bool {
        let lhs: i64 = self
            .terms
            .iter()
            .filter(|&&(_, v)| value(v))
            .map(|&(c, _)| c)
            .sum();
        self.cmp.holds(lhs, self.bound)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, v) in &self.terms {
            write!(f, "{c}:{v} ")?;
        }
        write!(f, "{} {}", self.cmp.symbol(), self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BinaryIlp {
    vars: usize,
    constraints: Vec<Constraint>,
}

impl BinaryIlp {
    pub fn new(vars: usize) -> Self {
        BinaryIlp {
            vars,
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, terms: Vec<(i64, usize)>, cmp: Comparator, bound: i64) {
        self.push(Constraint::new(terms, cmp, bound));
    }

    pub fn push(&mut self, constraint: Constraint) {
        for v in constraint.vars() {
            assert!(v < self.vars, "variable {v} out of range");
        }
        self.constraints.push(constraint);
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Every variable occurs in some constraint.
    pub fn validate(&self) -> Result<()> {
        let mut used = vec![false; self.vars];
        for c in &self.constraints {
            for v in c.vars() {
                used[v] = true;
            }
        }
        match used.iter().position(|u| !u) {
            Some(v) => Err(Error::Parse(format!("variable {v} occurs in no constraint"))),
            None => Ok(()),
        }
    }

    pub fn is_satisfied(&self, assignment: &[bool]) -> bool {
        self.constraints
            .iter()
            .all(|c| c.is_satisfied(|v| assignment[v]))
    }

    /// Parses the constraint-file format: optional `vars <count>` header,
    /// `#` comments, then one `coeff:var ... <=|=|>= bound` per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut constraints = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] == "vars" {
                let count = tokens
                    .get(1)
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err("expected vars <count>"))?;
                declared = Some(count);
                continue;
            }
            if tokens.len() < 2 {
                return Err(err("expected terms, comparator and bound"));
            }
            let bound = tokens[tokens.len() - 1]
                .parse::<i64>()
                .map_err(|_| err("bad bound"))?;
            let cmp = match tokens[tokens.len() - 2] {
                "<=" => Comparator::Le,
                "=" | "==" => Comparator::Eq,
                ">=" => Comparator::Ge,
                other => return Err(err(&format!("bad comparator {other}"))),
            };
            let terms = tokens[..tokens.len() - 2]
                .iter()
                .map(|t| {
                    let (c, v) = t.split_once(':').ok_or_else(|| err("expected coeff:var"))?;
                    Ok((
                        c.parse::<i64>().map_err(|_| err("bad coefficient"))?,
                        v.parse::<usize>().map_err(|_| err("bad variable"))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            constraints.push(Constraint::new(terms, cmp, bound));
        }
        let used = constraints
            .iter()
            .flat_map(|c: &Constraint| c.vars())
            .max()
            .map_or(0, |v| v + 1);
        let vars = match declared {
            Some(d) if d < used => {
                return Err(Error::Parse(format!("variable {} exceeds declared count {d}", used - 1)))
            }
            Some(d) => d,
            None => used,
        };
        Ok(BinaryIlp { vars, constraints })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vars {}\n", self.vars);
        for c in &self.constraints {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }
}
