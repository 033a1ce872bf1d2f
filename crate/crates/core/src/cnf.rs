//! CNF formulas, inputs of the satisfiability reductions.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A literal: variable index (0-based) plus polarity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Lit {
        Lit { var, positive: false }
    }
}

/// CNF over `num_vars` variables; a clause is a disjunction of literals.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Cnf {
        Cnf { num_vars, clauses }
    }

    pub fn validate(&self) -> Result<(), String> {
        for (i, clause) in self.clauses.iter().enumerate() {
            for lit in clause {
                if lit.var >= self.num_vars {
                    return Err(format!(
                        "clause {} references variable {} out of range {}",
                        i + 1,
                        lit.var,
                        self.num_vars
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn max_clause_width(&self) -> usize {
        self.clauses.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|lit| assignment[lit.var] == lit.positive)
        })
    }

    /// Parses the DIMACS `cnf` format.
    pub fn parse_dimacs(input: &str) -> Result<Cnf, String> {
        let mut num_vars: Option<usize> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for line in input.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 3 || fields[0] != "cnf" {
                    return Err(format!("bad problem line: {line:?}"));
                }
                num_vars =
                    Some(fields[1].parse().map_err(|_| format!("bad variable count in {line:?}"))?);
                continue;
            }
            for tok in line.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| format!("bad literal {tok:?}"))?;
                if v == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    let var = v.unsigned_abs() as usize - 1;
                    current.push(Lit { var, positive: v > 0 });
                }
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        let num_vars = num_vars.ok_or("missing `p cnf` problem line")?;
        let cnf = Cnf { num_vars, clauses };
        cnf.validate()?;
        Ok(cnf)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            let lits: Vec<String> = clause
                .iter()
                .map(|l| {
                    let v = l.var as i64 + 1;
                    (if l.positive { v } else { -v }).to_string()
                })
                .collect();
            out.push_str(&lits.join(" "));
            out.push_str(" 0\n");
        }
        out
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let cnf = Cnf::new(
            3,
            vec![vec![Lit::pos(0), Lit::neg(1)], vec![Lit::pos(2)]],
        );
        let text = cnf.to_dimacs();
        assert_eq!(Cnf::parse_dimacs(&text).unwrap(), cnf);
    }

    #[test]
    fn eval_checks_all_clauses() {
        let cnf = Cnf::new(2, vec![vec![Lit::pos(0)], vec![Lit::neg(0), Lit::pos(1)]]);
        assert!(cnf.eval(&[true, true]));
        assert!(!cnf.eval(&[true, false]));
    }
}
