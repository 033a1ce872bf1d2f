//! Operator terms: the tree-shaped counterpart of circuits.

use crate::{circuit::Gate, nat_string, Circuit, GateId, GateLabel, Nat, Op};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Syntax tree over constants, variables and the five set operators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Constant(#[serde(with = "nat_string")] Nat),
    Var(String),
    Complement(Box<Term>),
    Union(Box<Term>, Box<Term>),
    Intersect(Box<Term>, Box<Term>),
    Plus(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
}

impl Term {
    pub fn constant(n: u64) -> Term {
        Term::Constant(Nat::from(n))
    }

    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn complement(t: Term) -> Term {
        Term::Complement(Box::new(t))
    }

    pub fn union(a: Term, b: Term) -> Term {
        Term::Union(Box::new(a), Box::new(b))
    }

    pub fn intersect(a: Term, b: Term) -> Term {
        Term::Intersect(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::Times(Box::new(a), Box::new(b))
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Constant(_) | Term::Var(_) => Vec::new(),
            Term::Complement(a) => vec![a],
            Term::Union(a, b)
            | Term::Intersect(a, b)
            | Term::Plus(a, b)
            | Term::Times(a, b) => vec![a, b],
        }
    }

    pub fn op(&self) -> Option<Op> {
        match self {
            Term::Constant(_) | Term::Var(_) => None,
            Term::Complement(_) => Some(Op::Complement),
            Term::Union(..) => Some(Op::Union),
            Term::Intersect(..) => Some(Op::Intersect),
            Term::Plus(..) => Some(Op::Plus),
            Term::Times(..) => Some(Op::Times),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Distinct variable names, sorted.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            other => {
                for c in other.children() {
                    c.collect_variables(out);
                }
            }
        }
    }

    /// All operators used anywhere in the term.
    pub fn operators(&self) -> BTreeSet<Op> {
        let mut out = BTreeSet::new();
        self.collect_ops(&mut out);
        out
    }

    fn collect_ops(&self, out: &mut BTreeSet<Op>) {
        if let Some(op) = self.op() {
            out.insert(op);
        }
        for c in self.children() {
            c.collect_ops(out);
        }
    }

    /// All constants used anywhere in the term.
    pub fn constants(&self) -> BTreeSet<Nat> {
        let mut out = BTreeSet::new();
        self.collect_constants(&mut out);
        out
    }

    fn collect_constants(&self, out: &mut BTreeSet<Nat>) {
        if let Term::Constant(n) = self {
            out.insert(n.clone());
        }
        for c in self.children() {
            c.collect_constants(out);
        }
    }

    /// Builds the tree-shaped circuit computing this term: children come
    /// before their parents (postorder), so gate count equals node count and
    /// the topological invariant holds by construction.  Every gate has
    /// outdegree at most one, making the result a formula.
    pub fn to_circuit(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.node_count());
        let output = push_gates(self, &mut gates);
        Circuit::new(gates, output)
    }
}

fn push_gates(t: &Term, gates: &mut Vec<Gate>) -> GateId {
    let gate = match t {
        Term::Constant(n) => Gate::leaf(GateLabel::Constant(n.clone())),
        Term::Var(v) => Gate::leaf(GateLabel::Variable(v.clone())),
        Term::Complement(a) => {
            let pa = push_gates(a, gates);
            Gate { label: GateLabel::Complement, preds: vec![pa] }
        }
        Term::Union(a, b) => {
            let (pa, pb) = (push_gates(a, gates), push_gates(b, gates));
            Gate { label: GateLabel::Union, preds: vec![pa, pb] }
        }
        Term::Intersect(a, b) => {
            let (pa, pb) = (push_gates(a, gates), push_gates(b, gates));
            Gate { label: GateLabel::Intersect, preds: vec![pa, pb] }
        }
        Term::Plus(a, b) => {
            let (pa, pb) = (push_gates(a, gates), push_gates(b, gates));
            Gate { label: GateLabel::Plus, preds: vec![pa, pb] }
        }
        Term::Times(a, b) => {
            let (pa, pb) = (push_gates(a, gates), push_gates(b, gates));
            Gate { label: GateLabel::Times, preds: vec![pa, pb] }
        }
    };
    gates.push(gate);
    GateId(gates.len())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::dsl::render_term(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat;

    #[test]
    fn constant_becomes_single_gate() {
        let c = Term::constant(3).to_circuit();
        assert_eq!(c.len(), 1);
        assert_eq!(c.output, GateId(1));
        assert!(c.is_valid());
    }

    #[test]
    fn union_of_constants_has_three_gates() {
        let c = Term::union(Term::constant(2), Term::constant(3)).to_circuit();
        assert_eq!(c.len(), 3);
        assert_eq!(c.gate(c.output).label, GateLabel::Union);
        assert!(c.is_valid());
    }

    #[test]
    fn complement_of_plus_is_a_formula_with_four_gates() {
        let t = Term::complement(Term::plus(Term::var("x"), Term::constant(1)));
        let c = t.to_circuit();
        assert_eq!(c.len(), 4);
        assert!(c.is_formula());
        // every non-output gate has outdegree exactly one
        let out = c.outdegrees();
        assert_eq!(out, vec![1, 1, 1, 0]);
        assert_eq!(c.to_term().unwrap(), t);
    }

    #[test]
    fn circuit_with_shared_gate_is_not_a_formula() {
        let mut c = Term::plus(Term::var("x"), Term::var("x")).to_circuit();
        // rewire the plus gate so both edges come from gate 1
        c.gates[2].preds = vec![GateId(1), GateId(1)];
        c.gates.remove(1);
        c.gates[1].preds = vec![GateId(1), GateId(1)];
        let c = Circuit::new(c.gates[..2].to_vec(), GateId(2));
        assert!(!c.is_formula());
        assert!(c.to_term().is_none());
    }

    #[test]
    fn variables_and_constants_are_collected() {
        let t = Term::intersect(
            Term::union(Term::var("b"), Term::var("a")),
            Term::complement(Term::constant(7)),
        );
        assert_eq!(
            t.variables().into_iter().collect::<Vec<_>>(),
            vec!["a".to_string(), "b".to_string()]
        );
        assert!(t.constants().contains(&nat(7)));
    }
}
