//! Gate circuits over sets of naturals.
//!
//! A circuit is a topologically ordered list of gates indexed from 1,
//! mirroring the usual `g_1 .. g_r` numbering, together with one output
//! gate.  Leaf gates are constants or named variables; inner gates apply
//! complement, union, intersection, set-wise addition or set-wise
//! multiplication to earlier gates.

use crate::{nat_string, Nat, Term};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// 1-based index of a gate inside a [`Circuit`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GateId(pub usize);

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// What a gate computes.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateLabel {
    /// Assigned input gate holding the singleton `{n}`.
    Constant(#[serde(with = "nat_string")] Nat),
    /// Unassigned input gate; gates sharing a name receive the same value.
    Variable(String),
    Complement,
    Union,
    Intersect,
    Plus,
    Times,
}

impl GateLabel {
    /// Number of predecessors the label requires.
    pub fn arity(&self) -> usize {
        match self {
            GateLabel::Constant(_) | GateLabel::Variable(_) => 0,
            GateLabel::Complement => 1,
            GateLabel::Union | GateLabel::Intersect | GateLabel::Plus | GateLabel::Times => 2,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            GateLabel::Constant(_) => "const",
            GateLabel::Variable(_) => "var",
            GateLabel::Complement => "not",
            GateLabel::Union => "union",
            GateLabel::Intersect => "inter",
            GateLabel::Plus => "plus",
            GateLabel::Times => "times",
        }
    }
}

/// One gate: a label plus the indices of its predecessors.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Gate {
    pub label: GateLabel,
    #[serde(default)]
    pub preds: Vec<GateId>,
}

impl Gate {
    pub fn leaf(label: GateLabel) -> Self {
        Gate { label, preds: Vec::new() }
    }
}

/// A broken circuit invariant, reported as data by [`Circuit::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    EmptyCircuit,
    OutputOutOfRange { output: GateId, gates: usize },
    BadArity { gate: GateId, expected: usize, found: usize },
    PredOutOfRange { gate: GateId, pred: GateId },
    PredNotEarlier { gate: GateId, pred: GateId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyCircuit => write!(f, "circuit has no gates"),
            Violation::OutputOutOfRange { output, gates } => {
                write!(f, "output gate {output} out of range (circuit has {gates} gates)")
            }
            Violation::BadArity { gate, expected, found } => {
                write!(f, "gate {gate} expects {expected} predecessor(s), found {found}")
            }
            Violation::PredOutOfRange { gate, pred } => {
                write!(f, "gate {gate} references missing gate {pred}")
            }
            Violation::PredNotEarlier { gate, pred } => {
                write!(f, "gate {gate} references gate {pred}, which is not earlier")
            }
        }
    }
}

/// Labeled DAG of gates with one output; see the module docs.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Circuit {
    /// Gates in index order; `gates[0]` is gate 1.
    pub gates: Vec<Gate>,
    pub output: GateId,
}

impl Circuit {
    pub fn new(gates: Vec<Gate>, output: GateId) -> Self {
        Circuit { gates, output }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Access a gate by 1-based id. Panics if out of range; validate first.
    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id.0 - 1]
    }

    pub fn ids(&self) -> impl Iterator<Item = GateId> {
        (1..=self.gates.len()).map(GateId)
    }

    /// Checks every structural invariant and returns the violations found.
    /// An empty list means the circuit is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.gates.is_empty() {
            out.push(Violation::EmptyCircuit);
        }
        if self.output.0 == 0 || self.output.0 > self.gates.len() {
            out.push(Violation::OutputOutOfRange { output: self.output, gates: self.gates.len() });
        }
        for (i, gate) in self.gates.iter().enumerate() {
            let id = GateId(i + 1);
            let expected = gate.label.arity();
            if gate.preds.len() != expected {
                out.push(Violation::BadArity { gate: id, expected, found: gate.preds.len() });
            }
            for &p in &gate.preds {
                if p.0 == 0 || p.0 > self.gates.len() {
                    out.push(Violation::PredOutOfRange { gate: id, pred: p });
                } else if p.0 >= id.0 {
                    out.push(Violation::PredNotEarlier { gate: id, pred: p });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Variable gates in ascending index order.  Gates are listed once each,
    /// no matter how many edges leave them; two gates sharing a variable name
    /// are still two entries.
    pub fn free_inputs(&self) -> Vec<GateId> {
        self.ids()
            .filter(|&id| matches!(self.gate(id).label, GateLabel::Variable(_)))
            .collect()
    }

    /// Distinct variable names in order of first appearance (ascending gate index).
    pub fn variable_names(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut names = Vec::new();
        for gate in &self.gates {
            if let GateLabel::Variable(name) = &gate.label {
                if seen.insert(name.clone()) {
                    names.push(name.clone());
                }
            }
        }
        names
    }

    /// Largest constant appearing on any gate, if there is one.
    pub fn max_constant(&self) -> Option<Nat> {
        self.gates
            .iter()
            .filter_map(|g| match &g.label {
                GateLabel::Constant(n) => Some(n.clone()),
                _ => None,
            })
            .max()
    }

    pub fn has_complement(&self) -> bool {
        self.gates.iter().any(|g| g.label == GateLabel::Complement)
    }

    pub fn has_intersect(&self) -> bool {
        self.gates.iter().any(|g| g.label == GateLabel::Intersect)
    }

    /// Outdegree of every gate, counting multi-edges.
    pub fn outdegrees(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.gates.len()];
        for gate in &self.gates {
            for &p in &gate.preds {
                if p.0 >= 1 && p.0 <= out.len() {
                    out[p.0 - 1] += 1;
                }
            }
        }
        out
    }

    /// A formula is a circuit in which every non-output gate feeds exactly one
    /// successor edge and the output feeds none.
    pub fn is_formula(&self) -> bool {
        if !self.is_valid() {
            return false;
        }
        self.outdegrees()
            .iter()
            .enumerate()
            .all(|(i, &d)| if GateId(i + 1) == self.output { d == 0 } else { d == 1 })
    }

    /// Reconstructs the term computed by a formula-shaped circuit.
    /// Returns `None` when some gate has outdegree above one (sharing), which
    /// would blow the tree up.
    pub fn to_term(&self) -> Option<Term> {
        if !self.is_formula() {
            return None;
        }
        fn build(c: &Circuit, id: GateId) -> Term {
            let gate = c.gate(id);
            match &gate.label {
                GateLabel::Constant(n) => Term::Constant(n.clone()),
                GateLabel::Variable(v) => Term::Var(v.clone()),
                GateLabel::Complement => Term::Complement(Box::new(build(c, gate.preds[0]))),
                GateLabel::Union => Term::Union(
                    Box::new(build(c, gate.preds[0])),
                    Box::new(build(c, gate.preds[1])),
                ),
                GateLabel::Intersect => Term::Intersect(
                    Box::new(build(c, gate.preds[0])),
                    Box::new(build(c, gate.preds[1])),
                ),
                GateLabel::Plus => Term::Plus(
                    Box::new(build(c, gate.preds[0])),
                    Box::new(build(c, gate.preds[1])),
                ),
                GateLabel::Times => Term::Times(
                    Box::new(build(c, gate.preds[0])),
                    Box::new(build(c, gate.preds[1])),
                ),
            }
        }
        Some(build(self, self.output))
    }

    /// Gates from which the output gate is reachable (including the output).
    pub fn reaches_output(&self) -> Vec<bool> {
        let mut reach = vec![false; self.gates.len()];
        if self.output.0 == 0 || self.output.0 > self.gates.len() {
            return reach;
        }
        let mut stack = vec![self.output];
        while let Some(id) = stack.pop() {
            if reach[id.0 - 1] {
                continue;
            }
            reach[id.0 - 1] = true;
            for &p in &self.gate(id).preds {
                stack.push(p);
            }
        }
        reach
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat;

    fn constant(n: u64) -> Gate {
        Gate::leaf(GateLabel::Constant(nat(n)))
    }

    #[test]
    fn minimal_constant_circuit_is_valid() {
        let c = Circuit::new(vec![constant(5)], GateId(1));
        assert!(c.validate().is_empty());
    }

    #[test]
    fn times_gate_with_one_pred_is_an_arity_violation() {
        let c = Circuit::new(
            vec![constant(1), Gate { label: GateLabel::Times, preds: vec![GateId(1)] }],
            GateId(2),
        );
        let v = c.validate();
        assert_eq!(v, vec![Violation::BadArity { gate: GateId(2), expected: 2, found: 1 }]);
    }

    #[test]
    fn forward_edge_is_a_topology_violation() {
        let c = Circuit::new(
            vec![
                constant(1),
                Gate { label: GateLabel::Complement, preds: vec![GateId(3)] },
                constant(2),
            ],
            GateId(2),
        );
        let v = c.validate();
        assert_eq!(v, vec![Violation::PredNotEarlier { gate: GateId(2), pred: GateId(3) }]);
    }

    #[test]
    fn free_inputs_lists_variable_gates_in_index_order() {
        let c = Circuit::new(
            vec![
                Gate::leaf(GateLabel::Variable("x".into())),
                constant(2),
                Gate::leaf(GateLabel::Variable("y".into())),
            ],
            GateId(3),
        );
        assert_eq!(c.free_inputs(), vec![GateId(1), GateId(3)]);

        let all_const = Circuit::new(vec![constant(0)], GateId(1));
        assert!(all_const.free_inputs().is_empty());
    }

    #[test]
    fn gate_used_twice_is_listed_once() {
        let c = Circuit::new(
            vec![
                Gate::leaf(GateLabel::Variable("x".into())),
                Gate { label: GateLabel::Plus, preds: vec![GateId(1), GateId(1)] },
            ],
            GateId(2),
        );
        assert_eq!(c.free_inputs(), vec![GateId(1)]);
    }
}
