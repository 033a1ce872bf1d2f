//! CSP instances: conjunctions of atoms over variables valued in the
//! naturals, carrying an explicit signature tag.
//!
//! The signature is explicit rather than inferred because solvers and
//! reductions are defined per signature; an instance only admits the
//! atoms and operators its tag permits.

use crate::{Nat, Term};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A set operator usable inside terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Op {
    Complement,
    Union,
    Intersect,
    Plus,
    Times,
}

impl Op {
    pub const ALL: [Op; 5] = [Op::Complement, Op::Union, Op::Intersect, Op::Plus, Op::Times];

    pub fn token(self) -> &'static str {
        match self {
            Op::Complement => "not",
            Op::Union => "cup",
            Op::Intersect => "cap",
            Op::Plus => "plus",
            Op::Times => "times",
        }
    }
}

/// Which operators and relation symbols an instance may use.
///
/// Equality atoms are always permitted; the flags govern the term operators
/// and the extra relations (disequality, the unary predicate `U`, and the
/// ternary multiplication relation).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Signature {
    pub complement: bool,
    pub union: bool,
    pub intersect: bool,
    pub plus: bool,
    pub times: bool,
    pub neq: bool,
    pub upred: bool,
    pub times_rel: bool,
}

impl Signature {
    /// Signature allowing exactly the given term operators.
    pub fn of_ops(ops: &[Op]) -> Signature {
        let mut s = Signature::default();
        for &op in ops {
            match op {
                Op::Complement => s.complement = true,
                Op::Union => s.union = true,
                Op::Intersect => s.intersect = true,
                Op::Plus => s.plus = true,
                Op::Times => s.times = true,
            }
        }
        s
    }

    pub fn with_neq(mut self) -> Signature {
        self.neq = true;
        self
    }

    pub fn with_upred(mut self) -> Signature {
        self.upred = true;
        self
    }

    pub fn with_times_rel(mut self) -> Signature {
        self.times_rel = true;
        self
    }

    pub fn allows_op(&self, op: Op) -> bool {
        match op {
            Op::Complement => self.complement,
            Op::Union => self.union,
            Op::Intersect => self.intersect,
            Op::Plus => self.plus,
            Op::Times => self.times,
        }
    }

    pub fn ops(&self) -> Vec<Op> {
        Op::ALL.into_iter().filter(|&op| self.allows_op(op)).collect()
    }

    /// True when every term operator of `self` is allowed by `other`
    /// and likewise for the relation symbols.
    pub fn subset_of(&self, other: &Signature) -> bool {
        (!self.complement || other.complement)
            && (!self.union || other.union)
            && (!self.intersect || other.intersect)
            && (!self.plus || other.plus)
            && (!self.times || other.times)
            && (!self.neq || other.neq)
            && (!self.upred || other.upred)
            && (!self.times_rel || other.times_rel)
    }

    /// Canonical dash-separated token list, e.g. `not-cup-cap`.
    pub fn tokens(&self) -> Vec<&'static str> {
        let mut t = Vec::new();
        if self.complement {
            t.push("not");
        }
        if self.union {
            t.push("cup");
        }
        if self.intersect {
            t.push("cap");
        }
        if self.plus {
            t.push("plus");
        }
        if self.times {
            t.push("times");
        }
        if self.neq {
            t.push("neq");
        }
        if self.upred {
            t.push("u");
        }
        if self.times_rel {
            t.push("timesrel");
        }
        t
    }

    /// Parses a dash- or whitespace-separated token list in any order.
    pub fn parse(s: &str) -> Result<Signature, String> {
        let mut sig = Signature::default();
        for tok in s.split(|c: char| c == '-' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            match tok {
                "not" | "com" | "complement" => sig.complement = true,
                "cup" | "union" => sig.union = true,
                "cap" | "inter" | "intersect" => sig.intersect = true,
                "plus" | "add" => sig.plus = true,
                "times" | "mul" => sig.times = true,
                "neq" => sig.neq = true,
                "u" | "upred" => sig.upred = true,
                "timesrel" | "times3" => sig.times_rel = true,
                other => return Err(format!("unknown signature token {other:?}")),
            }
        }
        Ok(sig)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tokens().join("-"))
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.tokens().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let tokens = Vec::<String>::deserialize(de)?;
        Signature::parse(&tokens.join("-")).map_err(D::Error::custom)
    }
}

/// One constraint of an instance.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Atom {
    Eq(Term, Term),
    Neq(Term, Term),
    UPred(String),
    TimesRel(String, String, String),
}

impl Atom {
    pub fn variables(&self) -> BTreeSet<String> {
        match self {
            Atom::Eq(a, b) | Atom::Neq(a, b) => {
                let mut v = a.variables();
                v.extend(b.variables());
                v
            }
            Atom::UPred(v) => BTreeSet::from([v.clone()]),
            Atom::TimesRel(x, y, z) => BTreeSet::from([x.clone(), y.clone(), z.clone()]),
        }
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Eq(a, b) | Atom::Neq(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }
}

/// Conjunction of atoms over declared variables, restricted to a signature.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CspInstance {
    pub vars: Vec<String>,
    pub atoms: Vec<Atom>,
    pub signature: Signature,
}

/// A structural problem with an instance, reported by [`CspInstance::validate`].
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("variable {0:?} occurs in an atom but is not declared")]
    UndeclaredVariable(String),
    #[error("variable {0:?} is declared twice")]
    DuplicateVariable(String),
    #[error("atom uses operator {0:?} outside the instance signature")]
    OpOutsideSignature(&'static str),
}

impl CspInstance {
    pub fn new(vars: Vec<String>, atoms: Vec<Atom>, signature: Signature) -> Self {
        CspInstance { vars, atoms, signature }
    }

    /// Minimal signature covering the atoms actually present.
    pub fn inferred_signature(atoms: &[Atom]) -> Signature {
        let mut sig = Signature::default();
        for atom in atoms {
            match atom {
                Atom::Eq(..) => {}
                Atom::Neq(..) => sig.neq = true,
                Atom::UPred(_) => sig.upred = true,
                Atom::TimesRel(..) => sig.times_rel = true,
            }
            for t in atom.terms() {
                for op in t.operators() {
                    match op {
                        Op::Complement => sig.complement = true,
                        Op::Union => sig.union = true,
                        Op::Intersect => sig.intersect = true,
                        Op::Plus => sig.plus = true,
                        Op::Times => sig.times = true,
                    }
                }
            }
        }
        sig
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        let mut seen = BTreeSet::new();
        for v in &self.vars {
            if !seen.insert(v.clone()) {
                return Err(InstanceError::DuplicateVariable(v.clone()));
            }
        }
        for atom in &self.atoms {
            for v in atom.variables() {
                if !seen.contains(&v) {
                    return Err(InstanceError::UndeclaredVariable(v));
                }
            }
            match atom {
                Atom::Neq(..) if !self.signature.neq => {
                    return Err(InstanceError::OpOutsideSignature("neq"))
                }
                Atom::UPred(_) if !self.signature.upred => {
                    return Err(InstanceError::OpOutsideSignature("u"))
                }
                Atom::TimesRel(..) if !self.signature.times_rel => {
                    return Err(InstanceError::OpOutsideSignature("timesrel"))
                }
                _ => {}
            }
            for t in atom.terms() {
                for op in t.operators() {
                    if !self.signature.allows_op(op) {
                        return Err(InstanceError::OpOutsideSignature(op.token()));
                    }
                }
            }
        }
        Ok(())
    }

    /// All constants appearing in any atom, sorted.
    pub fn constants(&self) -> BTreeSet<Nat> {
        let mut out = BTreeSet::new();
        for atom in &self.atoms {
            for t in atom.terms() {
                out.extend(t.constants());
            }
        }
        out
    }

    /// Total size measured in term nodes plus one per relational atom.
    pub fn size(&self) -> usize {
        self.atoms
            .iter()
            .map(|a| match a {
                Atom::Eq(s, t) | Atom::Neq(s, t) => s.node_count() + t.node_count(),
                Atom::UPred(_) => 1,
                Atom::TimesRel(..) => 3,
            })
            .sum()
    }
}

/// Total map from variable names to natural values.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Assignment(pub BTreeMap<String, Nat>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn single(name: impl Into<String>, value: Nat) -> Self {
        let mut a = Assignment::new();
        a.set(name, value);
        a
    }

    pub fn from_pairs<I: IntoIterator<Item = (String, Nat)>>(pairs: I) -> Self {
        Assignment(pairs.into_iter().collect())
    }

    pub fn set(&mut self, name: impl Into<String>, value: Nat) {
        self.0.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Nat> {
        self.0.get(name)
    }

    pub fn is_total_on<'a, I: IntoIterator<Item = &'a String>>(&self, vars: I) -> bool {
        vars.into_iter().all(|v| self.0.contains_key(v))
    }

    pub fn max_value(&self) -> Option<Nat> {
        self.0.values().max().cloned()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Nat)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, &v.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Assignment {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(de)?;
        let mut out = BTreeMap::new();
        for (k, v) in raw {
            let n = v
                .parse::<Nat>()
                .map_err(|_| D::Error::custom(format!("invalid natural number: {v:?}")))?;
            out.insert(k, n);
        }
        Ok(Assignment(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Term;

    #[test]
    fn signature_roundtrips_through_tokens() {
        let sig = Signature::of_ops(&[Op::Complement, Op::Union, Op::Intersect]);
        assert_eq!(sig.to_string(), "not-cup-cap");
        assert_eq!(Signature::parse("cap-cup-not").unwrap(), sig);
    }

    #[test]
    fn validate_rejects_undeclared_variables_and_foreign_ops() {
        let inst = CspInstance::new(
            vec!["x".into()],
            vec![Atom::Eq(Term::var("y"), Term::constant(1))],
            Signature::of_ops(&[]),
        );
        assert_eq!(inst.validate(), Err(InstanceError::UndeclaredVariable("y".into())));

        let inst = CspInstance::new(
            vec!["x".into()],
            vec![Atom::Eq(Term::plus(Term::var("x"), Term::var("x")), Term::constant(2))],
            Signature::of_ops(&[Op::Times]),
        );
        assert_eq!(inst.validate(), Err(InstanceError::OpOutsideSignature("plus")));
    }
}
