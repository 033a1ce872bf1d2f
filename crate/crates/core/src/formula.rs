//! First-order formulas over the signature of multiplication with numerals.
//!
//! Atoms are equalities of product terms; connectives and quantifiers are
//! the usual ones.  This is the target language of the circuit-to-sentence
//! compiler and the input of the bounded evaluator.

use crate::{nat_string, Nat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// One factor of a product term.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FoFactor {
    Num(#[serde(with = "nat_string")] Nat),
    Var(String),
}

/// Product of one or more factors; multiplication is the only function symbol.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Product(pub Vec<FoFactor>);

impl Product {
    /// Builds a product, inserting the numeral 1 when the factor list is empty
    /// so that the representation invariant (at least one factor) holds.
    pub fn new(factors: Vec<FoFactor>) -> Product {
        if factors.is_empty() {
            Product(vec![FoFactor::Num(Nat::from(1u32))])
        } else {
            Product(factors)
        }
    }

    pub fn var(name: impl Into<String>) -> Product {
        Product(vec![FoFactor::Var(name.into())])
    }

    pub fn num(n: u64) -> Product {
        Product(vec![FoFactor::Num(Nat::from(n))])
    }

    pub fn num_nat(n: Nat) -> Product {
        Product(vec![FoFactor::Num(n)])
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.0
            .iter()
            .filter_map(|f| match f {
                FoFactor::Var(v) => Some(v.clone()),
                FoFactor::Num(_) => None,
            })
            .collect()
    }

    /// Applies a variable-to-numeral substitution.
    pub fn substitute(&self, map: &std::collections::BTreeMap<String, Nat>) -> Product {
        Product(
            self.0
                .iter()
                .map(|f| match f {
                    FoFactor::Var(v) => match map.get(v) {
                        Some(n) => FoFactor::Num(n.clone()),
                        None => f.clone(),
                    },
                    FoFactor::Num(_) => f.clone(),
                })
                .collect(),
        )
    }
}

/// First-order formula AST.
///
/// `And`/`Or` are n-ary with at least two operands when built through the
/// smart constructors, which keeps serialization canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FoFormula {
    Eq(Product, Product),
    Not(Box<FoFormula>),
    And(Vec<FoFormula>),
    Or(Vec<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    Exists(Vec<String>, Box<FoFormula>),
    Forall(Vec<String>, Box<FoFormula>),
}

impl FoFormula {
    pub fn eq(l: Product, r: Product) -> FoFormula {
        FoFormula::Eq(l, r)
    }

    pub fn not(f: FoFormula) -> FoFormula {
        FoFormula::Not(Box::new(f))
    }

    /// Conjunction; collapses a single operand instead of wrapping it.
    /// Panics on an empty list: the language has no boolean constants.
    pub fn and(mut fs: Vec<FoFormula>) -> FoFormula {
        match fs.len() {
            0 => panic!("empty conjunction has no representation"),
            1 => fs.pop().unwrap(),
            _ => FoFormula::And(fs),
        }
    }

    /// Disjunction; same conventions as [`FoFormula::and`].
    pub fn or(mut fs: Vec<FoFormula>) -> FoFormula {
        match fs.len() {
            0 => panic!("empty disjunction has no representation"),
            1 => fs.pop().unwrap(),
            _ => FoFormula::Or(fs),
        }
    }

    pub fn implies(a: FoFormula, b: FoFormula) -> FoFormula {
        FoFormula::Implies(Box::new(a), Box::new(b))
    }

    /// Existential closure; returns the body unchanged for an empty binder list.
    pub fn exists(vars: Vec<String>, body: FoFormula) -> FoFormula {
        if vars.is_empty() {
            body
        } else {
            FoFormula::Exists(vars, Box::new(body))
        }
    }

    pub fn forall(vars: Vec<String>, body: FoFormula) -> FoFormula {
        if vars.is_empty() {
            body
        } else {
            FoFormula::Forall(vars, Box::new(body))
        }
    }

    /// Free variables of the formula.
    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            FoFormula::Eq(l, r) => {
                let mut v = l.variables();
                v.extend(r.variables());
                v
            }
            FoFormula::Not(f) => f.free_vars(),
            FoFormula::And(fs) | FoFormula::Or(fs) => {
                fs.iter().flat_map(|f| f.free_vars()).collect()
            }
            FoFormula::Implies(a, b) => {
                let mut v = a.free_vars();
                v.extend(b.free_vars());
                v
            }
            FoFormula::Exists(vars, body) | FoFormula::Forall(vars, body) => {
                let mut v = body.free_vars();
                for bound in vars {
                    v.remove(bound);
                }
                v
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Substitutes numerals for free occurrences of the mapped variables.
    pub fn substitute(&self, map: &std::collections::BTreeMap<String, Nat>) -> FoFormula {
        match self {
            FoFormula::Eq(l, r) => FoFormula::Eq(l.substitute(map), r.substitute(map)),
            FoFormula::Not(f) => FoFormula::Not(Box::new(f.substitute(map))),
            FoFormula::And(fs) => FoFormula::And(fs.iter().map(|f| f.substitute(map)).collect()),
            FoFormula::Or(fs) => FoFormula::Or(fs.iter().map(|f| f.substitute(map)).collect()),
            FoFormula::Implies(a, b) => {
                FoFormula::Implies(Box::new(a.substitute(map)), Box::new(b.substitute(map)))
            }
            FoFormula::Exists(vars, body) | FoFormula::Forall(vars, body) => {
                let mut inner = map.clone();
                for bound in vars {
                    inner.remove(bound);
                }
                let new_body = Box::new(body.substitute(&inner));
                match self {
                    FoFormula::Exists(..) => FoFormula::Exists(vars.clone(), new_body),
                    _ => FoFormula::Forall(vars.clone(), new_body),
                }
            }
        }
    }

    /// Number of AST nodes (formulas, products and factors).
    pub fn node_count(&self) -> usize {
        match self {
            FoFormula::Eq(l, r) => 1 + l.0.len() + r.0.len(),
            FoFormula::Not(f) => 1 + f.node_count(),
            FoFormula::And(fs) | FoFormula::Or(fs) => {
                1 + fs.iter().map(|f| f.node_count()).sum::<usize>()
            }
            FoFormula::Implies(a, b) => 1 + a.node_count() + b.node_count(),
            FoFormula::Exists(_, body) | FoFormula::Forall(_, body) => 1 + body.node_count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_respect_binders() {
        let f = FoFormula::exists(
            vec!["x".into()],
            FoFormula::eq(
                Product(vec![FoFactor::Var("x".into()), FoFactor::Var("y".into())]),
                Product::num(4),
            ),
        );
        assert_eq!(f.free_vars(), BTreeSet::from(["y".to_string()]));
        assert!(!f.is_sentence());
    }

    #[test]
    fn substitute_stops_at_binders() {
        let body = FoFormula::eq(Product::var("x"), Product::var("y"));
        let f = FoFormula::exists(vec!["x".into()], body);
        let map = std::collections::BTreeMap::from([
            ("x".to_string(), Nat::from(1u32)),
            ("y".to_string(), Nat::from(2u32)),
        ]);
        let g = f.substitute(&map);
        match g {
            FoFormula::Exists(_, body) => {
                assert_eq!(
                    *body,
                    FoFormula::eq(Product::var("x"), Product::num(2))
                );
            }
            other => panic!("unexpected shape {other:?}"),
        }
    }
}
