//! Set values: exact finite/cofinite sets and windowed approximations.

use crate::{nat_string_vec, Nat};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Three-valued truth: definite answers are guaranteed correct, `Unknown`
/// means the available representation could not decide.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriBool {
    True,
    False,
    Unknown,
}

impl TriBool {
    pub fn from_bool(b: bool) -> TriBool {
        if b {
            TriBool::True
        } else {
            TriBool::False
        }
    }

    pub fn negate(self) -> TriBool {
        match self {
            TriBool::True => TriBool::False,
            TriBool::False => TriBool::True,
            TriBool::Unknown => TriBool::Unknown,
        }
    }

    pub fn and(self, other: TriBool) -> TriBool {
        match (self, other) {
            (TriBool::False, _) | (_, TriBool::False) => TriBool::False,
            (TriBool::True, TriBool::True) => TriBool::True,
            _ => TriBool::Unknown,
        }
    }

    pub fn or(self, other: TriBool) -> TriBool {
        match (self, other) {
            (TriBool::True, _) | (_, TriBool::True) => TriBool::True,
            (TriBool::False, TriBool::False) => TriBool::False,
            _ => TriBool::Unknown,
        }
    }

    pub fn is_definite(self) -> bool {
        self != TriBool::Unknown
    }
}

impl fmt::Display for TriBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriBool::True => write!(f, "true"),
            TriBool::False => write!(f, "false"),
            TriBool::Unknown => write!(f, "unknown"),
        }
    }
}

/// What is known about a windowed set beyond its bound `B`.
///
/// The lattice runs from the maximal-information values `Empty` (no element
/// above `B`) and `All` (every integer above `B` is present) through `Some`
/// (at least one element above `B`, contents unknown) down to `Unknown`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKnowledge {
    Empty,
    All,
    Some,
    Unknown,
}

impl TailKnowledge {
    /// True when the claim rules out any element above the bound.
    pub fn is_empty_claim(self) -> bool {
        self == TailKnowledge::Empty
    }

    /// Definite nonemptiness of the tail, if known.
    pub fn nonempty(self) -> TriBool {
        match self {
            TailKnowledge::Empty => TriBool::False,
            TailKnowledge::All | TailKnowledge::Some => TriBool::True,
            TailKnowledge::Unknown => TriBool::Unknown,
        }
    }
}

impl fmt::Display for TailKnowledge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailKnowledge::Empty => write!(f, "empty"),
            TailKnowledge::All => write!(f, "all"),
            TailKnowledge::Some => write!(f, "some"),
            TailKnowledge::Unknown => write!(f, "unknown"),
        }
    }
}

/// A computed set of naturals.
///
/// `Finite` and `Cofinite` are exact; `Windowed` records the exact
/// intersection with `[0..bound]` plus tail knowledge.  A `Windowed` value
/// with tail `Empty` represents its window content exactly.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetValue {
    /// Sorted, duplicate-free list of members.
    Finite(#[serde(with = "nat_string_vec")] Vec<Nat>),
    /// Sorted, duplicate-free list of the excluded elements.
    Cofinite(#[serde(with = "nat_string_vec")] Vec<Nat>),
    Windowed { bound: u64, bits: Vec<bool>, tail: TailKnowledge },
}

impl SetValue {
    /// Finite set from any iterator; sorts and deduplicates.
    pub fn finite<I: IntoIterator<Item = Nat>>(elems: I) -> SetValue {
        let mut v: Vec<Nat> = elems.into_iter().collect();
        v.sort();
        v.dedup();
        SetValue::Finite(v)
    }

    /// Cofinite set excluding the given elements; sorts and deduplicates.
    pub fn cofinite<I: IntoIterator<Item = Nat>>(excluded: I) -> SetValue {
        let mut v: Vec<Nat> = excluded.into_iter().collect();
        v.sort();
        v.dedup();
        SetValue::Cofinite(v)
    }

    pub fn empty() -> SetValue {
        SetValue::Finite(Vec::new())
    }

    /// Representation invariants: sortedness, bit-vector length, and the
    /// exactness rule for `Windowed` with tail `Empty` (trivially true).
    pub fn check_invariants(&self) -> Result<(), String> {
        match self {
            SetValue::Finite(v) | SetValue::Cofinite(v) => {
                if v.windows(2).any(|w| w[0] >= w[1]) {
                    return Err("element list must be sorted and duplicate-free".into());
                }
            }
            SetValue::Windowed { bound, bits, .. } => {
                let want = *bound as usize + 1;
                if bits.len() != want {
                    return Err(format!(
                        "window over [0..{bound}] needs {want} bits, found {}",
                        bits.len()
                    ));
                }
            }
        }
        Ok(())
    }

    /// Membership where the representation can decide it.
    pub fn contains(&self, n: &Nat) -> TriBool {
        match self {
            SetValue::Finite(v) => TriBool::from_bool(v.binary_search(n).is_ok()),
            SetValue::Cofinite(v) => TriBool::from_bool(v.binary_search(n).is_err()),
            SetValue::Windowed { bound, bits, tail } => {
                if let Some(i) = n.try_into().ok().filter(|i: &u64| i <= bound) {
                    TriBool::from_bool(bits[i as usize])
                } else {
                    match tail {
                        TailKnowledge::Empty => TriBool::False,
                        TailKnowledge::All => TriBool::True,
                        _ => TriBool::Unknown,
                    }
                }
            }
        }
    }
}

impl fmt::Display for SetValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(v: &[Nat]) -> String {
            v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
        }
        match self {
            SetValue::Finite(v) => write!(f, "{{{}}}", list(v)),
            SetValue::Cofinite(v) => write!(f, "co{{{}}}", list(v)),
            SetValue::Windowed { bound, bits, tail } => {
                let members: Vec<String> = bits
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| i.to_string())
                    .collect();
                write!(f, "window[0..{bound}]{{{}}} tail={tail}", members.join(","))
            }
        }
    }
}

/// The spec-level nonemptiness test over any representation.
pub fn nonempty(v: &SetValue) -> TriBool {
    match v {
        SetValue::Finite(elems) => TriBool::from_bool(!elems.is_empty()),
        SetValue::Cofinite(_) => TriBool::True,
        SetValue::Windowed { bits, tail, .. } => {
            if bits.iter().any(|&b| b) {
                TriBool::True
            } else {
                match tail {
                    TailKnowledge::All | TailKnowledge::Some => TriBool::True,
                    TailKnowledge::Empty => TriBool::False,
                    TailKnowledge::Unknown => TriBool::Unknown,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat;

    #[test]
    fn nonempty_handles_each_representation() {
        assert_eq!(nonempty(&SetValue::empty()), TriBool::False);
        assert_eq!(nonempty(&SetValue::cofinite([nat(0)])), TriBool::True);
        assert_eq!(
            nonempty(&SetValue::Windowed {
                bound: 3,
                bits: vec![false; 4],
                tail: TailKnowledge::Unknown
            }),
            TriBool::Unknown
        );
        assert_eq!(
            nonempty(&SetValue::Windowed {
                bound: 3,
                bits: vec![false; 4],
                tail: TailKnowledge::Empty
            }),
            TriBool::False
        );
    }

    #[test]
    fn tri_logic_tables() {
        use TriBool::*;
        assert_eq!(True.and(Unknown), Unknown);
        assert_eq!(False.and(Unknown), False);
        assert_eq!(True.or(Unknown), True);
        assert_eq!(False.or(Unknown), Unknown);
        assert_eq!(Unknown.negate(), Unknown);
    }
}
