//! Specifications of the unary predicate `U` used by multiplicative CSPs.

use crate::{Nat, nat_string_vec};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Description of a set `U` of naturals, all at least 2.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum USpec {
    /// A finite set given element by element.
    Explicit(#[serde(with = "nat_string_vec")] Vec<Nat>),
    /// The geometric family `{m, m^2, m^3, ...}` for a base `m >= 2`.
    Powers(#[serde(with = "crate::nat_string")] Nat),
    /// Union of explicit sets and geometric families.
    UnionOf(Vec<USpec>),
}

impl USpec {
    pub fn explicit<I: IntoIterator<Item = u64>>(elems: I) -> USpec {
        let mut v: Vec<Nat> = elems.into_iter().map(Nat::from).collect();
        v.sort();
        v.dedup();
        USpec::Explicit(v)
    }

    pub fn powers(m: u64) -> USpec {
        USpec::Powers(Nat::from(m))
    }

    /// Structural invariants: elements at least 2, bases above 1, unions
    /// containing only the two ground forms.
    pub fn validate(&self) -> Result<(), String> {
        let two = Nat::from(2u32);
        match self {
            USpec::Explicit(v) => {
                if v.iter().any(|n| *n < two) {
                    return Err("explicit U sets may not contain 0 or 1".into());
                }
                if v.windows(2).any(|w| w[0] >= w[1]) {
                    return Err("explicit U sets must be sorted and duplicate-free".into());
                }
                Ok(())
            }
            USpec::Powers(m) => {
                if *m < two {
                    return Err("power family base must be at least 2".into());
                }
                Ok(())
            }
            USpec::UnionOf(parts) => {
                for p in parts {
                    if matches!(p, USpec::UnionOf(_)) {
                        return Err("unions of U specs must not nest".into());
                    }
                    p.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Exact membership test.
    pub fn contains(&self, n: &Nat) -> bool {
        match self {
            USpec::Explicit(v) => v.binary_search(n).is_ok(),
            USpec::Powers(m) => {
                if n < m {
                    return false;
                }
                let mut rest = n.clone();
                while !rest.is_one() {
                    if (&rest % m).is_zero() {
                        rest /= m;
                    } else {
                        return false;
                    }
                }
                true
            }
            USpec::UnionOf(parts) => parts.iter().any(|p| p.contains(n)),
        }
    }

    /// When this spec is known to contain every power of some base `m`,
    /// returns that base.  Sound but not complete: a union covering a
    /// geometric family only jointly is not recognized.
    pub fn powers_base(&self) -> Option<Nat> {
        match self {
            USpec::Explicit(_) => None,
            USpec::Powers(m) => Some(m.clone()),
            USpec::UnionOf(parts) => parts.iter().find_map(|p| p.powers_base()),
        }
    }

    /// Does this spec contain the whole family `{m, m^2, ...}`?  True when
    /// some `Powers(k)` part exists with `m` a positive power of `k`.
    pub fn covers_powers_of(&self, m: &Nat) -> bool {
        match self {
            USpec::Explicit(_) => false,
            USpec::Powers(k) => {
                if m < k {
                    return false;
                }
                let mut rest = m.clone();
                while !rest.is_one() {
                    if (&rest % k).is_zero() {
                        rest /= k;
                    } else {
                        return false;
                    }
                }
                true
            }
            USpec::UnionOf(parts) => parts.iter().any(|p| p.covers_powers_of(m)),
        }
    }

    /// All explicitly listed elements (from `Explicit` parts).
    pub fn explicit_elements(&self) -> Vec<Nat> {
        match self {
            USpec::Explicit(v) => v.clone(),
            USpec::Powers(_) => Vec::new(),
            USpec::UnionOf(parts) => {
                let mut out: Vec<Nat> =
                    parts.iter().flat_map(|p| p.explicit_elements()).collect();
                out.sort();
                out.dedup();
                out
            }
        }
    }

    /// True when the spec has a geometric part.
    pub fn has_powers_part(&self) -> bool {
        match self {
            USpec::Explicit(_) => false,
            USpec::Powers(_) => true,
            USpec::UnionOf(parts) => parts.iter().any(|p| p.has_powers_part()),
        }
    }

    /// Parses the CLI syntax `powers:<m>` or `set:<n,n,...>`, unions joined by `+`.
    pub fn parse(s: &str) -> Result<USpec, String> {
        let parts: Vec<&str> = s.split('+').collect();
        let mut specs = Vec::new();
        for part in parts {
            let spec = if let Some(m) = part.strip_prefix("powers:") {
                USpec::Powers(m.trim().parse::<Nat>().map_err(|_| format!("bad base {m:?}"))?)
            } else if let Some(list) = part.strip_prefix("set:") {
                let mut elems = Vec::new();
                for item in list.split(',').filter(|i| !i.trim().is_empty()) {
                    elems.push(
                        item.trim().parse::<Nat>().map_err(|_| format!("bad element {item:?}"))?,
                    );
                }
                elems.sort();
                elems.dedup();
                USpec::Explicit(elems)
            } else {
                return Err(format!("expected powers:<m> or set:<n,...>, found {part:?}"));
            };
            specs.push(spec);
        }
        let spec = if specs.len() == 1 { specs.pop().unwrap() } else { USpec::UnionOf(specs) };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for USpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            USpec::Explicit(v) => {
                let items: Vec<String> = v.iter().map(|n| n.to_string()).collect();
                write!(f, "set:{}", items.join(","))
            }
            USpec::Powers(m) => write!(f, "powers:{m}"),
            USpec::UnionOf(parts) => {
                let items: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", items.join("+"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat;

    #[test]
    fn powers_membership() {
        let u = USpec::powers(3);
        assert!(u.contains(&nat(3)));
        assert!(u.contains(&nat(27)));
        assert!(!u.contains(&nat(1)));
        assert!(!u.contains(&nat(12)));
    }

    #[test]
    fn covers_powers_recognizes_power_bases() {
        assert!(USpec::powers(2).covers_powers_of(&nat(4)));
        assert!(!USpec::powers(4).covers_powers_of(&nat(2)));
        assert!(!USpec::explicit([2, 4, 8]).covers_powers_of(&nat(2)));
    }

    #[test]
    fn parse_round_trips_display() {
        for s in ["powers:2", "set:4,108", "set:6+powers:5"] {
            let u = USpec::parse(s).unwrap();
            assert_eq!(u.to_string(), s);
        }
        assert!(USpec::parse("set:0,1").is_err());
    }
}
