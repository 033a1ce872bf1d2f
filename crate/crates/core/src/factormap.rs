//! Prime-exponent maps: the factored form of a positive natural.

use crate::Nat;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Map from primes to positive exponents; the empty map represents 1.
///
/// Construction does not itself check primality of the keys; the
/// factorization routines that produce these maps guarantee it.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorMap(pub BTreeMap<u64, u32>);

impl FactorMap {
    pub fn one() -> FactorMap {
        FactorMap(BTreeMap::new())
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> FactorMap {
        FactorMap(pairs.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// The represented number: the product of `p^e` over all entries.
    pub fn value(&self) -> Nat {
        let mut out = Nat::one();
        for (&p, &e) in &self.0 {
            out *= Nat::from(p).pow(e);
        }
        out
    }

    /// Smallest exponent over the prime divisors; `None` for the empty map.
    pub fn min_exponent(&self) -> Option<u32> {
        self.0.values().copied().min()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for FactorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat;

    #[test]
    fn value_multiplies_back() {
        let m = FactorMap::from_pairs([(2, 2), (3, 1)]);
        assert_eq!(m.value(), nat(12));
        assert_eq!(FactorMap::one().value(), nat(1));
    }
}
