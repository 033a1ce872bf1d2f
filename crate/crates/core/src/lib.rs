//! Shared data model for circuits over sets of natural numbers and the
//! constraint problems built on top of them.
//!
//! Everything downstream (evaluation, solvers, reductions, the formula
//! compiler) works with the types defined here: labeled gate circuits,
//! set values with a windowed approximation, operator terms, CSP
//! instances with an explicit signature, first-order formulas over
//! multiplication, unary-predicate specifications and prime-exponent
//! maps.  All types are immutable after construction and safe to share
//! across threads.
//!
//! Numbers are unbounded: constants and products grow exponentially in
//! circuit depth, so every semantic value is a [`Nat`] (an arbitrary
//! precision unsigned integer).  Encoding size of a constant is its
//! digit length.

pub mod circuit;
pub mod cnf;
pub mod csp;
pub mod dsl;
pub mod factormap;
pub mod formula;
pub mod json;
pub mod setval;
pub mod term;
pub mod uspec;

pub use circuit::{Circuit, Gate, GateId, GateLabel, Violation};
pub use cnf::{Cnf, Lit};
pub use csp::{Assignment, Atom, CspInstance, Op, Signature};
pub use dsl::ParseError;
pub use factormap::FactorMap;
pub use formula::{FoFactor, FoFormula, Product};
pub use setval::{SetValue, TailKnowledge, TriBool};
pub use term::Term;
pub use uspec::USpec;

/// Unbounded natural number; the value domain of every variable and constant.
pub type Nat = num_bigint::BigUint;

/// Convenience constructor for small naturals in tests and builders.
pub fn nat(n: u64) -> Nat {
    Nat::from(n)
}

pub(crate) mod nat_string {
    //! Serde helpers rendering [`crate::Nat`] as a decimal string, so JSON
    //! output does not depend on any number-size limit of the consumer.
    use super::Nat;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &Nat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Nat, D::Error> {
        let s = String::deserialize(de)?;
        s.parse::<Nat>()
            .map_err(|_| D::Error::custom(format!("invalid natural number: {s:?}")))
    }
}

pub(crate) mod nat_string_vec {
    //! Like [`super::nat_string`] but for vectors.
    use super::Nat;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Nat], ser: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|n| n.to_string()).collect::<Vec<_>>().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Nat>, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        raw.into_iter()
            .map(|s| {
                s.parse::<Nat>()
                    .map_err(|_| D::Error::custom(format!("invalid natural number: {s:?}")))
            })
            .collect()
    }
}
