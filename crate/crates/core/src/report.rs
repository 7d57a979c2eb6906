use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::ser::{Serialize, SerializeStruct, Serializer};

/// An evaluated inequality `lhs <= rhs`.
///
/// Both sides are exact rationals (integers in practice). `holds` is always
/// derived from the two sides and cannot be set independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub name: String,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
    pub context: BTreeMap<String, String>,
}

/// Conversion into an exact rational bound side.
pub trait Exact {
    fn exact(self) -> BigRational;
}

impl Exact for BigRational {
    fn exact(self) -> BigRational {
        self
    }
}

impl Exact for BigInt {
    fn exact(self) -> BigRational {
        BigRational::from_integer(self)
    }
}

impl Exact for BigUint {
    fn exact(self) -> BigRational {
        BigRational::from_integer(self.into())
    }
}

macro_rules! exact_prim {
    ($($t:ty),*) => {$(
        impl Exact for $t {
            fn exact(self) -> BigRational {
                BigRational::from_integer(BigInt::from(self))
            }
        }
    )*};
}
exact_prim!(u32, u64, u128, usize, i64, i128);

impl BoundReport {
    pub fn le(name: impl Into<String>, lhs: impl Exact, rhs: impl Exact) -> Self {
        let lhs = lhs.exact();
        let rhs = rhs.exact();
        BoundReport {
            name: name.into(),
            holds: lhs <= rhs,
            lhs,
            rhs,
            context: BTreeMap::new(),
        }
    }

    /// Attach a named parameter or auxiliary value.
    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.context.insert(key.to_string(), value.to_string());
        self
    }

    pub fn lhs_integer(&self) -> Option<BigInt> {
        self.lhs.is_integer().then(|| self.lhs.to_integer())
    }

    pub fn rhs_integer(&self) -> Option<BigInt> {
        self.rhs.is_integer().then(|| self.rhs.to_integer())
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {} <= {}", self.name, self.lhs, self.rhs)?;
        for (k, v) in &self.context {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BoundReport", 5)?;
        s.serialize_field("name", &self.name)?;
        s.serialize_field("lhs", &self.lhs.to_string())?;
        s.serialize_field("rhs", &self.rhs.to_string())?;
        s.serialize_field("holds", &self.holds)?;
        s.serialize_field("context", &self.context)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_tracks_sides() {
        assert!(BoundReport::le("eq", 5u64, 5u64).holds);
        assert!(BoundReport::le("lt", 4u64, 5u64).holds);
        assert!(!BoundReport::le("gt", 6u64, 5u64).holds);
    }

    #[test]
    fn display_lists_context_in_key_order() {
        let r = BoundReport::le("x", 1u64, 2u64).with("p", 3).with("k", 1);
        assert_eq!(r.to_string(), "PASS x: 1 <= 2 k=1 p=3");
    }
}
