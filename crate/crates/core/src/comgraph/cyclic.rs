use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::{Error, Result};

/// The subgroup `(a/b)ℤ ≤ ℝ` with `gcd(a, b) = 1`. `(1, 1)` is `ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RationalCyclic {
    a: u64,
    b: u64,
}

impl RationalCyclic {
    pub const INTEGERS: RationalCyclic = RationalCyclic { a: 1, b: 1 };

    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::domain(
                "cyclic subgroup generator must be a positive rational",
            ));
        }
        let g = a.gcd(&b);
        Ok(RationalCyclic { a: a / g, b: b / g })
    }

    fn new_wide(a: u128, b: u128) -> Result<Self> {
        let g = a.gcd(&b);
        let conv = |v: u128| u64::try_from(v / g).map_err(|_| Error::overflow());
        Self::new(conv(a)?, conv(b)?)
    }

    pub fn numer(&self) -> u64 {
        self.a
    }

    pub fn denom(&self) -> u64 {
        self.b
    }

    /// `(x/y) · self`.
    pub fn rescale(&self, x: u64, y: u64) -> Result<Self> {
        if x == 0 || y == 0 {
            return Err(Error::domain("rescale factor must be positive"));
        }
        Self::new_wide(self.a as u128 * x as u128, self.b as u128 * y as u128)
    }

    /// `self ⊆ sup` iff `a/b` is an integer multiple of the generator of `sup`.
    pub fn is_subgroup_of(&self, sup: &Self) -> bool {
        (self.a as u128 * sup.b as u128).is_multiple_of(self.b as u128 * sup.a as u128)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        // over the common denominator l the generators are A/l and C/l
        let l = (self.b as u128).lcm(&(other.b as u128));
        let big_a = self.a as u128 * (l / self.b as u128);
        let big_c = other.a as u128 * (l / other.b as u128);
        let g = big_a.gcd(&big_c);
        let m = (big_a / g).checked_mul(big_c).ok_or_else(Error::overflow)?;
        Self::new_wide(m, l)
    }

    /// `[sup : self]`; fails unless `self ⊆ sup`.
    pub fn index_in(&self, sup: &Self) -> Result<u64> {
        if !self.is_subgroup_of(sup) {
            return Err(Error::domain(
                "index_in: subgroup is not contained in the target",
            ));
        }
        let q = (self.a as u128 * sup.b as u128) / (self.b as u128 * sup.a as u128);
        u64::try_from(q).map_err(|_| Error::overflow())
    }
}

impl fmt::Display for RationalCyclic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 1 {
            write!(f, "{}Z", self.a)
        } else {
            write!(f, "({}/{})Z", self.a, self.b)
        }
    }
}
