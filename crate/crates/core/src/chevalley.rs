//! Orders of split simply-connected Chevalley groups over finite rings.
//!
//! Over a prime field `|G(F_p)| = p^N ∏ (p^{d_i} − 1)`. The reduction kernel
//! `G(ℤ/p^k) → G(F_p)` is filtered with `k − 1` layers each of size `p^d`,
//! so `|G(ℤ/p^k)| = p^{(k−1)d} |G(F_p)|`, and the Chinese remainder theorem
//! multiplies over the prime powers of a general modulus.
//!
//! [`brute_force_order`] counts matrices directly and is the independent check.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::arith::{factor_u64, is_prime};
use crate::rootsys::{CartanType, RootSystem};
use crate::{BoundReport, Error, Result};

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not prime")))
    }
}

fn big_pow(p: u64, e: usize) -> BigUint {
    Pow::pow(BigUint::from(p), e)
}

/// `|G(F_p)|`.
pub fn order_fp(rs: &RootSystem, p: u64) -> Result<BigUint> {
    require_prime(p)?;
    let unipotent = big_pow(p, rs.num_positive_roots());
    Ok(rs
        .degrees
        .iter()
        .map(|&d| big_pow(p, d as usize) - 1u32)
        .fold(unipotent, |acc, f| acc * f))
}

/// `|G(ℤ/p^k)|`.
pub fn order_zpk(rs: &RootSystem, p: u64, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::domain("order_zpk needs k >= 1"));
    }
    Ok(big_pow(p, (k as usize - 1) * rs.dimension()) * order_fp(rs, p)?)
}

/// `|G(ℤ/m)|` as a product over the prime powers of `m`.
pub fn order_zm(rs: &RootSystem, m: u64) -> Result<BigUint> {
    factor_u64(m)?
        .into_iter()
        .try_fold(BigUint::one(), |acc, (p, k)| Ok(acc * order_zpk(rs, p, k)?))
}

/// `|G(F_p)| <= p^d`.
pub fn check_order_bound(rs: &RootSystem, p: u64) -> Result<BoundReport> {
    let order = order_fp(rs, p)?;
    Ok(
        BoundReport::le("#G(F_p) <= p^d", order, big_pow(p, rs.dimension()))
            .with("type", rs.label())
            .with("p", p),
    )
}

/// A computed group order together with the ring it was taken over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOrder {
    pub label: String,
    pub p: u64,
    pub k: u32,
    pub value: BigUint,
}

impl GroupOrder {
    pub fn over_prime_power(rs: &RootSystem, p: u64, k: u32) -> Result<Self> {
        Ok(GroupOrder {
            label: rs.label(),
            p,
            k,
            value: order_zpk(rs, p, k)?,
        })
    }
}

impl Serialize for GroupOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("GroupOrder", 4)?;
        s.serialize_field("label", &self.label)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("order", &self.value.to_string())?;
        s.end()
    }
}

/// Matrix groups the brute-force oracle can scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFamily {
    /// `SL_n`, `1 <= n <= 3`.
    SpecialLinear(usize),
    /// `Sp_4` for the antidiagonal form `x0y3 + x1y2 − x2y1 − x3y0`.
    Symplectic4,
}

impl MatrixFamily {
    pub fn size(self) -> usize {
        match self {
            MatrixFamily::SpecialLinear(n) => n,
            MatrixFamily::Symplectic4 => 4,
        }
    }

    /// The simply-connected type whose points this family realizes.
    pub fn for_type(t: CartanType) -> Option<Self> {
        match t {
            CartanType::A(1) => Some(MatrixFamily::SpecialLinear(2)),
            CartanType::A(2) => Some(MatrixFamily::SpecialLinear(3)),
            CartanType::B(2) | CartanType::C(2) => Some(MatrixFamily::Symplectic4),
            _ => None,
        }
    }
}

/// Upper bound on `m^{n²}` for [`brute_force_order`].
pub const BRUTE_FORCE_LIMIT: u64 = 100_000_000;

fn det_mod(m: &[i64], n: usize, modulus: i64) -> i64 {
    let d = match n {
        1 => m[0],
        2 => m[0] * m[3] - m[1] * m[2],
        3 => {
            m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        _ => {
            let mut acc = 0;
            for j in 0..n {
                let minor: Vec<i64> = (1..n)
                    .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
                    .map(|(r, c)| m[r * n + c])
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * m[j] * det_mod(&minor, n - 1, modulus);
            }
            acc
        }
    };
    d.rem_euclid(modulus)
}

/// `ω(col_i, col_j) = J[i][j]` for every pair of columns, modulo `modulus`.
fn is_symplectic(m: &[i64], modulus: i64) -> bool {
    let col = |j: usize| [m[j], m[4 + j], m[8 + j], m[12 + j]];
    let omega = |x: [i64; 4], y: [i64; 4]| x[0] * y[3] + x[1] * y[2] - x[2] * y[1] - x[3] * y[0];
    const J: [[i64; 4]; 4] = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]];
    for i in 0..4 {
        for j in i + 1..4 {
            if (omega(col(i), col(j)) - J[i][j]).rem_euclid(modulus) != 0 {
                return false;
            }
        }
    }
    true
}

/// Exhaustive count of the group's points over `ℤ/modulus`.
pub fn brute_force_order(family: MatrixFamily, modulus: u64) -> Result<u64> {
    let n = family.size();
    if let MatrixFamily::SpecialLinear(k) = family {
        if !(1..=3).contains(&k) {
            return Err(Error::domain(format!(
                "SL_{k} is outside the brute-force families"
            )));
        }
    }
    if modulus == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    let cells = (n * n) as u32;
    let space = modulus
        .checked_pow(cells)
        .filter(|&s| s <= BRUTE_FORCE_LIMIT)
        .ok_or_else(|| {
            Error::resource(format!(
                "{modulus}^{cells} matrices exceed the brute-force limit {BRUTE_FORCE_LIMIT}"
            ))
        })?;
    let m = modulus as i64;
    let one = 1 % m;
    let accept = move |mat: &[i64]| match family {
        MatrixFamily::SpecialLinear(_) => det_mod(mat, n, m) == one,
        MatrixFamily::Symplectic4 => is_symplectic(mat, m) && det_mod(mat, 4, m) == one,
    };

    // split on the first row, scan the remaining entries with an odometer
    let heads = modulus.pow(n as u32);
    let rest = space / heads;
    let count = (0..heads)
        .into_par_iter()
        .map(|head| {
            let mut mat = vec![0i64; n * n];
            let mut h = head;
            for cell in mat.iter_mut().take(n) {
                *cell = (h % modulus) as i64;
                h /= modulus;
            }
            let mut hits = 0u64;
            for _ in 0..rest {
                if accept(&mat) {
                    hits += 1;
                }
                for cell in mat[n..].iter_mut() {
                    *cell += 1;
                    if *cell < m {
                        break;
                    }
                    *cell = 0;
                }
            }
            hits
        })
        .sum();
    Ok(count)
}
