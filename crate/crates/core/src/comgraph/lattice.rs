//! Full-rank lattices in `ℚ^d`, stored as `(1/q) · rowspan(H)` with `H` in
//! Hermite normal form.
//!
//! Entries are `i64`; every intermediate step runs in checked `i128` and
//! reports overflow as a resource error.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::{Error, Result};

pub(crate) type Mat = Vec<Vec<i128>>;

fn ck<T>(v: Option<T>) -> Result<T> {
    v.ok_or_else(Error::overflow)
}

/// `x·a + y·b`, entrywise.
fn combine(x: i128, a: &[i128], y: i128, b: &[i128]) -> Result<Vec<i128>> {
    a.iter()
        .zip(b)
        .map(|(&u, &v)| {
            ck(x.checked_mul(u)
                .and_then(|p| y.checked_mul(v).and_then(|q| p.checked_add(q))))
        })
        .collect()
}

/// Row-style Hermite normal form of a generator matrix of full column rank.
///
/// Returns a `cols × cols` upper-triangular matrix with positive diagonal and
/// entries above each pivot reduced into `[0, pivot)`.
pub(crate) fn hnf(mut rows: Mat, cols: usize) -> Result<Mat> {
    let m = rows.len();
    let mut r = 0;
    for col in 0..cols {
        if r >= m {
            return Err(Error::domain("generators do not span a full-rank lattice"));
        }
        for i in r + 1..m {
            let b = rows[i][col];
            if b == 0 {
                continue;
            }
            let a = rows[r][col];
            let e = a.extended_gcd(&b);
            let g = e.gcd;
            let top = combine(e.x, &rows[r], e.y, &rows[i])?;
            let bottom = combine(b / g, &rows[r], -(a / g), &rows[i])?;
            rows[r] = top;
            rows[i] = bottom;
        }
        let pivot = rows[r][col];
        if pivot == 0 {
            return Err(Error::domain("generators do not span a full-rank lattice"));
        }
        if pivot < 0 {
            for v in rows[r].iter_mut() {
                *v = -*v;
            }
        }
        let pivot = rows[r][col];
        for i in 0..r {
            let q = rows[i][col].div_euclid(pivot);
            if q != 0 {
                rows[i] = combine(1, &rows[i], -q, &rows[r])?;
            }
        }
        r += 1;
    }
    rows.truncate(cols);
    Ok(rows)
}

/// Determinant by cofactor expansion; only used for `d <= 3`-ish matrices.
pub(crate) fn det(m: &Mat) -> Result<i128> {
    let n = m.len();
    match n {
        0 => Ok(1),
        1 => Ok(m[0][0]),
        2 => ck(m[0][0]
            .checked_mul(m[1][1])
            .and_then(|p| m[0][1].checked_mul(m[1][0]).and_then(|q| p.checked_sub(q)))),
        _ => {
            let mut acc: i128 = 0;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let term = ck(m[0][j].checked_mul(det(&minor(m, 0, j))?))?;
                acc = ck(if j % 2 == 0 {
                    acc.checked_add(term)
                } else {
                    acc.checked_sub(term)
                })?;
            }
            Ok(acc)
        }
    }
}

fn minor(m: &Mat, row: usize, col: usize) -> Mat {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != col)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Cofactor matrix, i.e. `adj(m)^T`, so that `m^{-T} = cofactor(m) / det(m)`.
pub(crate) fn cofactor(m: &Mat) -> Result<Mat> {
    let n = m.len();
    if n == 1 {
        return Ok(vec![vec![1]]);
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = det(&minor(m, i, j))?;
                    Ok(if (i + j) % 2 == 0 { c } else { -c })
                })
                .collect()
        })
        .collect()
}

pub(crate) fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).try_fold(0i128, |acc, k| {
                        ck(row[k].checked_mul(b[k][j]).and_then(|p| acc.checked_add(p)))
                    })
                })
                .collect()
        })
        .collect()
}

/// Calls `f` on every `d × d` HNF matrix of determinant `index`, i.e. on every
/// sublattice of `ℤ^d` of that index.
pub(crate) fn for_each_hnf(d: usize, index: u64, f: &mut dyn FnMut(&Mat)) {
    fn diagonals(d: usize, rest: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() + 1 == d {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 1..=rest {
            if rest.is_multiple_of(a) {
                cur.push(a);
                diagonals(d, rest / a, cur, out);
                cur.pop();
            }
        }
    }

    fn fill(m: &mut Mat, slots: &[(usize, usize)], at: usize, f: &mut dyn FnMut(&Mat)) {
        if at == slots.len() {
            f(m);
            return;
        }
        let (i, j) = slots[at];
        for v in 0..m[j][j] {
            m[i][j] = v;
            fill(m, slots, at + 1, f);
        }
        m[i][j] = 0;
    }

    if d == 0 || index == 0 {
        return;
    }
    let mut diags = Vec::new();
    diagonals(d, index, &mut Vec::new(), &mut diags);
    let slots: Vec<(usize, usize)> = (0..d).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    for diag in diags {
        let mut m: Mat = vec![vec![0; d]; d];
        for (k, &a) in diag.iter().enumerate() {
            m[k][k] = a as i128;
        }
        fill(&mut m, &slots, 0, f);
    }
}

/// A full-rank subgroup `(1/denom) · rowspan(basis)` of `ℚ^dim`.
///
/// Canonical: `basis` is in HNF and `gcd(denom, entries of basis) = 1`, so two
/// lattices are equal exactly when their fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RationalLattice {
    #[serde(skip)]
    dim: usize,
    denom: i64,
    #[serde(rename = "hnf")]
    basis: Vec<Vec<i64>>,
}

impl RationalLattice {
    /// `ℤ^d`.
    pub fn standard(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        RationalLattice {
            dim,
            denom: 1,
            basis,
        }
    }

    /// `(num/den) · ℤ^d`.
    pub fn scaled(dim: usize, num: i64, den: i64) -> Result<Self> {
        if num <= 0 || den <= 0 || dim == 0 {
            return Err(Error::domain("scaled lattice needs positive dim, num, den"));
        }
        let rows: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { num } else { 0 }).collect())
            .collect();
        Self::from_generators(den, &rows)
    }

    /// Lattice generated by `rows / denom`; needs at least `dim` rows of full rank.
    pub fn from_generators(denom: i64, rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::domain(
                "lattice needs at least one generator of positive length",
            ));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::domain("generator rows have different lengths"));
        }
        let m = rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        Self::from_generators_wide(denom as i128, m, dim)
    }

    pub(crate) fn from_generators_wide(denom: i128, rows: Mat, dim: usize) -> Result<Self> {
        if denom <= 0 {
            return Err(Error::domain("lattice denominator must be positive"));
        }
        if rows.len() < dim {
            return Err(Error::domain(format!(
                "{} generators cannot span a rank-{dim} lattice",
                rows.len()
            )));
        }
        let h = hnf(rows, dim)?;
        Self::from_hnf(denom, h)
    }

    fn from_hnf(denom: i128, h: Mat) -> Result<Self> {
        let g = h.iter().flatten().fold(denom, |g, &v| g.gcd(&v));
        let conv = |v: i128| ck((v / g).to_i64());
        let basis = h
            .iter()
            .map(|r| r.iter().map(|&v| conv(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalLattice {
            dim: basis.len(),
            denom: conv(denom)?,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub(crate) fn basis_wide(&self) -> Mat {
        self.basis
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect()
    }

    /// Product of the HNF diagonal.
    pub fn det_numerator(&self) -> BigInt {
        (0..self.dim)
            .map(|i| BigInt::from(self.basis[i][i]))
            .product()
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::domain(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    /// Whether the rational vector `num / den` lies in the lattice.
    pub fn contains_vector(&self, num: &[i128], den: i128) -> Result<bool> {
        if num.len() != self.dim || den <= 0 {
            return Err(Error::domain("vector does not match lattice dimension"));
        }
        // q·v must be integral
        let q = self.denom as i128;
        let mut w = Vec::with_capacity(self.dim);
        for &x in num {
            let t = ck(x.checked_mul(q))?;
            if t % den != 0 {
                return Ok(false);
            }
            w.push(t / den);
        }
        for j in 0..self.dim {
            let piv = self.basis[j][j] as i128;
            if w[j] % piv != 0 {
                return Ok(false);
            }
            let c = w[j] / piv;
            if c != 0 {
                for k in j..self.dim {
                    w[k] = ck(c
                        .checked_mul(self.basis[j][k] as i128)
                        .and_then(|p| w[k].checked_sub(p)))?;
                }
            }
        }
        Ok(true)
    }

    pub fn is_subgroup_of(&self, sup: &Self) -> Result<bool> {
        self.same_dim(sup)?;
        for row in &self.basis {
            let v: Vec<i128> = row.iter().map(|&x| x as i128).collect();
            if !sup.contains_vector(&v, self.denom as i128)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Both lattices as integer lattices over their common denominator.
    fn common_scale(&self, other: &Self) -> Result<(i128, Mat, Mat)> {
        let (q1, q2) = (self.denom as i128, other.denom as i128);
        let q = q1.lcm(&q2);
        let scale = |m: Mat, s: i128| -> Result<Mat> {
            m.into_iter()
                .map(|r| r.into_iter().map(|v| ck(v.checked_mul(s))).collect())
                .collect()
        };
        Ok((
            q,
            scale(self.basis_wide(), q / q1)?,
            scale(other.basis_wide(), q / q2)?,
        ))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let d = self.dim;
        let (q, m1, m2) = self.common_scale(other)?;
        // rows (v | v) for v in M1 and (w | 0) for w in M2: the rows of the HNF
        // vanishing on the first block span {(0 | v) : v in M1 ∩ M2}
        let mut stacked: Mat = Vec::with_capacity(2 * d);
        for r in &m1 {
            stacked.push(r.iter().chain(r.iter()).copied().collect());
        }
        for r in &m2 {
            stacked.push(r.iter().copied().chain(std::iter::repeat_n(0, d)).collect());
        }
        let h = hnf(stacked, 2 * d)?;
        let block: Mat = h[d..].iter().map(|r| r[d..].to_vec()).collect();
        Self::from_hnf(q, block)
    }

    /// Lattice generated by both arguments.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let (q, mut m1, m2) = self.common_scale(other)?;
        m1.extend(m2);
        Self::from_generators_wide(q, m1, self.dim)
    }

    /// `[sup : self]`; fails unless `self ⊆ sup`.
    pub fn index_in(&self, sup: &Self) -> Result<u64> {
        if !self.is_subgroup_of(sup)? {
            return Err(Error::domain(
                "index_in: lattice is not contained in the target",
            ));
        }
        let d = self.dim as u32;
        let num = self.det_numerator() * num_traits::pow(BigInt::from(sup.denom), d as usize);
        let den = sup.det_numerator() * num_traits::pow(BigInt::from(self.denom), d as usize);
        let (idx, rem) = num.div_rem(&den);
        debug_assert!(rem == BigInt::from(0));
        debug_assert!(idx >= BigInt::one());
        ck(idx.to_u64())
    }
}

impl fmt::Display for RationalLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom != 1 {
            write!(f, "(1/{})", self.denom)?;
        }
        write!(f, "[")?;
        for (i, r) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = r.iter().map(i64::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}
