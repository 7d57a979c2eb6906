//! The commensurability graph over two concrete families of subgroups:
//! cyclic subgroups `(a/b)ℤ ≤ ℝ` and full-rank lattices in `ℚ^d`.
//!
//! Edges are weighted by the commensurability index
//! `c(A, B) = [A : A∩B][B : A∩B]` and path lengths multiply. Under
//! `d = log c` the vertex set is a metric space, `A → A∩B → B` is a geodesic,
//! and ascending chains are geodesics.
//!
//! All comparisons run on the integer indices; [`distance`] is the only place
//! a logarithm is taken.

mod ball;
mod cyclic;
mod lattice;
pub mod sample;

use std::fmt;

use serde::Serialize;

pub use cyclic::RationalCyclic;
pub use lattice::RationalLattice;

use crate::{BoundReport, Error, Result};

/// Operations the graph needs from a family of pairwise commensurable subgroups.
pub trait Subgroup: Clone + Eq + Ord + fmt::Debug + fmt::Display + Send + Sync {
    fn intersect(&self, other: &Self) -> Result<Self>;

    fn is_subgroup_of(&self, sup: &Self) -> Result<bool>;

    /// `[sup : self]`, or a domain error when `self ⊄ sup`.
    fn index_in(&self, sup: &Self) -> Result<u64>;

    /// The ball `{Δ : c(self, Δ) <= n}` in sorted canonical order.
    fn ball(&self, n: u64, guard: &BallGuard) -> Result<Vec<Self>>;
}

impl Subgroup for RationalCyclic {
    fn intersect(&self, other: &Self) -> Result<Self> {
        RationalCyclic::intersect(self, other)
    }

    fn is_subgroup_of(&self, sup: &Self) -> Result<bool> {
        Ok(RationalCyclic::is_subgroup_of(self, sup))
    }

    fn index_in(&self, sup: &Self) -> Result<u64> {
        RationalCyclic::index_in(self, sup)
    }

    fn ball(&self, n: u64, guard: &BallGuard) -> Result<Vec<Self>> {
        ball::cyclic_ball(self, n, guard)
    }
}

impl Subgroup for RationalLattice {
    fn intersect(&self, other: &Self) -> Result<Self> {
        RationalLattice::intersect(self, other)
    }

    fn is_subgroup_of(&self, sup: &Self) -> Result<bool> {
        RationalLattice::is_subgroup_of(self, sup)
    }

    fn index_in(&self, sup: &Self) -> Result<u64> {
        RationalLattice::index_in(self, sup)
    }

    fn ball(&self, n: u64, guard: &BallGuard) -> Result<Vec<Self>> {
        ball::lattice_ball(self, n, guard)
    }
}

/// `[A : A∩B]`, `[B : A∩B]` and their product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CommIndex {
    pub left_index: u64,
    pub right_index: u64,
    pub value: u64,
}

pub fn comm_index<S: Subgroup>(a: &S, b: &S) -> Result<CommIndex> {
    let meet = a.intersect(b)?;
    let left_index = meet.index_in(a)?;
    let right_index = meet.index_in(b)?;
    let value = left_index
        .checked_mul(right_index)
        .ok_or_else(Error::overflow)?;
    Ok(CommIndex {
        left_index,
        right_index,
        value,
    })
}

/// `log c(A, B)`.
pub fn distance<S: Subgroup>(a: &S, b: &S) -> Result<f64> {
    Ok((comm_index(a, b)?.value as f64).ln())
}

/// A path in the commensurability graph; `length` is the product of edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicPath<S> {
    pub vertices: Vec<S>,
    pub length: u64,
}

impl<S: Subgroup> GeodesicPath<S> {
    /// Builds the path through `vertices`, weighting each edge by its index.
    pub fn through(vertices: Vec<S>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::domain("a path needs at least one vertex"));
        }
        let mut length = 1u64;
        for w in vertices.windows(2) {
            length = length
                .checked_mul(comm_index(&w[0], &w[1])?.value)
                .ok_or_else(Error::overflow)?;
        }
        Ok(GeodesicPath { vertices, length })
    }
}

/// The path `A → A∩B → B`, with repeated vertices merged.
pub fn geodesic<S: Subgroup>(a: &S, b: &S) -> Result<GeodesicPath<S>> {
    let meet = a.intersect(b)?;
    let mut vertices = vec![a.clone()];
    for v in [meet, b.clone()] {
        if vertices.last() != Some(&v) {
            vertices.push(v);
        }
    }
    GeodesicPath::through(vertices)
}

/// Product of successive indices along `H_1 ⊆ H_2 ⊆ … ⊆ H_n`.
pub fn chain_length<S: Subgroup>(chain: &[S]) -> Result<u64> {
    if chain.is_empty() {
        return Err(Error::domain("empty chain"));
    }
    let mut total = 1u64;
    for (i, w) in chain.windows(2).enumerate() {
        if !w[0].is_subgroup_of(&w[1])? {
            return Err(Error::domain(format!(
                "chain is not nested at position {}: {} ⊄ {}",
                i + 1,
                w[0],
                w[1]
            )));
        }
        total = total
            .checked_mul(w[0].index_in(&w[1])?)
            .ok_or_else(Error::overflow)?;
    }
    Ok(total)
}

/// Limits on ball enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallGuard {
    pub max_dim: usize,
    pub max_n: u64,
}

impl Default for BallGuard {
    fn default() -> Self {
        BallGuard {
            max_dim: 3,
            max_n: 1000,
        }
    }
}

impl BallGuard {
    pub(crate) fn admit(&self, dim: usize, n: u64) -> Result<()> {
        if dim > self.max_dim {
            return Err(Error::resource(format!(
                "ball enumeration in dimension {dim} exceeds the guard {}",
                self.max_dim
            )));
        }
        if n > self.max_n {
            return Err(Error::resource(format!(
                "ball radius {n} exceeds the guard {}",
                self.max_n
            )));
        }
        Ok(())
    }
}

/// `{Δ : c(gamma, Δ) <= n}` under the default guard.
pub fn enumerate_ball<S: Subgroup>(gamma: &S, n: u64) -> Result<Vec<S>> {
    gamma.ball(n, &BallGuard::default())
}

/// `|ball(A, n)| <= |ball(B, c(A,B)·n)|`.
pub fn check_transfer_inequality<S: Subgroup>(
    a: &S,
    b: &S,
    n: u64,
    guard: &BallGuard,
) -> Result<BoundReport> {
    let c = comm_index(a, b)?.value;
    let scaled = c.checked_mul(n).ok_or_else(Error::overflow)?;
    let left = a.ball(n, guard)?.len();
    let right = b.ball(scaled, guard)?.len();
    Ok(BoundReport::le("C_n(A) <= C_{c(A,B)n}(B)", left, right)
        .with("A", a)
        .with("B", b)
        .with("n", n)
        .with("c", c))
}
