//! Root systems of the split simple types.
//!
//! Roots are kept only as coefficient vectors in the basis of simple roots.
//! Positive roots come from closure under root strings: for a positive root
//! `α ≠ α_i`, the `α_i`-string through `α` runs from `α − pα_i` to `α + qα_i`
//! with `p − q = ⟨α, α_i^∨⟩`, so `α + α_i` is a root iff `q > 0`.
//!
//! Cartan entries follow `A[i][j] = ⟨α_i^∨, α_j⟩`; numbering is Bourbaki's.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::{Error, Result};

/// Dynkin type of a simple root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(l) | CartanType::B(l) | CartanType::C(l) | CartanType::D(l) => l,
            CartanType::E6 => 6,
            CartanType::E7 => 7,
            CartanType::E8 => 8,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Every supported type of rank at most `max_rank`.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for l in 1..=max_rank {
            out.push(CartanType::A(l));
            if l >= 2 {
                out.push(CartanType::B(l));
                out.push(CartanType::C(l));
            }
            if l >= 4 {
                out.push(CartanType::D(l));
            }
        }
        for t in [
            CartanType::G2,
            CartanType::F4,
            CartanType::E6,
            CartanType::E7,
            CartanType::E8,
        ] {
            if t.rank() <= max_rank {
                out.push(t);
            }
        }
        out
    }

    fn cartan(self) -> Vec<Vec<i64>> {
        let l = self.rank();
        let mut a = vec![vec![0i64; l]; l];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self {
            CartanType::A(_) | CartanType::B(_) | CartanType::C(_) => {
                for i in 0..l - 1 {
                    link(i, i + 1);
                }
            }
            CartanType::D(_) => {
                for i in 0..l - 2 {
                    link(i, i + 1);
                }
                link(l - 3, l - 1);
            }
            CartanType::E6 | CartanType::E7 | CartanType::E8 => {
                link(0, 2);
                link(1, 3);
                for i in 2..l - 1 {
                    link(i, i + 1);
                }
            }
            CartanType::F4 => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            CartanType::G2 => link(0, 1),
        }
        match self {
            // α_l short
            CartanType::B(_) => a[l - 1][l - 2] = -2,
            // α_l long
            CartanType::C(_) => a[l - 2][l - 1] = -2,
            // α_1, α_2 long; α_3, α_4 short
            CartanType::F4 => a[2][1] = -2,
            // α_1 short, α_2 long
            CartanType::G2 => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// Degrees of the basic invariants of the Weyl group, ascending.
    fn degrees(self) -> Vec<u32> {
        let l = self.rank() as u32;
        let mut d = match self {
            CartanType::A(_) => (2..=l + 1).collect(),
            CartanType::B(_) | CartanType::C(_) => (1..=l).map(|i| 2 * i).collect(),
            CartanType::D(_) => (1..l).map(|i| 2 * i).chain([l]).collect(),
            CartanType::E6 => vec![2, 5, 6, 8, 9, 12],
            CartanType::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            CartanType::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            CartanType::F4 => vec![2, 6, 8, 12],
            CartanType::G2 => vec![2, 6],
        };
        d.sort_unstable();
        d
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("unrecognized root system type {s:?}"));
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let digits = chars.as_str().trim_start_matches('_');
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let l: usize = digits.parse().map_err(|_| bad())?;
        let t = match (letter, l) {
            ('A', l) if l >= 1 => CartanType::A(l),
            ('B', l) if l >= 2 => CartanType::B(l),
            ('C', l) if l >= 2 => CartanType::C(l),
            ('D', l) if l >= 4 => CartanType::D(l),
            ('E', 6) => CartanType::E6,
            ('E', 7) => CartanType::E7,
            ('E', 8) => CartanType::E8,
            ('F', 4) => CartanType::F4,
            ('G', 2) => CartanType::G2,
            _ => return Err(bad()),
        };
        Ok(t)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(l) => write!(f, "A{l}"),
            CartanType::B(l) => write!(f, "B{l}"),
            CartanType::C(l) => write!(f, "C{l}"),
            CartanType::D(l) => write!(f, "D{l}"),
            CartanType::E6 => write!(f, "E6"),
            CartanType::E7 => write!(f, "E7"),
            CartanType::E8 => write!(f, "E8"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

/// A root system with its positive roots and Weyl degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub kind: CartanType,
    pub cartan: Vec<Vec<i64>>,
    /// Simple-root coefficient vectors, ordered by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub degrees: Vec<u32>,
}

/// `⟨α, α_i^∨⟩ = Σ_j A[i][j] c_j`.
fn coroot_pairing(cartan: &[Vec<i64>], root: &[i64], i: usize) -> i64 {
    cartan[i].iter().zip(root).map(|(a, c)| a * c).sum()
}

fn close_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let simple: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut known: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut all = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for alpha in &layer {
            for i in 0..l {
                let is_simple_i = alpha
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == i64::from(i == j));
                if is_simple_i {
                    continue;
                }
                let mut p = 0;
                let mut down = alpha.clone();
                loop {
                    down[i] -= 1;
                    if down[i] < 0 || !known.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                let q = p - coroot_pairing(cartan, alpha, i);
                if q > 0 {
                    let mut up = alpha.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| {
        let h = |v: &Vec<i64>| v.iter().sum::<i64>();
        h(a).cmp(&h(b)).then_with(|| b.cmp(a))
    });
    all
}

impl RootSystem {
    pub fn new(kind: CartanType) -> Result<Self> {
        let cartan = kind.cartan();
        let positive_roots = close_positive_roots(&cartan);
        let rs = RootSystem {
            kind,
            cartan,
            positive_roots,
            degrees: kind.degrees(),
        };
        let from_degrees: u64 = rs.degrees.iter().map(|&d| d as u64 - 1).sum();
        if rs.num_positive_roots() as u64 != from_degrees {
            return Err(Error::domain(format!(
                "{kind}: {} positive roots but degrees give {from_degrees}",
                rs.num_positive_roots()
            )));
        }
        if rs.degrees.len() != rs.rank() {
            return Err(Error::domain(format!(
                "{kind}: degree table has wrong length"
            )));
        }
        Ok(rs)
    }

    pub fn label(&self) -> String {
        self.kind.to_string()
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    /// `N`, the number of positive roots.
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `2N + l`.
    pub fn dimension(&self) -> usize {
        2 * self.num_positive_roots() + self.rank()
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("nonempty root system")
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r == v)
    }

    /// `⟨Σ_β a_β ϖ̌_β, α⟩ = Σ_β a_β n_{α,β}`, with `n_{α,β}` the coefficient of
    /// the simple root `β` in `α`.
    pub fn pairing(&self, coeffs: &[i64], root: &[i64]) -> Result<i64> {
        if coeffs.len() != self.rank() || root.len() != self.rank() {
            return Err(Error::domain(format!(
                "pairing needs vectors of length {}, got {} and {}",
                self.rank(),
                coeffs.len(),
                root.len()
            )));
        }
        Ok(coeffs.iter().zip(root).map(|(a, n)| a * n).sum())
    }

    /// `⟨α, α_i^∨⟩`, exposed for root-string checks.
    pub fn coroot_pairing(&self, root: &[i64], i: usize) -> i64 {
        coroot_pairing(&self.cartan, root, i)
    }
}

pub fn build(label: &str) -> Result<RootSystem> {
    RootSystem::new(label.parse()?)
}

impl Serialize for RootSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RootSystem", 6)?;
        s.serialize_field("label", &self.label())?;
        s.serialize_field("rank", &self.rank())?;
        s.serialize_field("N", &self.num_positive_roots())?;
        s.serialize_field("d", &self.dimension())?;
        s.serialize_field("degrees", &self.degrees)?;
        s.serialize_field("positive_roots", &self.positive_roots)?;
        s.end()
    }
}
