//! Ball enumeration against an exhaustive search.
//!
//! Any Δ with c(ℤ^d, Δ) <= n satisfies e²ℤ^d ⊆ eΔ ⊆ ℤ^d for e = lcm(1..n),
//! so scanning every integer lattice between e²ℤ^d and ℤ^d, scaling by
//! 1/e and filtering on the index recovers the ball.

use std::collections::BTreeSet;

use num_integer::Integer;

use commgrowth::arith::growth_series_rank1;
use commgrowth::comgraph::{comm_index, enumerate_ball, RationalCyclic, RationalLattice};

fn lcm_upto(n: i64) -> i64 {
    (1..=n).fold(1, |acc, k| acc.lcm(&k))
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Integer lattices `[[a, b], [0, c]]` (row HNF) containing `f ℤ²`.
fn lattices_over(f: i64) -> Vec<[[i64; 2]; 2]> {
    let mut out = Vec::new();
    for &a in &divisors(f) {
        for &c in &divisors(f) {
            for b in 0..c {
                // f·e1 = (f/a)(a, b) - t (0, c) needs c | (f/a)·b
                if ((f / a) * b) % c == 0 {
                    out.push([[a, b], [0, c]]);
                }
            }
        }
    }
    out
}

fn oracle_ball_z2(n: u64) -> BTreeSet<RationalLattice> {
    let e = lcm_upto(n as i64);
    let z2 = RationalLattice::standard(2);
    lattices_over(e * e)
        .into_iter()
        .map(|[r0, r1]| RationalLattice::from_generators(e, &[r0.to_vec(), r1.to_vec()]).unwrap())
        .filter(|l| comm_index(&z2, l).unwrap().value <= n)
        .collect()
}

#[test]
fn lattice_ball_matches_exhaustive_search() {
    let z2 = RationalLattice::standard(2);
    for n in 1..=4 {
        let got = enumerate_ball(&z2, n).unwrap();
        let set: BTreeSet<_> = got.iter().cloned().collect();
        assert_eq!(set.len(), got.len(), "duplicates at n={n}");
        assert_eq!(set, oracle_ball_z2(n), "n={n}");
    }
}

#[test]
fn lattice_ball_counts_sublattices_and_overlattices() {
    // index-p sublattices of ℤ² number p + 1, and so do index-p overlattices
    let z2 = RationalLattice::standard(2);
    let b = enumerate_ball(&z2, 3).unwrap();
    let inside = b.iter().filter(|l| l.is_subgroup_of(&z2).unwrap()).count();
    let outside = b.iter().filter(|l| z2.is_subgroup_of(l).unwrap()).count();
    assert_eq!((inside, outside), (1 + 3 + 4, 1 + 3 + 4));
}

#[test]
fn cyclic_ball_sizes_are_prefix_sums() {
    let series = growth_series_rank1(200).unwrap();
    let full = enumerate_ball(&RationalCyclic::INTEGERS, 200).unwrap();
    for n in 1..=200 {
        let inside = full
            .iter()
            .filter(|h| comm_index(&RationalCyclic::INTEGERS, *h).unwrap().value <= n)
            .count();
        assert_eq!(inside as u64, series.total(n as usize), "n={n}");
    }
}

#[test]
fn ball_is_closed_under_its_own_radius() {
    let g = RationalLattice::from_generators(3, &[vec![2, 1], vec![0, 1]]).unwrap();
    let b = enumerate_ball(&g, 8).unwrap();
    assert!(b.contains(&g));
    for h in &b {
        let c = comm_index(&g, h).unwrap();
        assert!(c.value <= 8);
        assert_eq!(c.value, c.left_index * c.right_index);
        // the ball around h of the same radius contains g
        assert!(comm_index(h, &g).unwrap().value <= 8);
        assert!(h.intersect(&g).unwrap().is_subgroup_of(h).unwrap());
    }
}

#[test]
fn three_dimensional_ball_radius_two() {
    // ℤ³ has 7 sublattices and 7 overlattices of index 2
    let z3 = RationalLattice::standard(3);
    let b = enumerate_ball(&z3, 2).unwrap();
    assert_eq!(b.len(), 15);
}
