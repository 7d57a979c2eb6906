//! Ball enumeration `{Δ : c(Γ, Δ) <= n}`.
//!
//! Every `Δ` commensurable with `Γ` has a unique trace `M = Δ ∩ Γ`, and
//! `c(Γ, Δ) = [Γ : M][Δ : M]`. The enumeration walks pairs `(M, Δ)` with
//! `M ⊆ Γ` of index `i` and `Δ ⊇ M` of index `j`, `ij <= n`, and keeps `Δ`
//! only when its trace is exactly `M`, so each ball element is produced once.

use num_integer::Integer;
use rayon::prelude::*;

use super::lattice::{cofactor, for_each_hnf, mat_mul, Mat};
use super::{BallGuard, RationalCyclic, RationalLattice};
use crate::{Error, Result};

pub(super) fn cyclic_ball(
    gamma: &RationalCyclic,
    n: u64,
    guard: &BallGuard,
) -> Result<Vec<RationalCyclic>> {
    guard.admit(1, n)?;
    if n == 0 {
        return Err(Error::domain("ball radius must be positive"));
    }
    // Δ = (x/y)Γ with gcd(x, y) = 1 has c(Γ, Δ) = xy
    let mut out = Vec::new();
    for x in 1..=n {
        for y in 1..=n / x {
            if x.gcd(&y) == 1 {
                out.push(gamma.rescale(x, y)?);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn hnfs(d: usize, index: u64) -> Vec<Mat> {
    let mut out = Vec::new();
    for_each_hnf(d, index, &mut |m| out.push(m.clone()));
    out
}

/// Lattices `L` with `L ∩ ℤ^d = M` (`M` given by its HNF) and `[L : M] = j`,
/// in the coordinates where `Γ = ℤ^d`.
fn overlattices_with_trace(m: &Mat, j: u64, duals: &[Mat]) -> Result<Vec<RationalLattice>> {
    let d = m.len();
    let unit = RationalLattice::standard(d);
    let trace = RationalLattice::from_generators_wide(1, m.clone(), d)?;
    let mut out = Vec::new();
    // L ⊇ M of index j  <->  L* ⊆ M* of index j; with L* = rowspan(H) in the
    // dual basis of M, L = rowspan(H^{-T}) = (1/j) rowspan(cofactor(H)) over M
    for h in duals {
        let over = mat_mul(&cofactor(h)?, m)?;
        let l = RationalLattice::from_generators_wide(j as i128, over, d)?;
        if l.intersect(&unit)? == trace {
            out.push(l);
        }
    }
    Ok(out)
}

pub(super) fn lattice_ball(
    gamma: &RationalLattice,
    n: u64,
    guard: &BallGuard,
) -> Result<Vec<RationalLattice>> {
    let d = gamma.dim();
    guard.admit(d, n)?;
    if n == 0 {
        return Err(Error::domain("ball radius must be positive"));
    }
    let duals: Vec<Vec<Mat>> = (0..=n)
        .map(|j| if j == 0 { Vec::new() } else { hnfs(d, j) })
        .collect();
    let gamma_basis = gamma.basis_wide();
    let gamma_denom = gamma.denom() as i128;

    let chunks: Vec<Vec<RationalLattice>> = (1..=n)
        .into_par_iter()
        .map(|i| -> Result<Vec<RationalLattice>> {
            let mut found = Vec::new();
            for m in hnfs(d, i) {
                for j in 1..=n / i {
                    for l in overlattices_with_trace(&m, j, &duals[j as usize])? {
                        // back to ambient coordinates: rows · basis(Γ) / (q_L q_Γ)
                        let rows: Mat = l
                            .basis()
                            .iter()
                            .map(|r| r.iter().map(|&v| v as i128).collect())
                            .collect();
                        let ambient = mat_mul(&rows, &gamma_basis)?;
                        let denom = (l.denom() as i128)
                            .checked_mul(gamma_denom)
                            .ok_or_else(Error::overflow)?;
                        found.push(RationalLattice::from_generators_wide(denom, ambient, d)?);
                    }
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;

    let mut out: Vec<RationalLattice> = chunks.into_iter().flatten().collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comgraph::{comm_index, enumerate_ball};

    #[test]
    fn cyclic_ball_of_integers() {
        let b = enumerate_ball(&RationalCyclic::INTEGERS, 6).unwrap();
        assert_eq!(b.len(), 13);
        let exactly_six = b
            .iter()
            .filter(|h| comm_index(&RationalCyclic::INTEGERS, *h).unwrap().value == 6)
            .count();
        assert_eq!(exactly_six, 4);
    }

    #[test]
    fn lattice_ball_small_radius() {
        let z2 = RationalLattice::standard(2);
        assert_eq!(enumerate_ball(&z2, 1).unwrap(), vec![z2.clone()]);
        let b = enumerate_ball(&z2, 2).unwrap();
        assert_eq!(b.len(), 7);
        let subs = b
            .iter()
            .filter(|l| l.is_subgroup_of(&z2).unwrap() && **l != z2)
            .count();
        let overs = b
            .iter()
            .filter(|l| z2.is_subgroup_of(l).unwrap() && **l != z2)
            .count();
        assert_eq!((subs, overs), (3, 3));
    }

    #[test]
    fn dim_one_lattice_ball_matches_cyclic() {
        let g = RationalLattice::scaled(1, 3, 2).unwrap();
        let c = RationalCyclic::new(3, 2).unwrap();
        for n in 1..=30 {
            let lb = enumerate_ball(&g, n).unwrap();
            let cb = enumerate_ball(&c, n).unwrap();
            let mut from_lattice: Vec<(u64, u64)> = lb
                .iter()
                .map(|l| (l.basis()[0][0] as u64, l.denom() as u64))
                .collect();
            let mut from_cyclic: Vec<(u64, u64)> =
                cb.iter().map(|c| (c.numer(), c.denom())).collect();
            from_lattice.sort_unstable();
            from_cyclic.sort_unstable();
            assert_eq!(from_lattice, from_cyclic, "n={n}");
        }
    }

    #[test]
    fn guard_is_a_resource_error() {
        let z4 = RationalLattice::standard(4);
        assert!(matches!(enumerate_ball(&z4, 2), Err(Error::Resource(_))));
        let z2 = RationalLattice::standard(2);
        assert!(matches!(enumerate_ball(&z2, 1001), Err(Error::Resource(_))));
        assert!(matches!(
            enumerate_ball(&RationalCyclic::INTEGERS, 5000),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn ball_around_non_standard_lattice() {
        let g = RationalLattice::from_generators(2, &[vec![1, 1], vec![0, 3]]).unwrap();
        let b = enumerate_ball(&g, 6).unwrap();
        for l in &b {
            assert!(comm_index(&g, l).unwrap().value <= 6);
        }
        let mut dedup = b.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), b.len());
        // translating by a unimodular change of basis preserves the ball size
        let z2 = RationalLattice::standard(2);
        assert_eq!(b.len(), enumerate_ball(&z2, 6).unwrap().len());
    }
}
