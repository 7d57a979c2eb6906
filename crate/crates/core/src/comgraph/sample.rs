//! Seeded random subgroups and the property suite run over them.
//!
//! Generators are small on purpose: entries stay in a few units so every
//! index computed downstream fits comfortably in 64 bits.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{chain_length, comm_index, geodesic, Subgroup};
use super::{RationalCyclic, RationalLattice};
use crate::{BoundReport, Result};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_cyclic<R: Rng>(rng: &mut R) -> RationalCyclic {
    RationalCyclic::new(rng.gen_range(1..=12), rng.gen_range(1..=12)).expect("positive generator")
}

pub fn random_lattice<R: Rng>(rng: &mut R, dim: usize) -> RationalLattice {
    loop {
        let rows: Vec<Vec<i64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        if let Ok(l) = RationalLattice::from_generators(rng.gen_range(1..=4), &rows) {
            return l;
        }
    }
}

/// `H_1 ⊆ … ⊆ H_len`, each step an index-1 to index-5 extension.
pub fn random_cyclic_chain<R: Rng>(rng: &mut R, len: usize) -> Vec<RationalCyclic> {
    let mut chain = vec![random_cyclic(rng)];
    while chain.len() < len {
        let last = chain.last().unwrap();
        chain.push(
            last.rescale(1, rng.gen_range(1..=5))
                .expect("small rescale"),
        );
    }
    chain
}

/// Ascending chain of lattices; each step joins `v/p` for a random integer `v`
/// and `p ∈ {1, 2, 3}`.
pub fn random_lattice_chain<R: Rng>(rng: &mut R, dim: usize, len: usize) -> Vec<RationalLattice> {
    let mut chain = vec![random_lattice(rng, dim)];
    while chain.len() < len {
        let last = chain.last().unwrap();
        let p: i64 = rng.gen_range(1..=3);
        let q = last.denom();
        let common = num_integer::lcm(p, q);
        let mut rows: Vec<Vec<i64>> = last
            .basis()
            .iter()
            .map(|r| r.iter().map(|&x| x * (common / q)).collect())
            .collect();
        rows.push(
            (0..dim)
                .map(|_| rng.gen_range(-2..=2) * (common / p))
                .collect(),
        );
        chain.push(RationalLattice::from_generators(common, &rows).expect("full-rank join"));
    }
    chain
}

fn count_failures<S: Subgroup>(
    triples: &[(S, S, S)],
    check: impl Fn(&S, &S, &S) -> Result<bool>,
) -> Result<usize> {
    let mut failures = 0;
    for (h, k, l) in triples {
        if !check(h, k, l)? {
            failures += 1;
        }
    }
    Ok(failures)
}

fn family_suite<S: Subgroup>(
    family: &str,
    triples: &[(S, S, S)],
    chains: &[Vec<S>],
    seed: u64,
) -> Result<Vec<BoundReport>> {
    let report = |name: &str, failures: usize, samples: usize| {
        BoundReport::le(format!("{name}[{family}]"), failures, 0u64)
            .with("samples", samples)
            .with("seed", seed)
    };

    let symmetry = count_failures(triples, |h, k, _| {
        Ok(comm_index(h, k)?.value == comm_index(k, h)?.value)
    })?;
    let identity = count_failures(triples, |h, k, _| {
        let self_zero = comm_index(h, h)?.value == 1;
        let separated = (comm_index(h, k)?.value == 1) == (h == k);
        Ok(self_zero && separated)
    })?;
    let triangle = count_failures(triples, |h, k, l| {
        let direct = comm_index(h, k)?.value as u128;
        let via = comm_index(h, l)?.value as u128 * comm_index(l, k)?.value as u128;
        Ok(direct <= via)
    })?;
    let geodesics = count_failures(triples, |h, k, _| {
        Ok(geodesic(h, k)?.length == comm_index(h, k)?.value)
    })?;
    let mut chain_failures = 0;
    for chain in chains {
        let ends = comm_index(&chain[0], chain.last().unwrap())?.value;
        if chain_length(chain)? != ends {
            chain_failures += 1;
        }
    }

    Ok(vec![
        report("symmetry", symmetry, triples.len()),
        report("identity", identity, triples.len()),
        report("triangle", triangle, triples.len()),
        report("geodesic", geodesics, triples.len()),
        report("chain", chain_failures, chains.len()),
    ])
}

/// Metric axioms, geodesic lengths and chain lengths on `samples` random
/// triples and chains per family (cyclic, and lattices in dimension 2).
///
/// Each report counts failures and holds when the count is zero.
pub fn metric_suite(samples: usize, seed: u64) -> Result<Vec<BoundReport>> {
    let mut rng = rng(seed);

    let cyclic: Vec<_> = (0..samples)
        .map(|_| {
            let h = random_cyclic(&mut rng);
            // a share of repeated vertices so the identity axiom is exercised both ways
            let k = if rng.gen_ratio(1, 10) {
                h
            } else {
                random_cyclic(&mut rng)
            };
            (h, k, random_cyclic(&mut rng))
        })
        .collect();
    let cyclic_chains: Vec<_> = (0..samples)
        .map(|_| {
            let len = rng.gen_range(1..=5);
            random_cyclic_chain(&mut rng, len)
        })
        .collect();

    let lattices: Vec<_> = (0..samples)
        .map(|_| {
            let h = random_lattice(&mut rng, 2);
            let k = if rng.gen_ratio(1, 10) {
                h.clone()
            } else {
                random_lattice(&mut rng, 2)
            };
            (h, k, random_lattice(&mut rng, 2))
        })
        .collect();
    let lattice_chains: Vec<_> = (0..samples)
        .map(|_| {
            let len = rng.gen_range(1..=5);
            random_lattice_chain(&mut rng, 2, len)
        })
        .collect();

    let mut out = family_suite("cyclic", &cyclic, &cyclic_chains, seed)?;
    out.extend(family_suite("lattice2", &lattices, &lattice_chains, seed)?);
    Ok(out)
}

/// One commensurable pair with a radius; either family, dimension at most 2.
#[derive(Clone, Debug)]
pub enum TransferCase {
    Cyclic(RationalCyclic, RationalCyclic, u64),
    Lattice(RationalLattice, RationalLattice, u64),
}

/// Random cases with `c(A, B) · n <= budget`.
pub fn random_transfer_cases(count: usize, budget: u64, seed: u64) -> Result<Vec<TransferCase>> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let case = match out.len() % 3 {
            0 => {
                let a = RationalCyclic::new(rng.gen_range(1..=6), rng.gen_range(1..=6))?;
                let b = RationalCyclic::new(rng.gen_range(1..=6), rng.gen_range(1..=6))?;
                let c = comm_index(&a, &b)?.value;
                if c > budget {
                    continue;
                }
                TransferCase::Cyclic(a, b, rng.gen_range(1..=budget / c))
            }
            k => {
                let dim = k;
                let small = |rng: &mut ChaCha8Rng| -> Result<RationalLattice> {
                    let rows: Vec<Vec<i64>> = (0..dim)
                        .map(|i| {
                            (0..dim)
                                .map(|j| {
                                    if i == j {
                                        rng.gen_range(1..=3)
                                    } else if j > i {
                                        rng.gen_range(0..=1)
                                    } else {
                                        0
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    RationalLattice::from_generators(rng.gen_range(1..=2), &rows)
                };
                let a = small(&mut rng)?;
                let b = small(&mut rng)?;
                let c = comm_index(&a, &b)?.value;
                if c > budget {
                    continue;
                }
                TransferCase::Lattice(a, b, rng.gen_range(1..=budget / c))
            }
        };
        out.push(case);
    }
    Ok(out)
}
