//! Counting bounds for maximal lattices containing a principal congruence
//! subgroup of level `m = ∏ p^{k_p}`.
//!
//! Per prime, a maximal compact open subgroup containing the level-`p^k`
//! congruence subgroup is pinned down by a cocharacter `λ = Σ a_β ϖ̌_β`
//! whose pairings with every root are at most `k + 1`, and by a coset of
//! `G(ℤ/p^k)`. This module counts those cocharacters exactly for small rank
//! and evaluates each inequality in the resulting chain:
//!
//! * `#λ <= (2k+3)^d`
//! * `2k + 3 <= p^k` for `p >= 5`, `2k + 3 <= p^{3k}` always
//! * `(d+1) p^{(3+d)k} <= p^{(3+2d)k}`
//! * globally `∏_p p^{(3+2d)k_p} = m^{3+2d}`
//!
//! and the growth upper bound `(Σ_{j<=cn} j^{M_0}) · s_{Dn}` with `M_0 = 3 + 2d`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factor_u64, is_prime};
use crate::rootsys::RootSystem;
use crate::{BoundReport, Error, Result};

/// Largest rank scanned exhaustively.
pub const MAX_EXHAUSTIVE_RANK: usize = 4;
/// Largest cutoff accepted by [`count_admissible_cocharacters`].
pub const MAX_CUTOFF: u64 = 100;

fn big_pow(base: u64, e: usize) -> BigUint {
    Pow::pow(BigUint::from(base), e)
}

/// Admissible cocharacters at a given cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocharacterCount {
    pub label: String,
    pub cutoff: u64,
    /// `None` above [`MAX_EXHAUSTIVE_RANK`].
    pub exact: Option<u64>,
    /// `(2c + 1)^l`.
    #[serde(serialize_with = "as_decimal")]
    pub box_bound: BigUint,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Counts `a ∈ ℤ^l` with `|⟨Σ a_β ϖ̌_β, α⟩| <= c` for every positive root `α`
/// (both `α` and `−α` are roots). Simple roots give the box `|a_β| <= c`.
pub fn count_admissible_cocharacters(rs: &RootSystem, c: u64) -> Result<CocharacterCount> {
    if c > MAX_CUTOFF {
        return Err(Error::resource(format!(
            "cutoff {c} exceeds the exhaustive-scan guard {MAX_CUTOFF}"
        )));
    }
    let l = rs.rank();
    let box_bound = big_pow(2 * c + 1, l);
    let exact = (l <= MAX_EXHAUSTIVE_RANK).then(|| scan(rs, c as i64));
    Ok(CocharacterCount {
        label: rs.label(),
        cutoff: c,
        exact,
        box_bound,
    })
}

/// Odometer over the first `l − 1` coefficients; the admissible range of the
/// last coefficient is an interval, counted directly.
fn scan(rs: &RootSystem, c: i64) -> u64 {
    let l = rs.rank();
    let roots = &rs.positive_roots;
    let last = l - 1;
    let count_last = |partial: &[i64]| -> u64 {
        let (mut lo, mut hi) = (-c, c);
        for (alpha, &s) in roots.iter().zip(partial) {
            let n = alpha[last];
            if n == 0 {
                if s.abs() > c {
                    return 0;
                }
            } else {
                // -c <= s + n·a <= c
                lo = lo.max((-c - s).div_euclid(n) + i64::from((-c - s).rem_euclid(n) != 0));
                hi = hi.min((c - s).div_euclid(n));
            }
        }
        if lo > hi {
            0
        } else {
            (hi - lo + 1) as u64
        }
    };
    if l == 1 {
        return count_last(&vec![0; roots.len()]);
    }

    (-c..=c)
        .into_par_iter()
        .map(|first| {
            let mut a = vec![-c; last];
            a[0] = first;
            let mut partial: Vec<i64> = roots
                .iter()
                .map(|r| r[..last].iter().zip(&a).map(|(n, x)| n * x).sum())
                .collect();
            let mut total = 0u64;
            loop {
                total += count_last(&partial);
                // advance coefficients 1..last
                let mut j = 1;
                loop {
                    if j >= last {
                        return total;
                    }
                    if a[j] < c {
                        a[j] += 1;
                        for (p, r) in partial.iter_mut().zip(roots) {
                            *p += r[j];
                        }
                        break;
                    }
                    a[j] = -c;
                    for (p, r) in partial.iter_mut().zip(roots) {
                        *p -= 2 * c * r[j];
                    }
                    j += 1;
                }
            }
        })
        .sum()
}

/// `(2k+3)^d`, the cocharacter estimate at level `p^k`.
pub fn lambda_estimate(rs: &RootSystem, k: u64) -> BigUint {
    big_pow(2 * k + 3, rs.dimension())
}

/// `#{λ : pairings <= k + 1} <= (2k+3)^d`, with `(2k+3)^l` alongside.
pub fn paper_lambda_bound(rs: &RootSystem, k: u64) -> Result<BoundReport> {
    let count = count_admissible_cocharacters(rs, k + 1)?;
    let exact = count.exact.ok_or_else(|| {
        Error::resource(format!(
            "{}: exact cocharacter count is only available up to rank {MAX_EXHAUSTIVE_RANK}",
            rs.label()
        ))
    })?;
    let base = 2 * k + 3;
    Ok(
        BoundReport::le("#lambda <= (2k+3)^d", exact, lambda_estimate(rs, k))
            .with("type", rs.label())
            .with("k", k)
            .with("rank_bound", big_pow(base, rs.rank()))
            .with("box_bound", &count.box_bound),
    )
}

/// `2k + 3 <= p^k` when `p >= 5`, and `2k + 3 <= p^{3k}` for every `p >= 2`.
pub fn check_two_k_plus_three(p: u64, k: u32) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::domain("2k+3 bound needs k >= 1"));
    }
    if p < 2 {
        return Err(Error::domain("2k+3 bound needs p >= 2"));
    }
    let lhs = 2 * k as u64 + 3;
    let single = big_pow(p, k as usize);
    let cubed = big_pow(p, 3 * k as usize);
    let rhs = if p >= 5 {
        single.clone()
    } else {
        cubed.clone()
    };
    Ok(BoundReport::le("2k+3 <= p^k (p>=5) and p^{3k}", lhs, rhs)
        .with("p", p)
        .with("k", k)
        .with("p^k", single)
        .with("p^3k", cubed))
}

/// `(d+1) p^{(3+d)k} <= p^{(3+2d)k}`; at `k = 0` the count is `1`.
pub fn per_prime_bound(rs: &RootSystem, p: u64, k: u32) -> Result<BoundReport> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let d = rs.dimension();
    let k_us = k as usize;
    let crude = big_pow(p, (3 + 2 * d) * k_us);
    let estimate = if k == 0 {
        BigUint::one()
    } else {
        BigUint::from(d as u64 + 1) * big_pow(p, (3 + d) * k_us)
    };
    let per_class = big_pow(p, k_us * d) * big_pow(2 * k as u64 + 3, d);
    Ok(
        BoundReport::le("(d+1)p^{(3+d)k} <= p^{(3+2d)k}", estimate, crude)
            .with("type", rs.label())
            .with("p", p)
            .with("k", k)
            .with("classes", d + 1)
            .with("per_class", per_class),
    )
}

/// `M_0 = 3 + 2d`.
pub fn maximal_exponent(rs: &RootSystem) -> usize {
    3 + 2 * rs.dimension()
}

/// `∏_{p^k || m} p^{(3+2d)k}`.
pub fn per_prime_product(rs: &RootSystem, m: u64) -> Result<BigUint> {
    let e = maximal_exponent(rs);
    Ok(factor_u64(m)?
        .into_iter()
        .map(|(p, k)| big_pow(p, e * k as usize))
        .product())
}

/// Bound `m^{3+2d}` on the number of maximal lattices containing the level-`m`
/// principal congruence subgroup.
pub fn maximal_lattice_bound(rs: &RootSystem, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::domain("level m must be positive"));
    }
    let bound = big_pow(m, maximal_exponent(rs));
    debug_assert_eq!(Ok(&bound), per_prime_product(rs, m).as_ref());
    Ok(bound)
}

fn ceil_positive(x: &BigRational, what: &str) -> Result<u64> {
    if !x.is_positive() {
        return Err(Error::domain(format!("{what} must be positive")));
    }
    x.ceil()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::resource(format!("{what} is too large")))
}

/// `(Σ_{j=1}^{⌈cn⌉} j^{M_0}) · s_{⌈Dn⌉}`, with `s` indexed from 1.
///
/// When the level-m counts are controlled as above this dominates `C_n(Γ, G)`; the
/// constants `c`, `D` exist but are not explicit, so they are inputs.
pub fn upper_bound_profile(
    rs: &RootSystem,
    n: u64,
    s: &[BigUint],
    c_const: &BigRational,
    d_const: &BigRational,
) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::domain("profile needs n >= 1"));
    }
    let n_q = BigRational::from_integer(n.into());
    let terms = ceil_positive(&(c_const * &n_q), "c·n")?;
    let at = ceil_positive(&(d_const * &n_q), "D·n")?;
    let growth = usize::try_from(at)
        .ok()
        .and_then(|i| s.get(i - 1))
        .ok_or_else(|| {
            Error::domain(format!(
                "subgroup growth data has {} terms, index {at} required",
                s.len()
            ))
        })?;
    let e = maximal_exponent(rs);
    let head: BigUint = (1..=terms).map(|j| big_pow(j, e)).sum();
    if head.is_zero() {
        return Err(Error::domain("empty sum"));
    }
    Ok(head * growth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build, CartanType};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn naive(rs: &RootSystem, c: i64) -> u64 {
        let l = rs.rank();
        let mut a = vec![-c; l];
        let mut count = 0;
        'outer: loop {
            if rs
                .positive_roots
                .iter()
                .rev()
                .all(|r| rs.pairing(&a, r).unwrap().abs() <= c)
            {
                count += 1;
            }
            for x in a.iter_mut() {
                if *x < c {
                    *x += 1;
                    continue 'outer;
                }
                *x = -c;
            }
            return count;
        }
    }

    #[test]
    fn rank_one_is_an_interval() {
        let a1 = build("A1").unwrap();
        for c in 0..20 {
            assert_eq!(
                count_admissible_cocharacters(&a1, c).unwrap().exact,
                Some(2 * c + 1)
            );
        }
    }

    #[test]
    fn a2_counts() {
        let a2 = build("A2").unwrap();
        assert_eq!(
            count_admissible_cocharacters(&a2, 0).unwrap().exact,
            Some(1)
        );
        // |a| <= 2, |b| <= 2, |a + b| <= 2: 25 minus the 6 corners with |a+b| > 2
        assert_eq!(
            count_admissible_cocharacters(&a2, 2).unwrap().exact,
            Some(19)
        );
    }

    #[test]
    fn interval_scan_matches_naive_scan() {
        for t in CartanType::all_up_to_rank(4) {
            let rs = RootSystem::new(t).unwrap();
            for c in 0..=4 {
                let got = count_admissible_cocharacters(&rs, c)
                    .unwrap()
                    .exact
                    .unwrap();
                assert_eq!(got, naive(&rs, c as i64), "{t} c={c}");
            }
        }
    }

    #[test]
    fn high_rank_has_no_exact_count() {
        let e6 = build("E6").unwrap();
        let r = count_admissible_cocharacters(&e6, 2).unwrap();
        assert_eq!(r.exact, None);
        assert_eq!(r.box_bound, BigUint::from(5u32).pow(6u32));
        assert!(matches!(
            paper_lambda_bound(&e6, 1),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            count_admissible_cocharacters(&build("A1").unwrap(), 101),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn lambda_bound_examples() {
        let a1 = build("A1").unwrap();
        let r = paper_lambda_bound(&a1, 1).unwrap();
        assert!(r.holds);
        assert_eq!(
            (r.lhs_integer().unwrap(), r.rhs_integer().unwrap()),
            (5.into(), 125.into())
        );
        let r = paper_lambda_bound(&a1, 0).unwrap();
        assert_eq!(
            (r.lhs_integer().unwrap(), r.rhs_integer().unwrap()),
            (3.into(), 27.into())
        );
        let r = paper_lambda_bound(&build("A2").unwrap(), 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs_integer().unwrap(), 390625.into());
    }

    #[test]
    fn per_prime_examples() {
        let a1 = build("A1").unwrap();
        let r = per_prime_bound(&a1, 5, 1).unwrap();
        assert_eq!(r.lhs_integer().unwrap(), 62500.into());
        assert!(r.holds);
        let r = per_prime_bound(&a1, 7, 0).unwrap();
        assert_eq!(r.lhs_integer().unwrap(), 1.into());
        assert!(r.holds);
        let r = per_prime_bound(&a1, 2, 1).unwrap();
        assert_eq!(
            (r.lhs_integer().unwrap(), r.rhs_integer().unwrap()),
            (256.into(), 512.into())
        );
        assert!(per_prime_bound(&a1, 6, 1).is_err());
    }

    #[test]
    fn two_k_plus_three_examples() {
        let r = check_two_k_plus_three(5, 1).unwrap();
        assert_eq!(
            (r.lhs_integer().unwrap(), r.rhs_integer().unwrap()),
            (5.into(), 5.into())
        );
        assert!(r.holds);
        let r = check_two_k_plus_three(2, 1).unwrap();
        assert_eq!(
            (r.lhs_integer().unwrap(), r.rhs_integer().unwrap()),
            (5.into(), 8.into())
        );
        let r = check_two_k_plus_three(3, 2).unwrap();
        assert_eq!(
            (r.lhs_integer().unwrap(), r.rhs_integer().unwrap()),
            (7.into(), 729.into())
        );
        assert!(check_two_k_plus_three(3, 0).is_err());
        // below 5 the single power can fail, so only p^{3k} is asserted
        let r = check_two_k_plus_three(3, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.context["p^k"], "3");
        assert_eq!(r.rhs_integer().unwrap(), 27.into());
    }

    #[test]
    fn maximal_lattice_examples() {
        let a1 = build("A1").unwrap();
        assert_eq!(maximal_lattice_bound(&a1, 2).unwrap(), 512u32.into());
        assert_eq!(maximal_lattice_bound(&a1, 1).unwrap(), 1u32.into());
        let a2 = build("A2").unwrap();
        assert_eq!(
            maximal_lattice_bound(&a2, 3).unwrap(),
            BigUint::from(3u32).pow(19u32)
        );
        assert!(maximal_lattice_bound(&a1, 0).is_err());
    }

    #[test]
    fn profile_examples() {
        let a1 = build("A1").unwrap();
        let one = q(1, 1);
        let s = [BigUint::from(1u32)];
        assert_eq!(
            upper_bound_profile(&a1, 1, &s, &one, &one).unwrap(),
            1u32.into()
        );
        let s = [BigUint::from(1u32), BigUint::from(3u32)];
        assert_eq!(
            upper_bound_profile(&a1, 2, &s, &one, &one).unwrap(),
            1539u32.into()
        );
        assert!(matches!(
            upper_bound_profile(&a1, 3, &s, &one, &one),
            Err(Error::Domain(_))
        ));
        assert!(upper_bound_profile(&a1, 1, &s, &q(0, 1), &one).is_err());
        // c = 3/2 at n = 2 sums j up to 3; D = 1/2 reads s_1
        let v = upper_bound_profile(&a1, 2, &s, &q(3, 2), &q(1, 2)).unwrap();
        assert_eq!(v, BigUint::from(1u32 + 512 + 19683));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn maximal_lattice_bound_is_completely_multiplicative(a in 1u64..2000, b in 1u64..2000) {
                let rs = build("G2").unwrap();
                prop_assert_eq!(
                    maximal_lattice_bound(&rs, a * b).unwrap(),
                    maximal_lattice_bound(&rs, a).unwrap() * maximal_lattice_bound(&rs, b).unwrap()
                );
            }

            #[test]
            fn profile_monotone_in_n(mut s in proptest::collection::vec(1u32..50, 2..40), n in 1u64..20) {
                s.sort_unstable();
                let s: Vec<BigUint> = s.into_iter().map(BigUint::from).collect();
                let rs = build("A1").unwrap();
                let one = q(1, 1);
                prop_assume!((n + 1) as usize <= s.len());
                prop_assert!(
                    upper_bound_profile(&rs, n, &s, &one, &one).unwrap()
                        <= upper_bound_profile(&rs, n + 1, &s, &one, &one).unwrap()
                );
            }
        }
    }
}
