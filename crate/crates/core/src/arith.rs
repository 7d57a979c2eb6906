//! Exact arithmetic functions and the rank-1 commensurability growth series.
//!
//! A subgroup `Δ ≤ ℝ` commensurable with `ℤ` is `(a/b)ℤ` with `gcd(a, b) = 1`,
//! and its commensurability index with `ℤ` is `ab`. Counting coprime ordered
//! factorizations `n = ab` gives `c_n = 2^ω(n)`.
//!
//! Series values are exact integers. Floating point only appears in the
//! asymptotic comparators at the bottom of this module.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::{BoundReport, Error, Result};

/// Euler–Mascheroni constant, 20 significant digits.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// Prime factorization of a positive integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub n: BigUint,
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn divisor_count(&self) -> BigUint {
        self.factors
            .iter()
            .map(|(_, e)| BigUint::from(e + 1))
            .product()
    }

    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .map(|(p, e)| num_traits::pow(p.clone(), *e as usize))
            .product()
    }
}

/// Factor an arbitrary-precision positive integer by trial division.
pub fn factorize(n: impl Into<BigInt>) -> Result<Factorization> {
    let n: BigInt = n.into();
    if !n.is_positive() {
        return Err(Error::domain(format!("factorize: {n} is not positive")));
    }
    let n = n.magnitude().clone();
    if let Some(small) = n.to_u64() {
        let factors = factor_u64(small)?
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
        return Ok(Factorization { n, factors });
    }

    let mut rest = n.clone();
    let mut factors = Vec::new();
    let mut push = |rest: &mut BigUint, p: &BigUint| {
        let mut e = 0;
        while (&*rest % p).is_zero() {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
    };
    push(&mut rest, &BigUint::from(2u32));
    push(&mut rest, &BigUint::from(3u32));
    let mut d = BigUint::from(5u32);
    let mut step = 2u32;
    while &d * &d <= rest {
        push(&mut rest, &d);
        d += step;
        step = 6 - step;
    }
    if rest > BigUint::one() {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// Trial-division factorization on machine words, wheel over 6k ± 1.
pub fn factor_u64(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::domain("factorize: 0 is not positive"));
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut take = |rest: &mut u64, p: u64| {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    take(&mut rest, 2);
    take(&mut rest, 3);
    let mut d: u64 = 5;
    let mut step = 2;
    while d.checked_mul(d).is_some_and(|sq| sq <= rest) {
        take(&mut rest, d);
        d += step;
        step = 6 - step;
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(out)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the first twelve prime bases are exact on `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary precision: Miller–Rabin on words, trial division beyond.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    factorize(BigInt::from(n.clone()))
        .map(|f| f.factors.len() == 1 && f.factors[0].1 == 1)
        .unwrap_or(false)
}

/// Number of distinct primes dividing `n`.
pub fn omega(n: u64) -> Result<u32> {
    Ok(factor_u64(n)?.len() as u32)
}

/// Number of positive divisors of `n`.
pub fn divisor_count(n: u64) -> Result<u64> {
    Ok(factor_u64(n)?.iter().map(|&(_, e)| e as u64 + 1).product())
}

/// Number of subgroups `Δ ≤ ℝ` with `c(ℤ, Δ) = n`, namely `2^ω(n)`.
pub fn cn_rank1(n: u64) -> Result<u64> {
    Ok(1u64 << omega(n)?)
}

/// Exact growth data `c_1..c_n` with prefix sums `C_1..C_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthSeries {
    #[serde(rename = "n")]
    pub upto: usize,
    pub c: Vec<u64>,
    #[serde(rename = "C")]
    pub cumulative: Vec<u64>,
}

impl GrowthSeries {
    pub fn from_terms(c: Vec<u64>) -> Self {
        let cumulative = c
            .iter()
            .scan(0u64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        GrowthSeries {
            upto: c.len(),
            c,
            cumulative,
        }
    }

    /// `c_k`, 1-based.
    pub fn term(&self, k: usize) -> u64 {
        self.c[k - 1]
    }

    /// `C_k`, 1-based.
    pub fn total(&self, k: usize) -> u64 {
        self.cumulative[k - 1]
    }
}

/// `omega_table(n)[k] = ω(k)` for `1 <= k <= n`; index 0 is unused.
pub fn omega_table(n: usize) -> Vec<u8> {
    let mut w = vec![0u8; n + 1];
    for p in 2..=n {
        if w[p] == 0 {
            for m in (p..=n).step_by(p) {
                w[m] += 1;
            }
        }
    }
    w
}

/// `divisor_count_table(n)[k] = d(k)` for `1 <= k <= n`; index 0 is unused.
pub fn divisor_count_table(n: usize) -> Vec<u32> {
    let mut d = vec![0u32; n + 1];
    for j in 1..=n {
        for m in (j..=n).step_by(j) {
            d[m] += 1;
        }
    }
    d
}

pub fn growth_series_rank1(n: usize) -> Result<GrowthSeries> {
    if n == 0 {
        return Err(Error::domain("growth series needs n >= 1"));
    }
    let w = omega_table(n);
    Ok(GrowthSeries::from_terms(
        w[1..].iter().map(|&k| 1u64 << k).collect(),
    ))
}

fn primes_upto(n: usize) -> Vec<usize> {
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// `Σ_{k<=n} ω(k)`, computed as `Σ_{p<=n} ⌊n/p⌋`.
pub fn sum_omega(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("sum_omega needs n >= 1"));
    }
    let n_usize = usize::try_from(n).map_err(|_| Error::resource("n exceeds address space"))?;
    Ok(primes_upto(n_usize).iter().map(|&p| n / p as u64).sum())
}

/// `Σ_{k<=n} d(k)` by the hyperbola method.
pub fn sum_divisor_count(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("sum_divisor_count needs n >= 1"));
    }
    let r = n.sqrt();
    let half: u64 = (1..=r).map(|j| n / j).sum();
    Ok(2 * half - r * r)
}

/// Extremal ratios of the rank-1 series against `k log k` and `k (log k)^{log 2}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichReport {
    pub n_min: usize,
    pub upto: usize,
    /// `max_k C_k / (k log k)` and where it is attained.
    pub upper_ratio: f64,
    pub upper_at: usize,
    /// `min_k C_k / (k (log k)^{log 2})` and where it is attained.
    pub lower_ratio: f64,
    pub lower_at: usize,
    /// Pointwise `k <= C_k <= Σ_{j<=k} d(j)` over the whole series, as a
    /// violation count bounded by zero.
    pub chain: BoundReport,
}

pub fn check_sandwich_bounds(series: &GrowthSeries, n_min: usize) -> Result<SandwichReport> {
    if n_min < 3 {
        return Err(Error::domain("sandwich bounds need n_min >= 3"));
    }
    if series.upto < n_min {
        return Err(Error::domain(format!(
            "series stops at {} before n_min = {n_min}",
            series.upto
        )));
    }
    let log2 = std::f64::consts::LN_2;
    let mut upper = (f64::NEG_INFINITY, 0);
    let mut lower = (f64::INFINITY, 0);
    for k in n_min..=series.upto {
        let big_c = series.total(k) as f64;
        let lk = (k as f64).ln();
        let up = big_c / (k as f64 * lk);
        let lo = big_c / (k as f64 * lk.powf(log2));
        if up > upper.0 {
            upper = (up, k);
        }
        if lo < lower.0 {
            lower = (lo, k);
        }
    }

    let d = divisor_count_table(series.upto);
    let mut dsum = 0u64;
    let mut violations = 0u64;
    let mut first = None;
    for k in 1..=series.upto {
        dsum += d[k] as u64;
        let ck = series.total(k);
        if ck < k as u64 || ck > dsum {
            violations += 1;
            first.get_or_insert(k);
        }
    }
    let mut chain =
        BoundReport::le("k <= C_k <= sum d(j)", violations, 0u64).with("upto", series.upto);
    if let Some(k) = first {
        chain = chain.with("first_violation", k);
    }

    Ok(SandwichReport {
        n_min,
        upto: series.upto,
        upper_ratio: upper.0,
        upper_at: upper.1,
        lower_ratio: lower.0,
        lower_at: lower.1,
        chain,
    })
}

/// `Σ_{k<=n} d(k) − n log n − (2γ − 1) n` given the exact sum.
pub fn dirichlet_remainder(n: u64, exact_sum: u64) -> f64 {
    let x = n as f64;
    exact_sum as f64 - x * x.ln() - (2.0 * EULER_GAMMA - 1.0) * x
}

/// `(Σ_{k<=n} ω(k) − n log log n) / n`, which tends to the Mertens constant.
pub fn mertens_ratio(n: u64, exact_sum: u64) -> f64 {
    let x = n as f64;
    (exact_sum as f64 - x * x.ln().ln()) / x
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    fn coprime_pairs(n: u64) -> u64 {
        divisors(n)
            .into_iter()
            .filter(|&a| (n / a).gcd(&a) == 1)
            .count() as u64
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors.is_empty());
        let f = factorize(12).unwrap();
        assert_eq!(
            f.factors,
            vec![(BigUint::from(2u32), 2), (BigUint::from(3u32), 1)]
        );
        assert_eq!(
            factorize(97).unwrap().factors,
            vec![(BigUint::from(97u32), 1)]
        );
    }

    #[test]
    fn factorize_rejects_nonpositive() {
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
        assert!(matches!(factorize(-12), Err(Error::Domain(_))));
        assert!(matches!(omega(0), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_beyond_u64() {
        // (2^61 - 1) * 6 * 2^10 exceeds u64
        let m61 = (BigUint::one() << 61u32) - 1u32;
        let n: BigUint = &m61 * 6u32 * (BigUint::one() << 10u32);
        let f = factorize(BigInt::from(n.clone())).unwrap();
        assert_eq!(f.product(), n);
        assert_eq!(f.omega(), 3);
        assert_eq!(f.factors[0], (BigUint::from(2u32), 11));
        assert_eq!(f.factors[2].0, m61);
        assert!(f.factors.iter().all(|(p, _)| is_prime_big(p)));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(1).unwrap(), 0);
        assert_eq!(omega(6).unwrap(), 2);
        assert_eq!(omega(8).unwrap(), 1);
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(12).unwrap(), divisors(12).len() as u64);
        assert_eq!(divisor_count(12).unwrap(), 6);
        assert_eq!(divisor_count(16).unwrap(), 5);
    }

    #[test]
    fn cn_rank1_examples() {
        assert_eq!(cn_rank1(1).unwrap(), 1);
        assert_eq!(cn_rank1(6).unwrap(), 4);
        assert_eq!(coprime_pairs(30), 8);
        assert_eq!(cn_rank1(30).unwrap(), 8);
    }

    #[test]
    fn growth_series_examples() {
        assert_eq!(growth_series_rank1(1).unwrap().cumulative, vec![1]);
        let s6 = growth_series_rank1(6).unwrap();
        let oracle: Vec<u64> = (1..=6).map(coprime_pairs).collect();
        assert_eq!(s6.c, oracle);
        assert_eq!(s6.c, vec![1, 2, 2, 2, 2, 4]);
        let s10 = growth_series_rank1(10).unwrap();
        assert_eq!(s10.total(10), 23);
        assert!(growth_series_rank1(0).is_err());
    }

    #[test]
    fn summatory_examples() {
        assert_eq!(sum_omega(10).unwrap(), 11);
        assert_eq!(sum_divisor_count(10).unwrap(), 27);
        assert_eq!(sum_omega(1).unwrap(), 0);
        assert_eq!(sum_divisor_count(1).unwrap(), 1);
    }

    #[test]
    fn summatory_matches_tables() {
        let n = 5000;
        let w = omega_table(n);
        let d = divisor_count_table(n);
        let (mut sw, mut sd) = (0u64, 0u64);
        for k in 1..=n {
            sw += w[k] as u64;
            sd += d[k] as u64;
            assert_eq!(sum_omega(k as u64).unwrap(), sw, "k={k}");
            assert_eq!(sum_divisor_count(k as u64).unwrap(), sd, "k={k}");
        }
    }

    #[test]
    fn tables_match_factorization() {
        let w = omega_table(2000);
        let d = divisor_count_table(2000);
        for k in 1..=2000u64 {
            assert_eq!(w[k as usize] as u32, omega(k).unwrap());
            assert_eq!(d[k as usize] as u64, divisor_count(k).unwrap());
        }
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..20_000u64 {
            let trial = n >= 2 && factor_u64(n).unwrap() == vec![(n, 1)];
            assert_eq!(is_prime(n), trial, "n={n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn sandwich_on_small_series() {
        let s = growth_series_rank1(10).unwrap();
        let r = check_sandwich_bounds(&s, 3).unwrap();
        let expect_up = (3..=10)
            .map(|k| s.total(k) as f64 / (k as f64 * (k as f64).ln()))
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(r.upper_ratio, expect_up);
        assert!(r.chain.holds);
        assert!(matches!(
            check_sandwich_bounds(&s, 2),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            check_sandwich_bounds(&s, 11),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sandwich_chain_detects_corruption() {
        let mut s = growth_series_rank1(20).unwrap();
        s.c[11] = 100;
        let s = GrowthSeries::from_terms(s.c);
        let r = check_sandwich_bounds(&s, 3).unwrap();
        assert!(!r.chain.holds);
        assert_eq!(r.chain.context["first_violation"], "12");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn factorization_multiplies_back(n in 1u64..1_000_000_000_000) {
                let f = factorize(n).unwrap();
                prop_assert_eq!(f.product(), BigUint::from(n));
                prop_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
                for (p, e) in &f.factors {
                    prop_assert!(*e >= 1);
                    prop_assert!(is_prime_big(p));
                }
            }

            #[test]
            fn two_pow_omega_le_divisor_count(n in 1u64..10_000_000) {
                prop_assert!(cn_rank1(n).unwrap() <= divisor_count(n).unwrap());
            }

            #[test]
            fn divisor_count_multiplicative(m in 1u64..100_000, n in 1u64..100_000) {
                prop_assume!(m.gcd(&n) == 1);
                prop_assert_eq!(
                    divisor_count(m * n).unwrap(),
                    divisor_count(m).unwrap() * divisor_count(n).unwrap()
                );
            }

            #[test]
            fn prefix_sums_exact(c in proptest::collection::vec(0u64..1000, 1..200)) {
                let s = GrowthSeries::from_terms(c.clone());
                for k in 1..=c.len() {
                    prop_assert_eq!(s.total(k), c[..k].iter().sum::<u64>());
                }
                prop_assert!(s.cumulative.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }
}
