use num_traits::{One, Zero};

use crate::arith::{primes_up_to, PrimeTable};
use crate::error::{invalid, Result, SieveError};
use crate::scalar::{big, rational_to_f64};
use crate::Rational;

/// Largest `N` for the decomposition.
pub const CHEN_N_MAX: u64 = 10_000_000;

/// `p >= N^(1/10)`.
fn above_tenth_root(p: u64, n: u64) -> bool {
    (p as u128).checked_pow(10).is_none_or(|v| v >= n as u128)
}

/// `p < N^(1/3)`.
fn below_cube_root(p: u64, n: u64) -> bool {
    (p as u128).pow(3) < n as u128
}

/// Smallest-prime-factor table for `[0, limit)`.
fn spf_table(limit: u64) -> Vec<u32> {
    let mut spf = vec![0u32; limit as usize];
    for i in 2..limit as usize {
        if spf[i] == 0 {
            let mut j = i;
            while j < limit as usize {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Prime factors with multiplicity, ascending.
fn factor_with(spf: &[u32], mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = spf[n as usize] as u64;
        out.push(p);
        n /= p;
    }
    out
}

fn factor_trial(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `W(n)` from an ascending factorization (with multiplicity).
///
/// The first sum counts each `p_1` as often as it divides `n`; the second counts
/// pairs `(p_1, p_2)` with `n / (p_1 p_2)` prime.
fn weight_from(factors: &[u64], big_n: u64) -> Rational {
    let in_low = |p: u64| above_tenth_root(p, big_n) && below_cube_root(p, big_n);
    let first = factors.iter().filter(|&&p| in_low(p)).count() as u64;
    let mut distinct = factors.to_vec();
    distinct.dedup();
    let mut third = 0u64;
    if factors.len() == 3 {
        for &p1 in distinct.iter().filter(|&&p| in_low(p)) {
            for &p2 in &distinct {
                if below_cube_root(p2, big_n) || (p2 as u128).pow(2) * p1 as u128 >= big_n as u128 {
                    continue;
                }
                // With three prime factors the cofactor is automatically prime,
                // provided p1 and p2 can be removed from the multiset.
                let mut rest = factors.to_vec();
                let removable = [p1, p2].iter().all(|q| match rest.iter().position(|x| x == q) {
                    Some(i) => {
                        rest.remove(i);
                        true
                    }
                    None => false,
                });
                if removable {
                    third += 1;
                }
            }
        }
    }
    Rational::one() - big(first) / big(2) - big(third) / big(2)
}

/// Chen's weight `W(n)` for `n < N` free of primes below `N^(1/10)`.
pub fn chen_weight(n: u64, big_n: u64) -> Result<Rational> {
    if n == 0 || n >= big_n {
        return Err(invalid(format!("need 1 <= n < N, got n={n}, N={big_n}")));
    }
    let factors = factor_trial(n);
    if factors.iter().any(|&p| !above_tenth_root(p, big_n)) {
        return Err(invalid(format!("{n} has a prime factor below N^(1/10)")));
    }
    Ok(weight_from(&factors, big_n))
}

/// Checks `W(n) > 0 => Omega(n) <= 2` for every admissible `n < N`.
///
/// Returns `(checked, violations)`.
pub fn chen_implication_check(big_n: u64) -> Result<(u64, u64)> {
    if big_n > CHEN_N_MAX {
        return Err(SieveError::BudgetExceeded {
            what: "Chen implication range",
            requested: big_n as u128,
            cap: CHEN_N_MAX as u128,
        });
    }
    let spf = spf_table(big_n.max(2));
    let (mut checked, mut violations) = (0, 0);
    for n in 1..big_n {
        let f = factor_with(&spf, n);
        if f.iter().any(|&p| !above_tenth_root(p, big_n)) {
            continue;
        }
        checked += 1;
        if weight_from(&f, big_n) > Rational::zero() && f.len() > 2 {
            violations += 1;
        }
    }
    Ok((checked, violations))
}

/// `prod_{p > 2} (1 - 1 / (p - 1)^2)`, the product taken over primes below `2^22`.
pub fn twin_prime_constant() -> f64 {
    primes_up_to(1 << 22)
        .expect("within the prime cap")
        .primes()
        .iter()
        .skip(1)
        .map(|&p| {
            let q = (p - 1) as f64;
            1.0 - 1.0 / (q * q)
        })
        .product()
}

/// `prod_{p | N, p > 2} (p - 1) / (p - 2)`.
pub fn singular_factor(big_n: u64) -> Rational {
    factor_trial(big_n)
        .into_iter()
        .filter(|&p| p > 2)
        .fold((Rational::one(), 0u64), |(acc, last), p| {
            if p == last {
                (acc, last)
            } else {
                (acc * big(p - 1) / big(p - 2), p)
            }
        })
        .0
}

/// All terms of Chen's lower-bound inequality by enumeration.
#[derive(Clone, Debug, PartialEq)]
pub struct ChenReport {
    pub big_n: u64,
    /// `#{p < N : N - p is a P_2}`.
    pub lhs: u64,
    /// `|S(A, N^(1/10))|` with `A = {N - p : p < N}`.
    pub sifted: u64,
    /// `sum_{N^(1/10) <= p_1 < N^(1/3)} |S(A_{p_1}, N^(1/10))|`.
    pub first_sum: u64,
    /// `#{p < N : N - p = p_1 p_2 p_3}` in the stated ranges.
    pub triple_count: u64,
    /// `sifted - first_sum / 2 - triple_count / 2`.
    pub rhs: Rational,
    pub holds: bool,
    /// `sum W(N - p)` over sifted `N - p`.
    pub weight_sum: Rational,
    pub singular_factor: Rational,
    /// `C_2 prod_{p | N, p > 2} (p - 1)/(p - 2) N / (log N)^2`.
    pub shape: f64,
    pub ratio: f64,
}

/// Chen's inequality for `A = {N - p : p < N}`, every term counted exactly.
pub fn chen_decomposition(big_n: u64) -> Result<ChenReport> {
    if big_n < 4 || big_n % 2 == 1 {
        return Err(invalid(format!("N must be even and at least 4, got {big_n}")));
    }
    if big_n > CHEN_N_MAX {
        return Err(SieveError::BudgetExceeded {
            what: "Chen decomposition",
            requested: big_n as u128,
            cap: CHEN_N_MAX as u128,
        });
    }
    let table = PrimeTable::new(big_n)?;
    let spf = spf_table(big_n);
    let in_low = |p: u64| above_tenth_root(p, big_n) && below_cube_root(p, big_n);
    let (mut lhs, mut sifted, mut first_sum, mut triple_count) = (0u64, 0u64, 0u64, 0u64);
    let mut weight_sum = Rational::zero();
    for &p in table.primes() {
        let n = big_n - p;
        let f = factor_with(&spf, n);
        if f.len() <= 2 {
            lhs += 1;
        }
        let mut distinct = f.clone();
        distinct.dedup();
        if f.iter().all(|&q| above_tenth_root(q, big_n)) {
            sifted += 1;
            first_sum += distinct.iter().filter(|&&q| in_low(q)).count() as u64;
            weight_sum += weight_from(&f, big_n);
        }
        if f.len() == 3 && has_triple(&f, big_n) {
            triple_count += 1;
        }
    }
    let rhs = big(sifted) - big(first_sum) / big(2) - big(triple_count) / big(2);
    let factor = singular_factor(big_n);
    let ln = (big_n as f64).ln();
    let shape = twin_prime_constant() * rational_to_f64(&factor) * big_n as f64 / (ln * ln);
    Ok(ChenReport {
        big_n,
        lhs,
        sifted,
        first_sum,
        triple_count,
        holds: big(lhs) >= rhs,
        rhs,
        weight_sum,
        singular_factor: factor,
        shape,
        ratio: lhs as f64 / shape,
    })
}

/// Some ordering `n = p_1 p_2 p_3` with `N^(1/10) <= p_1 < N^(1/3) <= p_2 < (N / p_1)^(1/2)`.
fn has_triple(f: &[u64], big_n: u64) -> bool {
    (0..3).any(|i| {
        (0..3).any(|j| {
            i != j && {
                let (p1, p2) = (f[i], f[j]);
                above_tenth_root(p1, big_n)
                    && below_cube_root(p1, big_n)
                    && !below_cube_root(p2, big_n)
                    && (p2 as u128).pow(2) * (p1 as u128) < big_n as u128
            }
        })
    })
}
