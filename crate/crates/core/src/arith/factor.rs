use num_integer::Integer;

use crate::error::{invalid, Result, SieveError};

/// A squarefree positive integer with its prime factors in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredSquarefree {
    value: u64,
    prime_factors: Vec<u64>,
}

impl FactoredSquarefree {
    pub fn one() -> Self {
        FactoredSquarefree {
            value: 1,
            prime_factors: Vec::new(),
        }
    }

    /// Factors `n` by trial division; fails if `n` is 0 or has a square factor.
    pub fn factor(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("0 has no squarefree factorization"));
        }
        let mut m = n;
        let mut factors = Vec::new();
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return Err(SieveError::NotSquarefree(n));
                }
                factors.push(p);
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            factors.push(m);
        }
        factors.reverse();
        Ok(FactoredSquarefree {
            value: n,
            prime_factors: factors,
        })
    }

    /// Builds from a list of distinct primes in any order.
    pub fn from_primes(mut primes: Vec<u64>) -> Result<Self> {
        primes.sort_unstable_by(|a, b| b.cmp(a));
        if primes.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("repeated prime factor"));
        }
        let mut value = 1u64;
        for &p in &primes {
            if !super::is_prime_trial(p) {
                return Err(invalid(format!("{p} is not prime")));
            }
            value = value
                .checked_mul(p)
                .ok_or_else(|| invalid("squarefree value overflows u64"))?;
        }
        Ok(FactoredSquarefree {
            value,
            prime_factors: primes,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Prime factors, largest first.
    pub fn prime_factors(&self) -> &[u64] {
        &self.prime_factors
    }

    pub fn nu(&self) -> usize {
        self.prime_factors.len()
    }

    /// Least prime factor, `None` for 1.
    pub fn least_prime(&self) -> Option<u64> {
        self.prime_factors.last().copied()
    }

    /// `d / p(d)`; the value 1 maps to itself.
    pub fn without_least(&self) -> Self {
        let mut f = self.prime_factors.clone();
        match f.pop() {
            Some(p) => FactoredSquarefree {
                value: self.value / p,
                prime_factors: f,
            },
            None => self.clone(),
        }
    }

    pub fn mobius(&self) -> i64 {
        if self.nu() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All divisors as `(value, nu)` pairs.
    pub fn divisors(&self) -> Vec<(u64, usize)> {
        let mut out = vec![(1u64, 0usize)];
        for &p in &self.prime_factors {
            let len = out.len();
            for i in 0..len {
                let (v, k) = out[i];
                out.push((v * p, k + 1));
            }
        }
        out
    }
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    match FactoredSquarefree::factor(n) {
        Ok(f) => f.mobius(),
        Err(_) => 0,
    }
}

/// Sum of `mu(d)` over divisors `d | m` with `nu(d) <= ell`.
pub fn truncated_mobius(m: &FactoredSquarefree, ell: usize) -> Result<i64> {
    if m.value() <= 1 {
        return Err(invalid("truncated Mobius sum needs m > 1"));
    }
    Ok(m.divisors()
        .into_iter()
        .filter(|&(_, k)| k <= ell)
        .map(|(_, k)| if k % 2 == 0 { 1 } else { -1 })
        .sum())
}

/// `(-1)^ell * C(nu - 1, ell)`, the closed form of the truncated sum.
pub fn truncated_mobius_closed(nu: usize, ell: usize) -> i64 {
    let c = binomial(nu as u64 - 1, ell as u64) as i64;
    if ell % 2 == 0 {
        c
    } else {
        -c
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn totient(n: u64) -> u64 {
    assert!(n >= 1);
    let mut m = n;
    let mut out = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Number of prime factors counted with multiplicity.
pub fn big_omega(n: u64) -> u32 {
    let mut m = n;
    let mut count = 0;
    let mut p = 2u64;
    while p * p <= m {
        while m % p == 0 {
            m /= p;
            count += 1;
        }
        p += 1;
    }
    if m > 1 {
        count += 1;
    }
    count
}

pub fn coprime(a: u64, b: u64) -> bool {
    a.gcd(&b) == 1
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut m = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(97), -1);
    }

    #[test]
    fn truncated_examples() {
        let m = FactoredSquarefree::factor(30).unwrap();
        assert_eq!(truncated_mobius(&m, 0).unwrap(), 1);
        assert_eq!(truncated_mobius(&m, 1).unwrap(), -2);
        assert_eq!(truncated_mobius(&m, 3).unwrap(), 0);
        assert!(truncated_mobius(&FactoredSquarefree::one(), 0).is_err());
    }

    #[test]
    fn factorization_shape() {
        let f = FactoredSquarefree::factor(2 * 7 * 13).unwrap();
        assert_eq!(f.prime_factors(), &[13, 7, 2]);
        assert_eq!(f.least_prime(), Some(2));
        assert_eq!(f.without_least().value(), 91);
        assert_eq!(FactoredSquarefree::factor(18), Err(SieveError::NotSquarefree(18)));
        let g = FactoredSquarefree::from_primes(vec![5, 2, 3]).unwrap();
        assert_eq!(g.value(), 30);
        assert!(FactoredSquarefree::from_primes(vec![3, 3]).is_err());
    }

    #[test]
    fn totient_small() {
        let phi: Vec<u64> = (1..=12).map(totient).collect();
        assert_eq!(phi, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }
}
