//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library.
#![allow(dead_code)]

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_below(z: u64) -> Vec<u64> {
    (2..z).filter(|&p| is_prime(p)).collect()
}

/// Prime factors with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    let mut g = f.clone();
    g.dedup();
    if g.len() != f.len() {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `#{a in A : (a, P(z)) = 1}`.
pub fn sift(elements: &[u64], z: u64) -> u64 {
    let primes = primes_below(z);
    elements.iter().filter(|&&a| primes.iter().all(|&p| a % p != 0)).count() as u64
}

pub fn interval(x: u64, y: u64) -> Vec<u64> {
    (x - y + 1..=x).collect()
}

/// `n (n + 2)` for `1 <= n <= x - 3`.
pub fn twin(x: u64) -> Vec<u64> {
    (1..=x - 3).map(|n| n * (n + 2)).collect()
}

/// `n (N - n)` for `3 <= n <= N - 3`.
pub fn goldbach(big_n: u64) -> Vec<u64> {
    (3..=big_n - 3).map(|n| n * (big_n - n)).collect()
}

/// `1 <= n < x` with `n = l mod k`.
pub fn progression(x: u64, k: u64, l: u64) -> Vec<u64> {
    (1..x).filter(|n| n % k == l % k).collect()
}

pub fn twin_prime_pairs(x: u64) -> u64 {
    (2..x).filter(|&p| is_prime(p) && is_prime(p + 2)).count() as u64
}

pub fn pi_progression(x: u64, k: u64, l: u64) -> u64 {
    (2..x).filter(|&p| p % k == l % k && is_prime(p)).count() as u64
}

/// Squarefree divisors of the product of `primes`, as prime lists.
pub fn subsets(primes: &[u64]) -> Vec<Vec<u64>> {
    (0u32..1 << primes.len())
        .map(|mask| {
            primes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect()
}
