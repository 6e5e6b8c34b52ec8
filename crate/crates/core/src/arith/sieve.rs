use crate::error::{invalid, Result, SieveError};

/// Default cap on the table limit (number of sieved integers).
pub const DEFAULT_PRIME_CAP: u64 = 1_000_000_000;

const SEGMENT_LEN: u64 = 1 << 18;

/// All primes below `limit`, with an O(1) membership bitset.
///
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    bits: Vec<u64>,
}

impl PrimeTable {
    /// Segmented sieve of Eratosthenes with the default budget.
    pub fn new(limit: u64) -> Result<Self> {
        primes_up_to_with_cap(limit, DEFAULT_PRIME_CAP)
    }

    /// Plain one-array sieve. Used to cross-check the segmented path.
    pub fn unsegmented(limit: u64) -> Result<Self> {
        check_limit(limit, DEFAULT_PRIME_CAP)?;
        let composite = composite_flags(limit);
        let primes = (2..limit).filter(|&n| !composite[n as usize]).collect();
        Ok(Self::from_primes(limit, primes))
    }

    fn from_primes(limit: u64, primes: Vec<u64>) -> Self {
        let mut bits = vec![0u64; (limit as usize).div_ceil(64).max(1)];
        for &p in &primes {
            bits[(p / 64) as usize] |= 1 << (p % 64);
        }
        PrimeTable { limit, primes, bits }
    }

    /// Exclusive upper bound of the table.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Membership test. Panics when `n >= limit`.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n < self.limit, "{n} outside prime table of limit {}", self.limit);
        self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    /// Primes strictly below `x` (clamped to the table).
    pub fn primes_below(&self, x: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p < x);
        &self.primes[..end]
    }

    pub fn count_below(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p < x)
    }
}

fn check_limit(limit: u64, cap: u64) -> Result<()> {
    if limit < 2 {
        return Err(invalid(format!("prime table limit must be at least 2, got {limit}")));
    }
    if limit > cap {
        return Err(SieveError::BudgetExceeded {
            what: "prime table limit",
            requested: limit as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

fn composite_flags(limit: u64) -> Vec<bool> {
    let n = limit as usize;
    let mut composite = vec![false; n.max(2)];
    composite[0] = true;
    composite[1] = true;
    let mut i = 2usize;
    while i * i < n {
        if !composite[i] {
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    composite
}

/// All primes in `[2, limit)` by segmented sieving, failing when `limit > cap`.
pub fn primes_up_to_with_cap(limit: u64, cap: u64) -> Result<PrimeTable> {
    check_limit(limit, cap)?;
    let root = isqrt(limit - 1) + 1;
    let base_flags = composite_flags(root + 1);
    let base: Vec<u64> = (2..=root).filter(|&n| !base_flags[n as usize]).collect();

    let mut primes = Vec::new();
    let mut segment = vec![false; SEGMENT_LEN as usize];
    let mut lo = 2u64;
    while lo < limit {
        let hi = (lo + SEGMENT_LEN).min(limit);
        let seg = &mut segment[..(hi - lo) as usize];
        seg.fill(false);
        for &p in &base {
            if p * p >= hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            while m < hi {
                seg[(m - lo) as usize] = true;
                m += p;
            }
        }
        primes.extend(seg.iter().enumerate().filter(|(_, &c)| !c).map(|(i, _)| lo + i as u64));
        lo = hi;
    }
    Ok(PrimeTable::from_primes(limit, primes))
}

/// Primes strictly below `z`; convenience for the small sifting ranges.
pub fn primes_below(z: u64) -> Vec<u64> {
    if z <= 2 {
        return Vec::new();
    }
    let flags = composite_flags(z);
    (2..z).filter(|&n| !flags[n as usize]).collect()
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let n = n as u128;
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r as u64
}

/// `Omega(n)` (prime factors with multiplicity) for every `n < limit`; entry 0 is unused.
pub fn big_omega_table(limit: u64) -> Vec<u8> {
    let n = limit as usize;
    let mut omega = vec![0u8; n.max(1)];
    for p in primes_below(limit) {
        let mut q = p;
        while q < limit {
            for m in (q as usize..n).step_by(q as usize) {
                omega[m] += 1;
            }
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    omega
}

/// Trial-division primality, for tests and tiny inputs.
pub fn is_prime_trial(n: u64) -> bool {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_tables() {
        assert_eq!(PrimeTable::new(3).unwrap().primes(), &[2]);
        assert!(PrimeTable::new(2).unwrap().is_empty());
        assert!(PrimeTable::new(1).is_err());
    }

    #[test]
    fn below_one_hundred() {
        let t = PrimeTable::new(100).unwrap();
        let oracle: Vec<u64> = (2..100).filter(|&n| is_prime_trial(n)).collect();
        assert_eq!(t.primes(), oracle.as_slice());
        assert_eq!(t.len(), 25);
        assert_eq!(*t.primes().last().unwrap(), 97);
    }

    #[test]
    fn budget_is_enforced() {
        let err = primes_up_to_with_cap(1_000, 999).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn segment_boundaries() {
        let limit = 3 * SEGMENT_LEN + 17;
        let a = PrimeTable::new(limit).unwrap();
        let b = PrimeTable::unsegmented(limit).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bitset_matches_list() {
        let t = PrimeTable::new(5000).unwrap();
        let flagged: Vec<u64> = (0..5000).filter(|&n| t.is_prime(n)).collect();
        assert_eq!(flagged.as_slice(), t.primes());
        assert!(t.primes().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn big_omega_small() {
        let t = big_omega_table(20);
        assert_eq!(&t[1..13], &[0, 1, 1, 2, 1, 2, 1, 3, 2, 2, 1, 3]);
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..10_000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(u32::MAX as u64 * u32::MAX as u64), u32::MAX as u64);
    }
}
