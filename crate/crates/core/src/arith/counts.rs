use num_integer::Integer;

use super::{totient, PrimeTable};
use crate::error::{invalid, Result, SieveError};
use crate::quad::adaptive_simpson;

/// Absolute tolerance of the logarithmic integral.
pub const LI_TOLERANCE: f64 = 1e-9;

/// Cap on `Q * pi(x)` work in [`mean_remainder_sum`].
pub const MEAN_REMAINDER_CAP: u128 = 4_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiVariant {
    Plain,
    /// Pairs `(p, p + 2)`, indexed by the smaller member.
    Twin,
    Progression {
        k: u64,
        l: u64,
    },
}

pub fn pi_count(table: &PrimeTable, x: u64, variant: PiVariant) -> Result<u64> {
    let needed = match variant {
        PiVariant::Twin => x + 2,
        _ => x,
    };
    if needed > table.limit() {
        return Err(SieveError::TableTooSmall {
            needed,
            limit: table.limit(),
        });
    }
    let below = table.primes_below(x);
    let n = match variant {
        PiVariant::Plain => below.len(),
        PiVariant::Twin => below.iter().filter(|&&p| table.is_prime(p + 2)).count(),
        PiVariant::Progression { k, l } => {
            if k == 0 {
                return Err(invalid("modulus must be positive"));
            }
            let l = l % k;
            below.iter().filter(|&&p| p % k == l).count()
        }
    };
    Ok(n as u64)
}

/// `li(x) = int_2^x dt / log t`, zero at `x = 2`.
pub fn li(x: f64) -> f64 {
    if x <= 2.0 {
        return 0.0;
    }
    let f = |t: f64| 1.0 / t.ln();
    // Dyadic pieces keep the recursion shallow on long ranges.
    let mut pieces = Vec::new();
    let mut a = 2.0;
    while a < x {
        let b = (2.0 * a).min(x);
        pieces.push((a, b));
        a = b;
    }
    let tol = LI_TOLERANCE / pieces.len() as f64;
    pieces.into_iter().map(|(a, b)| adaptive_simpson(&f, a, b, tol)).sum()
}

/// `E(x; k, l) = pi(x; k, l) - li(x) / phi(k)`.
pub fn remainder_e(table: &PrimeTable, x: u64, k: u64, l: u64) -> Result<f64> {
    if k == 0 {
        return Err(invalid("modulus must be positive"));
    }
    if l.gcd(&k) != 1 {
        return Err(SieveError::NotCoprime { k, l });
    }
    let count = pi_count(table, x, PiVariant::Progression { k, l })?;
    Ok(count as f64 - li(x as f64) / totient(k) as f64)
}

/// `sum_{q < Q} max_{(a, q) = 1} |E(x; q, a)|`.
pub fn mean_remainder_sum(table: &PrimeTable, x: u64, big_q: u64) -> Result<f64> {
    if big_q < 2 {
        return Err(invalid("Q must be at least 2"));
    }
    if x > table.limit() {
        return Err(SieveError::TableTooSmall {
            needed: x,
            limit: table.limit(),
        });
    }
    let primes = table.primes_below(x);
    let work = big_q as u128 * (primes.len() as u128 + big_q as u128);
    if work > MEAN_REMAINDER_CAP {
        return Err(SieveError::BudgetExceeded {
            what: "mean remainder sum work",
            requested: work,
            cap: MEAN_REMAINDER_CAP,
        });
    }
    let lix = li(x as f64);
    let mut total = 0.0;
    let mut counts = Vec::new();
    for q in 1..big_q {
        counts.clear();
        counts.resize(q as usize, 0u64);
        for &p in primes {
            counts[(p % q) as usize] += 1;
        }
        let expected = lix / totient(q) as f64;
        let worst = (0..q)
            .filter(|a| a.gcd(&q) == 1)
            .map(|a| (counts[a as usize] as f64 - expected).abs())
            .fold(0.0, f64::max);
        total += worst;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_below_one_hundred() {
        let t = PrimeTable::new(200).unwrap();
        assert_eq!(pi_count(&t, 100, PiVariant::Plain).unwrap(), 25);
        assert_eq!(pi_count(&t, 100, PiVariant::Twin).unwrap(), 8);
        assert_eq!(pi_count(&t, 100, PiVariant::Progression { k: 4, l: 1 }).unwrap(), 11);
    }

    #[test]
    fn table_too_small() {
        let t = PrimeTable::new(100).unwrap();
        assert!(pi_count(&t, 100, PiVariant::Plain).is_ok());
        assert!(matches!(
            pi_count(&t, 99, PiVariant::Twin),
            Err(SieveError::TableTooSmall { .. })
        ));
    }

    #[test]
    fn li_offset_convention() {
        assert_eq!(li(2.0), 0.0);
        // li(100) with the integral starting at 2.
        assert!((li(100.0) - 29.080977804).abs() < 1e-8);
    }

    #[test]
    fn remainder_requires_coprime() {
        let t = PrimeTable::new(100).unwrap();
        assert_eq!(remainder_e(&t, 50, 6, 3), Err(SieveError::NotCoprime { k: 6, l: 3 }));
        let full = remainder_e(&t, 10, 1, 0).unwrap();
        assert!((full - (4.0 - li(10.0))).abs() < 1e-12);
    }
}
