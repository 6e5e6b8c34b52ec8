//! Depth-first enumeration of squarefree divisors of `P(z)`.

use crate::arith::binomial;
use crate::error::{Result, SieveError};

/// Hard cap on the number of enumerated divisors.
pub const DIVISOR_CAP: u128 = 1 << 25;

/// Number of subsets of `n` primes with at most `max_nu` elements.
pub fn divisor_count(n: usize, max_nu: Option<usize>) -> u128 {
    let top = max_nu.unwrap_or(n).min(n);
    (0..=top).map(|k| binomial(n as u64, k as u64)).sum()
}

/// Fails when enumerating divisors of `n` primes would exceed [`DIVISOR_CAP`].
pub fn check_divisor_budget(n: usize, max_nu: Option<usize>) -> Result<()> {
    let requested = divisor_count(n, max_nu);
    if requested > DIVISOR_CAP {
        return Err(SieveError::BudgetExceeded {
            what: "squarefree divisors of P(z)",
            requested,
            cap: DIVISOR_CAP,
        });
    }
    Ok(())
}

/// Calls `f` with the prime factors (ascending) of every squarefree divisor
/// built from `primes` with at most `max_nu` factors, starting with `d = 1`.
pub fn for_each_divisor<F>(primes: &[u64], max_nu: Option<usize>, mut f: F) -> Result<u128>
where
    F: FnMut(&[u64]) -> Result<()>,
{
    check_divisor_budget(primes.len(), max_nu)?;
    let limit = max_nu.unwrap_or(primes.len());
    let mut stack = Vec::with_capacity(limit);
    let mut visited = 0u128;
    descend(primes, 0, limit, &mut stack, &mut f, &mut visited)?;
    Ok(visited)
}

fn descend<F>(
    primes: &[u64],
    from: usize,
    limit: usize,
    stack: &mut Vec<u64>,
    f: &mut F,
    visited: &mut u128,
) -> Result<()>
where
    F: FnMut(&[u64]) -> Result<()>,
{
    f(stack)?;
    *visited += 1;
    if stack.len() == limit {
        return Ok(());
    }
    for i in from..primes.len() {
        stack.push(primes[i]);
        descend(primes, i + 1, limit, stack, f, visited)?;
        stack.pop();
    }
    Ok(())
}

/// Ascending squarefree integers below `z` together with their prime factors.
pub fn squarefree_below(z: u64) -> Vec<(u64, Vec<u64>)> {
    let mut out = Vec::new();
    for n in 1..z {
        if let Ok(f) = crate::arith::FactoredSquarefree::factor(n) {
            let mut p = f.prime_factors().to_vec();
            p.reverse();
            out.push((n, p));
        }
    }
    out
}
