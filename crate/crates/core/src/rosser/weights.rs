use crate::arith::FactoredSquarefree;
use crate::divisors::DIVISOR_CAP;
use crate::error::{invalid, Result, SieveError};

/// Rosser's weights `rho_r`, `sigma_r` for level `D` and parameter `beta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RosserWeightTable {
    pub level: f64,
    pub beta: f64,
    /// `0` gives lower bounds, `1` upper bounds.
    pub parity: u8,
}

/// `prefix * p^(beta + 1)`, exact for integral `beta` while below `2^53`.
fn weighted(prefix: f64, p: u64, beta: f64) -> f64 {
    let power = if beta.fract() == 0.0 && beta.abs() < 64.0 {
        (p as f64).powi(beta as i32 + 1)
    } else {
        (p as f64).powf(beta + 1.0)
    };
    prefix * power
}

impl RosserWeightTable {
    pub fn new(level: f64, beta: f64, parity: u8) -> Result<Self> {
        if parity > 1 {
            return Err(invalid(format!("parity must be 0 or 1, got {parity}")));
        }
        if beta.is_nan() || beta <= 1.0 {
            return Err(invalid(format!("beta must exceed 1, got {beta}")));
        }
        if level.is_nan() || level <= 0.0 {
            return Err(invalid(format!("level must be positive, got {level}")));
        }
        Ok(RosserWeightTable { level, beta, parity })
    }

    /// `eta_r(d)` for `d = prefix * p` with `p = p(d)` and `nu(d) = nu`.
    pub fn eta(&self, prefix: u64, p: u64, nu: usize) -> bool {
        if nu % 2 != self.parity as usize {
            return true;
        }
        // p^beta d < D, ties excluded.
        weighted(prefix as f64, p, self.beta) < self.level
    }

    /// `(rho_r(d), sigma_r(d))` from the chain of `eta` over descending prefixes.
    pub fn chain(&self, d: &FactoredSquarefree) -> (bool, bool) {
        let primes = d.prime_factors();
        let mut rho_parent = true;
        let mut rho = true;
        let mut prefix = 1u64;
        for (j, &p) in primes.iter().enumerate() {
            rho_parent = rho;
            rho = rho && self.eta(prefix, p, j + 1);
            prefix *= p;
        }
        if primes.is_empty() {
            return (true, false);
        }
        (rho, rho_parent && !rho)
    }

    /// `rho_r(d)` from the set description: `p_1 ... p_{j-1} p_j^(beta+1) < D` for all `j = r mod 2`.
    pub fn rho_closed(&self, d: &FactoredSquarefree) -> bool {
        let primes = d.prime_factors();
        let mut prefix = 1u64;
        for (j, &p) in primes.iter().enumerate() {
            let len = j + 1;
            if len % 2 == self.parity as usize && weighted(prefix as f64, p, self.beta) >= self.level {
                return false;
            }
            prefix *= p;
        }
        true
    }

    /// `sigma_r(d)`: `rho_r(d / p(d)) = 1`, `p_1 ... p_{l-1} p_l^(beta+1) >= D`, `l = r mod 2`.
    pub fn sigma_closed(&self, d: &FactoredSquarefree) -> bool {
        let primes = d.prime_factors();
        let l = primes.len();
        if l == 0 || l % 2 != self.parity as usize {
            return false;
        }
        let parent = d.without_least();
        let prefix: u64 = primes[..l - 1].iter().product();
        self.rho_closed(&parent) && weighted(prefix as f64, primes[l - 1], self.beta) >= self.level
    }
}

/// Whether a visited divisor carries `rho_r = 1` or `sigma_r = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    Rho,
    Sigma,
}

/// Visits every `d | P(z0, z)` with `rho_r(d) = 1` or `sigma_r(d) = 1`.
///
/// `primes` are the primes of `[z0, z)` in any order; `f` receives the prime
/// factors in descending order.
pub fn for_each_weighted_divisor(
    primes: &[u64],
    weights: &RosserWeightTable,
    mut f: impl FnMut(&[u64], WeightKind) -> Result<()>,
) -> Result<u128> {
    let mut sorted = primes.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut stack = Vec::new();
    let mut visited = 0u128;
    f(&stack, WeightKind::Rho)?;
    visit(&sorted, 0, 1, weights, &mut stack, &mut visited, &mut f)?;
    Ok(visited + 1)
}

fn visit(
    primes: &[u64],
    from: usize,
    d: u64,
    weights: &RosserWeightTable,
    stack: &mut Vec<u64>,
    visited: &mut u128,
    f: &mut impl FnMut(&[u64], WeightKind) -> Result<()>,
) -> Result<()> {
    for i in from..primes.len() {
        let p = primes[i];
        *visited += 1;
        if *visited > DIVISOR_CAP {
            return Err(SieveError::BudgetExceeded {
                what: "Rosser divisor enumeration",
                requested: *visited,
                cap: DIVISOR_CAP,
            });
        }
        stack.push(p);
        if weights.eta(d, p, stack.len()) {
            f(stack, WeightKind::Rho)?;
            visit(primes, i + 1, d * p, weights, stack, visited, f)?;
        } else {
            f(stack, WeightKind::Sigma)?;
        }
        stack.pop();
    }
    Ok(())
}
