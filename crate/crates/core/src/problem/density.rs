use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::ResidueSystem;
use crate::error::{Result, SieveError};
use crate::scalar::big;
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum DensityRule {
    /// `omega = 1`.
    Unit,
    /// `omega = 0`, the empty sieve.
    Zero,
    /// `omega(2) = 1`, `omega(p) = 2`.
    Twin,
    /// `omega(p) = 1` for `p | N`, otherwise 2.
    Goldbach { n: u64 },
    /// `omega(2) = 0`, `omega(p) = p / (p - 1)`.
    ShiftedPrime,
    /// `omega(p) = 0` for `p | k`, otherwise 1.
    Coprime { k: u64 },
    /// `omega(p) = |Omega(p)|`.
    Residues(ResidueSystem),
    Table {
        values: BTreeMap<u64, Rational>,
        default: Rational,
    },
}

/// A multiplicative density `omega` on primes, with its declared dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct SiftingDensity {
    pub rule: DensityRule,
    pub kappa: f64,
}

impl SiftingDensity {
    pub fn new(rule: DensityRule, kappa: f64) -> Self {
        SiftingDensity { rule, kappa }
    }

    pub fn unit() -> Self {
        Self::new(DensityRule::Unit, 1.0)
    }

    pub fn zero() -> Self {
        Self::new(DensityRule::Zero, 0.0)
    }

    pub fn twin() -> Self {
        Self::new(DensityRule::Twin, 2.0)
    }

    pub fn omega(&self, p: u64) -> Rational {
        match &self.rule {
            DensityRule::Unit => Rational::one(),
            DensityRule::Zero => Rational::zero(),
            DensityRule::Twin => big(if p == 2 { 1 } else { 2 }),
            DensityRule::Goldbach { n } => big(if n % p == 0 { 1 } else { 2 }),
            DensityRule::ShiftedPrime => {
                if p == 2 {
                    Rational::zero()
                } else {
                    big(p) / big(p - 1)
                }
            }
            DensityRule::Coprime { k } => big(if k % p == 0 { 0 } else { 1 }),
            DensityRule::Residues(r) => big(r.size(p)),
            DensityRule::Table { values, default } => values.get(&p).cloned().unwrap_or_else(|| default.clone()),
        }
    }

    /// `omega(d)` for `d` given by its distinct prime factors.
    pub fn omega_of(&self, primes: &[u64]) -> Rational {
        primes.iter().fold(Rational::one(), |acc, &p| acc * self.omega(p))
    }

    /// `omega(d) / d`.
    pub fn ratio_of(&self, primes: &[u64]) -> Rational {
        primes
            .iter()
            .fold(Rational::one(), |acc, &p| acc * self.omega(p) / big(p))
    }

    /// Enforces `0 <= omega(p) < p`.
    pub fn check(&self, primes: &[u64]) -> Result<()> {
        for &p in primes {
            let w = self.omega(p);
            if w >= big(p) || w < Rational::zero() {
                return Err(SieveError::DensityBound {
                    p,
                    size: crate::scalar::rational_to_f64(&w).ceil() as u64,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_values() {
        let t = SiftingDensity::twin();
        assert_eq!(t.omega(2), big(1));
        assert_eq!(t.omega(3), big(2));
        let s = SiftingDensity::new(DensityRule::ShiftedPrime, 1.0);
        assert_eq!(s.omega(3), Rational::new(3.into(), 2.into()));
        assert!(s.omega(2).is_zero());
        let g = SiftingDensity::new(DensityRule::Goldbach { n: 30 }, 2.0);
        assert_eq!(g.omega(5), big(1));
        assert_eq!(g.omega(7), big(2));
    }

    #[test]
    fn density_bound() {
        let g = SiftingDensity::new(DensityRule::Goldbach { n: 31 }, 2.0);
        assert!(g.check(&[2]).is_err());
        assert!(SiftingDensity::twin().check(&[2, 3, 5]).is_ok());
    }
}
