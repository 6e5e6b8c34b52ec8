use std::collections::HashMap;

use super::SieveProblem;
use crate::arith::primes_below;
use crate::error::{invalid, Result, SieveError};

/// Histogram of "which primes below `z` divide the element" over `A`.
///
/// Answers every `|S(A_d, w)|` with `d | P(z)` and `w <= z` without rescanning
/// the sequence.
#[derive(Clone, Debug)]
pub struct SiftCounter {
    primes: Vec<u64>,
    hist: Vec<(u128, u64)>,
    total: u64,
}

impl SiftCounter {
    pub fn new(problem: &SieveProblem, z: u64) -> Result<Self> {
        let primes = primes_below(z);
        if primes.len() > 128 {
            return Err(invalid(format!(
                "mask histogram supports at most 128 sifting primes, z = {z} gives {}",
                primes.len()
            )));
        }
        let mut counts: HashMap<u128, u64> = HashMap::new();
        if let Some(form) = &problem.omega_form {
            if form.len > super::ENUMERATION_CAP {
                return Err(SieveError::BudgetExceeded {
                    what: "mask histogram length",
                    requested: form.len as u128,
                    cap: super::ENUMERATION_CAP as u128,
                });
            }
            let mut masks = vec![0u128; form.len as usize];
            for (i, &p) in primes.iter().enumerate() {
                for c in form.residues.classes(p) {
                    let first = (c as i64 - form.start).rem_euclid(p as i64) as usize;
                    for m in masks.iter_mut().skip(first).step_by(p as usize) {
                        *m |= 1 << i;
                    }
                }
            }
            for m in masks {
                *counts.entry(m).or_default() += 1;
            }
        } else {
            let values = problem.elements.to_vec();
            for v in values {
                let mut m = 0u128;
                for (i, &p) in primes.iter().enumerate() {
                    if v % p == 0 {
                        m |= 1 << i;
                    }
                }
                *counts.entry(m).or_default() += 1;
            }
        }
        let mut hist: Vec<(u128, u64)> = counts.into_iter().collect();
        hist.sort_unstable();
        let total = hist.iter().map(|h| h.1).sum();
        Ok(SiftCounter { primes, hist, total })
    }

    /// Sifting primes, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Bit mask of a set of sifting primes.
    pub fn mask_of(&self, primes: &[u64]) -> u128 {
        primes.iter().fold(0, |m, p| {
            let i = self
                .primes
                .binary_search(p)
                .unwrap_or_else(|_| panic!("{p} is not a sifting prime"));
            m | 1 << i
        })
    }

    /// Mask of the sifting primes below `w`.
    pub fn low_mask(&self, w: u64) -> u128 {
        let k = self.primes.partition_point(|&p| p < w);
        if k == 128 {
            u128::MAX
        } else {
            (1u128 << k) - 1
        }
    }

    /// `|S(A_d, w)|` where `d` is given by its mask.
    pub fn sifted(&self, d_mask: u128, w: u64) -> u64 {
        let low = self.low_mask(w);
        self.hist
            .iter()
            .filter(|(m, _)| m & d_mask == d_mask && m & low == 0)
            .map(|h| h.1)
            .sum()
    }

    /// `|A_d|`.
    pub fn divisible(&self, d_mask: u128) -> u64 {
        self.hist
            .iter()
            .filter(|(m, _)| m & d_mask == d_mask)
            .map(|h| h.1)
            .sum()
    }
}

/// `|A_d|` lookups for divisors of `P(z)`: closed form through the residue
/// form when available, otherwise a mask histogram.
#[derive(Clone, Debug)]
pub struct ClassCounts<'a> {
    problem: &'a SieveProblem,
    hist: Option<SiftCounter>,
}

impl<'a> ClassCounts<'a> {
    pub fn new(problem: &'a SieveProblem, z: u64) -> Result<Self> {
        let hist = if problem.omega_form.is_none() && primes_below(z).len() <= 128 {
            Some(SiftCounter::new(problem, z)?)
        } else {
            None
        };
        Ok(ClassCounts { problem, hist })
    }

    pub fn count(&self, primes: &[u64]) -> Result<u64> {
        match &self.hist {
            Some(h) => Ok(h.divisible(h.mask_of(primes))),
            None => self.problem.count_divisible(primes),
        }
    }
}
