//! Brun's pure sieve and the twin-prime upper-bound pipeline.

use num_traits::{Signed, Zero};

use crate::arith::{binomial, pi_count, prime_divisors, primes_below, PiVariant, PrimeTable};
use crate::divisors::for_each_divisor;
use crate::error::{invalid, Result};
use crate::legendre::{active_primes, density_product};
use crate::problem::{ClassCounts, SieveProblem, SiftingDensity};
use crate::report::{BoundParams, BoundReport, Direction, Method};
use crate::scalar::{big, rational_to_f64};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PureSieveConfig {
    pub z: u64,
    pub ell: u64,
    pub parity: Direction,
}

impl PureSieveConfig {
    pub fn upper(z: u64, ell: u64) -> Self {
        PureSieveConfig {
            z,
            ell,
            parity: Direction::Upper,
        }
    }

    pub fn lower(z: u64, ell: u64) -> Self {
        PureSieveConfig {
            z,
            ell,
            parity: Direction::Lower,
        }
    }

    /// Largest admitted `nu(d)`: `2 ell` above, `2 ell + 1` below.
    pub fn cutoff(&self) -> u64 {
        match self.parity {
            Direction::Upper => 2 * self.ell,
            Direction::Lower => 2 * self.ell + 1,
        }
    }
}

/// `sum mu(d)` over `d | (n, P(z))` with `nu(d)` up to the cutoff.
pub fn truncated_indicator(n: u64, config: &PureSieveConfig) -> i64 {
    assert!(n >= 1);
    let nu = prime_divisors(n)
        .into_iter()
        .filter(|&p| (p as f64) < config.z as f64)
        .count() as u64;
    (0..=config.cutoff().min(nu))
        .map(|k| {
            let c = binomial(nu, k) as i64;
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum()
}

/// The exact sifting indicator `sum_{d | (n, P(z))} mu(d)`.
pub fn exact_indicator(n: u64, z: u64) -> i64 {
    i64::from(prime_divisors(n).into_iter().all(|p| p >= z))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemainderMode {
    /// `sum |R_d|` from the problem's class counts.
    True,
    /// `sum omega(d)`, the worst case `|R_d| <= omega(d)`.
    WorstCase,
}

/// `main +- remainder` with the truncated Mobius weights.
pub fn pure_sieve_bound(problem: &SieveProblem, config: &PureSieveConfig, mode: RemainderMode) -> Result<BoundReport> {
    if config.z < 2 {
        return Err(invalid("z must be at least 2"));
    }
    let counts = ClassCounts::new(problem, config.z)?;
    let primes = active_primes(problem, &counts, config.z)?;
    let mut main = Rational::zero();
    let mut signed_remainder = Rational::zero();
    let mut remainder = Rational::zero();
    let mut worst = Rational::zero();
    let visited = for_each_divisor(&primes, Some(config.cutoff() as usize), |d| {
        let count = counts.count(d)?;
        let term = problem.main_term(d);
        let r = big(count) - &term;
        remainder += r.abs();
        worst += problem.density.omega_of(d);
        if d.len() % 2 == 0 {
            main += term;
            signed_remainder += r;
        } else {
            main -= term;
            signed_remainder -= r;
        }
        Ok(())
    })?;
    let remainder_bound = match mode {
        RemainderMode::True => remainder,
        RemainderMode::WorstCase => worst,
    };
    let bound = match config.parity {
        Direction::Upper => &main + &remainder_bound,
        Direction::Lower => &main - &remainder_bound,
    };
    let exact = problem.exact_sift(config.z)?;
    let report = BoundReport::exact(
        Method::BrunPure,
        problem.descriptor(),
        BoundParams {
            z: Some(config.z as f64),
            ell: Some(config.ell),
            ..BoundParams::default()
        },
        config.parity,
        &main,
        &remainder_bound,
        &bound,
        exact,
    );
    Ok(report
        .with_extra("divisors", visited as f64)
        .with_extra("truncated_count", rational_to_f64(&(&main + &signed_remainder))))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwinPipeline {
    pub x: u64,
    pub z: f64,
    pub ell: u64,
    /// Upper bound for `pi_2(x)`.
    pub bound: f64,
    pub exact: u64,
    pub ratio: f64,
    /// `x V(z, omega)`.
    pub main: f64,
    /// `x 2^{-2 ell} sum_{d | P(z)} 4^{nu(d)} / d`.
    pub tail: f64,
    /// `sum |R_d|` over `d | P(z)`, `nu(d) <= 2 ell`.
    pub remainder: f64,
    /// `x (log log x / log x)^2`.
    pub shape: f64,
}

/// Default sifting limit `exp(log x / (100 log log x))`.
pub fn pipeline_z(x: u64) -> f64 {
    let lx = (x as f64).ln();
    (lx / (100.0 * lx.ln())).exp()
}

/// Default truncation `floor(log x / (4 log z))`.
pub fn pipeline_ell(x: u64, z: f64) -> u64 {
    ((x as f64).ln() / (4.0 * z.ln())).floor() as u64
}

/// Twin-prime upper bound with the default parameter choices.
pub fn twin_upper_pipeline(x: u64) -> Result<TwinPipeline> {
    twin_upper_pipeline_with(x, None, None)
}

/// Twin-prime upper bound with optional overrides for `z` and `ell`.
///
/// `pi_2(x) <= |S(A, z)| + pi(z) + 2`: twin pairs with the smaller member
/// below `z` are lost by sifting and the two largest `n` are outside `A`.
pub fn twin_upper_pipeline_with(x: u64, z: Option<f64>, ell: Option<u64>) -> Result<TwinPipeline> {
    if x < 1000 {
        return Err(invalid(format!("twin pipeline needs x >= 1000, got {x}")));
    }
    let z = z.unwrap_or_else(|| pipeline_z(x));
    let ell = ell.unwrap_or_else(|| pipeline_ell(x, z));
    let problem = crate::problem::ProblemSpec::Twin { x }.build()?;
    let zi = z.ceil() as u64;
    let sifting = primes_below(zi.max(2));
    let twin = SiftingDensity::twin();

    let counts = ClassCounts::new(&problem, zi.max(2))?;
    let cutoff = (2 * ell).min(sifting.len() as u64) as usize;
    let mut remainder = Rational::zero();
    for_each_divisor(&sifting, Some(cutoff), |d| {
        let r = big(counts.count(d)?) - problem.main_term(d);
        remainder += r.abs();
        Ok(())
    })?;

    let v: f64 = density_product(&twin, zi.max(2));
    let series: f64 = sifting.iter().map(|&p| 1.0 + 4.0 / p as f64).product();
    let tail = x as f64 * series * 0.25f64.powi(ell.min(2000) as i32);
    let main = x as f64 * v;
    let lost = sifting.len() as f64 + 2.0;
    let bound = main + tail + rational_to_f64(&remainder) + lost;

    let table = PrimeTable::new(x + 2)?;
    let exact = pi_count(&table, x, PiVariant::Twin)?;
    let lx = (x as f64).ln();
    Ok(TwinPipeline {
        x,
        z,
        ell,
        bound,
        exact,
        ratio: bound / exact as f64,
        main,
        tail,
        remainder: rational_to_f64(&remainder),
        shape: x as f64 * (lx.ln() / lx).powi(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::truncated_mobius_closed;
    use crate::problem::ProblemSpec;

    #[test]
    fn indicator_examples() {
        assert_eq!(truncated_indicator(1, &PureSieveConfig::upper(6, 3)), 1);
        assert_eq!(truncated_indicator(30, &PureSieveConfig::upper(6, 0)), 1);
        assert_eq!(exact_indicator(30, 6), 0);
        assert_eq!(truncated_indicator(30, &PureSieveConfig::lower(6, 0)), -2);
        assert_eq!(
            truncated_indicator(2 * 3 * 5 * 7, &PureSieveConfig::upper(10, 1)),
            truncated_mobius_closed(4, 2)
        );
    }

    #[test]
    fn vacuous_truncation_is_legendre() {
        let p = ProblemSpec::Interval { x: 1000, y: 1000 }.build().unwrap();
        let r = pure_sieve_bound(&p, &PureSieveConfig::upper(12, 5), RemainderMode::True).unwrap();
        let d = crate::legendre::legendre_decompose(&p, 12).unwrap();
        assert_eq!(r.extras["truncated_count"], d.total as f64);
        assert!(r.is_valid());
    }

    #[test]
    fn twin_sandwich() {
        let p = ProblemSpec::Twin { x: 10_000 }.build().unwrap();
        let up = pure_sieve_bound(&p, &PureSieveConfig::upper(20, 2), RemainderMode::True).unwrap();
        let lo = pure_sieve_bound(&p, &PureSieveConfig::lower(20, 1), RemainderMode::True).unwrap();
        assert!(up.is_valid() && lo.is_valid());
        assert!(lo.bound <= up.bound);
    }

    #[test]
    fn pipeline_small() {
        let r = twin_upper_pipeline(1000).unwrap();
        assert_eq!(r.exact, 35);
        assert!(r.bound >= 35.0);
    }
}
