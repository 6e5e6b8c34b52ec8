//! The Eratosthenes–Legendre identity and density products.

use num_traits::{One, Signed, Zero};

use crate::arith::primes_below;
use crate::divisors::for_each_divisor;
use crate::error::{invalid, Result};
use crate::problem::{ClassCounts, SieveProblem, SiftingDensity};
use crate::report::{BoundParams, BoundReport, Direction, Method};
use crate::scalar::big;
use crate::{Rational, Scalar};

/// `e^{-gamma}`.
pub const EXP_NEG_EULER_GAMMA: f64 = 0.561459483566885;

/// Both sides of `|S(A, z)| = V(z, omega) X + R(A, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SieveDecomposition {
    /// `sum mu(d) (omega(d) / d) X`, equal to `V(z, omega) X`.
    pub main: Rational,
    /// `sum mu(d) R_d`.
    pub remainder: Rational,
    /// `sum mu(d) |A_d|`.
    pub total: i64,
    /// `|S(A, z)|` from the sifting oracle.
    pub oracle: u64,
    /// `V(z, omega) X` from the product form.
    pub product_main: Rational,
    pub divisors: u128,
}

impl SieveDecomposition {
    pub fn holds(&self) -> bool {
        self.total >= 0
            && self.total as u64 == self.oracle
            && self.main == self.product_main
            && &self.main + &self.remainder == big(self.total as u64)
    }
}

/// Sifting primes below `z` that can contribute: `omega(p) != 0` or `|A_p| != 0`.
pub(crate) fn active_primes(problem: &SieveProblem, counts: &ClassCounts, z: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for p in primes_below(z) {
        if !problem.density.omega(p).is_zero() || counts.count(&[p])? != 0 {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn legendre_decompose(problem: &SieveProblem, z: u64) -> Result<SieveDecomposition> {
    if z < 2 {
        return Err(invalid("z must be at least 2"));
    }
    let counts = ClassCounts::new(problem, z)?;
    let primes = active_primes(problem, &counts, z)?;
    let mut main = Rational::zero();
    let mut remainder = Rational::zero();
    let mut total = 0i64;
    let divisors = for_each_divisor(&primes, None, |d| {
        let count = counts.count(d)?;
        let term = problem.main_term(d);
        let r = big(count) - &term;
        if d.len() % 2 == 0 {
            total += count as i64;
            main += term;
            remainder += r;
        } else {
            total -= count as i64;
            main -= term;
            remainder -= r;
        }
        Ok(())
    })?;
    let product_main = density_product::<Rational>(&problem.density, z) * &problem.x_scale;
    Ok(SieveDecomposition {
        main,
        remainder,
        total,
        oracle: problem.exact_sift(z)?,
        product_main,
        divisors,
    })
}

/// `V(z, omega) = prod_{p < z} (1 - omega(p) / p)`.
pub fn density_product<S: Scalar>(density: &SiftingDensity, z: u64) -> S {
    primes_below(z).into_iter().fold(S::one(), |acc, p| {
        let factor = Rational::one() - density.omega(p) / big(p);
        acc * S::from_rational(&factor)
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MertensComparison {
    pub product: f64,
    pub asymptotic: f64,
    pub relative_error: f64,
}

/// `V(z, 1)` against `e^{-gamma} / log z`.
pub fn mertens_compare(z: u64) -> Result<MertensComparison> {
    if z < 10 {
        return Err(invalid("Mertens comparison needs z >= 10"));
    }
    let product: f64 = density_product(&SiftingDensity::unit(), z);
    let asymptotic = EXP_NEG_EULER_GAMMA / (z as f64).ln();
    Ok(MertensComparison {
        product,
        asymptotic,
        relative_error: (product / asymptotic - 1.0).abs(),
    })
}

/// Empirical dimension `log(V(z1) / V(z2)) / log(log z2 / log z1)`.
pub fn dimension_fit(density: &SiftingDensity, z1: u64, z2: u64) -> Result<f64> {
    if !(2 < z1 && z1 < z2) {
        return Err(invalid(format!("dimension fit needs 2 < z1 < z2, got {z1}, {z2}")));
    }
    let v1: f64 = density_product(density, z1);
    let v2: f64 = density_product(density, z2);
    if v1 <= 0.0 || v2 <= 0.0 {
        return Err(invalid("density product vanishes"));
    }
    Ok((v1 / v2).ln() / ((z2 as f64).ln() / (z1 as f64).ln()).ln())
}

/// `V(sqrt x, 1) y / (y / log x)`, the ratio the interval main term tends to.
pub fn interval_main_ratio(x: u64) -> f64 {
    let root = crate::arith::isqrt(x) + 1;
    let v: f64 = density_product(&SiftingDensity::unit(), root);
    v * (x as f64).ln()
}

/// `V(z, omega) X + sum |R_d|` above, `V(z, omega) X - sum |R_d|` below, over all `d | P(z)`.
pub fn legendre_bound(problem: &SieveProblem, z: u64, direction: Direction) -> Result<BoundReport> {
    if z < 2 {
        return Err(invalid("z must be at least 2"));
    }
    let counts = ClassCounts::new(problem, z)?;
    let primes = active_primes(problem, &counts, z)?;
    let mut remainder = Rational::zero();
    let divisors = for_each_divisor(&primes, None, |d| {
        remainder += (big(counts.count(d)?) - problem.main_term(d)).abs();
        Ok(())
    })?;
    let main = density_product::<Rational>(&problem.density, z) * &problem.x_scale;
    let bound = match direction {
        Direction::Upper => &main + &remainder,
        Direction::Lower => &main - &remainder,
    };
    let report = BoundReport::exact(
        Method::Legendre,
        problem.descriptor(),
        BoundParams {
            z: Some(z as f64),
            ..BoundParams::default()
        },
        direction,
        &main,
        &remainder,
        &bound,
        problem.exact_sift(z)?,
    );
    Ok(report.with_extra("divisors", divisors as f64))
}
