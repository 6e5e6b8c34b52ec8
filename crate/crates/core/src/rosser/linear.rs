use num_traits::{Signed, Zero};

use super::{for_each_weighted_divisor, RosserWeightTable, SieveFunctionTable, WeightKind};
use crate::arith::primes_below;
use crate::error::{invalid, Result};
use crate::legendre::{density_product, dimension_fit};
use crate::problem::{ClassCounts, ProblemSpec, SieveProblem, SiftCounter, SiftingDensity};
use crate::report::{BoundParams, BoundReport, Direction, Method};
use crate::scalar::{big, rational_to_f64};
use crate::Rational;

/// Default relative slack for the linear-sieve verdict.
pub const DEFAULT_EPSILON: f64 = 0.1;
/// `beta` of the linear sieve.
pub const LINEAR_BETA: f64 = 2.0;
/// Largest `x` for the parity example.
pub const PARITY_X_MAX: u64 = 10_000_000;

fn direction(parity: u8) -> Direction {
    if parity == 0 {
        Direction::Lower
    } else {
        Direction::Upper
    }
}

/// Primes below a real `z`.
fn sifting_limit(z: f64) -> Result<u64> {
    if z.is_nan() || z < 2.0 {
        return Err(invalid(format!("z must be at least 2, got {z}")));
    }
    Ok(z.ceil() as u64)
}

/// `phi_r(tau) V(z, omega) X` plus or minus `sum |R_d|` over `rho_r(d) = 1`, `beta = 2`.
///
/// The reported bound is relaxed by `1 + epsilon` toward the safe side: the
/// asymptotic main term carries an unquantified `o(1)`. `raw_bound` keeps the
/// unrelaxed value.
pub fn linear_sieve_bound(
    problem: &SieveProblem,
    z: f64,
    level: f64,
    parity: u8,
    epsilon: f64,
    table: &SieveFunctionTable,
) -> Result<BoundReport> {
    let zi = sifting_limit(z)?;
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(invalid("epsilon must be non-negative"));
    }
    let weights = RosserWeightTable::new(level, LINEAR_BETA, parity)?;
    let tau = level.ln() / z.ln();
    let phi = table.eval(parity, tau);
    let v: f64 = density_product(&problem.density, zi);
    let x = rational_to_f64(&problem.x_scale);
    let main = phi * v * x;

    let counts = ClassCounts::new(problem, zi)?;
    let mut remainder = Rational::zero();
    let mut terms = 0u64;
    for_each_weighted_divisor(&primes_below(zi), &weights, |d, kind| {
        if kind == WeightKind::Rho {
            let r = big(counts.count(d)?) - problem.main_term(d);
            remainder += r.abs();
            terms += 1;
        }
        Ok(())
    })?;
    let remainder = rational_to_f64(&remainder);
    let (raw, relaxed) = if parity == 1 {
        let b = main + remainder;
        (b, b * (1.0 + epsilon))
    } else {
        let b = main - remainder;
        (b, if b > 0.0 { b / (1.0 + epsilon) } else { b })
    };
    let kappa = dimension_fit(&problem.density, 10, 10_000).unwrap_or(f64::NAN);
    let exact = problem.exact_sift(zi)?;
    let near_linear = (kappa - 1.0).abs() <= 0.3;
    Ok(BoundReport::float(
        Method::Rosser,
        problem.descriptor(),
        BoundParams {
            z: Some(z),
            level: Some(level),
            beta: Some(LINEAR_BETA),
            ell: None,
            parity: Some(parity),
        },
        direction(parity),
        main,
        remainder,
        relaxed,
        exact,
    )
    .with_extra("raw_bound", raw)
    .with_extra("epsilon", epsilon)
    .with_extra("tau", tau)
    .with_extra("phi", phi)
    .with_extra("V", v)
    .with_extra("rho_terms", terms as f64)
    .with_extra("kappa_fit", kappa)
    .with_extra("dimension_warning", f64::from(u8::from(!near_linear))))
}

/// The parity example `B^(r) = {n < x : Omega(n) = r mod 2}` sifted to `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParityReport {
    pub x: u64,
    pub z: u64,
    pub parity: u8,
    /// `|S(B^(r), z)|`.
    pub sifted: u64,
    /// `sum_{d | P(z)} mu(d) rho_r(d) |B_d|` with `beta = 2`, `D = x`.
    pub rosser_sum: i64,
    pub identity_holds: bool,
    /// `sigma_r` members `d < x`: each contributes the element `d` itself.
    pub sigma_members_below_x: u64,
    /// `(x / 2) phi_r(log x / log z) V(z, 1)`.
    pub main_shape: f64,
    pub ratio: f64,
}

/// Checks Rosser's sum against the sifted count for `B^(r)`.
pub fn parity_extremal(x: u64, z: u64, parity: u8, table: &SieveFunctionTable) -> Result<ParityReport> {
    if x > PARITY_X_MAX {
        return Err(crate::SieveError::BudgetExceeded {
            what: "parity example size",
            requested: x as u128,
            cap: PARITY_X_MAX as u128,
        });
    }
    if z < 2 {
        return Err(invalid("z must be at least 2"));
    }
    let problem = ProblemSpec::Parity { x, r: parity }.build()?;
    let counter = SiftCounter::new(&problem, z)?;
    let weights = RosserWeightTable::new(x as f64, LINEAR_BETA, parity)?;
    let mut rosser_sum = 0i64;
    let mut sigma_small = 0u64;
    for_each_weighted_divisor(counter.primes(), &weights, |d, kind| {
        match kind {
            WeightKind::Rho => {
                let c = counter.divisible(counter.mask_of(d)) as i64;
                rosser_sum += if d.len() % 2 == 0 { c } else { -c };
            }
            WeightKind::Sigma => {
                if d.iter()
                    .try_fold(1u64, |acc, &p| acc.checked_mul(p))
                    .is_some_and(|v| v < x)
                {
                    sigma_small += 1;
                }
            }
        }
        Ok(())
    })?;
    let sifted = counter.sifted(0, z);
    let tau = (x as f64).ln() / (z as f64).ln();
    let v: f64 = density_product(&SiftingDensity::unit(), z);
    let main_shape = x as f64 / 2.0 * table.eval(parity, tau) * v;
    Ok(ParityReport {
        x,
        z,
        parity,
        sifted,
        rosser_sum,
        identity_holds: sifted as i64 == rosser_sum,
        sigma_members_below_x: sigma_small,
        main_shape,
        ratio: sifted as f64 / main_shape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rosser::solve_sieve_functions;

    #[test]
    fn parity_examples() {
        let t = solve_sieve_functions(20.0, 1e-3).unwrap();
        for r in 0..2 {
            let trivial = parity_extremal(1000, 2, r, &t).unwrap();
            assert!(trivial.identity_holds);
            let rep = parity_extremal(100_000, 10, r, &t).unwrap();
            assert!(rep.identity_holds, "{rep:?}");
        }
    }

    #[test]
    fn progression_upper() {
        let t = solve_sieve_functions(20.0, 1e-3).unwrap();
        let x = 100_000u64;
        let p = ProblemSpec::Progression { x, k: 3, l: 1, y: None }.build().unwrap();
        let xf = x as f64;
        let r = linear_sieve_bound(&p, xf.powf(0.1), xf.sqrt(), 1, DEFAULT_EPSILON, &t).unwrap();
        assert!(r.is_valid());
        let table = crate::arith::PrimeTable::new(x).unwrap();
        let pi = crate::arith::pi_count(&table, x, crate::arith::PiVariant::Progression { k: 3, l: 1 }).unwrap();
        assert!(r.bound >= pi as f64);
    }

    #[test]
    fn lower_bound_main_term() {
        let t = solve_sieve_functions(20.0, 1e-3).unwrap();
        let p = ProblemSpec::ShiftedPrime { x: 100_000 }.build().unwrap();
        let r = linear_sieve_bound(&p, 10.0, 100_000f64.sqrt(), 0, DEFAULT_EPSILON, &t).unwrap();
        assert!(r.extras["tau"] > 2.0 && r.main > 0.0);
        assert!(r.is_valid());
        let flat = linear_sieve_bound(&p, 400.0, 400.0, 0, DEFAULT_EPSILON, &t).unwrap();
        assert_eq!(flat.main, 0.0);
        assert!(flat.is_valid());
    }
}
