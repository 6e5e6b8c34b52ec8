use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::Zero;

use super::weights::{g_sum, optimal_lambda, quadratic_form, squarefree_table, LambdaWeights};
use crate::arith::{mobius, primes_below};
use crate::error::{invalid, Result, SieveError};
use crate::largesieve::{dual_ls_check, dual_sums, e_frac, farey_fractions, SeparatedPoints};
use crate::problem::{crt_classes, OmegaForm, ResidueSystem, SieveProblem, ENUMERATION_CAP};
use crate::report::{BoundParams, BoundReport, Direction, Method};
use crate::scalar::{big, rational_to_f64};
use crate::{Rational, Scalar};

/// Largest `z` for which the dual double sum is also evaluated exactly.
pub const EXACT_DUAL_Z_CAP: u64 = 64;
/// Cap on `N z` for the explicit energy step of the dual route.
pub const ENERGY_BUDGET: u64 = 20_000_000;

const SEGMENT: u64 = 1 << 16;

/// Multiplicities of `{p < z : n in Omega(p)}` (as prime indices) over the interval.
pub(crate) fn omega_profile(form: &OmegaForm, primes: &[u64]) -> Result<HashMap<Vec<u32>, u64>> {
    if form.len > ENUMERATION_CAP {
        return Err(SieveError::BudgetExceeded {
            what: "interval length",
            requested: form.len as u128,
            cap: ENUMERATION_CAP as u128,
        });
    }
    let classes: Vec<Vec<u64>> = primes.iter().map(|&p| form.residues.classes(p)).collect();
    let mut hist: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut seg_start = 0u64;
    while seg_start < form.len {
        let seg_len = SEGMENT.min(form.len - seg_start);
        let base = form.start + seg_start as i64;
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); seg_len as usize];
        for (i, (&p, cs)) in primes.iter().zip(&classes).enumerate() {
            for &c in cs {
                let first = (c as i64 - base).rem_euclid(p as i64) as u64;
                let mut j = first;
                while j < seg_len {
                    lists[j as usize].push(i as u32);
                    j += p;
                }
            }
        }
        for l in lists {
            *hist.entry(l).or_insert(0) += 1;
        }
        seg_start += seg_len;
    }
    Ok(hist)
}

/// `Lambda(n) = sum_{d < z, n in Omega(d)} lambda(d)` for `n` hitting exactly the listed primes.
pub(crate) fn big_lambda<S: Scalar>(weights: &LambdaWeights<S>, primes: &[u64], hit: &[u32]) -> S {
    fn rec<S: Scalar>(w: &LambdaWeights<S>, ps: &[u64], hit: &[u32], from: usize, d: u64, acc: &mut S) {
        for i in from..hit.len() {
            let next = d * ps[hit[i] as usize];
            if next >= w.z {
                // Indices ascend with the primes, so later ones are larger too.
                break;
            }
            *acc = acc.clone() + w.get(next);
            rec(w, ps, hit, i + 1, next, acc);
        }
    }
    let mut acc = weights.get(1);
    rec(weights, primes, hit, 0, 1, &mut acc);
    acc
}

/// `(sum_{d < z} |Omega(d)|)^2`.
pub fn crude_remainder(z: u64, residues: &ResidueSystem) -> Result<u128> {
    let s: u128 = squarefree_table(z, residues)?.iter().map(|e| e.omega as u128).sum();
    Ok(s * s)
}

/// Pieces of the Selberg upper bound in scalar `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct SelbergTally<S> {
    pub weights: LambdaWeights<S>,
    /// `N / G`.
    pub main: S,
    /// `sum_n Lambda(n)^2`, the bound with the remainder counted exactly.
    pub sum_squares: S,
}

/// Optimal weights and `sum_n Lambda(n)^2` over the interval.
pub fn selberg_tally<S: Scalar>(form: &OmegaForm, z: u64) -> Result<SelbergTally<S>> {
    if z < 2 {
        return Err(invalid("z must be at least 2"));
    }
    let weights = optimal_lambda::<S>(z, &form.residues)?;
    let primes = primes_below(z);
    let hist = omega_profile(form, &primes)?;
    let mut total = S::zero();
    for (hit, count) in &hist {
        let l = big_lambda(&weights, &primes, hit);
        total = total + l.clone() * l * S::from_u64(*count);
    }
    let main = S::from_u64(form.len) / weights.g.clone();
    Ok(SelbergTally {
        weights,
        main,
        sum_squares: total,
    })
}

fn params(z: u64) -> BoundParams {
    BoundParams {
        z: Some(z as f64),
        ..BoundParams::default()
    }
}

/// `N / G + R` in exact arithmetic; `crude` swaps the exact `R` for `(sum |Omega(d)|)^2`.
pub fn selberg_upper_bound(problem: &SieveProblem, z: u64, crude: bool) -> Result<BoundReport> {
    let form = problem.omega_form()?;
    let tally = selberg_tally::<Rational>(form, z)?;
    let exact_remainder = &tally.sum_squares - &tally.main;
    let remainder = if crude {
        Rational::from_integer(crude_remainder(z, &form.residues)?.into())
    } else {
        exact_remainder.clone()
    };
    let bound = &tally.main + &remainder;
    let exact = problem.exact_sift(z)?;
    Ok(BoundReport::exact(
        Method::Selberg,
        problem.descriptor(),
        params(z),
        Direction::Upper,
        &tally.main,
        &remainder,
        &bound,
        exact,
    )
    .with_extra("G", rational_to_f64(&tally.weights.g))
    .with_extra("exact_remainder", rational_to_f64(&exact_remainder)))
}

/// Double-precision variant of [`selberg_upper_bound`] for large `z`.
pub fn selberg_upper_bound_f64(problem: &SieveProblem, z: u64, crude: bool) -> Result<BoundReport> {
    let form = problem.omega_form()?;
    let tally = selberg_tally::<f64>(form, z)?;
    let exact_remainder = tally.sum_squares - tally.main;
    let remainder = if crude {
        crude_remainder(z, &form.residues)? as f64
    } else {
        exact_remainder
    };
    let exact = problem.exact_sift(z)?;
    Ok(BoundReport::float(
        Method::Selberg,
        problem.descriptor(),
        params(z),
        Direction::Upper,
        tally.main,
        remainder,
        tally.main + remainder,
        exact,
    )
    .with_extra("G", tally.weights.g)
    .with_extra("exact_remainder", exact_remainder))
}

/// `c_q(m) = sum_{u | (q, m)} u mu(q / u)`.
pub fn ramanujan_sum(q: u64, m: i64) -> i64 {
    let m = m.unsigned_abs();
    (1..=q)
        .filter(|u| q % u == 0 && m % u == 0)
        .map(|u| u as i64 * mobius(q / u))
        .sum()
}

/// The dual double sum evaluated exactly through Ramanujan sums.
pub fn dual_double_sum_exact(weights: &LambdaWeights<Rational>, residues: &ResidueSystem) -> Result<Rational> {
    let table = squarefree_table(weights.z, residues)?;
    let active: Vec<_> = table
        .iter()
        .filter(|e| e.omega > 0 && !weights.get(e.d).is_zero())
        .map(|e| (e, weights.get(e.d), crt_classes(&e.primes, residues).1))
        .collect();
    let mut total = Rational::zero();
    for (a, la, ha) in &active {
        for (b, lb, hb) in &active {
            let g = num_integer::gcd(a.d, b.d);
            let divisors: Vec<u64> = (1..=g).filter(|q| g % q == 0).collect();
            let mut inner: i128 = 0;
            for &h1 in ha {
                for &h2 in hb {
                    let diff = h1 as i128 - h2 as i128;
                    for &q in &divisors {
                        inner += ramanujan_sum(q, (diff % q as i128) as i64) as i128;
                    }
                }
            }
            if inner != 0 {
                total += la * lb * Rational::from_integer(inner.into()) / big(a.d * b.d);
            }
        }
    }
    Ok(total)
}

/// `b(a/q) = sum_{d < z, q | d} (lambda(d) / d) sum_{h in Omega(d)} e(-a h / q)` over `q < z`.
pub fn dual_coefficients(
    weights: &LambdaWeights<f64>,
    residues: &ResidueSystem,
    fractions: &[(u64, u64)],
) -> Result<Vec<Complex64>> {
    let table = squarefree_table(weights.z, residues)?;
    let classes: Vec<(u64, f64, Vec<u128>)> = table
        .iter()
        .filter(|e| e.omega > 0)
        .map(|e| (e.d, weights.get(e.d) / e.d as f64, crt_classes(&e.primes, residues).1))
        .collect();
    Ok(fractions
        .iter()
        .map(|&(a, q)| {
            let mut s = Complex64::new(0.0, 0.0);
            for (_, w, hs) in classes.iter().filter(|(d, _, _)| d % q == 0) {
                let inner: Complex64 = hs
                    .iter()
                    .map(|&h| e_frac::<f64>((q - (h % q as u128) as u64 * a % q) % q, q))
                    .sum();
                s += inner * *w;
            }
            s
        })
        .collect())
}

/// Points `a / q` with `q < z`.
pub fn dual_points(z: u64) -> Result<SeparatedPoints> {
    if z == 2 {
        return SeparatedPoints::from_fractions(vec![(0, 1)]);
    }
    let order = z - 1;
    let fractions = farey_fractions(order);
    Ok(SeparatedPoints {
        points: fractions.iter().map(|&(a, q)| a as f64 / q as f64).collect(),
        delta: 1.0 / (order * (order - 1)) as f64,
        fractions: Some(fractions),
    })
}

/// `(N + z^2) / G`, reached through the dual route.
///
/// Checks on the way: `sum |b|^2 = S` in floating point, the exact double sum
/// through Ramanujan sums for `z <= 64`, and for `N z` within budget the energy
/// `sum_n |sum b e(n a / q)|^2 = sum_n Lambda(n)^2` with the dual inequality.
pub fn linnik_bound(problem: &SieveProblem, z: u64) -> Result<BoundReport> {
    if z < 2 {
        return Err(invalid("z must be at least 2"));
    }
    let form = problem.omega_form()?;
    let residues = &form.residues;
    let n = form.len;
    let g = g_sum(z, residues)?;
    let bound = (big(n) + big(z * z)) / &g;

    let weights = optimal_lambda::<f64>(z, residues)?;
    let s = quadratic_form(&weights, residues)?;
    let points = dual_points(z)?;
    let fractions = points.fractions.clone().expect("fractions");
    let b = dual_coefficients(&weights, residues, &fractions)?;
    let b_energy: f64 = b.iter().map(|c| c.norm_sqr()).sum();
    if !b_energy.agrees_with(&s) {
        return Err(SieveError::IdentityFailed(format!(
            "dual coefficients: sum |b|^2 = {b_energy} but S = {s}"
        )));
    }

    let mut report_extras = vec![("G", rational_to_f64(&g)), ("S", s), ("dual_energy", b_energy)];
    if z <= EXACT_DUAL_Z_CAP {
        let exact_weights = optimal_lambda::<Rational>(z, residues)?;
        let dual = dual_double_sum_exact(&exact_weights, residues)?;
        let direct = quadratic_form(&exact_weights, residues)?;
        if dual != direct {
            return Err(SieveError::IdentityFailed(
                "exact dual double sum differs from S".into(),
            ));
        }
        report_extras.push(("exact_dual_checked", 1.0));
    } else {
        report_extras.push(("exact_dual_checked", 0.0));
    }
    if n.saturating_mul(z) <= ENERGY_BUDGET {
        let values = dual_sums(&points, form.start, n as usize, &b);
        let energy: f64 = values.iter().map(|c| c.norm_sqr()).sum();
        let primes = primes_below(z);
        let hist = omega_profile(form, &primes)?;
        let squares: f64 = hist
            .iter()
            .map(|(hit, c)| big_lambda(&weights, &primes, hit).powi(2) * *c as f64)
            .sum();
        if !energy.agrees_with(&squares) {
            return Err(SieveError::IdentityFailed(format!(
                "dual energy {energy} differs from sum of Lambda^2 {squares}"
            )));
        }
        let ineq = dual_ls_check(&points, form.start, n as usize, &b);
        if !ineq.holds {
            return Err(SieveError::IdentityFailed(
                "dual large-sieve inequality violated".into(),
            ));
        }
        report_extras.push(("energy", energy));
        report_extras.push(("energy_checked", 1.0));
    } else {
        report_extras.push(("energy_checked", 0.0));
    }

    let exact = problem.exact_sift(z)?;
    let mut report = BoundReport::exact(
        Method::Linnik,
        problem.descriptor(),
        params(z),
        Direction::Upper,
        &bound,
        &Rational::zero(),
        &bound,
        exact,
    );
    for (k, v) in report_extras {
        report = report.with_extra(k, v);
    }
    Ok(report)
}
