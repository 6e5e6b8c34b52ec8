use num_traits::Zero;

use super::{for_each_weighted_divisor, RosserWeightTable, WeightKind};
use crate::arith::{primes_below, FactoredSquarefree};
use crate::error::{invalid, Result};
use crate::legendre::density_product;
use crate::problem::{SieveProblem, SiftCounter};
use crate::Rational;

/// Both sides of the Buchstab identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchstabReport {
    /// `|S(A, z)|`.
    pub lhs: u64,
    /// `|S(A, z0)|`.
    pub initial: u64,
    /// `sum_{z0 <= p < z} |S(A_p, p)|`.
    pub removed: u64,
    pub holds: bool,
}

fn check_range(z0: u64, z: u64) -> Result<()> {
    if !(2 <= z0 && z0 <= z) {
        return Err(invalid(format!("need 2 <= z0 <= z, got z0={z0}, z={z}")));
    }
    Ok(())
}

/// `|S(A, z)| = |S(A, z0)| - sum_{z0 <= p < z} |S(A_p, p)|`.
pub fn buchstab_check(problem: &SieveProblem, z0: u64, z: u64) -> Result<BuchstabReport> {
    check_range(z0, z)?;
    let counter = SiftCounter::new(problem, z)?;
    let lhs = problem.exact_sift(z)?;
    let initial = counter.sifted(0, z0);
    let removed = counter
        .primes()
        .iter()
        .filter(|&&p| p >= z0)
        .map(|&p| counter.sifted(counter.mask_of(&[p]), p))
        .sum();
    Ok(BuchstabReport {
        lhs,
        initial,
        removed,
        holds: initial >= removed && lhs == initial - removed,
    })
}

/// Rosser's decomposition of `|S(A, z)|` and of `V(z, omega)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RosserIdentity {
    pub lhs: u64,
    /// `sum mu(d) rho_r(d) |S(A_d, z0)|`.
    pub rho_sum: i64,
    /// `sum sigma_r(d) |S(A_d, p(d))|`.
    pub sigma_sum: u64,
    pub rho_terms: u64,
    pub sigma_terms: u64,
    /// `lhs = rho_sum + (-1)^r sigma_sum`.
    pub identity_holds: bool,
    /// `(-1)^r (lhs - rho_sum) >= 0`.
    pub one_sided_holds: bool,
    /// The density-product analogue, in exact arithmetic.
    pub v_identity_holds: bool,
    /// `V(z0) V_0(z; rho_r)`.
    pub v_main: Rational,
    pub v_exact: Rational,
}

/// Evaluates both sides of Rosser's identity with the oracle counts.
pub fn rosser_identity(problem: &SieveProblem, z0: u64, z: u64, weights: &RosserWeightTable) -> Result<RosserIdentity> {
    check_range(z0, z)?;
    let counter = SiftCounter::new(problem, z)?;
    let lhs = problem.exact_sift(z)?;
    let range: Vec<u64> = primes_below(z).into_iter().filter(|&p| p >= z0).collect();
    let density = &problem.density;
    let mut rho_sum = 0i64;
    let mut sigma_sum = 0u64;
    let mut rho_terms = 0;
    let mut sigma_terms = 0;
    let mut v0 = Rational::zero();
    let mut v_sigma = Rational::zero();
    for_each_weighted_divisor(&range, weights, |d, kind| {
        let mask = counter.mask_of(d);
        match kind {
            WeightKind::Rho => {
                let c = counter.sifted(mask, z0) as i64;
                let ratio = density.ratio_of(d);
                if d.len() % 2 == 0 {
                    rho_sum += c;
                    v0 += ratio;
                } else {
                    rho_sum -= c;
                    v0 -= ratio;
                }
                rho_terms += 1;
            }
            WeightKind::Sigma => {
                let least = *d.last().expect("sigma never holds at d = 1");
                sigma_sum += counter.sifted(mask, least);
                v_sigma += density.ratio_of(d) * density_product::<Rational>(density, least);
                sigma_terms += 1;
            }
        }
        Ok(())
    })?;
    let sign: i64 = if weights.parity == 0 { 1 } else { -1 };
    let identity_holds = lhs as i64 == rho_sum + sign * sigma_sum as i64;
    let one_sided_holds = sign * (lhs as i64 - rho_sum) >= 0;
    let v_exact = density_product::<Rational>(density, z);
    let v_main = density_product::<Rational>(density, z0) * &v0;
    let v_rhs = if weights.parity == 0 {
        &v_main + &v_sigma
    } else {
        &v_main - &v_sigma
    };
    Ok(RosserIdentity {
        lhs,
        rho_sum,
        sigma_sum,
        rho_terms,
        sigma_terms,
        identity_holds,
        one_sided_holds,
        v_identity_holds: v_rhs == v_exact,
        v_main,
        v_exact,
    })
}

/// Outcome of the truncation inequalities over all weighted `d | P(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    pub rho_members: u64,
    pub sigma_members: u64,
    pub rho_failures: u64,
    pub sigma_failures: u64,
}

impl TruncationReport {
    pub fn holds(&self) -> bool {
        self.rho_failures == 0 && self.sigma_failures == 0
    }
}

/// For `z^2 <= D`: `(1/2) c^(nu/2) log D < log(D/d)` on `rho_r` members and
/// `(1/2) c^((nu-1)/2) log D < log(D/d) + log p(d) <= (beta+1) log p(d)` on
/// `sigma_r` members, where `c = (beta - 1) / (beta + 1)`.
pub fn truncation_inequality_check(level: f64, beta: f64, parity: u8, z: u64) -> Result<TruncationReport> {
    if (z as f64) * (z as f64) > level {
        return Err(invalid(format!("need z^2 <= D, got z={z}, D={level}")));
    }
    let weights = RosserWeightTable::new(level, beta, parity)?;
    let c = (beta - 1.0) / (beta + 1.0);
    let log_d = level.ln();
    let mut report = TruncationReport {
        rho_members: 0,
        sigma_members: 0,
        rho_failures: 0,
        sigma_failures: 0,
    };
    for_each_weighted_divisor(&primes_below(z), &weights, |d, kind| {
        let nu = d.len() as f64;
        let log_ratio = log_d - d.iter().map(|&p| (p as f64).ln()).sum::<f64>();
        match kind {
            WeightKind::Rho => {
                report.rho_members += 1;
                if 0.5 * c.powf(nu / 2.0) * log_d >= log_ratio {
                    report.rho_failures += 1;
                }
            }
            WeightKind::Sigma => {
                report.sigma_members += 1;
                let lp = (*d.last().expect("nonempty") as f64).ln();
                let left = 0.5 * c.powf((nu - 1.0) / 2.0) * log_d;
                if !(left < log_ratio + lp && log_ratio + lp <= (beta + 1.0) * lp * (1.0 + 1e-12)) {
                    report.sigma_failures += 1;
                }
            }
        }
        Ok(())
    })?;
    Ok(report)
}

/// Exhaustive comparison of the chain and set descriptions for squarefree `d < limit`.
pub fn chain_agreement(limit: u64, level: f64, beta: f64) -> Result<u64> {
    let mut mismatches = 0;
    for r in 0..2 {
        let w = RosserWeightTable::new(level, beta, r)?;
        for n in 1..limit {
            if let Ok(d) = FactoredSquarefree::factor(n) {
                if w.chain(&d) != (w.rho_closed(&d), w.sigma_closed(&d)) {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(mismatches)
}
