use num_complex::Complex64;

use super::{e_real, InequalityCheck, INEQUALITY_SLACK};
use crate::error::{invalid, Result};

/// Both sides of the residue-class energy identity and the derived inequality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinnikIdentity {
    /// `sum_{a=1}^{p-1} |U(theta + a/p)|^2`.
    pub lhs: f64,
    /// `p sum_a |U(theta; p, a)|^2 - |U(theta)|^2`.
    pub rhs: f64,
    pub relative_error: f64,
    pub identity_holds: bool,
    /// Residue classes mod `p` not met by the support.
    pub empty_classes: u64,
    /// `|U(theta)|^2 e / (p - e) <= lhs` with `e` the empty classes.
    pub inequality: InequalityCheck,
}

/// Relative tolerance for the complex identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

/// Evaluates the identity for `U(theta) = sum_{M <= n < M + N} w(n) e(n theta)`.
pub fn linnik_identity_check(m: i64, weights: &[i64], p: u64, theta: f64) -> Result<LinnikIdentity> {
    if p < 2 {
        return Err(invalid("p must be at least 2"));
    }
    let pi = p as i64;
    let base: Vec<Complex64> = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let n = m + i as i64;
            e_real::<f64>((n as f64 * theta).rem_euclid(1.0)) * w as f64
        })
        .collect();
    let mut by_class = vec![Complex64::new(0.0, 0.0); p as usize];
    let mut met = vec![false; p as usize];
    for (i, v) in base.iter().enumerate() {
        let a = (m + i as i64).rem_euclid(pi) as usize;
        by_class[a] += v;
        met[a] |= weights[i] != 0;
    }
    let u0: Complex64 = by_class.iter().sum();
    let class_energy: f64 = by_class.iter().map(|c| c.norm_sqr()).sum();
    let rhs = p as f64 * class_energy - u0.norm_sqr();
    let mut lhs = 0.0;
    for a in 1..p {
        let mut s = Complex64::new(0.0, 0.0);
        for (j, c) in by_class.iter().enumerate() {
            s += c * e_real::<f64>(((j as u64 * a) % p) as f64 / p as f64);
        }
        lhs += s.norm_sqr();
    }
    let scale = (p as f64 * class_energy).max(lhs).max(f64::MIN_POSITIVE);
    let relative_error = (lhs - rhs).abs() / scale;
    let empty = met.iter().filter(|&&x| !x).count() as u64;
    let left = if empty == p {
        0.0
    } else {
        u0.norm_sqr() * empty as f64 / (p - empty) as f64
    };
    Ok(LinnikIdentity {
        lhs,
        rhs,
        relative_error,
        identity_holds: relative_error <= IDENTITY_TOLERANCE,
        empty_classes: empty,
        inequality: InequalityCheck::new(left, lhs, INEQUALITY_SLACK),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_indicator() {
        let r = linnik_identity_check(0, &[0; 20], 5, 0.3).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.identity_holds && r.inequality.holds);
    }

    #[test]
    fn full_period_kills_nonzero_frequencies() {
        let p = 7;
        let r = linnik_identity_check(0, &[1; 7], p, 0.0).unwrap();
        assert!(r.lhs.abs() < 1e-20_f64.max(1e-12));
        assert!(r.rhs.abs() < 1e-12);
    }

    #[test]
    fn sifted_interval() {
        let w: Vec<i64> = (0..100i64)
            .map(|n| i64::from([2, 3, 5].iter().all(|p| n % p != 0)))
            .collect();
        for p in [2, 3, 5] {
            let r = linnik_identity_check(0, &w, p, 0.123).unwrap();
            assert!(r.identity_holds);
            assert!(r.empty_classes >= 1);
            assert!(r.inequality.holds);
        }
    }
}
