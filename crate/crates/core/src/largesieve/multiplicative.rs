use num_complex::Complex64;

use super::{e_frac, CharacterTable, InequalityCheck, INEQUALITY_SLACK};
use crate::arith::totient;
use crate::error::{invalid, Result};

/// Character tables for every modulus `q < Q`.
#[derive(Clone, Debug)]
pub struct CharacterFamily {
    pub big_q: u64,
    pub tables: Vec<CharacterTable>,
}

impl CharacterFamily {
    pub fn new(big_q: u64) -> Result<Self> {
        if big_q < 2 {
            return Err(invalid(format!("Q must be at least 2, got {big_q}")));
        }
        let tables = (1..big_q).map(CharacterTable::new).collect::<Result<_>>()?;
        Ok(CharacterFamily { big_q, tables })
    }

    /// `sum_{q < Q} (q / phi(q)) sum*_chi |sum_n a_n chi(n)|^2`.
    ///
    /// The trivial character mod 1 counts as primitive.
    pub fn lhs(&self, m: i64, coeffs: &[Complex64]) -> f64 {
        let mut total = 0.0;
        for t in &self.tables {
            let q = t.q as i64;
            let mut folded = vec![Complex64::new(0.0, 0.0); t.q as usize];
            for (i, a) in coeffs.iter().enumerate() {
                folded[(m + i as i64).rem_euclid(q) as usize] += a;
            }
            let weight = t.q as f64 / totient(t.q) as f64;
            for chi in t.primitive() {
                let s: Complex64 = folded
                    .iter()
                    .enumerate()
                    .map(|(n, c)| c * chi.value(n as i64, t.exponent))
                    .sum();
                total += weight * s.norm_sqr();
            }
        }
        total
    }

    /// The same sum expanded through additive characters:
    /// `|sum a_n chi(n)|^2 = (1/q) |sum_b conj(chi(b)) S(b/q)|^2` for primitive `chi`.
    pub fn lhs_via_additive(&self, m: i64, coeffs: &[Complex64]) -> f64 {
        let mut total = 0.0;
        for t in &self.tables {
            let q = t.q;
            let mut folded = vec![Complex64::new(0.0, 0.0); q as usize];
            for (i, a) in coeffs.iter().enumerate() {
                folded[(m + i as i64).rem_euclid(q as i64) as usize] += a;
            }
            let additive: Vec<Complex64> = (0..q)
                .map(|b| {
                    folded
                        .iter()
                        .enumerate()
                        .map(|(j, c)| c * e_frac::<f64>(j as u64 * b % q, q))
                        .sum()
                })
                .collect();
            let weight = q as f64 / totient(q) as f64;
            for chi in t.primitive() {
                let s: Complex64 = additive
                    .iter()
                    .enumerate()
                    .map(|(b, sb)| chi.value(b as i64, t.exponent).conj() * sb)
                    .sum();
                total += weight * s.norm_sqr() / q as f64;
            }
        }
        total
    }

    /// The multiplicative large-sieve inequality with constant `N - 1 + Q^2`.
    pub fn check(&self, m: i64, coeffs: &[Complex64]) -> InequalityCheck {
        let energy: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        let n = coeffs.len() as f64;
        let q = self.big_q as f64;
        InequalityCheck::new(self.lhs(m, coeffs), (n - 1.0 + q * q) * energy, INEQUALITY_SLACK)
    }
}

/// One-shot form of [`CharacterFamily::check`].
pub fn multiplicative_ls_check(big_q: u64, m: i64, coeffs: &[Complex64]) -> Result<InequalityCheck> {
    Ok(CharacterFamily::new(big_q)?.check(m, coeffs))
}

/// Largest `|chi(n) tau(conj chi) - sum_b conj(chi(b)) e(bn/q)|` over primitive `chi` and all `n`.
pub fn gauss_reduction_error(table: &CharacterTable) -> f64 {
    let q = table.q;
    let mut worst = 0.0f64;
    for chi in table.primitive() {
        let tau_conj: Complex64 = (0..q as i64)
            .map(|b| chi.value(b, table.exponent).conj() * e_frac::<f64>(b as u64, q))
            .sum();
        for n in 0..q {
            let expanded: Complex64 = (0..q)
                .map(|b| chi.value(b as i64, table.exponent).conj() * e_frac::<f64>(b * n % q, q))
                .sum();
            let direct = chi.value(n as i64, table.exponent) * tau_conj;
            worst = worst.max((direct - expanded).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;

    #[test]
    fn zero_coefficients() {
        let r = multiplicative_ls_check(5, 0, &[Complex64::new(0.0, 0.0); 10]).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.holds);
    }

    #[test]
    fn only_trivial_modulus_at_q2() {
        let a: Vec<Complex64> = (0..10).map(|i| Complex64::new(i as f64, 0.0)).collect();
        let r = multiplicative_ls_check(2, 0, &a).unwrap();
        assert!((r.lhs - 45.0f64.powi(2)).abs() < 1e-9);
    }

    #[test]
    fn prime_indicator() {
        let primes = primes_up_to(1000).unwrap();
        let mut a = vec![Complex64::new(0.0, 0.0); 1000];
        for &p in primes.primes() {
            a[p as usize] = Complex64::new(1.0, 0.0);
        }
        let r = multiplicative_ls_check(10, 0, &a).unwrap();
        assert!(r.holds);
        assert!(r.ratio > 0.0);
    }

    #[test]
    fn additive_expansion_agrees() {
        let fam = CharacterFamily::new(21).unwrap();
        let a: Vec<Complex64> = (0..60)
            .map(|i| Complex64::new((i as f64 * 0.7).cos(), (i as f64 * 0.3).sin()))
            .collect();
        let x = fam.lhs(-7, &a);
        let y = fam.lhs_via_additive(-7, &a);
        assert!((x - y).abs() <= 1e-9 * x.max(1.0));
        for t in &fam.tables {
            assert!(gauss_reduction_error(t) < 1e-9);
        }
    }
}
