use num_complex::Complex64;

use super::{InequalityCheck, INEQUALITY_SLACK};
use crate::error::{invalid, Result};

/// `<u, v> = sum u_i conj(v_i)`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// `sum_m |<psi, psi_m>|^2 / sum_n |<psi_m, psi_n>| <= <psi, psi>`.
pub fn hilbert_ls_check(family: &[Vec<Complex64>], psi: &[Complex64]) -> Result<InequalityCheck> {
    if family.is_empty() {
        return Err(invalid("empty vector family"));
    }
    for v in family {
        if v.len() != psi.len() {
            return Err(invalid("dimension mismatch"));
        }
        if v.iter().all(|c| c.norm_sqr() == 0.0) {
            return Err(invalid("zero vector in family"));
        }
    }
    let mut lhs = 0.0;
    for m in family {
        let denom: f64 = family.iter().map(|n| inner(m, n).norm()).sum();
        lhs += inner(psi, m).norm_sqr() / denom;
    }
    let rhs = inner(psi, psi).re;
    Ok(InequalityCheck::new(lhs, rhs, INEQUALITY_SLACK))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_vector_is_equality() {
        let psi = vec![c(1.0, 2.0), c(-0.5, 0.25), c(3.0, 0.0)];
        let r = hilbert_ls_check(std::slice::from_ref(&psi), &psi).unwrap();
        assert!((r.lhs - r.rhs).abs() < 1e-12 * r.rhs);
        assert!(r.holds);
    }

    #[test]
    fn orthonormal_family_is_bessel() {
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let e2 = vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)];
        let psi = vec![c(2.0, 0.0), c(1.0, 1.0), c(5.0, 0.0)];
        let r = hilbert_ls_check(&[e1, e2], &psi).unwrap();
        assert!((r.lhs - 6.0).abs() < 1e-12);
        assert!((r.rhs - 31.0).abs() < 1e-12);
    }

    #[test]
    fn zero_vector_rejected() {
        let z = vec![c(0.0, 0.0); 2];
        assert!(hilbert_ls_check(&[z], &[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }
}
