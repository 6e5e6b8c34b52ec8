use num_complex::Complex;
use num_traits::{Float, FloatConst};
use serde::{Deserialize, Serialize};

use super::SeparatedPoints;

/// Relative slack granted to an inequality before it counts as violated.
pub const INEQUALITY_SLACK: f64 = 1e-12;

/// `lhs <= rhs`, with the ratio `lhs / rhs` (0 when both vanish).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub holds: bool,
}

impl InequalityCheck {
    /// Compares with relative slack `slack`.
    pub fn new(lhs: f64, rhs: f64, slack: f64) -> Self {
        let ratio = if rhs == 0.0 && lhs == 0.0 { 0.0 } else { lhs / rhs };
        InequalityCheck {
            lhs,
            rhs,
            ratio,
            holds: lhs <= rhs + slack * rhs.abs().max(lhs.abs()).max(1.0),
        }
    }
}

/// Slack appropriate for the precision of `F`.
pub fn slack_for<F: Float>() -> f64 {
    INEQUALITY_SLACK.max(64.0 * F::epsilon().to_f64().unwrap_or(f64::EPSILON))
}

pub(crate) fn cast<F: Float>(x: f64) -> F {
    F::from(x).expect("representable")
}

/// `e(num / den) = exp(2 pi i num / den)`.
pub fn e_frac<F: Float + FloatConst>(num: u64, den: u64) -> Complex<F> {
    let t = (num % den) as f64 / den as f64;
    e_real(t)
}

/// `e(t) = exp(2 pi i t)`.
pub fn e_real<F: Float + FloatConst>(t: f64) -> Complex<F> {
    let angle = cast::<F>(t * std::f64::consts::TAU);
    Complex::new(angle.cos(), angle.sin())
}

fn twiddles<F: Float + FloatConst>(q: u64) -> Vec<Complex<F>> {
    (0..q).map(|j| e_frac(j, q)).collect()
}

/// `sum_n a_n e(n theta_r)` for every point, `n` running over `[m, m + len)`.
pub fn exponential_sums<F: Float + FloatConst>(
    points: &SeparatedPoints,
    m: i64,
    coeffs: &[Complex<F>],
) -> Vec<Complex<F>> {
    match &points.fractions {
        Some(fr) => {
            let mut out = vec![Complex::new(F::zero(), F::zero()); fr.len()];
            let mut q_cache = 0u64;
            let mut folded = Vec::new();
            let mut tw = Vec::new();
            for (idx, &(a, q)) in fr.iter().enumerate() {
                if q != q_cache {
                    q_cache = q;
                    folded = vec![Complex::new(F::zero(), F::zero()); q as usize];
                    for (i, c) in coeffs.iter().enumerate() {
                        let j = (m + i as i64).rem_euclid(q as i64) as usize;
                        folded[j] = folded[j] + c;
                    }
                    tw = twiddles::<F>(q);
                }
                let mut s = Complex::new(F::zero(), F::zero());
                for (j, c) in folded.iter().enumerate() {
                    s = s + c * tw[(j as u64 * a % q) as usize];
                }
                out[idx] = s;
            }
            out
        }
        None => points
            .points
            .iter()
            .map(|&theta| {
                coeffs
                    .iter()
                    .enumerate()
                    .fold(Complex::new(F::zero(), F::zero()), |acc, (i, c)| {
                        let n = m + i as i64;
                        acc + c * e_real::<F>((n as f64 * theta).rem_euclid(1.0))
                    })
            })
            .collect(),
    }
}

/// `sum_r b_r e(n theta_r)` for every `n` in `[m, m + len)`.
pub fn dual_sums<F: Float + FloatConst>(
    points: &SeparatedPoints,
    m: i64,
    len: usize,
    b: &[Complex<F>],
) -> Vec<Complex<F>> {
    let zero = Complex::new(F::zero(), F::zero());
    match &points.fractions {
        Some(fr) => {
            let mut out = vec![zero; len];
            let mut start = 0;
            while start < fr.len() {
                let q = fr[start].1;
                let end = start + fr[start..].iter().take_while(|f| f.1 == q).count();
                let tw = twiddles::<F>(q);
                let mut by_residue = vec![zero; q as usize];
                for (j, slot) in by_residue.iter_mut().enumerate() {
                    for (idx, &(a, _)) in fr.iter().enumerate().take(end).skip(start) {
                        *slot = *slot + b[idx] * tw[(j as u64 * a % q) as usize];
                    }
                }
                for (i, o) in out.iter_mut().enumerate() {
                    let j = (m + i as i64).rem_euclid(q as i64) as usize;
                    *o = *o + by_residue[j];
                }
                start = end;
            }
            out
        }
        None => (0..len)
            .map(|i| {
                let n = m + i as i64;
                points.points.iter().zip(b).fold(zero, |acc, (&theta, c)| {
                    acc + c * e_real::<F>((n as f64 * theta).rem_euclid(1.0))
                })
            })
            .collect(),
    }
}

fn energy<F: Float>(v: &[Complex<F>]) -> f64 {
    v.iter().map(|c| c.norm_sqr().to_f64().unwrap_or(f64::NAN)).sum()
}

/// `sum_r |sum_n a_n e(n theta_r)|^2 <= (N - 1 + delta^{-1}) sum |a_n|^2`.
pub fn additive_ls_check<F: Float + FloatConst>(
    points: &SeparatedPoints,
    m: i64,
    coeffs: &[Complex<F>],
) -> InequalityCheck {
    let n = coeffs.len() as f64;
    let lhs = energy(&exponential_sums(points, m, coeffs));
    let rhs = (n - 1.0 + points.inverse_delta()) * energy(coeffs);
    InequalityCheck::new(lhs, rhs, slack_for::<F>())
}

/// `sum_n |sum_r b_r e(n theta_r)|^2 <= (N - 1 + delta^{-1}) sum |b_r|^2`.
pub fn dual_ls_check<F: Float + FloatConst>(
    points: &SeparatedPoints,
    m: i64,
    len: usize,
    b: &[Complex<F>],
) -> InequalityCheck {
    let lhs = energy(&dual_sums(points, m, len, b));
    let rhs = (len as f64 - 1.0 + points.inverse_delta()) * energy(b);
    InequalityCheck::new(lhs, rhs, slack_for::<F>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::largesieve::farey_points;

    #[test]
    fn zero_coefficients() {
        let pts = farey_points(5).unwrap();
        let c = vec![Complex::new(0.0f64, 0.0); 10];
        let r = additive_ls_check(&pts, 0, &c);
        assert_eq!((r.lhs, r.rhs, r.ratio), (0.0, 0.0, 0.0));
        assert!(r.holds);
    }

    #[test]
    fn constant_vector_at_zero() {
        let pts = SeparatedPoints::from_fractions(vec![(0, 1)]).unwrap();
        let n = 17usize;
        let c = vec![Complex::new(1.0f64, 0.0); n];
        let r = additive_ls_check(&pts, 3, &c);
        assert!((r.lhs - (n * n) as f64).abs() < 1e-9);
        let two = farey_points(2).unwrap();
        let r2 = additive_ls_check(&two, 0, &c);
        assert!(r2.holds);
        assert!((r2.rhs - (n as f64 - 1.0 + 2.0) * n as f64).abs() < 1e-9);
    }

    #[test]
    fn fraction_path_matches_direct_path() {
        let pts = farey_points(7).unwrap();
        let direct = SeparatedPoints::new(pts.points.clone()).unwrap();
        let c: Vec<Complex<f64>> = (0..40)
            .map(|i| Complex::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
            .collect();
        let a = exponential_sums(&pts, -5, &c);
        let b = exponential_sums(&direct, -5, &c);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-9);
        }
        let bcoef: Vec<Complex<f64>> = (0..pts.len())
            .map(|i| Complex::new(1.0 / (i + 1) as f64, 0.5))
            .collect();
        let u = dual_sums(&pts, -5, 40, &bcoef);
        let v = dual_sums(&direct, -5, 40, &bcoef);
        for (x, y) in u.iter().zip(&v) {
            assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn single_precision_path() {
        let pts = farey_points(6).unwrap();
        let c: Vec<Complex<f32>> = (0..30).map(|i| Complex::new(i as f32, 1.0)).collect();
        assert!(additive_ls_check(&pts, 0, &c).holds);
    }
}
