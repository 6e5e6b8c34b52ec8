use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dual_sums, exponential_sums, random_coefficients, SeparatedPoints};

/// Largest Rayleigh ratios of the forward and adjoint exponential-sum forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualityReport {
    /// `max sum_r |sum_n a_n e(n theta_r)|^2 / sum |a_n|^2`.
    pub forward: f64,
    /// `max sum_n |sum_r b_r e(n theta_r)|^2 / sum |b_r|^2`.
    pub adjoint: f64,
    pub relative_gap: f64,
    pub forward_iterations: usize,
    pub adjoint_iterations: usize,
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|c| *c /= norm);
    }
    norm
}

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Largest eigenvalue of a Hermitian positive semidefinite operator.
///
/// Lanczos with full reorthogonalization; stops when the Ritz residual falls
/// below `tol` relative to the Ritz value, the Krylov space becomes invariant,
/// or `max_steps` is reached. Returns the value and the number of steps.
fn lanczos_top(
    start: Vec<Complex64>,
    apply: impl Fn(&[Complex64]) -> Vec<Complex64>,
    max_steps: usize,
    tol: f64,
) -> (f64, usize) {
    let dim = start.len();
    let mut q = start;
    if normalize(&mut q) == 0.0 {
        return (0.0, 0);
    }
    let mut basis: Vec<Vec<Complex64>> = vec![q];
    let (mut alpha, mut beta) = (Vec::new(), Vec::<f64>::new());
    let mut theta = 0.0;
    for step in 1..=max_steps.min(dim).max(1) {
        let current = &basis[step - 1];
        let mut w = apply(current);
        alpha.push(dot(current, &w).re);
        // Two passes of Gram-Schmidt keep the basis orthogonal to working precision.
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let next_beta = normalize(&mut w);
        let k = alpha.len();
        let t = DMatrix::from_fn(k, k, |i, j| match i.abs_diff(j) {
            0 => alpha[i],
            1 => beta[i.min(j)],
            _ => 0.0,
        });
        let eig = SymmetricEigen::new(t);
        let top = eig.eigenvalues.imax();
        theta = eig.eigenvalues[top];
        let residual = next_beta * eig.eigenvectors[(k - 1, top)].abs();
        if residual <= tol * theta.abs() || next_beta <= f64::EPSILON * theta.abs() || k == dim {
            return (theta, step);
        }
        beta.push(next_beta);
        basis.push(w);
    }
    (theta, basis.len())
}

/// Compares the two operator norms by Lanczos iteration on `A* A` and `A A*`.
pub fn rayleigh_duality(points: &SeparatedPoints, m: i64, len: usize, max_iter: usize, seed: u64) -> DualityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start_a = random_coefficients(&mut rng, len);
    let start_b = random_coefficients(&mut rng, points.len());
    // A a = exponential sums; A* b = dual sums with conjugated phases.
    let forward_op = |a: &[Complex64]| {
        let s = exponential_sums(points, m, a);
        adjoint_apply(points, m, len, &s)
    };
    let adjoint_op = |b: &[Complex64]| {
        let u = adjoint_apply(points, m, len, b);
        exponential_sums(points, m, &u)
    };
    let (forward, fi) = lanczos_top(start_a, forward_op, max_iter, 1e-12);
    let (adjoint, ai) = lanczos_top(start_b, adjoint_op, max_iter, 1e-12);
    DualityReport {
        forward,
        adjoint,
        relative_gap: (forward - adjoint).abs() / forward.max(adjoint).max(f64::MIN_POSITIVE),
        forward_iterations: fi,
        adjoint_iterations: ai,
    }
}

/// `A* b`: `n -> sum_r b_r e(-n theta_r)`.
fn adjoint_apply(points: &SeparatedPoints, m: i64, len: usize, b: &[Complex64]) -> Vec<Complex64> {
    let conj: Vec<Complex64> = b.iter().map(|c| c.conj()).collect();
    dual_sums(points, m, len, &conj).into_iter().map(|c| c.conj()).collect()
}

/// Random unit-scale complex vector; used to seed iterations and fuzz inequalities.
pub fn random_unit_vector(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    let mut v = random_coefficients(rng, len);
    normalize(&mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::largesieve::farey_points;

    #[test]
    fn norms_agree() {
        let pts = farey_points(5).unwrap();
        let r = rayleigh_duality(&pts, 0, 30, 20_000, 0);
        assert!(r.relative_gap <= 1e-6, "{r:?}");
        assert!(r.forward <= 30.0 - 1.0 + pts.inverse_delta() + 1e-9);
    }
}
