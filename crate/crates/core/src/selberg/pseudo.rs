use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::bound::big_lambda;
use super::weights::{optimal_lambda, squarefree_table};
use crate::arith::primes_below;
use crate::error::{Result, SieveError};
use crate::largesieve::{InequalityCheck, INEQUALITY_SLACK};
use crate::problem::ResidueSystem;
use crate::scalar::{big, rational_to_f64};
use crate::Rational;

pub const PSEUDO_Z_CAP: u64 = 100;
pub const PSEUDO_N_CAP: u64 = 10_000;

/// `Psi_q(n) = prod_{p | q, n in Omega(p)} (-1 / H(p))`.
pub fn pseudo_character(q_primes: &[u64], n: i64, residues: &ResidueSystem) -> Rational {
    let mut v = Rational::one();
    for &p in q_primes {
        if residues.contains(p, n) {
            let size = residues.size(p);
            v *= -big(p - size) / big(size);
        }
    }
    v
}

/// Dense matrix of `psi_q(n) = mu(q) sqrt(H(q)) Psi_q(n)`, rows squarefree `q < z`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoCharacterMatrix {
    pub z: u64,
    pub start: i64,
    pub len: u64,
    pub moduli: Vec<u64>,
    pub rows: Vec<Vec<f64>>,
    pub g: Rational,
    /// `n` in the interval outside every `Omega(p)`, `p < z`.
    pub sifted: Vec<bool>,
}

/// Builds the matrix and asserts the expansion of the optimal weights in `Psi_q`.
pub fn pseudo_character_matrix(
    z: u64,
    residues: &ResidueSystem,
    start: i64,
    len: u64,
) -> Result<PseudoCharacterMatrix> {
    if z > PSEUDO_Z_CAP || len > PSEUDO_N_CAP {
        return Err(SieveError::BudgetExceeded {
            what: "pseudo-character matrix",
            requested: (z.max(len)) as u128,
            cap: if z > PSEUDO_Z_CAP { PSEUDO_Z_CAP } else { PSEUDO_N_CAP } as u128,
        });
    }
    let table = squarefree_table(z, residues)?;
    let weights = optimal_lambda::<Rational>(z, residues)?;
    let g = weights.g.clone();
    let primes = primes_below(z);
    let mut rows = vec![Vec::with_capacity(len as usize); table.len()];
    let mut sifted = Vec::with_capacity(len as usize);
    let mut lambda_cache: HashMap<Vec<u32>, Rational> = HashMap::new();
    for i in 0..len {
        let n = start + i as i64;
        let hit: Vec<u32> = primes
            .iter()
            .enumerate()
            .filter(|(_, &p)| residues.contains(p, n))
            .map(|(j, _)| j as u32)
            .collect();
        sifted.push(hit.is_empty());
        let mut expansion = Rational::zero();
        for (row, q) in rows.iter_mut().zip(&table) {
            let psi = pseudo_character(&q.primes, n, residues);
            let weighted = &q.h * &psi;
            let entry = rational_to_f64(&q.h).sqrt() * rational_to_f64(&psi) * q.mu as f64;
            row.push(entry);
            expansion += weighted;
        }
        expansion /= &g;
        let lambda = lambda_cache
            .entry(hit.clone())
            .or_insert_with(|| big_lambda(&weights, &primes, &hit))
            .clone();
        if lambda != expansion {
            return Err(SieveError::IdentityFailed(format!(
                "pseudo-character expansion fails at n = {n}"
            )));
        }
    }
    Ok(PseudoCharacterMatrix {
        z,
        start,
        len,
        moduli: table.iter().map(|e| e.d).collect(),
        rows,
        g,
        sifted,
    })
}

/// Outcome of feeding the sifted indicator into the forward inequality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinnikRecovery {
    pub sifted: u64,
    /// `sum_q |sum_n w(n) psi_q(n)|^2`.
    pub lhs: f64,
    /// `G |S|^2`, which the left side must equal.
    pub g_s2: f64,
    /// `(N - 1 + z^2) / G`.
    pub bound: f64,
    pub holds: bool,
}

impl PseudoCharacterMatrix {
    fn constant(&self) -> f64 {
        self.len as f64 - 1.0 + (self.z * self.z) as f64
    }

    /// `sum_q |sum_n a_n psi_q(n)|^2 <= (N - 1 + z^2) sum |a_n|^2`.
    pub fn forward_check(&self, a: &[Complex64]) -> InequalityCheck {
        let lhs: f64 = self
            .rows
            .iter()
            .map(|row| row.iter().zip(a).map(|(p, c)| c * *p).sum::<Complex64>().norm_sqr())
            .sum();
        let energy: f64 = a.iter().map(|c| c.norm_sqr()).sum();
        InequalityCheck::new(lhs, self.constant() * energy, INEQUALITY_SLACK)
    }

    /// `sum_n |sum_q b_q psi_q(n)|^2 <= (N - 1 + z^2) sum |b_q|^2`.
    pub fn adjoint_check(&self, b: &[Complex64]) -> InequalityCheck {
        let lhs: f64 = (0..self.len as usize)
            .map(|i| {
                self.rows
                    .iter()
                    .zip(b)
                    .map(|(row, c)| c * row[i])
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .sum();
        let energy: f64 = b.iter().map(|c| c.norm_sqr()).sum();
        InequalityCheck::new(lhs, self.constant() * energy, INEQUALITY_SLACK)
    }

    /// Sets `a_n` to the sifted indicator and reads off the sieve bound.
    pub fn linnik_recovery(&self) -> LinnikRecovery {
        let a: Vec<Complex64> = self
            .sifted
            .iter()
            .map(|&s| Complex64::new(if s { 1.0 } else { 0.0 }, 0.0))
            .collect();
        let check = self.forward_check(&a);
        let count = self.sifted.iter().filter(|&&s| s).count() as u64;
        let g = rational_to_f64(&self.g);
        let g_s2 = g * (count * count) as f64;
        let bound = self.constant() / g;
        let scale = g_s2.max(1.0);
        LinnikRecovery {
            sifted: count,
            lhs: check.lhs,
            g_s2,
            bound,
            holds: check.holds && (check.lhs - g_s2).abs() <= 1e-9 * scale && count as f64 <= bound,
        }
    }
}
