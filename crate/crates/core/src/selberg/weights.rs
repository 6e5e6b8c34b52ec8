use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{primes_below, FactoredSquarefree};
use crate::error::{Result, SieveError};
use crate::problem::ResidueSystem;
use crate::scalar::big;
use crate::{Rational, Scalar};

/// A squarefree `d < z` with the data the quadratic form needs.
#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeEntry {
    pub d: u64,
    /// Prime factors, ascending.
    pub primes: Vec<u64>,
    pub mu: i64,
    /// `|Omega(d)|`.
    pub omega: u64,
    /// `H(d, Omega)`.
    pub h: Rational,
}

/// Squarefree integers below `z` with `|Omega(d)|` and `H(d)`.
pub fn squarefree_table(z: u64, residues: &ResidueSystem) -> Result<Vec<SquarefreeEntry>> {
    let primes = primes_below(z);
    residues.check(&primes)?;
    let mut per_prime = BTreeMap::new();
    for &p in &primes {
        let size = residues.size(p);
        per_prime.insert(p, (size, big(size) / big(p - size)));
    }
    let mut out = Vec::new();
    for d in 1..z {
        let Ok(f) = FactoredSquarefree::factor(d) else {
            continue;
        };
        let mut ps = f.prime_factors().to_vec();
        ps.reverse();
        let mut omega = 1u64;
        let mut h = Rational::one();
        for p in &ps {
            let (size, hp) = &per_prime[p];
            omega *= size;
            h *= hp;
        }
        out.push(SquarefreeEntry {
            d,
            primes: ps,
            mu: f.mobius(),
            omega,
            h,
        });
    }
    Ok(out)
}

/// `H(q, Omega) = prod_{p | q} |Omega(p)| / (p - |Omega(p)|)`.
///
/// A prime with `Omega(p)` empty contributes the factor 0.
pub fn h_factor(q: u64, residues: &ResidueSystem) -> Result<Rational> {
    let f = FactoredSquarefree::factor(q)?;
    let mut h = Rational::one();
    for &p in f.prime_factors() {
        let size = residues.size(p);
        if size >= p {
            return Err(SieveError::DensityBound { p, size });
        }
        h *= big(size) / big(p - size);
    }
    Ok(h)
}

/// `G(z, Omega) = sum_{q < z} mu(q)^2 H(q, Omega)`.
pub fn g_sum(z: u64, residues: &ResidueSystem) -> Result<Rational> {
    Ok(squarefree_table(z, residues)?
        .into_iter()
        .fold(Rational::zero(), |acc, e| acc + e.h))
}

/// Selberg weights `lambda(d)` for squarefree `d < z`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaWeights<S> {
    pub z: u64,
    /// `lambda(d)`, keyed by `d`; absent keys are zero.
    pub values: BTreeMap<u64, S>,
    /// `G(z, Omega)`.
    pub g: S,
}

impl<S: Scalar> LambdaWeights<S> {
    pub fn get(&self, d: u64) -> S {
        self.values.get(&d).cloned().unwrap_or_else(S::zero)
    }

    /// Weights with `lambda(1) = 1` and arbitrary values elsewhere.
    pub fn from_values(z: u64, values: BTreeMap<u64, S>) -> Self {
        LambdaWeights {
            z,
            values,
            g: S::zero(),
        }
    }
}

fn coprime_sum<S: Scalar>(table: &[SquarefreeEntry], h: &[S], d: &SquarefreeEntry, bound: u64) -> S {
    table
        .iter()
        .zip(h)
        .take_while(|(g, _)| g.d < bound)
        .filter(|(g, _)| g.primes.iter().all(|p| !d.primes.contains(p)))
        .fold(S::zero(), |acc, (_, hg)| acc + hg.clone())
}

/// The optimal weights; checks the `G` factorization for every `d`.
///
/// All arithmetic happens in `S`, so the check is exact for rationals and
/// tolerance-based for floats.
pub fn optimal_lambda<S: Scalar>(z: u64, residues: &ResidueSystem) -> Result<LambdaWeights<S>> {
    let table = squarefree_table(z, residues)?;
    let h: Vec<S> = table.iter().map(|e| S::from_rational(&e.h)).collect();
    let g = h.iter().fold(S::zero(), |acc, x| acc + x.clone());
    let mut values = BTreeMap::new();
    for d in &table {
        // G = sum_{f | d} H(f) sum_{g < z / f, (g, d) = 1} H(g).
        let mut factored = S::zero();
        for (f, hf) in table.iter().zip(&h).take_while(|(f, _)| f.d <= d.d) {
            if d.d % f.d == 0 {
                factored = factored + hf.clone() * coprime_sum(&table, &h, d, z.div_ceil(f.d));
            }
        }
        if !factored.agrees_with(&g) {
            return Err(SieveError::IdentityFailed(format!(
                "G factorization fails at d = {}",
                d.d
            )));
        }
        let mut lambda = coprime_sum(&table, &h, d, z.div_ceil(d.d)) / g.clone();
        for &p in &d.primes {
            let size = residues.size(p);
            lambda = lambda * S::from_ratio(p as i64, (p - size) as i64);
        }
        if d.mu < 0 {
            lambda = -lambda;
        }
        values.insert(d.d, lambda);
    }
    Ok(LambdaWeights { z, values, g })
}

fn lcm_primes(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `S = sum_{d1, d2 < z} |Omega([d1, d2])| / [d1, d2] lambda(d1) lambda(d2)`.
pub fn quadratic_form<S: Scalar>(weights: &LambdaWeights<S>, residues: &ResidueSystem) -> Result<S> {
    let table = squarefree_table(weights.z, residues)?;
    let active: Vec<(&SquarefreeEntry, S)> = table
        .iter()
        .map(|e| (e, weights.get(e.d)))
        .filter(|(_, l)| !l.is_zero())
        .collect();
    let mut s = S::zero();
    for (a, la) in &active {
        for (b, lb) in &active {
            let l = lcm_primes(&a.primes, &b.primes);
            let omega: u64 = l.iter().map(|&p| residues.size(p)).product();
            if omega == 0 {
                continue;
            }
            let m: u64 = l.iter().product();
            s = s + S::from_ratio(omega as i64, m as i64) * la.clone() * lb.clone();
        }
    }
    Ok(s)
}

/// `xi(f) = sum_{d < z, f | d} (|Omega(d)| / d) lambda(d)` for squarefree `f < z`.
pub fn xi_transform<S: Scalar>(weights: &LambdaWeights<S>, residues: &ResidueSystem) -> Result<BTreeMap<u64, S>> {
    let table = squarefree_table(weights.z, residues)?;
    let mut xi = BTreeMap::new();
    for f in &table {
        let mut acc = S::zero();
        for d in table.iter().filter(|d| d.d % f.d == 0) {
            acc = acc + S::from_ratio(d.omega as i64, d.d as i64) * weights.get(d.d);
        }
        xi.insert(f.d, acc);
    }
    Ok(xi)
}

/// Inverse transform `lambda(d) = (d / |Omega(d)|) sum_{g < z / d} mu(g) xi(dg)`.
///
/// Weights on `d` with `|Omega(d)| = 0` do not enter `S` and come back as zero.
pub fn xi_inverse<S: Scalar>(z: u64, xi: &BTreeMap<u64, S>, residues: &ResidueSystem) -> Result<LambdaWeights<S>> {
    let table = squarefree_table(z, residues)?;
    let mut values = BTreeMap::new();
    for d in &table {
        if d.omega == 0 {
            values.insert(d.d, S::zero());
            continue;
        }
        let mut acc = S::zero();
        for g in table.iter().take_while(|g| g.d * d.d < z) {
            if let Some(v) = xi.get(&(g.d * d.d)) {
                let term = v.clone();
                acc = if g.mu > 0 { acc + term } else { acc - term };
            }
        }
        values.insert(d.d, S::from_ratio(d.d as i64, d.omega as i64) * acc);
    }
    Ok(LambdaWeights {
        z,
        values,
        g: S::zero(),
    })
}

/// `S` in the diagonal form `sum_f mu(f)^2 / |Omega(f)| prod (p - |Omega(p)|) xi(f)^2`.
pub fn quadratic_form_diagonal<S: Scalar>(weights: &LambdaWeights<S>, residues: &ResidueSystem) -> Result<S> {
    let table = squarefree_table(weights.z, residues)?;
    let xi = xi_transform(weights, residues)?;
    let mut s = S::zero();
    for f in &table {
        if f.omega == 0 {
            continue;
        }
        let phi: u64 = f.primes.iter().map(|&p| p - residues.size(p)).product();
        let x = xi[&f.d].clone();
        s = s + S::from_ratio(phi as i64, f.omega as i64) * x.clone() * x;
    }
    Ok(s)
}

/// Optimal `xi(f) = mu(f) H(f) / G`.
pub fn optimal_xi(z: u64, residues: &ResidueSystem) -> Result<BTreeMap<u64, Rational>> {
    let table = squarefree_table(z, residues)?;
    let g = table.iter().fold(Rational::zero(), |acc, e| acc + &e.h);
    Ok(table
        .iter()
        .map(|f| (f.d, Rational::from_integer(f.mu.into()) * &f.h / &g))
        .collect())
}
