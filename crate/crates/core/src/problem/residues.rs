use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Result, SieveError};

/// How the removed classes `Omega(p)` are determined.
#[derive(Clone, Debug, PartialEq)]
pub enum ResidueRule {
    /// `Omega(p) = {0}`.
    Zero,
    /// `Omega(p) = {0, a mod p}`; `a = -2` is the twin system, `a = N` Goldbach.
    Pair { a: i64 },
    /// Classes of `m` with `p | start + k m`; empty when `p | k`.
    Linear { k: u64, start: u64 },
    /// Explicit table; unlisted primes remove nothing.
    Explicit(BTreeMap<u64, Vec<u64>>),
}

/// A single-prime residue system `p -> Omega(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueSystem {
    rule: ResidueRule,
}

impl ResidueSystem {
    pub fn zero() -> Self {
        ResidueSystem {
            rule: ResidueRule::Zero,
        }
    }

    pub fn pair(a: i64) -> Self {
        ResidueSystem {
            rule: ResidueRule::Pair { a },
        }
    }

    pub fn linear(k: u64, start: u64) -> Self {
        ResidueSystem {
            rule: ResidueRule::Linear { k, start },
        }
    }

    /// Explicit classes; residues are reduced and deduplicated.
    pub fn explicit(map: BTreeMap<u64, Vec<u64>>) -> Result<Self> {
        let mut clean = BTreeMap::new();
        for (p, classes) in map {
            let mut c: Vec<u64> = classes.into_iter().map(|r| r % p).collect();
            c.sort_unstable();
            c.dedup();
            if c.len() as u64 >= p {
                return Err(SieveError::DensityBound {
                    p,
                    size: c.len() as u64,
                });
            }
            clean.insert(p, c);
        }
        Ok(ResidueSystem {
            rule: ResidueRule::Explicit(clean),
        })
    }

    pub fn rule(&self) -> &ResidueRule {
        &self.rule
    }

    /// Sorted residues of `Omega(p)`.
    pub fn classes(&self, p: u64) -> Vec<u64> {
        let mut c = match &self.rule {
            ResidueRule::Zero => vec![0],
            ResidueRule::Pair { a } => vec![0, a.rem_euclid(p as i64) as u64],
            ResidueRule::Linear { k, start } => {
                if k % p == 0 {
                    Vec::new()
                } else {
                    let inv = mod_inverse(k % p, p).expect("p prime, p does not divide k");
                    let neg_start = (p - start % p) % p;
                    vec![(neg_start as u128 * inv as u128 % p as u128) as u64]
                }
            }
            ResidueRule::Explicit(map) => map.get(&p).cloned().unwrap_or_default(),
        };
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn size(&self, p: u64) -> u64 {
        self.classes(p).len() as u64
    }

    pub fn contains(&self, p: u64, n: i64) -> bool {
        let r = n.rem_euclid(p as i64) as u64;
        self.classes(p).contains(&r)
    }

    /// Fails with a density error when some `p` in `primes` has `|Omega(p)| >= p`.
    pub fn check(&self, primes: &[u64]) -> Result<()> {
        for &p in primes {
            let size = self.size(p);
            if size >= p {
                return Err(SieveError::DensityBound { p, size });
            }
        }
        Ok(())
    }
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Residues modulo `prod p` of integers `n` with `n mod p` in `Omega(p)` for every listed `p`.
pub fn crt_classes(primes: &[u64], residues: &ResidueSystem) -> (u128, Vec<u128>) {
    let mut modulus = 1u128;
    let mut classes = vec![0u128];
    for &p in primes {
        let omega = residues.classes(p);
        let inv = mod_inverse((modulus % p as u128) as u64, p).expect("distinct primes");
        let mut next = Vec::with_capacity(classes.len() * omega.len());
        for &r in &classes {
            for &c in &omega {
                let t = ((c as u128 + p as u128 - r % p as u128) % p as u128) * inv as u128 % p as u128;
                next.push(r + modulus * t);
            }
        }
        modulus *= p as u128;
        classes = next;
    }
    (modulus, classes)
}

/// `#{n in [start, start + len) : n = c mod m}`.
pub fn count_residue(start: i64, len: u64, c: u128, m: u128) -> u64 {
    if len == 0 {
        return 0;
    }
    let start = start as i128;
    let m = m as i128;
    let first = start + (c as i128 - start).rem_euclid(m);
    let last = start + len as i128 - 1;
    if first > last {
        0
    } else {
        ((last - first) / m + 1) as u64
    }
}
