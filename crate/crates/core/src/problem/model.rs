use super::residues::{count_residue, crt_classes};
use super::{ProblemSpec, ResidueSystem, SiftingDensity};
use crate::arith::{primes_below, FactoredSquarefree};
use crate::error::{invalid, Result, SieveError};
use crate::scalar::big;
use crate::Rational;

/// Cap on explicitly enumerated elements or marking-sieve slots.
pub const ENUMERATION_CAP: u64 = 50_000_000;

/// The finite sequence `A`.
#[derive(Clone, Debug, PartialEq)]
pub enum Elements {
    /// `lo <= n < hi`.
    Interval {
        lo: u64,
        hi: u64,
    },
    /// `n (n + 2)` for `1 <= n < x - 2`.
    Twin {
        x: u64,
    },
    /// `n (N - n)` for `3 <= n <= N - 3`.
    Goldbach {
        n: u64,
    },
    /// `first + k m` for `0 <= m < count`.
    Progression {
        first: u64,
        k: u64,
        count: u64,
    },
    Explicit(Vec<u64>),
}

impl Elements {
    pub fn len(&self) -> u64 {
        match self {
            Elements::Interval { lo, hi } => hi - lo,
            Elements::Twin { x } => x.saturating_sub(3),
            Elements::Goldbach { n } => n.saturating_sub(5),
            Elements::Progression { count, .. } => *count,
            Elements::Explicit(v) => v.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Calls `f` on each element value, in order.
    pub fn for_each(&self, mut f: impl FnMut(u64)) {
        match self {
            Elements::Interval { lo, hi } => (*lo..*hi).for_each(f),
            Elements::Twin { x } => (1..x.saturating_sub(2)).for_each(|n| f(n * (n + 2))),
            Elements::Goldbach { n } => (3..n.saturating_sub(2)).for_each(|m| f(m * (n - m))),
            Elements::Progression { first, k, count } => (0..*count).for_each(|m| f(first + k * m)),
            Elements::Explicit(v) => v.iter().copied().for_each(f),
        }
    }

    pub fn to_vec(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.len() as usize);
        self.for_each(|v| out.push(v));
        out
    }
}

/// `A` described as `{n in [start, start + len)}` sifted by `Omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaForm {
    pub start: i64,
    pub len: u64,
    pub residues: ResidueSystem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SieveProblem {
    pub spec: ProblemSpec,
    pub elements: Elements,
    /// The scale `X`.
    pub x_scale: Rational,
    pub density: SiftingDensity,
    pub omega_form: Option<OmegaForm>,
}

impl SieveProblem {
    pub fn new(
        spec: ProblemSpec,
        elements: Elements,
        x_scale: Rational,
        density: SiftingDensity,
        omega_form: Option<OmegaForm>,
    ) -> Self {
        SieveProblem {
            spec,
            elements,
            x_scale,
            density,
            omega_form,
        }
    }

    /// `|A|`.
    pub fn len(&self) -> u64 {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn omega_form(&self) -> Result<&OmegaForm> {
        self.omega_form
            .as_ref()
            .ok_or(SieveError::NoResidueForm(self.spec.kind_name()))
    }

    /// `|A_d|` and `R_d = |A_d| - (omega(d) / d) X`.
    pub fn count_in_class(&self, d: u64) -> Result<(u64, Rational)> {
        let f = FactoredSquarefree::factor(d)?;
        let count = self.count_divisible(f.prime_factors())?;
        let main = self.density.ratio_of(f.prime_factors()) * &self.x_scale;
        Ok((count, big(count) - main))
    }

    /// `|A_d|` for `d` given by distinct primes.
    pub fn count_divisible(&self, primes: &[u64]) -> Result<u64> {
        if let Some(form) = &self.omega_form {
            let (m, classes) = crt_classes(primes, &form.residues);
            return Ok(classes.iter().map(|&c| count_residue(form.start, form.len, c, m)).sum());
        }
        self.check_enumeration()?;
        let d: u128 = primes.iter().map(|&p| p as u128).product();
        let mut count = 0;
        self.elements.for_each(|v| {
            if v as u128 % d == 0 {
                count += 1;
            }
        });
        Ok(count)
    }

    fn check_enumeration(&self) -> Result<()> {
        let n = self.len();
        if n > ENUMERATION_CAP {
            return Err(SieveError::BudgetExceeded {
                what: "element enumeration",
                requested: n as u128,
                cap: ENUMERATION_CAP as u128,
            });
        }
        Ok(())
    }

    /// Main term `(omega(d) / d) X`.
    pub fn main_term(&self, primes: &[u64]) -> Rational {
        self.density.ratio_of(primes) * &self.x_scale
    }

    /// `|S(A, z)|`, through the residue form when present.
    pub fn exact_sift(&self, z: u64) -> Result<u64> {
        if z < 2 {
            return Err(invalid("z must be at least 2"));
        }
        match &self.omega_form {
            Some(form) => omega_sift(form, z),
            None => self.exact_sift_product(z),
        }
    }

    /// `|S(A, z)|` by testing every element against every prime below `z`.
    pub fn exact_sift_product(&self, z: u64) -> Result<u64> {
        if z < 2 {
            return Err(invalid("z must be at least 2"));
        }
        self.check_enumeration()?;
        let primes = primes_below(z);
        let mut count = 0;
        self.elements.for_each(|v| {
            if primes.iter().all(|&p| v % p != 0) {
                count += 1;
            }
        });
        Ok(count)
    }

    /// `|S(A, z)|` through the residue form only.
    pub fn exact_sift_omega(&self, z: u64) -> Result<u64> {
        omega_sift(self.omega_form()?, z)
    }

    pub fn descriptor(&self) -> String {
        self.spec.to_string()
    }
}

fn omega_sift(form: &OmegaForm, z: u64) -> Result<u64> {
    if form.len > ENUMERATION_CAP {
        return Err(SieveError::BudgetExceeded {
            what: "marking sieve length",
            requested: form.len as u128,
            cap: ENUMERATION_CAP as u128,
        });
    }
    let mut hit = vec![false; form.len as usize];
    for p in primes_below(z) {
        for c in form.residues.classes(p) {
            let first = (c as i64 - form.start).rem_euclid(p as i64) as usize;
            for slot in hit.iter_mut().skip(first).step_by(p as usize) {
                *slot = true;
            }
        }
    }
    Ok(hit.iter().filter(|&&h| !h).count() as u64)
}

/// `R_d` as defined by the problem; shorthand used by the remainder tallies.
pub fn remainder(problem: &SieveProblem, primes: &[u64]) -> Result<Rational> {
    let count = problem.count_divisible(primes)?;
    Ok(big(count) - problem.main_term(primes))
}
