use num_complex::Complex64;
use num_integer::Integer;

use super::e_frac;
use crate::arith::{prime_divisors, totient};
use crate::error::{Result, SieveError};

/// Largest modulus accepted by [`CharacterTable::new`].
pub const CHARACTER_MODULUS_CAP: u64 = 1000;

/// One Dirichlet character; values are stored as exponents `k` with `chi(n) = e(k / L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    /// `None` where `(n, q) > 1`.
    pub logs: Vec<Option<u64>>,
    pub conductor: u64,
    pub gauss_sum: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub q: u64,
    /// Exponent of `(Z/qZ)^*`; every value is an `L`-th root of unity.
    pub exponent: u64,
    pub characters: Vec<Character>,
}

/// Cyclic factor of `(Z/qZ)^*`: generator, order and the prime-power modulus it lives in.
struct Cyclic {
    modulus: u64,
    generator: u64,
    order: u64,
}

fn prime_power_factors(q: u64) -> Vec<(u64, u32)> {
    prime_divisors(q)
        .into_iter()
        .map(|p| {
            let mut e = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            (p, e)
        })
        .collect()
}

fn order_mod(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
    }
    k
}

fn cyclic_factors(q: u64) -> Vec<Cyclic> {
    let mut out = Vec::new();
    for (p, e) in prime_power_factors(q) {
        let m = p.pow(e);
        if p == 2 && e >= 3 {
            out.push(Cyclic {
                modulus: m,
                generator: m - 1,
                order: 2,
            });
            out.push(Cyclic {
                modulus: m,
                generator: 5,
                order: m / 4,
            });
        } else if m > 2 {
            let phi = totient(m);
            let generator = (2..m)
                .find(|&g| g.gcd(&p) == 1 && order_mod(g, m) == phi)
                .expect("prime powers of odd primes, 2 and 4 have primitive roots");
            out.push(Cyclic {
                modulus: m,
                generator,
                order: phi,
            });
        }
    }
    out
}

/// Exponent vector of `n` over the cyclic factors (brute-force discrete logs).
fn discrete_logs(factors: &[Cyclic], q: u64) -> Vec<Option<Vec<u64>>> {
    let mut tables = Vec::new();
    for c in factors {
        let mut log = vec![u64::MAX; c.modulus as usize];
        let mut x = 1u64;
        for k in 0..c.order {
            log[x as usize] = k;
            x = x * c.generator % c.modulus;
        }
        tables.push(log);
    }
    (0..q)
        .map(|n| {
            if n.gcd(&q) != 1 {
                return None;
            }
            let mut v = Vec::with_capacity(factors.len());
            let mut i = 0;
            while i < factors.len() {
                let c = &factors[i];
                let r = n % c.modulus;
                if c.modulus >= 8 && c.modulus.is_power_of_two() {
                    // n = (-1)^s 5^t mod 2^e.
                    let (s, r) = if r % 4 == 1 { (0, r) } else { (1, c.modulus - r) };
                    v.push(s);
                    v.push(tables[i + 1][r as usize]);
                    i += 2;
                } else {
                    v.push(tables[i][r as usize]);
                    i += 1;
                }
            }
            Some(v)
        })
        .collect()
}

impl Character {
    pub fn value(&self, n: i64, exponent: u64) -> Complex64 {
        let q = self.logs.len() as i64;
        match self.logs[n.rem_euclid(q) as usize] {
            Some(k) => e_frac(k, exponent),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.logs.iter().flatten().all(|&k| k == 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.logs.len() as u64
    }
}

impl CharacterTable {
    /// All `phi(q)` characters mod `q`, with conductors and Gauss sums.
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(crate::error::invalid("modulus must be positive"));
        }
        if q > CHARACTER_MODULUS_CAP {
            return Err(SieveError::BudgetExceeded {
                what: "character modulus",
                requested: q as u128,
                cap: CHARACTER_MODULUS_CAP as u128,
            });
        }
        let factors = cyclic_factors(q);
        let exponent = factors.iter().fold(1u64, |acc, c| acc.lcm(&c.order));
        let logs = discrete_logs(&factors, q);
        let mut characters = Vec::new();
        let mut index = vec![0u64; factors.len()];
        loop {
            let values: Vec<Option<u64>> = logs
                .iter()
                .map(|v| {
                    v.as_ref().map(|v| {
                        v.iter()
                            .zip(&index)
                            .zip(&factors)
                            .map(|((&l, &k), c)| l * k % c.order * (exponent / c.order))
                            .sum::<u64>()
                            % exponent
                    })
                })
                .collect();
            characters.push(Character {
                conductor: conductor(&values, q),
                gauss_sum: gauss_sum(&values, q, exponent),
                logs: values,
            });
            // Odometer over the index vector.
            let mut i = 0;
            loop {
                if i == factors.len() {
                    return Ok(CharacterTable {
                        q,
                        exponent,
                        characters,
                    });
                }
                index[i] += 1;
                if index[i] < factors[i].order {
                    break;
                }
                index[i] = 0;
                i += 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn primitive(&self) -> impl Iterator<Item = &Character> {
        self.characters.iter().filter(|c| c.is_primitive())
    }

    pub fn value(&self, chi: usize, n: i64) -> Complex64 {
        self.characters[chi].value(n, self.exponent)
    }

    /// Largest deviation of `sum_n chi(n) conj(chi'(n))` from `phi(q) [chi = chi']`.
    pub fn orthogonality_error(&self) -> f64 {
        let phi = totient(self.q) as f64;
        let mut worst = 0.0f64;
        for (i, a) in self.characters.iter().enumerate() {
            for (j, b) in self.characters.iter().enumerate() {
                let s: Complex64 = (0..self.q as i64)
                    .map(|n| a.value(n, self.exponent) * b.value(n, self.exponent).conj())
                    .sum();
                let target = if i == j { phi } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }
}

/// Smallest `d | q` such that `chi(n) = 1` whenever `(n, q) = 1` and `n = 1 mod d`.
fn conductor(values: &[Option<u64>], q: u64) -> u64 {
    let mut divisors: Vec<u64> = (1..=q).filter(|d| q % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        let induced = values.iter().enumerate().all(|(n, v)| match v {
            Some(k) => n as u64 % d != 1 % d || *k == 0,
            None => true,
        });
        if induced {
            return d;
        }
    }
    q
}

fn gauss_sum(values: &[Option<u64>], q: u64, exponent: u64) -> Complex64 {
    values
        .iter()
        .enumerate()
        .filter_map(|(a, v)| v.map(|k| e_frac::<f64>(k, exponent) * e_frac::<f64>(a as u64, q)))
        .sum()
}
