use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{DensityRule, Elements, OmegaForm, ResidueSystem, SieveProblem, SiftingDensity};
use crate::arith::{big_omega_table, li, PrimeTable};
use crate::error::{invalid, Result, SieveError};
use crate::scalar::{big, rational_from_f64};

/// Largest `x` accepted for the twin and Goldbach product sequences (keeps `n (n + 2)` in `u64`).
pub const PRODUCT_SEQUENCE_MAX: u64 = 1_000_000_000;

/// Serializable description of a sifting problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemSpec {
    /// `x - y < n <= x`.
    Interval {
        x: u64,
        y: u64,
    },
    Twin {
        x: u64,
    },
    Goldbach {
        #[serde(rename = "N")]
        n: u64,
    },
    ShiftedPrime {
        x: u64,
    },
    /// `n >= 1`, `x - y <= n < x`, `n = l mod k`; `y` defaults to `x`.
    Progression {
        x: u64,
        k: u64,
        l: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y: Option<u64>,
    },
    /// `n < x` with total prime-factor count of parity `r`.
    Parity {
        x: u64,
        r: u8,
    },
    Custom {
        elements: Vec<u64>,
    },
}

impl ProblemSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ProblemSpec::Interval { .. } => "interval",
            ProblemSpec::Twin { .. } => "twin",
            ProblemSpec::Goldbach { .. } => "goldbach",
            ProblemSpec::ShiftedPrime { .. } => "shifted_prime",
            ProblemSpec::Progression { .. } => "progression",
            ProblemSpec::Parity { .. } => "parity",
            ProblemSpec::Custom { .. } => "custom",
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| SieveError::Config(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| SieveError::Config(e.to_string()))
    }

    pub fn build(&self) -> Result<SieveProblem> {
        let spec = self.clone();
        match *self {
            ProblemSpec::Interval { x, y } => {
                if y == 0 || y > x {
                    return Err(invalid(format!("interval needs 1 <= y <= x, got x={x}, y={y}")));
                }
                let lo = x - y + 1;
                Ok(SieveProblem::new(
                    spec,
                    Elements::Interval { lo, hi: x + 1 },
                    big(y),
                    SiftingDensity::unit(),
                    Some(OmegaForm {
                        start: lo as i64,
                        len: y,
                        residues: ResidueSystem::zero(),
                    }),
                ))
            }
            ProblemSpec::Twin { x } => {
                if !(4..=PRODUCT_SEQUENCE_MAX).contains(&x) {
                    return Err(invalid(format!("twin problem needs 4 <= x <= 1e9, got {x}")));
                }
                Ok(SieveProblem::new(
                    spec,
                    Elements::Twin { x },
                    big(x),
                    SiftingDensity::twin(),
                    Some(OmegaForm {
                        start: 1,
                        len: x - 3,
                        residues: ResidueSystem::pair(-2),
                    }),
                ))
            }
            ProblemSpec::Goldbach { n } => {
                if n < 6 || n % 2 == 1 || n > PRODUCT_SEQUENCE_MAX {
                    return Err(invalid(format!("Goldbach problem needs even 6 <= N <= 1e9, got {n}")));
                }
                Ok(SieveProblem::new(
                    spec,
                    Elements::Goldbach { n },
                    big(n),
                    SiftingDensity::new(DensityRule::Goldbach { n }, 2.0),
                    Some(OmegaForm {
                        start: 3,
                        len: n - 5,
                        residues: ResidueSystem::pair(n as i64),
                    }),
                ))
            }
            ProblemSpec::ShiftedPrime { x } => {
                if x < 4 {
                    return Err(invalid(format!("shifted-prime problem needs x >= 4, got {x}")));
                }
                let table = PrimeTable::new(x)?;
                let elements = table.primes().iter().skip(1).map(|p| p + 2).collect();
                Ok(SieveProblem::new(
                    spec,
                    Elements::Explicit(elements),
                    rational_from_f64(li(x as f64)),
                    SiftingDensity::new(DensityRule::ShiftedPrime, 1.0),
                    None,
                ))
            }
            ProblemSpec::Progression { x, k, l, y } => {
                if k == 0 {
                    return Err(invalid("modulus k must be positive"));
                }
                if l.gcd(&k) != 1 {
                    return Err(SieveError::NotCoprime { k, l });
                }
                let y = y.unwrap_or(x);
                if y == 0 || y > x {
                    return Err(invalid(format!("progression needs 1 <= y <= x, got x={x}, y={y}")));
                }
                let lo = (x - y).max(1);
                let first = lo + (l % k + k - lo % k) % k;
                let count = if first < x { (x - 1 - first) / k + 1 } else { 0 };
                Ok(SieveProblem::new(
                    spec,
                    Elements::Progression { first, k, count },
                    big(y) / big(k),
                    SiftingDensity::new(DensityRule::Coprime { k }, 1.0),
                    Some(OmegaForm {
                        start: 0,
                        len: count,
                        residues: ResidueSystem::linear(k, first),
                    }),
                ))
            }
            ProblemSpec::Parity { x, r } => {
                if r > 1 {
                    return Err(invalid(format!("parity must be 0 or 1, got {r}")));
                }
                if !(2..=super::ENUMERATION_CAP).contains(&x) {
                    return Err(invalid(format!("parity problem needs 2 <= x <= 5e7, got {x}")));
                }
                let omega = big_omega_table(x);
                let elements = (1..x).filter(|&n| omega[n as usize] % 2 == r).collect();
                Ok(SieveProblem::new(
                    spec,
                    Elements::Explicit(elements),
                    big(x) / big(2),
                    SiftingDensity::unit(),
                    None,
                ))
            }
            ProblemSpec::Custom { ref elements } => Ok(SieveProblem::new(
                spec.clone(),
                Elements::Explicit(elements.clone()),
                big(elements.len() as u64),
                SiftingDensity::unit(),
                None,
            )),
        }
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemSpec::Interval { x, y } => write!(f, "interval(x={x},y={y})"),
            ProblemSpec::Twin { x } => write!(f, "twin(x={x})"),
            ProblemSpec::Goldbach { n } => write!(f, "goldbach(N={n})"),
            ProblemSpec::ShiftedPrime { x } => write!(f, "shifted_prime(x={x})"),
            ProblemSpec::Progression { x, k, l, y } => match y {
                Some(y) => write!(f, "progression(x={x},k={k},l={l},y={y})"),
                None => write!(f, "progression(x={x},k={k},l={l})"),
            },
            ProblemSpec::Parity { x, r } => write!(f, "parity(x={x},r={r})"),
            ProblemSpec::Custom { elements } => write!(f, "custom(len={})", elements.len()),
        }
    }
}

/// Builds a problem from a kind tag and a parameter mapping (`x`, `y`, `N`, `k`, `l`, `r`).
pub fn build_problem(kind: &str, params: &BTreeMap<String, u64>) -> Result<SieveProblem> {
    let get = |key: &'static str| params.get(key).copied().ok_or(SieveError::MissingParameter(key));
    let spec = match kind {
        "interval" => ProblemSpec::Interval {
            x: get("x")?,
            y: get("y")?,
        },
        "twin" => ProblemSpec::Twin { x: get("x")? },
        "goldbach" => ProblemSpec::Goldbach { n: get("N")? },
        "shifted_prime" => ProblemSpec::ShiftedPrime { x: get("x")? },
        "progression" => ProblemSpec::Progression {
            x: get("x")?,
            k: get("k")?,
            l: get("l")?,
            y: params.get("y").copied(),
        },
        "parity" => ProblemSpec::Parity {
            x: get("x")?,
            r: u8::try_from(get("r")?).map_err(|_| invalid("parity must be 0 or 1"))?,
        },
        other => return Err(invalid(format!("unknown problem kind `{other}`"))),
    };
    spec.build()
}
