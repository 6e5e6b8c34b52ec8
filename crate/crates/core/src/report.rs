//! Bound reports shared by every sieve and by the CLI.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::{big, rational_to_f64};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Legendre,
    BrunPure,
    BrunTwin,
    Selberg,
    Linnik,
    Rosser,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Legendre => "legendre",
            Method::BrunPure => "brun-pure",
            Method::BrunTwin => "brun-twin",
            Method::Selberg => "selberg",
            Method::Linnik => "linnik",
            Method::Rosser => "rosser",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Violated,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub z: Option<f64>,
    #[serde(rename = "D")]
    pub level: Option<f64>,
    pub beta: Option<f64>,
    pub ell: Option<u64>,
    /// Rosser parity `r`.
    pub parity: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub method: Method,
    pub problem: String,
    pub params: BoundParams,
    pub direction: Direction,
    pub main: f64,
    pub remainder_bound: f64,
    pub bound: f64,
    pub exact: u64,
    /// `bound - exact` for upper bounds, `exact - bound` for lower bounds.
    pub margin: f64,
    pub verdict: Verdict,
    /// Method-specific diagnostics.
    #[serde(default)]
    pub extras: BTreeMap<String, f64>,
}

impl BoundReport {
    /// Verdict from an exact rational bound.
    #[allow(clippy::too_many_arguments)]
    pub fn exact(
        method: Method,
        problem: String,
        params: BoundParams,
        direction: Direction,
        main: &Rational,
        remainder_bound: &Rational,
        bound: &Rational,
        exact: u64,
    ) -> Self {
        let holds = !matches!(
            (direction, bound.cmp(&big(exact))),
            (Direction::Upper, Ordering::Less) | (Direction::Lower, Ordering::Greater)
        );
        let b = rational_to_f64(bound);
        Self::assemble(
            method,
            problem,
            params,
            direction,
            rational_to_f64(main),
            rational_to_f64(remainder_bound),
            b,
            exact,
            holds,
        )
    }

    /// Verdict from a floating bound, compared without slack.
    #[allow(clippy::too_many_arguments)]
    pub fn float(
        method: Method,
        problem: String,
        params: BoundParams,
        direction: Direction,
        main: f64,
        remainder_bound: f64,
        bound: f64,
        exact: u64,
    ) -> Self {
        let e = exact as f64;
        let holds = match direction {
            Direction::Upper => bound >= e,
            Direction::Lower => bound <= e,
        };
        Self::assemble(
            method,
            problem,
            params,
            direction,
            main,
            remainder_bound,
            bound,
            exact,
            holds,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        method: Method,
        problem: String,
        params: BoundParams,
        direction: Direction,
        main: f64,
        remainder_bound: f64,
        bound: f64,
        exact: u64,
        holds: bool,
    ) -> Self {
        let e = exact as f64;
        let margin = match direction {
            Direction::Upper => bound - e,
            Direction::Lower => e - bound,
        };
        BoundReport {
            method,
            problem,
            params,
            direction,
            main,
            remainder_bound,
            bound,
            exact,
            margin,
            verdict: if holds { Verdict::Valid } else { Verdict::Violated },
            extras: BTreeMap::new(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }

    pub fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), value);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_direction() {
        let r = BoundReport::exact(
            Method::Linnik,
            "t".into(),
            BoundParams::default(),
            Direction::Upper,
            &big(50),
            &big(0),
            &big(50),
            50,
        );
        assert!(r.is_valid());
        assert_eq!(r.margin, 0.0);
        let l = BoundReport::float(
            Method::Rosser,
            "t".into(),
            BoundParams::default(),
            Direction::Lower,
            3.0,
            0.0,
            3.5,
            3,
        );
        assert_eq!(l.verdict, Verdict::Violated);
        assert_eq!(l.margin, -0.5);
    }
}
