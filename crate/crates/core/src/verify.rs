//! The invariant suite behind `sievekit verify`.
//!
//! Each check records a pass/fail outcome with a short detail string; a failed
//! computation (including a budget error) counts as a failure.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{prime_divisors, primes_below};
use crate::brun::{exact_indicator, truncated_indicator, PureSieveConfig};
use crate::error::{invalid, Result};
use crate::largesieve::{
    additive_ls_check, dual_ls_check, farey_points, gauss_reduction_error, hilbert_ls_check, linnik_identity_check,
    random_coefficients, rayleigh_duality, CharacterFamily, CharacterTable,
};
use crate::legendre::legendre_decompose;
use crate::problem::{ProblemSpec, ResidueSystem};
use crate::report::Direction;
use crate::rosser::{
    buchstab_check, chain_agreement, chen_decomposition, chen_implication_check, parity_extremal, rosser_identity,
    solve_sieve_functions, step_halving_change, truncation_inequality_check, two_exp_gamma, RosserWeightTable,
    CLOSED_FORM_TOLERANCE, EULER_GAMMA,
};
use crate::selberg::{linnik_bound, optimal_lambda, quadratic_form, selberg_upper_bound};
use crate::{Rational, Scalar};

/// Tolerance for the Rayleigh-ratio duality comparison.
pub const DUALITY_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Budget {
    Small,
    Full,
}

impl Budget {
    fn pick<T>(self, small: T, full: T) -> T {
        match self {
            Budget::Small => small,
            Budget::Full => full,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Sandwich,
    Quantitative,
    LargeSieve,
    SieveFunctions,
    Rosser,
    Chen,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Identities,
        Suite::Sandwich,
        Suite::Quantitative,
        Suite::LargeSieve,
        Suite::SieveFunctions,
        Suite::Rosser,
        Suite::Chen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Sandwich => "sandwich",
            Suite::Quantitative => "quantitative",
            Suite::LargeSieve => "large-sieve",
            Suite::SieveFunctions => "sieve-functions",
            Suite::Rosser => "rosser",
            Suite::Chen => "chen",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub budget: Budget,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Recorder {
    suite: Suite,
    checks: Vec<CheckOutcome>,
}

impl Recorder {
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(CheckOutcome {
            suite: self.suite.name().to_string(),
            name: name.into(),
            passed,
            detail,
        });
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run_suite(suite: Suite, budget: Budget, seed: u64) -> VerifyReport {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let mut checks = Vec::new();
    for s in suites {
        let mut rec = Recorder {
            suite: s,
            checks: Vec::new(),
        };
        match s {
            Suite::Identities => identities(&mut rec, budget, seed),
            Suite::Sandwich => sandwich(&mut rec, budget),
            Suite::Quantitative => quantitative(&mut rec, budget, seed),
            Suite::LargeSieve => large_sieve(&mut rec, budget, seed),
            Suite::SieveFunctions => sieve_functions(&mut rec),
            Suite::Rosser => rosser(&mut rec, budget),
            Suite::Chen => chen(&mut rec, budget),
            Suite::All => unreachable!(),
        }
        checks.extend(rec.checks);
    }
    VerifyReport { budget, seed, checks }
}

/// The problem suite used by the identity and sandwich checks.
pub fn problem_suite(budget: Budget) -> Vec<ProblemSpec> {
    let big = budget.pick(10_000, 100_000);
    vec![
        ProblemSpec::Interval {
            x: budget.pick(10_000, 1_000_000),
            y: budget.pick(10_000, 1_000_000),
        },
        ProblemSpec::Interval { x: big, y: big / 10 },
        ProblemSpec::Twin { x: big },
        ProblemSpec::Goldbach { n: big },
        ProblemSpec::Progression {
            x: big,
            k: 3,
            l: 1,
            y: None,
        },
        ProblemSpec::Progression {
            x: big,
            k: 10,
            l: 7,
            y: None,
        },
    ]
}

fn sift_limits(budget: Budget) -> Vec<u64> {
    budget.pick(vec![2, 5, 10, 17, 30], (2..=30).collect())
}

fn identities(rec: &mut Recorder, budget: Budget, seed: u64) {
    for spec in problem_suite(budget) {
        let problem = match spec.build() {
            Ok(p) => p,
            Err(e) => {
                rec.check(format!("build {spec}"), || Err(e));
                continue;
            }
        };
        for z in sift_limits(budget) {
            rec.check(format!("legendre {spec} z={z}"), || {
                let d = legendre_decompose(&problem, z)?;
                Ok((d.holds(), format!("sifted={} divisors={}", d.oracle, d.divisors)))
            });
        }
        for (z0, z) in [(2, 13), (3, 30), (7, 23)] {
            rec.check(format!("buchstab {spec} z0={z0} z={z}"), || {
                let b = buchstab_check(&problem, z0, z)?;
                Ok((
                    b.holds,
                    format!("lhs={} initial={} removed={}", b.lhs, b.initial, b.removed),
                ))
            });
        }
        let x = problem.len().max(2) as f64;
        for z in [13, 30] {
            for level in [x.sqrt(), x] {
                for parity in 0..2 {
                    rec.check(format!("rosser {spec} z={z} D={level:.0} r={parity}"), || {
                        let w = RosserWeightTable::new(level, 2.0, parity)?;
                        let r = rosser_identity(&problem, 2, z, &w)?;
                        Ok((
                            r.identity_holds && r.v_identity_holds,
                            format!("lhs={} rho={} sigma={}", r.lhs, r.rho_sum, r.sigma_sum),
                        ))
                    });
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = budget.pick(50, 1000);
    rec.check(format!("residue-class energy identity x{trials}"), || {
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let len = rng.random_range(1..=200usize);
            let weights: Vec<i64> = (0..len).map(|_| rng.random_range(-5..=5)).collect();
            let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29][rng.random_range(0..10)];
            let m = rng.random_range(-100..=100);
            let r = linnik_identity_check(m, &weights, p, rng.random_range(0.0..1.0))?;
            if !r.identity_holds || !r.inequality.holds {
                return Ok((false, format!("p={p} m={m} error={:e}", r.relative_error)));
            }
            worst = worst.max(r.relative_error);
        }
        Ok((true, format!("max relative error {worst:e}")))
    });
    let x = budget.pick(10_000, 100_000);
    let table = match solve_sieve_functions(20.0, 1e-3) {
        Ok(t) => t,
        Err(e) => {
            rec.check("parity example", || Err(e));
            return;
        }
    };
    for z in [2, 10] {
        for parity in 0..2 {
            rec.check(format!("parity example x={x} z={z} r={parity}"), || {
                let r = parity_extremal(x, z, parity, &table)?;
                Ok((r.identity_holds, format!("sifted={} rosser={}", r.sifted, r.rosser_sum)))
            });
        }
    }
}

fn sandwich(rec: &mut Recorder, budget: Budget) {
    let n_max = budget.pick(10_000u64, 100_000);
    rec.check(format!("truncated Mobius sandwich n<={n_max}"), || {
        let mut violations = 0u64;
        for n in 1..=n_max {
            let primes = prime_divisors(n);
            for z in [5u64, 10, 20, 30] {
                let exact = exact_indicator(n, z);
                debug_assert_eq!(exact, i64::from(primes.iter().all(|&p| p >= z)));
                for ell in 0..=5 {
                    if truncated_indicator(n, &PureSieveConfig::upper(z, ell)) < exact
                        || truncated_indicator(n, &PureSieveConfig::lower(z, ell)) > exact
                    {
                        violations += 1;
                    }
                }
            }
        }
        Ok((violations == 0, format!("{violations} violations")))
    });
    for spec in problem_suite(budget) {
        let Ok(problem) = spec.build() else { continue };
        let x = problem.len().max(2) as f64;
        for parity in 0..2 {
            rec.check(format!("rosser one-sided {spec} r={parity}"), || {
                let w = RosserWeightTable::new(x.sqrt(), 2.0, parity)?;
                let r = rosser_identity(&problem, 2, 30, &w)?;
                Ok((r.one_sided_holds, format!("lhs={} rho={}", r.lhs, r.rho_sum)))
            });
        }
    }
    let configs = bound_configurations(budget);
    rec.check(
        format!("selberg and linnik bounds on {} configurations", configs.len()),
        || {
            let mut bad = Vec::new();
            for (spec, z) in &configs {
                let problem = spec.build()?;
                for r in [selberg_upper_bound(&problem, *z, false)?, linnik_bound(&problem, *z)?] {
                    if !r.is_valid() || r.direction != Direction::Upper {
                        bad.push(format!("{} {spec} z={z}", r.method));
                    }
                }
            }
            Ok((
                bad.is_empty(),
                if bad.is_empty() {
                    "no violations".into()
                } else {
                    bad.join("; ")
                },
            ))
        },
    );
}

/// `(problem, z)` pairs for the upper-bound sandwich checks.
pub fn bound_configurations(budget: Budget) -> Vec<(ProblemSpec, u64)> {
    let xs: Vec<u64> = budget.pick(vec![1_000, 10_000], vec![1_000, 5_000, 10_000, 50_000, 100_000]);
    let zs: Vec<u64> = budget.pick(vec![5, 20], vec![3, 5, 8, 13, 17, 20, 23, 30]);
    let mut out = Vec::new();
    for &x in &xs {
        let specs = [
            ProblemSpec::Interval { x, y: x },
            ProblemSpec::Interval { x: 2 * x, y: x },
            ProblemSpec::Twin { x },
            ProblemSpec::Goldbach { n: x },
            ProblemSpec::Progression { x, k: 4, l: 3, y: None },
        ];
        for spec in specs {
            for &z in &zs {
                out.push((spec.clone(), z));
            }
        }
    }
    out
}

/// A random residue system for the primes below `z`, `|Omega(p)| < p`.
pub fn random_residues(rng: &mut impl Rng, z: u64) -> Result<ResidueSystem> {
    let mut map = BTreeMap::new();
    for p in primes_below(z) {
        let size = rng.random_range(0..p);
        let mut classes: Vec<u64> = (0..p).collect();
        for i in 0..size as usize {
            let j = rng.random_range(i..p as usize);
            classes.swap(i, j);
        }
        classes.truncate(size as usize);
        map.insert(p, classes);
    }
    ResidueSystem::explicit(map)
}

fn quantitative(rec: &mut Recorder, budget: Budget, seed: u64) {
    rec.check("linnik interval N=100 z=5", || {
        let p = ProblemSpec::Interval { x: 100, y: 100 }.build()?;
        let r = linnik_bound(&p, 5)?;
        Ok((
            r.bound == 50.0 && r.exact == 33,
            format!("bound={} exact={}", r.bound, r.exact),
        ))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e1b);
    let trials = budget.pick(20, 200);
    rec.check(
        format!("optimal S = 1/G and |lambda| <= 1, {trials} random systems"),
        || {
            for _ in 0..trials {
                let z = rng.random_range(2..=30u64);
                let residues = random_residues(&mut rng, z)?;
                let w = optimal_lambda::<Rational>(z, &residues)?;
                let s = quadratic_form(&w, &residues)?;
                if s * &w.g != Rational::one() {
                    return Ok((false, format!("S G != 1 at z={z}")));
                }
                if w.values.values().any(|l| l.abs_val() > Rational::one()) {
                    return Ok((false, format!("|lambda| > 1 at z={z}")));
                }
            }
            Ok((true, String::new()))
        },
    );
}

fn large_sieve(rec: &mut Recorder, budget: Budget, seed: u64) {
    let trials = budget.pick(200, 10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut families: HashMap<u64, CharacterFamily> = HashMap::new();
    rec.check(
        format!("additive, dual, multiplicative and Hilbert inequalities x{trials}"),
        || {
            let mut worst = 0.0f64;
            for t in 0..trials {
                let q = rng.random_range(2..=50u64);
                let n = rng.random_range(1..=1000usize);
                let m = rng.random_range(-500..=500i64);
                let points = farey_points(q)?;
                let a = random_coefficients(&mut rng, n);
                let b = random_coefficients(&mut rng, points.len());
                let family = match families.get(&q) {
                    Some(f) => f,
                    None => families.entry(q).or_insert(CharacterFamily::new(q)?),
                };
                let checks = [
                    ("additive", additive_ls_check(&points, m, &a)),
                    ("dual", dual_ls_check(&points, m, n, &b)),
                    ("multiplicative", family.check(m, &a)),
                ];
                for (name, c) in checks {
                    if !c.holds {
                        return Ok((false, format!("trial {t}: {name} Q={q} N={n} ratio={}", c.ratio)));
                    }
                    worst = worst.max(c.ratio);
                }
                if t % 20 == 0 {
                    let dim = rng.random_range(1..=8usize);
                    let count = rng.random_range(1..=6usize);
                    let fam: Vec<_> = (0..count).map(|_| random_coefficients(&mut rng, dim)).collect();
                    let psi = random_coefficients(&mut rng, dim);
                    let c = hilbert_ls_check(&fam, &psi)?;
                    if !c.holds {
                        return Ok((false, format!("trial {t}: hilbert ratio={}", c.ratio)));
                    }
                }
            }
            Ok((true, format!("max lhs/rhs {worst:.6}")))
        },
    );
    rec.check("character tables and Gauss-sum reduction, q <= 60", || {
        let mut worst = 0.0f64;
        for q in 1..=60 {
            let t = CharacterTable::new(q)?;
            worst = worst.max(t.orthogonality_error()).max(gauss_reduction_error(&t));
        }
        Ok((worst <= 1e-9, format!("max error {worst:e}")))
    });
    let runs = budget.pick(4, 40);
    rec.check(format!("Rayleigh duality x{runs}"), || {
        let mut worst = 0.0f64;
        for i in 0..runs {
            let q = rng.random_range(2..=20u64);
            let n = rng.random_range(1..=200usize);
            let r = rayleigh_duality(&farey_points(q)?, 0, n, 5000, seed.wrapping_add(i));
            worst = worst.max(r.relative_gap);
        }
        Ok((worst <= DUALITY_TOLERANCE, format!("max gap {worst:e}")))
    });
}

fn sieve_functions(rec: &mut Recorder) {
    rec.check("closed forms at tau = 2, 3", || {
        let t = solve_sieve_functions(20.0, 1e-3)?;
        let e1 = (t.eval(1, 2.0) - EULER_GAMMA.exp()).abs();
        let e0 = (t.eval(0, 3.0) - two_exp_gamma() * 2f64.ln() / 3.0).abs();
        let e3 = (3.0 * t.eval(1, 3.0) - two_exp_gamma()).abs();
        let worst = e1.max(e0).max(e3).max(t.closed_form_error());
        Ok((worst <= CLOSED_FORM_TOLERANCE, format!("max error {worst:e}")))
    });
    rec.check("limits and ordering", || {
        let t = solve_sieve_functions(20.0, 1e-3)?;
        let ordered = t.rows().all(|(_, p0, p1)| p0 <= p1 + CLOSED_FORM_TOLERANCE);
        let limit = (t.eval(0, 20.0) - 1.0).abs().max((t.eval(1, 20.0) - 1.0).abs());
        Ok((
            ordered && limit <= CLOSED_FORM_TOLERANCE,
            format!("distance from 1 at tau=20: {limit:e}"),
        ))
    });
    rec.check("step halving", || {
        let change = step_halving_change(20.0, 1e-3)?;
        Ok((change < 4.0 * CLOSED_FORM_TOLERANCE, format!("change {change:e}")))
    });
}

fn rosser(rec: &mut Recorder, budget: Budget) {
    for (beta, exponent, z) in [(2.0, 3, 20u64), (3.0, 4, 15), (1.5, 2, 30), (2.0, 2, 30)] {
        let level = (z as f64).powi(exponent);
        for parity in 0..2 {
            rec.check(
                format!("truncation beta={beta} D=z^{exponent} z={z} r={parity}"),
                || {
                    let r = truncation_inequality_check(level, beta, parity, z)?;
                    Ok((
                        r.holds(),
                        format!("rho members {} sigma members {}", r.rho_members, r.sigma_members),
                    ))
                },
            );
        }
    }
    let limit = budget.pick(10_000, 100_000);
    for beta in [1.5, 2.0, 3.0] {
        for level in [1e3, 1e4] {
            rec.check(format!("chain vs closed sets d<{limit} beta={beta} D={level}"), || {
                let m = chain_agreement(limit, level, beta)?;
                Ok((m == 0, format!("{m} mismatches")))
            });
        }
    }
    let x = budget.pick(10_000u64, 100_000);
    rec.check(format!("lower bound non-decreasing in D, twin x={x}"), || {
        let problem = ProblemSpec::Twin { x }.build()?;
        let mut last: Option<i64> = None;
        let mut drops = Vec::new();
        for e in 1..=8 {
            let level = (x as f64).powf(e as f64 / 8.0);
            let w = RosserWeightTable::new(level, 2.0, 0)?;
            let r = rosser_identity(&problem, 2, 30, &w)?;
            if last.is_some_and(|l| r.rho_sum < l) {
                drops.push(format!("D=x^{e}/8"));
            }
            last = Some(r.rho_sum);
        }
        // A tendency, not a theorem: drops are reported without failing.
        Ok((
            true,
            if drops.is_empty() {
                "monotone".into()
            } else {
                format!("drops at {}", drops.join(", "))
            },
        ))
    });
}

fn chen(rec: &mut Recorder, budget: Budget) {
    let ns: Vec<u64> = match budget {
        Budget::Small => vec![10_000, 10_100, 10_200, 30_030],
        Budget::Full => (10_000..=10_200).step_by(2).chain([30_030]).collect(),
    };
    rec.check(format!("decomposition inequality for {} values of N", ns.len()), || {
        for &n in &ns {
            let r = chen_decomposition(n)?;
            if !r.holds {
                return Ok((false, format!("N={n}: lhs={} rhs={}", r.lhs, r.rhs)));
            }
        }
        Ok((true, String::new()))
    });
    let n = budget.pick(100_000, 1_000_000);
    rec.check(format!("positive weight implies P2, n<{n}"), || {
        let (checked, violations) = chen_implication_check(n)?;
        Ok((
            violations == 0 && checked > 0,
            format!("{checked} checked, {violations} violations"),
        ))
    });
}

/// Parses a suite name as used on the command line.
pub fn parse_suite(name: &str) -> Result<Suite> {
    std::iter::once(Suite::All)
        .chain(Suite::EACH)
        .find(|s| s.name() == name)
        .ok_or_else(|| invalid(format!("unknown suite `{name}`")))
}
