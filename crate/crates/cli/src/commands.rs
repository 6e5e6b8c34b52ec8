use std::collections::BTreeMap;

use sievekit::brun::{pure_sieve_bound, PureSieveConfig, RemainderMode};
use sievekit::largesieve::randomized_trials;
use sievekit::legendre::legendre_bound;
use sievekit::problem::build_problem;
use sievekit::rosser::{
    chen_decomposition, linear_sieve_bound, solve_sieve_functions, DEFAULT_EPSILON, MAX_STEP, MAX_TAU,
};
use sievekit::selberg::{linnik_bound, selberg_upper_bound};
use sievekit::verify::{parse_suite, run_suite, Budget, VerifyReport};
use sievekit::{BoundReport, Direction, SieveError, SieveProblem};

use crate::args::{
    BoundArgs, BoundMethod, BudgetArg, ChenArgs, DirectionArg, LsieveArgs, ProblemArgs, ProblemKind, SievefunArgs,
    SiftArgs, VerifyArgs,
};
use crate::table::{Table, Value};

fn problem(args: &ProblemArgs) -> sievekit::Result<SieveProblem> {
    let mut params = BTreeMap::new();
    let mut put = |key: &str, v: Option<u64>| {
        if let Some(v) = v {
            params.insert(key.to_string(), v);
        }
    };
    put("x", args.x);
    put(
        "y",
        args.y.or(if args.problem == ProblemKind::Interval {
            args.x
        } else {
            None
        }),
    );
    put("N", args.big_n);
    put("k", args.k);
    put("l", args.l);
    put("r", args.omega_parity);
    build_problem(args.problem.tag(), &params)
}

pub fn sift(args: &SiftArgs) -> sievekit::Result<Table> {
    let p = problem(&args.problem)?;
    let mut t = Table::new(&["problem", "size", "z", "sifted"]);
    for &z in &args.z.0 {
        t.push(vec![
            p.descriptor().into(),
            p.len().into(),
            z.into(),
            p.exact_sift(z)?.into(),
        ]);
    }
    Ok(t)
}

pub const BOUND_COLUMNS: [&str; 14] = [
    "method",
    "problem",
    "z",
    "D",
    "beta",
    "ell",
    "parity",
    "direction",
    "main",
    "remainder_bound",
    "bound",
    "exact",
    "margin",
    "verdict",
];

fn bound_row(r: &BoundReport) -> Vec<Value> {
    vec![
        r.method.to_string().into(),
        r.problem.clone().into(),
        r.params.z.into(),
        r.params.level.into(),
        r.params.beta.into(),
        r.params.ell.into(),
        r.params.parity.map(u64::from).into(),
        r.direction.to_string().into(),
        r.main.into(),
        r.remainder_bound.into(),
        r.bound.into(),
        r.exact.into(),
        r.margin.into(),
        if r.is_valid() { "valid" } else { "violated" }.into(),
    ]
}

pub fn bound(args: &BoundArgs) -> sievekit::Result<Table> {
    let p = problem(&args.problem)?;
    let direction = match args.direction {
        DirectionArg::Upper => Direction::Upper,
        DirectionArg::Lower => Direction::Lower,
    };
    let mode = if args.crude {
        RemainderMode::WorstCase
    } else {
        RemainderMode::True
    };
    let parity = u8::try_from(args.r)
        .ok()
        .filter(|&r| r <= 1)
        .ok_or_else(|| SieveError::InvalidArgument(format!("rosser parity must be 0 or 1, got {}", args.r)))?;
    let functions = match args.method {
        BoundMethod::Rosser => Some(solve_sieve_functions(MAX_TAU, MAX_STEP)?),
        _ => None,
    };
    let mut t = Table::new(&BOUND_COLUMNS);
    for &z in &args.z.0 {
        let reports = match args.method {
            BoundMethod::Legendre => vec![legendre_bound(&p, z, direction)?],
            BoundMethod::BrunPure => args
                .ell
                .0
                .iter()
                .map(|&ell| {
                    let config = PureSieveConfig {
                        z,
                        ell,
                        parity: direction,
                    };
                    pure_sieve_bound(&p, &config, mode)
                })
                .collect::<sievekit::Result<_>>()?,
            BoundMethod::Selberg => vec![selberg_upper_bound(&p, z, args.crude)?],
            BoundMethod::Linnik => vec![linnik_bound(&p, z)?],
            BoundMethod::Rosser => {
                let level = args.level.unwrap_or(p.len() as f64);
                let epsilon = args.epsilon.unwrap_or(DEFAULT_EPSILON);
                let table = functions.as_ref().expect("rosser table");
                vec![linear_sieve_bound(&p, z as f64, level, parity, epsilon, table)?]
            }
        };
        for r in &reports {
            t.push(bound_row(r));
        }
    }
    Ok(t)
}

pub fn lsieve(args: &LsieveArgs, seed: u64) -> sievekit::Result<Table> {
    let rows = randomized_trials(
        args.big_q,
        usize::try_from(args.len).unwrap_or(usize::MAX),
        usize::try_from(args.trials).unwrap_or(usize::MAX),
        usize::try_from(args.duality_runs).unwrap_or(usize::MAX),
        seed,
    )?;
    let mut t = Table::new(&["inequality", "trials", "violations", "worst", "seed"]);
    for r in rows {
        t.push(vec![
            r.inequality.into(),
            (r.trials as u64).into(),
            (r.violations as u64).into(),
            r.worst.into(),
            seed.into(),
        ]);
    }
    Ok(t)
}

pub fn sievefun(args: &SievefunArgs) -> sievekit::Result<Table> {
    if args.every == 0 {
        return Err(SieveError::InvalidArgument("--every must be positive".into()));
    }
    let table = solve_sieve_functions(args.tau_max, args.step)?;
    let mut t = Table::new(&["tau", "phi0", "phi1"]);
    for (i, (tau, p0, p1)) in table.rows().enumerate() {
        if (i as u64 + 1) % args.every == 0 {
            t.push(vec![tau.into(), p0.into(), p1.into()]);
        }
    }
    Ok(t)
}

pub fn chen(args: &ChenArgs) -> sievekit::Result<Table> {
    let mut t = Table::new(&[
        "N",
        "lhs",
        "sifted",
        "first_sum",
        "triple_count",
        "rhs",
        "holds",
        "weight_sum",
        "singular_factor",
        "shape",
        "ratio",
    ]);
    for &n in &args.big_n.0 {
        let r = chen_decomposition(n)?;
        t.push(vec![
            r.big_n.into(),
            r.lhs.into(),
            r.sifted.into(),
            r.first_sum.into(),
            r.triple_count.into(),
            sievekit::Scalar::to_f64(&r.rhs).into(),
            r.holds.into(),
            sievekit::Scalar::to_f64(&r.weight_sum).into(),
            sievekit::Scalar::to_f64(&r.singular_factor).into(),
            r.shape.into(),
            r.ratio.into(),
        ]);
    }
    Ok(t)
}

pub fn verify(args: &VerifyArgs, seed: u64) -> sievekit::Result<(Table, VerifyReport)> {
    let suite = parse_suite(&args.suite)?;
    let budget = match args.budget {
        BudgetArg::Small => Budget::Small,
        BudgetArg::Full => Budget::Full,
    };
    let report = run_suite(suite, budget, seed);
    Ok((verify_table(&report), report))
}

pub fn verify_table(report: &VerifyReport) -> Table {
    let mut t = Table::new(&["suite", "check", "passed", "detail"]);
    for c in &report.checks {
        t.push(vec![
            c.suite.clone().into(),
            c.name.clone().into(),
            c.passed.into(),
            c.detail.clone().into(),
        ]);
    }
    t
}
