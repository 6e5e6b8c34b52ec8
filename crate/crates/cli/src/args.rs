use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sievekit", version, about = "Sieve bounds checked against exact counts")]
#[command(args_override_self = true)]
pub struct Cli {
    /// TOML file whose keys are the long flag names (plus `command`).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<std::path::PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<std::path::PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact sifted counts `|S(A, z)|`.
    Sift(SiftArgs),
    /// Sieve bounds next to the exact count.
    Bound(BoundArgs),
    /// Randomized large-sieve inequality checks.
    Lsieve(LsieveArgs),
    /// Table of the linear sieve functions.
    Sievefun(SievefunArgs),
    /// Chen's inequality for even `N`.
    Chen(ChenArgs),
    /// The invariant suite; exits 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemKind,
    #[arg(long, value_parser = parse_count)]
    pub x: Option<u64>,
    /// Interval length; defaults to `x`.
    #[arg(long, value_parser = parse_count)]
    pub y: Option<u64>,
    #[arg(long = "N", value_parser = parse_count)]
    pub big_n: Option<u64>,
    #[arg(long, value_parser = parse_count)]
    pub k: Option<u64>,
    #[arg(long, value_parser = parse_count)]
    pub l: Option<u64>,
    /// Parity of the prime-factor count for the parity problem.
    #[arg(long = "omega-parity", value_parser = parse_count)]
    pub omega_parity: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    Interval,
    Twin,
    Goldbach,
    ShiftedPrime,
    Progression,
    Parity,
}

impl ProblemKind {
    pub fn tag(self) -> &'static str {
        match self {
            ProblemKind::Interval => "interval",
            ProblemKind::Twin => "twin",
            ProblemKind::Goldbach => "goldbach",
            ProblemKind::ShiftedPrime => "shifted_prime",
            ProblemKind::Progression => "progression",
            ProblemKind::Parity => "parity",
        }
    }
}

#[derive(Args, Debug)]
pub struct SiftArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Sifting limits: `20`, `2,3,5` or `2..30[:step]` (inclusive).
    #[arg(long, value_parser = parse_sweep, default_value = "2..30")]
    pub z: Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundMethod {
    Legendre,
    BrunPure,
    Selberg,
    Linnik,
    Rosser,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Upper,
    Lower,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub method: BoundMethod,
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_parser = parse_sweep)]
    pub z: Sweep,
    /// Direction for legendre and brun-pure.
    #[arg(long, value_enum, default_value_t = DirectionArg::Upper)]
    pub direction: DirectionArg,
    /// Truncation for brun-pure.
    #[arg(long, value_parser = parse_sweep, default_value = "2")]
    pub ell: Sweep,
    /// Level of distribution for rosser; defaults to the problem size.
    #[arg(long = "D", value_parser = parse_real)]
    pub level: Option<f64>,
    /// Rosser parity: 0 for the lower bound, 1 for the upper bound.
    #[arg(long, value_parser = parse_count, default_value = "1")]
    pub r: u64,
    /// Relative slack applied to the rosser bound.
    #[arg(long, value_parser = parse_real)]
    pub epsilon: Option<f64>,
    /// Use the worst-case remainder `|R_d| <= omega(d)` (brun-pure, selberg).
    #[arg(long)]
    pub crude: bool,
}

#[derive(Args, Debug)]
pub struct LsieveArgs {
    /// Largest Farey order.
    #[arg(long = "Q", value_parser = parse_count, default_value = "50")]
    pub big_q: u64,
    /// Largest coefficient length.
    #[arg(long = "N", value_parser = parse_count, default_value = "1000")]
    pub len: u64,
    #[arg(long, value_parser = parse_count, default_value = "1000")]
    pub trials: u64,
    #[arg(long = "duality-runs", value_parser = parse_count, default_value = "10")]
    pub duality_runs: u64,
}

#[derive(Args, Debug)]
pub struct SievefunArgs {
    #[arg(long = "tau-max", value_parser = parse_real, default_value = "10")]
    pub tau_max: f64,
    #[arg(long, value_parser = parse_real, default_value = "1e-3")]
    pub step: f64,
    /// Emit every `every`-th grid point.
    #[arg(long, value_parser = parse_count, default_value = "1")]
    pub every: u64,
}

#[derive(Args, Debug)]
pub struct ChenArgs {
    /// Even `N`: `30030`, a list, or `10000..10200:2`.
    #[arg(long = "N", value_parser = parse_sweep)]
    pub big_n: Sweep,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, value_enum, default_value_t = BudgetArg::Small)]
    pub budget: BudgetArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BudgetArg {
    Small,
    Full,
}

/// Most values a sweep may expand to.
pub const SWEEP_MAX: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep(pub Vec<u64>);

/// A non-negative integer, also written as `1e4` or `10000.0`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v < 0.0 || v.fract() != 0.0 || v > 9.007_199_254_740_992e15 {
        return Err(format!("`{s}` is not a non-negative integer"));
    }
    Ok(v as u64)
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(v)
}

pub fn parse_sweep(s: &str) -> Result<Sweep, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((lo, rest)) = part.split_once("..") {
            let (hi, step) = match rest.split_once(':') {
                Some((hi, step)) => (hi, parse_count(step)?),
                None => (rest, 1),
            };
            let (lo, hi) = (parse_count(lo)?, parse_count(hi)?);
            if step == 0 || lo > hi {
                return Err(format!("empty range `{part}`"));
            }
            if (hi - lo) / step >= SWEEP_MAX as u64 {
                return Err(format!("range `{part}` has more than {SWEEP_MAX} values"));
            }
            out.extend((lo..=hi).step_by(step as usize));
        } else {
            out.push(parse_count(part)?);
        }
        if out.len() > SWEEP_MAX {
            return Err(format!("sweep has more than {SWEEP_MAX} values"));
        }
    }
    Ok(Sweep(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e4"), Ok(10_000));
        assert_eq!(parse_count("250"), Ok(250));
        assert_eq!(parse_count("100.0"), Ok(100));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn sweeps() {
        assert_eq!(parse_sweep("20").unwrap().0, vec![20]);
        assert_eq!(parse_sweep("2..5").unwrap().0, vec![2, 3, 4, 5]);
        assert_eq!(
            parse_sweep("1e4..10006:2,30030").unwrap().0,
            vec![10000, 10002, 10004, 10006, 30030]
        );
        assert!(parse_sweep("5..2").is_err());
        assert!(parse_sweep("0..1e9").is_err());
    }
}
