use crate::error::{invalid, Result, SieveError};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Largest admitted grid step.
pub const MAX_STEP: f64 = 1e-3;
/// Largest tabulated argument.
pub const MAX_TAU: f64 = 20.0;
/// Agreement required with the closed forms on `[2, 4]`.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-6;

/// `phi_0`, `phi_1` on the grid `tau_i = i h`, `i >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SieveFunctionTable {
    pub step: f64,
    /// Grid points per unit, `1 / h`.
    pub per_unit: usize,
    pub tau: Vec<f64>,
    pub phi0: Vec<f64>,
    pub phi1: Vec<f64>,
}

/// `2 e^gamma`.
pub fn two_exp_gamma() -> f64 {
    2.0 * EULER_GAMMA.exp()
}

/// `tau phi_0(tau) = 2 e^gamma log(tau - 1)` for `2 <= tau <= 4`.
pub fn phi0_closed(tau: f64) -> f64 {
    two_exp_gamma() * (tau - 1.0).ln() / tau
}

/// `tau phi_1(tau) = 2 e^gamma` for `0 < tau <= 3`.
pub fn phi1_closed(tau: f64) -> f64 {
    two_exp_gamma() / tau
}

/// Integrates the delay system in its integral form with the trapezoid rule.
///
/// For `tau > 2`, `tau phi_r(tau) = 2 phi_r(2) + int_2^tau phi_{r+1}(t - 1) dt`.
pub fn solve_sieve_functions(tau_max: f64, step: f64) -> Result<SieveFunctionTable> {
    if !(step > 0.0 && step <= MAX_STEP) {
        return Err(invalid(format!("step must lie in (0, 1e-3], got {step}")));
    }
    if !(2.0..=MAX_TAU).contains(&tau_max) {
        return Err(invalid(format!("tau_max must lie in [2, 20], got {tau_max}")));
    }
    let per_unit = (1.0 / step).round() as usize;
    if ((per_unit as f64) * step - 1.0).abs() > 1e-9 {
        return Err(invalid(format!("1 / step must be an integer, got step {step}")));
    }
    let h = 1.0 / per_unit as f64;
    let n = (tau_max * per_unit as f64).round() as usize;
    let two = 2 * per_unit;
    let c = two_exp_gamma();
    let mut tau = Vec::with_capacity(n + 1);
    let mut phi0 = Vec::with_capacity(n + 1);
    let mut phi1 = Vec::with_capacity(n + 1);
    // Index 0 stands for tau = 0, where phi_1 is singular; it is never read below.
    tau.push(0.0);
    phi0.push(0.0);
    phi1.push(f64::INFINITY);
    for i in 1..=n.min(two) {
        let t = i as f64 * h;
        tau.push(t);
        phi0.push(0.0);
        phi1.push(c / t);
    }
    let mut int0 = 0.0; // int_2^tau phi_1(t - 1) dt
    let mut int1 = 0.0; // int_2^tau phi_0(t - 1) dt
    for i in two + 1..=n {
        let t = i as f64 * h;
        let (a, b) = (i - 1 - per_unit, i - per_unit);
        int0 += 0.5 * h * (phi1[a] + phi1[b]);
        int1 += 0.5 * h * (phi0[a] + phi0[b]);
        tau.push(t);
        phi0.push((2.0 * phi0[two] + int0) / t);
        phi1.push((2.0 * phi1[two] + int1) / t);
    }
    let table = SieveFunctionTable {
        step: h,
        per_unit,
        tau,
        phi0,
        phi1,
    };
    let mismatch = table.closed_form_error();
    if mismatch > CLOSED_FORM_TOLERANCE {
        return Err(SieveError::StepTooCoarse { step, mismatch });
    }
    Ok(table)
}

impl SieveFunctionTable {
    pub fn tau_max(&self) -> f64 {
        *self.tau.last().expect("nonempty grid")
    }

    /// Largest deviation from the closed forms on the grid within `[2, 4]` and `(0, 3]`.
    pub fn closed_form_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, &t) in self.tau.iter().enumerate().skip(1) {
            if (2.0..=4.0).contains(&t) {
                worst = worst.max((self.phi0[i] - phi0_closed(t)).abs());
            }
            if t <= 3.0 {
                worst = worst.max((self.phi1[i] - phi1_closed(t)).abs());
            }
        }
        worst
    }

    /// `phi_r(tau)` by linear interpolation; clamped to the last node beyond the table.
    pub fn eval(&self, r: u8, tau: f64) -> f64 {
        let values = if r % 2 == 0 { &self.phi0 } else { &self.phi1 };
        if tau <= 0.0 {
            return if r % 2 == 0 { 0.0 } else { f64::INFINITY };
        }
        let x = tau * self.per_unit as f64;
        let i = x.floor() as usize;
        if i + 1 >= values.len() {
            return *values.last().expect("nonempty grid");
        }
        if i == 0 {
            return if r % 2 == 0 { 0.0 } else { phi1_closed(tau) };
        }
        let frac = x - i as f64;
        values[i] * (1.0 - frac) + values[i + 1] * frac
    }

    /// Rows `(tau, phi_0, phi_1)` for `tau > 0`.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (1..self.tau.len()).map(|i| (self.tau[i], self.phi0[i], self.phi1[i]))
    }
}

/// Largest change of `phi_0`, `phi_1` on the coarse grid when the step is halved.
pub fn step_halving_change(tau_max: f64, step: f64) -> Result<f64> {
    let coarse = solve_sieve_functions(tau_max, step)?;
    let fine = solve_sieve_functions(tau_max, step / 2.0)?;
    let mut worst = 0.0f64;
    for i in 1..coarse.tau.len() {
        let j = 2 * i;
        worst = worst
            .max((coarse.phi0[i] - fine.phi0[j]).abs())
            .max((coarse.phi1[i] - fine.phi1[j]).abs());
    }
    Ok(worst)
}
