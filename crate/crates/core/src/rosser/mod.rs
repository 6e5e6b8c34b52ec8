//! Rosser's combinatorial sieve, the linear-sieve functions and Chen's weights.

mod chen;
mod functions;
mod identities;
mod linear;
mod weights;

pub use chen::{
    chen_decomposition, chen_implication_check, chen_weight, singular_factor, twin_prime_constant, ChenReport,
    CHEN_N_MAX,
};
pub use functions::{
    phi0_closed, phi1_closed, solve_sieve_functions, step_halving_change, two_exp_gamma, SieveFunctionTable,
    CLOSED_FORM_TOLERANCE, EULER_GAMMA, MAX_STEP, MAX_TAU,
};
pub use identities::{
    buchstab_check, chain_agreement, rosser_identity, truncation_inequality_check, BuchstabReport, RosserIdentity,
    TruncationReport,
};
pub use linear::{linear_sieve_bound, parity_extremal, ParityReport, DEFAULT_EPSILON, LINEAR_BETA, PARITY_X_MAX};
pub use weights::{for_each_weighted_divisor, RosserWeightTable, WeightKind};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::ProblemSpec;

    #[test]
    fn buchstab_examples() {
        let p = ProblemSpec::Interval { x: 100, y: 100 }.build().unwrap();
        let b = buchstab_check(&p, 2, 6).unwrap();
        assert!(b.holds);
        assert_eq!(b.initial, 100);
        let same = buchstab_check(&p, 7, 7).unwrap();
        assert_eq!(same.removed, 0);
        assert!(same.holds);
        let t = ProblemSpec::Twin { x: 1000 }.build().unwrap();
        assert!(buchstab_check(&t, 3, 10).unwrap().holds);
    }

    #[test]
    fn rosser_examples() {
        let t = ProblemSpec::Twin { x: 1000 }.build().unwrap();
        let lower = rosser_identity(&t, 2, 15, &RosserWeightTable::new(1000.0, 2.0, 0).unwrap()).unwrap();
        let upper = rosser_identity(&t, 2, 15, &RosserWeightTable::new(1000.0, 2.0, 1).unwrap()).unwrap();
        for r in [&lower, &upper] {
            assert!(r.identity_holds && r.one_sided_holds && r.v_identity_holds, "{r:?}");
        }
        assert!(lower.rho_sum <= lower.lhs as i64 && upper.lhs as i64 <= upper.rho_sum);
        let i = ProblemSpec::Interval { x: 10_000, y: 10_000 }.build().unwrap();
        for r in 0..2 {
            let w = RosserWeightTable::new(10_000.0, 2.0, r).unwrap();
            let rep = rosser_identity(&i, 2, 30, &w).unwrap();
            assert!(rep.identity_holds && rep.one_sided_holds && rep.v_identity_holds);
        }
    }

    #[test]
    fn eta_one_reduces_to_legendre() {
        // A level no weighted product reaches keeps every eta at 1.
        let i = ProblemSpec::Interval { x: 1000, y: 1000 }.build().unwrap();
        let w = RosserWeightTable::new(1e300, 2.0, 0).unwrap();
        let rep = rosser_identity(&i, 2, 20, &w).unwrap();
        assert_eq!(rep.sigma_terms, 0);
        assert_eq!(rep.rho_sum, rep.lhs as i64);
        assert_eq!(rep.rho_terms, 1 << 8);
    }

    #[test]
    fn truncation_examples() {
        assert!(truncation_inequality_check(8000.0, 2.0, 0, 20).unwrap().holds());
        assert!(truncation_inequality_check(8000.0, 2.0, 1, 20).unwrap().holds());
        assert!(truncation_inequality_check(50625.0, 3.0, 1, 15).unwrap().holds());
        assert!(truncation_inequality_check(100.0, 2.0, 1, 20).is_err());
    }

    #[test]
    fn chain_agreement_small() {
        assert_eq!(chain_agreement(5000, 1000.0, 2.0).unwrap(), 0);
    }
}
