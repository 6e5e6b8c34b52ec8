//! Selberg's quadratic-form sieve and its large-sieve dual.

mod bound;
mod pseudo;
mod weights;

pub use bound::{
    crude_remainder, dual_coefficients, dual_double_sum_exact, dual_points, linnik_bound, ramanujan_sum, selberg_tally,
    selberg_upper_bound, selberg_upper_bound_f64, SelbergTally, ENERGY_BUDGET, EXACT_DUAL_Z_CAP,
};
pub use pseudo::{
    pseudo_character, pseudo_character_matrix, LinnikRecovery, PseudoCharacterMatrix, PSEUDO_N_CAP, PSEUDO_Z_CAP,
};
pub use weights::{
    g_sum, h_factor, optimal_lambda, optimal_xi, quadratic_form, quadratic_form_diagonal, squarefree_table, xi_inverse,
    xi_transform, LambdaWeights, SquarefreeEntry,
};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use num_traits::One;

    use super::*;
    use crate::problem::{ProblemSpec, ResidueSystem};
    use crate::{Rational, Scalar};

    fn frac(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn h_and_g() {
        let zero = ResidueSystem::zero();
        assert_eq!(h_factor(1, &zero).unwrap(), Rational::one());
        assert_eq!(h_factor(2, &zero).unwrap(), Rational::one());
        assert_eq!(h_factor(6, &zero).unwrap(), frac(1, 2));
        assert_eq!(g_sum(2, &zero).unwrap(), Rational::one());
        assert_eq!(g_sum(4, &zero).unwrap(), frac(5, 2));
        assert_eq!(g_sum(5, &zero).unwrap(), frac(5, 2));
    }

    #[test]
    fn small_weights() {
        let zero = ResidueSystem::zero();
        let w = optimal_lambda::<Rational>(3, &zero).unwrap();
        assert_eq!(w.get(1), Rational::one());
        assert_eq!(w.get(2), -Rational::one());
        assert_eq!(quadratic_form(&w, &zero).unwrap(), frac(1, 2));
        let xi = xi_transform(&w, &zero).unwrap();
        assert_eq!(xi[&1], frac(1, 2));
        assert_eq!(xi, optimal_xi(3, &zero).unwrap());
        let two = optimal_lambda::<Rational>(2, &zero).unwrap();
        assert_eq!(two.values.len(), 1);
        assert_eq!(quadratic_form(&two, &zero).unwrap(), Rational::one());
    }

    #[test]
    fn weights_bounded_and_minimal() {
        let zero = ResidueSystem::zero();
        let w = optimal_lambda::<Rational>(10, &zero).unwrap();
        assert!(w.values.values().all(|l| l.abs_val() <= Rational::one()));
        let s = quadratic_form(&w, &zero).unwrap();
        assert_eq!(s, Rational::one() / &w.g);
        let mut perturbed = w.clone();
        *perturbed.values.get_mut(&2).unwrap() += frac(1, 10);
        assert!(quadratic_form(&perturbed, &zero).unwrap() > s);
        assert_eq!(quadratic_form_diagonal(&w, &zero).unwrap(), s);
    }

    #[test]
    fn xi_round_trip() {
        let twin = ResidueSystem::pair(-2);
        let mut values = BTreeMap::new();
        for (i, e) in squarefree_table(20, &twin).unwrap().iter().enumerate() {
            let v = if e.d == 1 {
                Rational::one()
            } else {
                frac(i as i64 % 7 - 3, 5)
            };
            values.insert(e.d, v);
        }
        let w = LambdaWeights::from_values(20, values);
        let xi = xi_transform(&w, &twin).unwrap();
        let back = xi_inverse(20, &xi, &twin).unwrap();
        for (d, v) in &w.values {
            // d = 2 has |Omega(2)| = 1 for the twin system, so every weight survives.
            assert_eq!(&back.get(*d), v, "d = {d}");
        }
        assert_eq!(
            quadratic_form(&w, &twin).unwrap(),
            quadratic_form_diagonal(&w, &twin).unwrap()
        );
    }

    #[test]
    fn ramanujan_sums() {
        assert_eq!(ramanujan_sum(1, 5), 1);
        assert_eq!(ramanujan_sum(6, 0), 2);
        assert_eq!(ramanujan_sum(5, 1), -1);
        assert_eq!(ramanujan_sum(6, 1), 1);
    }

    #[test]
    fn dual_equality() {
        for residues in [ResidueSystem::zero(), ResidueSystem::pair(-2)] {
            for z in [2, 3, 7, 12, 20] {
                let w = optimal_lambda::<Rational>(z, &residues).unwrap();
                assert_eq!(
                    dual_double_sum_exact(&w, &residues).unwrap(),
                    quadratic_form(&w, &residues).unwrap()
                );
            }
        }
    }

    #[test]
    fn linnik_interval_example() {
        let p = ProblemSpec::Interval { x: 100, y: 100 }.build().unwrap();
        let r = linnik_bound(&p, 5).unwrap();
        assert_eq!(r.bound, 50.0);
        assert_eq!(r.exact, 33);
        assert!(r.is_valid());
        assert_eq!(r.extras["exact_dual_checked"], 1.0);
        assert_eq!(r.extras["energy_checked"], 1.0);
        let two = linnik_bound(&p, 2).unwrap();
        assert_eq!(two.bound, 104.0);
    }

    #[test]
    fn selberg_examples() {
        let p = ProblemSpec::Interval { x: 100, y: 100 }.build().unwrap();
        let r = selberg_upper_bound(&p, 5, false).unwrap();
        assert_eq!(r.main, 40.0);
        assert!(r.is_valid());
        let crude = selberg_upper_bound(&p, 5, true).unwrap();
        assert!(crude.bound >= r.bound);
        let two = selberg_upper_bound(&p, 2, false).unwrap();
        assert_eq!(two.bound, 100.0);
        let t = ProblemSpec::Twin { x: 10_000 }.build().unwrap();
        let r = selberg_upper_bound(&t, 20, false).unwrap();
        assert!(r.is_valid());
        let f = selberg_upper_bound_f64(&t, 20, false).unwrap();
        assert!((f.bound - r.bound).abs() < 1e-6 * r.bound);
    }

    #[test]
    fn pseudo_characters() {
        let twin = ResidueSystem::pair(-2);
        let m = pseudo_character_matrix(12, &twin, 1, 200).unwrap();
        assert!(m.rows[0].iter().all(|&v| v == 1.0));
        // n = 2 avoids Omega(3) = {0, 1}.
        let row3 = m.moduli.iter().position(|&q| q == 3).unwrap();
        let h3 = 2.0f64;
        assert!((m.rows[row3][1] + h3.sqrt()).abs() < 1e-12);
        let rec = m.linnik_recovery();
        assert!(rec.holds, "{rec:?}");
        assert_eq!(
            rec.sifted,
            crate::problem::ProblemSpec::Twin { x: 203 }
                .build()
                .unwrap()
                .exact_sift(12)
                .unwrap()
        );
    }
}
