mod common;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use proptest::prelude::*;
use sievekit::problem::ResidueSystem;
use sievekit::selberg::{
    dual_double_sum_exact, linnik_bound, optimal_lambda, pseudo_character_matrix, quadratic_form,
    quadratic_form_diagonal, selberg_upper_bound, selberg_upper_bound_f64, squarefree_table, LambdaWeights,
};
use sievekit::{ExactLambdaWeights, LambdaWeightsF64, ProblemSpec, Rational, Scalar};

/// `Omega(p)` for each prime below `z`: `sizes[i]` classes picked from `picks`.
fn residues(z: u64, sizes: &[u8], picks: &[u64]) -> ResidueSystem {
    let mut map = BTreeMap::new();
    for (i, p) in common::primes_below(z).into_iter().enumerate() {
        let want = match sizes[i % sizes.len()] % 3 {
            0 => 1,
            1 => 2,
            _ => p / 2,
        }
        .min(p - 1);
        let mut classes = Vec::new();
        let mut j = i;
        while (classes.len() as u64) < want {
            let c = picks[j % picks.len()] % p;
            if !classes.contains(&c) {
                classes.push(c);
            } else {
                classes.push((0..p).find(|c| !classes.contains(c)).unwrap());
            }
            j += 1;
        }
        map.insert(p, classes);
    }
    ResidueSystem::explicit(map).unwrap()
}

fn system() -> impl Strategy<Value = (u64, ResidueSystem)> {
    (
        2u64..=30,
        prop::collection::vec(any::<u8>(), 1..10),
        prop::collection::vec(any::<u64>(), 1..10),
    )
        .prop_map(|(z, s, p)| (z, residues(z, &s, &p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn optimum_is_one_over_g((z, r) in system()) {
        let w: ExactLambdaWeights = optimal_lambda(z, &r).unwrap();
        let s = quadratic_form(&w, &r).unwrap();
        prop_assert_eq!(&s * &w.g, Rational::one());
        prop_assert_eq!(quadratic_form_diagonal(&w, &r).unwrap(), s);
        prop_assert!(w.values.values().all(|l| l.abs_val() <= Rational::one()));
        prop_assert_eq!(w.get(1), Rational::one());
    }

    #[test]
    fn optimum_is_minimal((z, r) in system(), noise in prop::collection::vec((-20i64..=20, 1i64..=10), 100)) {
        let w: ExactLambdaWeights = optimal_lambda(z, &r).unwrap();
        let s = quadratic_form(&w, &r).unwrap();
        let table = squarefree_table(z, &r).unwrap();
        for (k, &(a, b)) in noise.iter().enumerate() {
            let mut values = BTreeMap::new();
            for (i, e) in table.iter().enumerate() {
                let v = if e.d == 1 {
                    Rational::one()
                } else {
                    let (a2, b2) = noise[(k + i) % noise.len()];
                    Rational::new((a * a2).into(), (b * b2).into()) / Rational::from_integer(20.into())
                };
                values.insert(e.d, v);
            }
            let other = LambdaWeights::from_values(z, values);
            prop_assert!(quadratic_form(&other, &r).unwrap() >= s);
        }
    }

    #[test]
    fn dual_form_equals_quadratic_form((z, r) in system()) {
        let z = z.min(20);
        let w: ExactLambdaWeights = optimal_lambda(z, &r).unwrap();
        prop_assert_eq!(dual_double_sum_exact(&w, &r).unwrap(), quadratic_form(&w, &r).unwrap());
    }
}

#[test]
fn float_weights_track_exact_weights() {
    let r = ResidueSystem::pair(-2);
    let exact: ExactLambdaWeights = optimal_lambda(30, &r).unwrap();
    let float: LambdaWeightsF64 = optimal_lambda(30, &r).unwrap();
    for (d, v) in &exact.values {
        assert!((float.get(*d) - v.to_f64()).abs() < 1e-12);
    }
    let single: sievekit::LambdaWeightsF32 = optimal_lambda(30, &r).unwrap();
    assert!((single.g as f64 - exact.g.to_f64()).abs() < 1e-4 * exact.g.to_f64());
}

#[test]
fn bounds_exceed_brute_force_counts() {
    for x in [500u64, 2000, 7000] {
        let specs = [
            (ProblemSpec::Interval { x, y: x }, common::interval(x, x)),
            (ProblemSpec::Twin { x }, common::twin(x)),
            (ProblemSpec::Goldbach { n: x }, common::goldbach(x)),
        ];
        for (spec, elems) in specs {
            let p = spec.build().unwrap();
            for z in [2u64, 5, 11, 19, 29] {
                let oracle = common::sift(&elems, z);
                let s = selberg_upper_bound(&p, z, false).unwrap();
                let crude = selberg_upper_bound(&p, z, true).unwrap();
                let l = linnik_bound(&p, z).unwrap();
                assert_eq!(s.exact, oracle);
                for r in [&s, &crude, &l] {
                    assert!(r.bound >= oracle as f64, "{} {spec} z={z}", r.method);
                }
                assert!(crude.bound >= s.bound);
                let f = selberg_upper_bound_f64(&p, z, false).unwrap();
                assert!((f.bound - s.bound).abs() <= 1e-9 * s.bound.max(1.0));
            }
        }
    }
}

#[test]
fn linnik_interval_hundred() {
    let p = ProblemSpec::Interval { x: 100, y: 100 }.build().unwrap();
    let r = linnik_bound(&p, 5).unwrap();
    assert_eq!(r.bound, 50.0);
    assert_eq!(r.exact, common::sift(&common::interval(100, 100), 5));
    assert_eq!(r.exact, 33);
}

#[test]
fn pseudo_character_kernel_recovers_the_count() {
    for z in [5u64, 12, 30] {
        let r = ResidueSystem::pair(-2);
        let m = pseudo_character_matrix(z, &r, 1, 500).unwrap();
        let rec = m.linnik_recovery();
        assert!(rec.holds, "{rec:?}");
        assert_eq!(rec.sifted, common::sift(&common::twin(503), z));
        assert!(!m.g.is_zero());
    }
}
