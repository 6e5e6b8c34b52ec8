//! Sifting problems: sequences, densities, residue systems and the exact oracle.

mod counter;
mod density;
mod model;
mod residues;
mod spec;

pub use counter::{ClassCounts, SiftCounter};
pub use density::{DensityRule, SiftingDensity};
pub use model::{remainder, Elements, OmegaForm, SieveProblem, ENUMERATION_CAP};
pub use residues::{count_residue, crt_classes, mod_inverse, ResidueRule, ResidueSystem};
pub use spec::{build_problem, ProblemSpec, PRODUCT_SEQUENCE_MAX};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::arith::li;
    use crate::scalar::{big, rational_from_f64};
    use crate::Rational;

    #[test]
    fn interval_builder() {
        let p = ProblemSpec::Interval { x: 30, y: 30 }.build().unwrap();
        assert_eq!(p.elements.to_vec(), (1..=30).collect::<Vec<_>>());
        assert_eq!(p.x_scale, big(30));
        assert_eq!(p.density.omega(7), big(1));
    }

    #[test]
    fn twin_and_shifted_builders() {
        let t = ProblemSpec::Twin { x: 100 }.build().unwrap();
        assert_eq!(t.density.omega(2), big(1));
        assert_eq!(t.density.omega(3), big(2));
        assert_eq!(t.x_scale, big(100));
        let s = ProblemSpec::ShiftedPrime { x: 100 }.build().unwrap();
        assert_eq!(s.density.omega(3), big(3) / big(2));
        assert_eq!(s.x_scale, rational_from_f64(li(100.0)));
        assert_eq!(s.elements.to_vec()[..3], [5, 7, 9]);
    }

    #[test]
    fn class_counts() {
        let p = ProblemSpec::Interval { x: 30, y: 30 }.build().unwrap();
        assert_eq!(p.count_in_class(6).unwrap(), (5, big(0)));
        let (n, r) = p.count_in_class(1).unwrap();
        assert_eq!((n, r), (30, big(0)));

        let t = ProblemSpec::Twin { x: 100 }.build().unwrap();
        let oracle = (1..98u64).filter(|n| n * (n + 2) % 3 == 0).count() as u64;
        let (n, r) = t.count_in_class(3).unwrap();
        assert_eq!(n, oracle);
        assert_eq!(n, 65);
        assert_eq!(r, big(65) - big(200) / big(3));
        assert!(t.count_in_class(12).is_err());
    }

    #[test]
    fn sift_examples() {
        let p = ProblemSpec::Interval { x: 30, y: 30 }.build().unwrap();
        assert_eq!(p.exact_sift(6).unwrap(), 8);
        let t = ProblemSpec::Twin { x: 100 }.build().unwrap();
        assert_eq!(t.exact_sift(2).unwrap(), 97);
        let h = ProblemSpec::Interval { x: 100, y: 100 }.build().unwrap();
        assert_eq!(h.exact_sift(11).unwrap(), 22);
        assert_eq!(h.exact_sift_product(11).unwrap(), 22);
    }

    #[test]
    fn progression_shape() {
        let p = ProblemSpec::Progression {
            x: 100,
            k: 4,
            l: 1,
            y: None,
        }
        .build()
        .unwrap();
        let v = p.elements.to_vec();
        assert_eq!(v.first(), Some(&1));
        assert_eq!(v.last(), Some(&97));
        assert_eq!(p.x_scale, big(25));
        assert_eq!(p.exact_sift_omega(10).unwrap(), p.exact_sift_product(10).unwrap());
        let bad = ProblemSpec::Progression {
            x: 100,
            k: 6,
            l: 3,
            y: None,
        };
        assert!(bad.build().is_err());
    }

    #[test]
    fn parity_contains_one() {
        let p = ProblemSpec::Parity { x: 20, r: 0 }.build().unwrap();
        assert_eq!(p.elements.to_vec(), vec![1, 4, 6, 9, 10, 14, 15, 16]);
        assert_eq!(p.x_scale, big(10));
    }

    #[test]
    fn mapping_builder_and_toml() {
        let mut m = BTreeMap::new();
        m.insert("x".to_string(), 1000);
        assert!(matches!(
            build_problem("interval", &m),
            Err(crate::SieveError::MissingParameter("y"))
        ));
        m.insert("y".to_string(), 10);
        assert_eq!(build_problem("interval", &m).unwrap().len(), 10);

        let spec = ProblemSpec::Goldbach { n: 100 };
        let text = spec.to_toml().unwrap();
        assert!(text.contains("N = 100"));
        assert_eq!(ProblemSpec::from_toml(&text).unwrap(), spec);
        let g = spec.build().unwrap();
        assert_eq!(g.density.omega(5), big(1));
        assert_eq!(g.x_scale, Rational::from_integer(100.into()));
    }
}
