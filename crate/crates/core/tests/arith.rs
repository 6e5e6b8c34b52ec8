mod common;

use proptest::prelude::*;
use sievekit::arith::{
    big_omega, mobius, pi_count, primes_up_to, totient, truncated_mobius, truncated_mobius_closed, FactoredSquarefree,
    PiVariant, PrimeTable,
};

#[test]
fn mobius_matches_trial_division() {
    for n in 1..=100_000u64 {
        assert_eq!(mobius(n), common::mobius(n), "n = {n}");
    }
}

#[test]
fn truncated_mobius_sum_for_every_squarefree_m() {
    assert!(truncated_mobius(&FactoredSquarefree::one(), 0).is_err());
    for m in 2..=10_000u64 {
        let Ok(f) = FactoredSquarefree::factor(m) else {
            continue;
        };
        let primes = common::factorize(m);
        let nu = primes.len();
        for ell in 0..=nu {
            let direct: i64 = common::subsets(&primes)
                .iter()
                .filter(|d| d.len() <= ell)
                .map(|d| if d.len() % 2 == 0 { 1 } else { -1 })
                .sum();
            assert_eq!(truncated_mobius(&f, ell).unwrap(), direct, "m = {m}, ell = {ell}");
            assert_eq!(truncated_mobius_closed(nu, ell), direct);
        }
    }
}

#[test]
fn segmented_table_matches_plain_sieve() {
    let limit = 10_000_000;
    let seg = PrimeTable::new(limit).unwrap();
    let plain = PrimeTable::unsegmented(limit).unwrap();
    assert_eq!(seg.primes(), plain.primes());
    assert_eq!(seg.len(), 664_579);
}

#[test]
fn small_counts() {
    let t = primes_up_to(1002).unwrap();
    assert_eq!(pi_count(&t, 100, PiVariant::Plain).unwrap(), 25);
    assert_eq!(
        pi_count(&t, 1000, PiVariant::Twin).unwrap(),
        common::twin_prime_pairs(1000)
    );
    assert_eq!(
        pi_count(&t, 1000, PiVariant::Progression { k: 4, l: 3 }).unwrap(),
        common::pi_progression(1000, 4, 3)
    );
    assert!(pi_count(&t, 2000, PiVariant::Plain).is_err());
}

proptest! {
    #[test]
    fn progression_counts_partition(x in 2u64..20_000, k in 1u64..60) {
        let t = primes_up_to(x).unwrap();
        let total: u64 = (0..k)
            .filter(|&l| common::gcd(l, k) == 1)
            .map(|l| pi_count(&t, x, PiVariant::Progression { k, l }).unwrap())
            .sum();
        let dividing = common::primes_below(x).into_iter().filter(|p| k % p == 0).count() as u64;
        prop_assert_eq!(total + dividing, pi_count(&t, x, PiVariant::Plain).unwrap());
    }

    #[test]
    fn totient_and_omega(n in 1u64..1_000_000) {
        let f = common::factorize(n);
        prop_assert_eq!(big_omega(n) as usize, f.len());
        let phi = (1..=n.min(2000)).filter(|&a| common::gcd(a, n) == 1).count() as u64;
        if n <= 2000 {
            prop_assert_eq!(totient(n), phi);
        }
        let mut distinct = f.clone();
        distinct.dedup();
        let product: u64 = distinct.iter().map(|p| p - 1).product::<u64>()
            * f.iter().product::<u64>() / distinct.iter().product::<u64>();
        prop_assert_eq!(totient(n), product);
    }
}
