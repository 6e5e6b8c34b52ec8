//! Ground-truth prime tables and elementary multiplicative functions.

mod counts;
mod factor;
mod sieve;

pub use counts::{li, mean_remainder_sum, pi_count, remainder_e, PiVariant, LI_TOLERANCE, MEAN_REMAINDER_CAP};
pub use factor::{
    big_omega, binomial, coprime, mobius, prime_divisors, totient, truncated_mobius, truncated_mobius_closed,
    FactoredSquarefree,
};
pub use sieve::{
    big_omega_table, is_prime_trial, isqrt, primes_below, primes_up_to_with_cap, PrimeTable, DEFAULT_PRIME_CAP,
};

/// Segmented prime table with the default budget.
pub fn primes_up_to(limit: u64) -> crate::Result<PrimeTable> {
    PrimeTable::new(limit)
}
