//! Sieve methods with exact oracles.

pub mod arith;
pub mod brun;
pub mod divisors;
pub mod error;
pub mod largesieve;
pub mod legendre;
pub mod problem;
pub mod quad;
pub mod report;
pub mod rosser;
pub mod scalar;
pub mod selberg;
pub mod verify;

pub use error::{Result, SieveError};
pub use scalar::Scalar;

/// Arbitrary-precision rational used by every exact identity.
pub type Rational = num_rational::BigRational;

pub use problem::{ProblemSpec, SieveProblem};
pub use report::{BoundReport, Direction, Method, Verdict};

pub type ExactLambdaWeights = selberg::LambdaWeights<Rational>;
pub type LambdaWeightsF64 = selberg::LambdaWeights<f64>;
pub type LambdaWeightsF32 = selberg::LambdaWeights<f32>;
pub type ExactSelbergTally = selberg::SelbergTally<Rational>;
pub type SelbergTallyF64 = selberg::SelbergTally<f64>;
pub type SelbergTallyF32 = selberg::SelbergTally<f32>;
