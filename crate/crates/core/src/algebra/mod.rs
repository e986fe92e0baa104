//! Exact arithmetic substrate.
//!
//! Everything here is value-typed and deterministic. Integer matrices use
//! arbitrary precision; `Q/Z` values and cyclotomic sums use machine words
//! because their denominators are bounded by the group exponent.

mod cyclotomic;
mod group;
mod matrix;
mod qz;
mod smith;
mod valuation;

pub use cyclotomic::{cyclotomic_arg_eighths, CyclotomicSum, Sigma, ARG_TOLERANCE};
pub use group::{torsion_of_cokernel, AbelianGroupStructure, Cokernel};
pub use matrix::IntMatrix;
pub use qz::QZElement;
pub use smith::{smith_normal_form, SmithForm};
pub use valuation::{
    factor_u64, is_prime, mod_inverse, mod_inverse_u64, p_valuation, p_valuation_u64, ExtNat,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: String, m: String },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(String),
    #[error("denominator {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("cannot combine values with denominators {0} and {1}: different primes")]
    MixedPrimes(u64, u64),
    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),
    #[error("cyclotomic orders differ: 2^{0} vs 2^{1}")]
    OrderMismatch(u32, u32),
    #[error("sum is not on an eighth-turn ray (angle {angle_eighths} eighth-turns)")]
    NotOnRay { angle_eighths: String },
    #[error("matrix dimensions do not match: {0}")]
    Shape(String),
}
