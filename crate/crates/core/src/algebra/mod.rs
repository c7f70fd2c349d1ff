//! Exact arithmetic: integer polynomials, polynomials over `F_p`, polynomial
//! matrices and the integer utilities the engine needs.

pub mod matrix;
pub mod modpoly;
pub mod poly;
pub mod primes;

pub use matrix::PolyMatrix;
pub use modpoly::ModPoly;
pub use poly::{Degree, Integer, Poly, Var};
pub use primes::{factor_integer, is_prime, primes, smallest_prime_not_dividing, Factorization};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable mismatch: {left:?} vs {right:?}")]
    VarMismatch { left: Var, right: Var },
    #[error("modulus mismatch")]
    ModulusMismatch,
    #[error("invalid modulus {0}: must be a prime")]
    InvalidModulus(Integer),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("matrix is not square")]
    NotSquare,
    #[error("every prime divides 0")]
    ZeroHasNoCoprimePrime,
    #[error("cannot factor 0")]
    FactorZero,
    #[error("factorization gave up on {0}")]
    FactorLimit(Integer),
}
