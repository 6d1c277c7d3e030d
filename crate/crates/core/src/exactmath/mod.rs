//! Exact arithmetic kernel: integers, rationals, dense univariate integer
//! polynomials, resultants and factorization.

mod factor;
mod integer;
pub mod modp;
mod poly;
mod resultant;

pub use factor::{factor_poly, PolyFactor, PolyFactorization};
pub use integer::{
    factor_integer, is_prime, primality, small_primes, IntFactorization, Primality,
    MR_DETERMINISTIC_LIMIT,
};
pub use poly::UniPoly;
pub use resultant::{
    discriminant, discriminant_sylvester, resultant, resultant_formal, sylvester_matrix,
    bareiss_determinant, resultant_subresultant, resultant_sylvester,
};

/// Exact rationals in lowest terms with positive denominator.
pub type BigRat = num_rational::BigRational;
