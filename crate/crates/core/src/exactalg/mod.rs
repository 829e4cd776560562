//! Exact commutative kernel: multivariate polynomials over ℚ, Buchberger,
//! elimination, colon ideals, membership tests and univariate factorization.

mod cideal;
mod cpoly;
mod factor;

pub use cideal::{
    colon_ideal, elim_ideal, ideal_intersection, membership, radical_membership, reduced_gb,
    CIdeal,
};
pub use cpoly::CPoly;
pub use factor::{factor_univariate, integer_roots, univariate_gcd, univariate_lcm};

pub use crate::order::CTermOrder;

/// Exact rational coefficients: reduced fraction, positive denominator.
pub type Rat = num_rational::BigRational;
