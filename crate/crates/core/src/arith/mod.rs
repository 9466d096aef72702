//! Exact arithmetic: cyclotomic numbers, Laurent polynomials, linear algebra
//! and Zsigmondy primes.

pub mod cyclotomic;
pub mod laurent;
pub mod linalg;
pub mod zsigmondy;

pub use cyclotomic::{CyclotomicField, CyclotomicNumber};
pub use laurent::{cyclo_factor, cyclotomic_at_power, cyclotomic_poly, CycloFactorization, LaurentPoly};
pub use zsigmondy::zsigmondy;
