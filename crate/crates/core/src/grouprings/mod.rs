//! Exact arithmetic in Laurent polynomial rings `S[Γ]` with `Γ ≅ ℤ^r`, and the
//! `ξ`-leading-term calculus that decides invertibility over the rational
//! Novikov completion without ever constructing that ring.

mod character;
mod domain;
mod poly;

pub use character::{parse_rational, Character};
pub use domain::{is_prime, CoefficientDomain, Scalar};
pub use poly::{Exponent, LaurentPoly};
