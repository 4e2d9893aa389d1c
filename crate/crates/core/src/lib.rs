//! Exact computation of the set of characters `ξ ∈ Hom(Γ, ℝ)` at which a based
//! free chain complex over a Laurent polynomial ring `S[Γ]` becomes acyclic
//! after tensoring with the rational Novikov completion.
//!
//! The answer is always a finite union of integral cones ([`IntegralSubset`]),
//! assembled from `τ`-chains of the boundary matrices and the leading-term
//! description of Novikov units.
//!
//! ```
//! use novikov_core::foxfront::TwistedPresentation;
//! use novikov_core::{CoefficientDomain, Exponent, PositivityVerdict, VanishingOptions};
//!
//! let psi = vec![Exponent::new(vec![1]), Exponent::new(vec![1])];
//! let trefoil = TwistedPresentation::untwisted(
//!     CoefficientDomain::Integers, 1, 2, vec![vec![1, 2, 1, -2, -1, -2]], psi)?;
//! let complex = trefoil.presentation_complex()?;
//! let opts = VanishingOptions::default();
//! let locus = complex.vanishing_set(&opts)?.vanishing_set;
//! assert_eq!(locus.to_string(), "{(-1) > 0} | {(1) > 0}");
//! assert_eq!(complex.verify_positive_vanishing(&[Exponent::new(vec![1])], &opts)?,
//!            PositivityVerdict::Vanishes);
//! # Ok::<(), novikov_core::Error>(())
//! ```

pub mod complexes;
pub mod conegeometry;
pub mod document;
mod error;
pub mod foxfront;
pub mod grouprings;
pub mod invertibility;
#[cfg(feature = "testing")]
pub mod testing;

pub use complexes::{BasedChainComplex, PositivityVerdict, TauChain, VanishingOptions, VanishingReport};
pub use conegeometry::{HalfSpace, IntegralCone, IntegralSubset};
pub use error::{Error, Result};
pub use grouprings::{Character, CoefficientDomain, Exponent, LaurentPoly, Scalar};
pub use invertibility::PolyMatrix;
