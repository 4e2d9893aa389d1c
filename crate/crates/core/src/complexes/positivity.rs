use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{BasedChainComplex, VanishingOptions};
use crate::conegeometry::{HalfSpace, IntegralCone, IntegralSubset};
use crate::error::{Error, Result};
use crate::grouprings::{Character, Exponent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositivityVerdict {
    /// Novikov homology vanishes at every real character positive on all meridians.
    Vanishes,
    /// A positive lattice character with nonvanishing Novikov homology.
    Witness(Vec<BigInt>),
}

impl fmt::Display for PositivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositivityVerdict::Vanishes => write!(f, "Vanishes"),
            PositivityVerdict::Witness(v) => write!(f, "Witness {}", Character::from_big_integers(v)),
        }
    }
}

impl BasedChainComplex {
    /// Decides whether Novikov homology vanishes on the whole positive cone
    /// `{ξ : ξ(μ_j) > 0 ∀j}`.
    ///
    /// The non-vanishing locus meets the positive cone in an integral subset;
    /// that subset is empty iff it contains no lattice point, so a single
    /// lattice search settles every real positive class at once.
    pub fn verify_positive_vanishing(
        &self,
        meridians: &[Exponent],
        options: &VanishingOptions,
    ) -> Result<PositivityVerdict> {
        if meridians.is_empty() {
            return Err(Error::Validation("at least one meridian is required".into()));
        }
        for mu in meridians {
            if mu.rank() != self.rank {
                return Err(Error::rank(self.rank, mu.rank()));
            }
        }
        let report = self.vanishing_set(options)?;
        let positive = IntegralSubset::single(
            self.rank,
            IntegralCone::new(
                meridians
                    .iter()
                    .map(|mu| HalfSpace::new(mu.entries().iter().map(|&v| BigInt::from(v)).collect(), true)),
            ),
        )?;
        let bad = report.vanishing_set.complement_within(&positive)?;
        match bad.lattice_point() {
            None => Ok(PositivityVerdict::Vanishes),
            Some(point) => {
                let xi = Character::from_big_integers(&point);
                let positive_on_all = meridians.iter().all(|mu| xi.pair(mu).is_positive());
                if !positive_on_all || self.vanishes_at_with(&xi, options)? {
                    return Err(Error::Validation(format!(
                        "internal inconsistency: witness {xi} rejected by the pointwise check"
                    )));
                }
                Ok(PositivityVerdict::Witness(point))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprings::{CoefficientDomain, LaurentPoly};
    use crate::invertibility::PolyMatrix;

    #[test]
    fn two_plus_t() {
        let z = CoefficientDomain::Integers;
        let p = LaurentPoly::from_int_terms(z, 1, &[(2, vec![0]), (1, vec![1])]).unwrap();
        let c = BasedChainComplex::new(z, 1, vec![1, 1], vec![PolyMatrix::from_rows(z, 1, vec![vec![p]]).unwrap()])
            .unwrap();
        let opts = VanishingOptions::default();
        assert_eq!(c.verify_positive_vanishing(&[Exponent::new(vec![1])], &opts).unwrap(), PositivityVerdict::Vanishes);
        match c.verify_positive_vanishing(&[Exponent::new(vec![-1])], &opts).unwrap() {
            PositivityVerdict::Witness(v) => assert!(v[0] < BigInt::from(0)),
            other => panic!("expected a witness, got {other}"),
        }
        assert!(c.verify_positive_vanishing(&[], &opts).is_err());
    }
}
