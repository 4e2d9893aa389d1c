use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Exponent;
use crate::error::{Error, Result};

/// A homomorphism `Γ → ℝ` restricted to rational values on the basis of `Γ ≅ ℤ^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    coords: Vec<BigRational>,
}

impl Character {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Character { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Character { coords: vec![BigRational::zero(); rank] }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Character { coords: coords.iter().map(|&c| BigRational::from_integer(c.into())).collect() }
    }

    pub fn from_big_integers(coords: &[BigInt]) -> Self {
        Character { coords: coords.iter().cloned().map(BigRational::from_integer).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_lattice(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// The value `ξ(γ)`.
    pub fn pair(&self, gamma: &Exponent) -> BigRational {
        debug_assert_eq!(gamma.rank(), self.rank());
        self.coords
            .iter()
            .zip(gamma.entries())
            .filter(|(_, &e)| e != 0)
            .map(|(c, &e)| c * BigInt::from(e))
            .fold(BigRational::zero(), |acc, v| acc + v)
    }

    /// Dot product with an integral linear form.
    pub fn evaluate_form(&self, form: &[BigInt]) -> BigRational {
        self.coords
            .iter()
            .zip(form)
            .filter(|(_, f)| !f.is_zero())
            .map(|(c, f)| c * f)
            .fold(BigRational::zero(), |acc, v| acc + v)
    }

    pub fn scaled(&self, lambda: &BigRational) -> Self {
        Character { coords: self.coords.iter().map(|c| c * lambda).collect() }
    }

    /// Positive multiple with integer coordinates (the lcm of the denominators).
    pub fn clear_denominators(&self) -> Vec<BigInt> {
        let lcm = self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coords.iter().map(|c| (c * &lcm).to_integer()).collect()
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(Error::rank(rank, self.rank()))
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Parses a comma separated list of rationals such as `"1/2,-3,0"`.
impl FromStr for Character {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Character::new(Vec::new()));
        }
        s.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(Character::new)
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Validation(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => text.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_lists() {
        let xi: Character = "1/2, -3,0".parse().unwrap();
        assert_eq!(xi.rank(), 3);
        assert_eq!(xi.coords()[0], BigRational::new(1.into(), 2.into()));
        assert!(!xi.is_lattice());
        assert_eq!(xi.clear_denominators(), vec![BigInt::from(1), BigInt::from(-6), BigInt::from(0)]);
        assert!("1/0".parse::<Character>().is_err());
        assert!("x".parse::<Character>().is_err());
    }

    #[test]
    fn pairing() {
        let xi = Character::from_integers(&[1, -1]);
        assert_eq!(xi.pair(&Exponent::new(vec![2, 1])), BigRational::from_integer(1.into()));
    }
}
