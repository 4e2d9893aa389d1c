use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::character::Character;
use super::domain::{CoefficientDomain, Scalar};
use crate::error::{Error, Result};

/// An element of `Γ ≅ ℤ^r`, written additively.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Vec<i64>);

impl Exponent {
    pub fn new(entries: Vec<i64>) -> Self {
        Exponent(entries)
    }

    pub fn zero(rank: usize) -> Self {
        Exponent(vec![0; rank])
    }

    pub fn unit_vector(rank: usize, index: usize) -> Self {
        let mut e = vec![0; rank];
        e[index] = 1;
        Exponent(e)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_add(&self, other: &Exponent) -> Result<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()
            .map(Exponent)
    }

    pub fn checked_sub(&self, other: &Exponent) -> Result<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()
            .map(Exponent)
    }

    pub fn checked_neg(&self) -> Result<Exponent> {
        Exponent::zero(self.rank()).checked_sub(self)
    }
}

/// Sparse Laurent polynomial in `S[Γ]`.
///
/// Terms are kept in a `BTreeMap`, so iteration is lexicographic in the
/// exponent and no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    domain: CoefficientDomain,
    rank: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl LaurentPoly {
    pub fn zero(domain: CoefficientDomain, rank: usize) -> Self {
        LaurentPoly { domain, rank, terms: BTreeMap::new() }
    }

    pub fn one(domain: CoefficientDomain, rank: usize) -> Self {
        Self::from_scalar(domain, rank, Scalar::one())
    }

    fn from_scalar(domain: CoefficientDomain, rank: usize, value: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Exponent::zero(rank), value);
        }
        LaurentPoly { domain, rank, terms }
    }

    pub fn constant(domain: CoefficientDomain, rank: usize, value: Scalar) -> Result<Self> {
        Ok(Self::from_scalar(domain, rank, domain.normalize(value)?))
    }

    pub fn from_i64(domain: CoefficientDomain, rank: usize, value: i64) -> Self {
        Self::from_scalar(domain, rank, domain.from_i64(value))
    }

    pub fn monomial(domain: CoefficientDomain, coeff: Scalar, exponent: Exponent) -> Result<Self> {
        let rank = exponent.rank();
        Self::from_terms(domain, rank, [(coeff, exponent)])
    }

    /// The group element `x_index` (a generator of `Γ`).
    pub fn variable(domain: CoefficientDomain, rank: usize, index: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Exponent::unit_vector(rank, index), Scalar::one());
        LaurentPoly { domain, rank, terms }
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, combining repeated exponents.
    pub fn from_terms<I>(domain: CoefficientDomain, rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scalar, Exponent)>,
    {
        let mut map: BTreeMap<Exponent, Scalar> = BTreeMap::new();
        for (coeff, exp) in terms {
            if exp.rank() != rank {
                return Err(Error::rank(rank, exp.rank()));
            }
            let coeff = domain.normalize(coeff)?;
            let slot = map.entry(exp).or_insert_with(Scalar::zero);
            *slot = domain.add(slot, &coeff);
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { domain, rank, terms: map })
    }

    /// Convenience constructor from integer data, e.g. `[(1, [0]), (-1, [1])]` for `1 - t`.
    pub fn from_int_terms(domain: CoefficientDomain, rank: usize, terms: &[(i64, Vec<i64>)]) -> Result<Self> {
        Self::from_terms(
            domain,
            rank,
            terms.iter().map(|(c, e)| (Scalar::from_integer((*c).into()), Exponent::new(e.clone()))),
        )
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &Exponent) -> Scalar {
        self.terms.get(exponent).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The constant coefficient of a rank-0 polynomial (an element of `S`).
    pub fn constant_value(&self) -> Scalar {
        self.coefficient(&Exponent::zero(self.rank))
    }

    pub(crate) fn check_compatible(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::rank(self.rank, other.rank));
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { left: self.domain.tag(), right: other.domain.tag() });
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_compatible(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_compatible(other)?;
        self.mul_unchecked(other)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            domain: self.domain,
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), self.domain.neg(c))).collect(),
        }
    }

    pub(crate) fn add_unchecked(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(self.domain, &mut terms, e, c);
        }
        LaurentPoly { domain: self.domain, rank: self.rank, terms }
    }

    pub(crate) fn sub_unchecked(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(self.domain, &mut terms, e, &self.domain.neg(c));
        }
        LaurentPoly { domain: self.domain, rank: self.rank, terms }
    }

    pub(crate) fn mul_unchecked(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                accumulate(self.domain, &mut terms, &e1.checked_add(e2)?, &self.domain.mul(c1, c2));
            }
        }
        Ok(LaurentPoly { domain: self.domain, rank: self.rank, terms })
    }

    /// Multiplication by `coeff · γ`.
    pub fn mul_term(&self, coeff: &Scalar, exponent: &Exponent) -> Result<LaurentPoly> {
        if exponent.rank() != self.rank {
            return Err(Error::rank(self.rank, exponent.rank()));
        }
        let coeff = self.domain.normalize(coeff.clone())?;
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            for (e, c) in &self.terms {
                terms.insert(e.checked_add(exponent)?, self.domain.mul(c, &coeff));
            }
        }
        Ok(LaurentPoly { domain: self.domain, rank: self.rank, terms })
    }

    pub fn pow(&self, n: u32) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one(self.domain, self.rank);
        for _ in 0..n {
            acc = acc.mul_unchecked(self)?;
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor` in `S[Γ]`.
    ///
    /// Long division by lexicographic leading terms. A true quotient has its
    /// support inside the box `[min(p) - min(q), max(p) - max(q)]` coordinatewise,
    /// which bounds the loop; leaving the box means the division is not exact.
    pub fn exact_divide(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_compatible(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        let mut quotient = BTreeMap::new();
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.domain, self.rank));
        }
        let (lo_p, hi_p) = self.degree_box();
        let (lo_q, hi_q) = divisor.degree_box();
        let lo: Vec<i64> = lo_p.iter().zip(&lo_q).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = hi_p.iter().zip(&hi_q).map(|(a, b)| a - b).collect();
        let (lead_exp, lead_coeff) = divisor.terms.iter().next_back().unwrap();

        let mut remainder = self.clone();
        while let Some((exp, coeff)) = remainder.terms.iter().next_back() {
            let shift = exp.checked_sub(lead_exp)?;
            let inside = shift.entries().iter().enumerate().all(|(i, &s)| lo[i] <= s && s <= hi[i]);
            if !inside {
                return Err(Error::InexactDivision);
            }
            let factor = self.domain.div_exact(coeff, lead_coeff).ok_or(Error::InexactDivision)?;
            remainder = remainder.sub_unchecked(&divisor.mul_term(&factor, &shift)?);
            quotient.insert(shift, factor);
        }
        Ok(LaurentPoly { domain: self.domain, rank: self.rank, terms: quotient })
    }

    /// Coordinatewise minimum and maximum exponents over the support.
    fn degree_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; self.rank];
        let mut hi = vec![i64::MIN; self.rank];
        for e in self.terms.keys() {
            for (i, &v) in e.entries().iter().enumerate() {
                lo[i] = lo[i].min(v);
                hi[i] = hi[i].max(v);
            }
        }
        (lo, hi)
    }

    /// `m_ξ(p)`: the largest value of `ξ` on the support.
    pub fn leading_value(&self, xi: &Character) -> Result<BigRational> {
        xi.check_rank(self.rank)?;
        self.terms.keys().map(|e| xi.pair(e)).max().ok_or(Error::ZeroPolynomial("leading value"))
    }

    /// `t_ξ(p)`: the sum of the terms on which `ξ` attains its maximum.
    pub fn leading_part(&self, xi: &Character) -> Result<LaurentPoly> {
        let top = self.leading_value(xi)?;
        let terms = self.terms.iter().filter(|(e, _)| xi.pair(e) == top).map(|(e, c)| (e.clone(), c.clone())).collect();
        Ok(LaurentPoly { domain: self.domain, rank: self.rank, terms })
    }

    /// Single term with a unit coefficient.
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| self.domain.is_unit(c))
    }

    /// Whether `p` becomes invertible in the rational Novikov completion at `ξ`,
    /// i.e. whether its `ξ`-leading part is a unit monomial.
    pub fn in_novikov_units(&self, xi: &Character) -> Result<bool> {
        xi.check_rank(self.rank)?;
        if self.is_zero() {
            return Ok(false);
        }
        Ok(self.leading_part(xi)?.is_unit_monomial())
    }

    /// Evaluates at a point of the torus over the fraction field of `S`.
    ///
    /// For `ℤ` and `ℚ` the result is an arbitrary rational; for `GF(p)` the
    /// point coordinates must be residues and the result is a residue.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.rank {
            return Err(Error::rank(self.rank, point.len()));
        }
        let field = match self.domain {
            CoefficientDomain::Integers => CoefficientDomain::Rationals,
            d => d,
        };
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut value = c.clone();
            for (x, &k) in point.iter().zip(e.entries()) {
                let base =
                    if k < 0 { field.div_exact(&Scalar::one(), x).ok_or(Error::InexactDivision)? } else { x.clone() };
                for _ in 0..k.unsigned_abs() {
                    value = field.mul(&value, &base);
                }
            }
            acc = field.add(&acc, &value);
        }
        Ok(acc)
    }

    /// Re-embeds into a group ring of larger rank by padding exponents with zeros.
    pub fn extend_rank(&self, new_rank: usize) -> Result<LaurentPoly> {
        if new_rank < self.rank {
            return Err(Error::rank(self.rank, new_rank));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.entries().to_vec();
                v.resize(new_rank, 0);
                (Exponent(v), c.clone())
            })
            .collect();
        Ok(LaurentPoly { domain: self.domain, rank: new_rank, terms })
    }
}

fn accumulate(domain: CoefficientDomain, terms: &mut BTreeMap<Exponent, Scalar>, exp: &Exponent, coeff: &Scalar) {
    if coeff.is_zero() {
        return;
    }
    match terms.get_mut(exp) {
        Some(slot) => {
            *slot = domain.add(slot, coeff);
            if slot.is_zero() {
                terms.remove(exp);
            }
        }
        None => {
            terms.insert(exp.clone(), coeff.clone());
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let monomial = format_monomial(e);
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{magnitude}*{monomial}")?;
            }
        }
        Ok(())
    }
}

fn format_monomial(e: &Exponent) -> String {
    let name = |i: usize| {
        if e.rank() == 1 {
            "t".to_string()
        } else {
            format!("x{}", i + 1)
        }
    };
    e.entries()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| if k == 1 { name(i) } else { format!("{}^{}", name(i), k) })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoefficientDomain = CoefficientDomain::Integers;
    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    fn uni(domain: CoefficientDomain, coeffs: &[(i64, i64)]) -> LaurentPoly {
        let terms: Vec<_> = coeffs.iter().map(|&(c, e)| (c, vec![e])).collect();
        LaurentPoly::from_int_terms(domain, 1, &terms).unwrap()
    }

    fn xi(v: &[i64]) -> Character {
        Character::from_integers(v)
    }

    #[test]
    fn difference_of_squares() {
        let p = uni(Z, &[(1, 0), (1, 1)]);
        let q = uni(Z, &[(1, 0), (-1, 1)]);
        assert_eq!(p.mul(&q).unwrap(), uni(Z, &[(1, 0), (-1, 2)]));
        assert!(p.mul(&LaurentPoly::zero(Z, 1)).unwrap().is_zero());
    }

    #[test]
    fn mismatches_are_errors() {
        let p = uni(Z, &[(1, 0)]);
        assert!(matches!(p.add(&LaurentPoly::one(Z, 2)), Err(Error::RankMismatch { .. })));
        assert!(matches!(p.mul(&LaurentPoly::one(Q, 1)), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn division() {
        let num = uni(Z, &[(1, 0), (-1, 2)]);
        let den = uni(Z, &[(1, 0), (-1, 1)]);
        assert_eq!(num.exact_divide(&den).unwrap(), uni(Z, &[(1, 0), (1, 1)]));
        assert_eq!(num.exact_divide(&num).unwrap(), LaurentPoly::one(Z, 1));
        let laurent = uni(Z, &[(3, -2), (3, 5)]);
        assert_eq!(laurent.exact_divide(&uni(Z, &[(3, -2)])).unwrap(), uni(Z, &[(1, 0), (1, 7)]));
    }

    #[test]
    fn inexact_division_is_reported() {
        let num = uni(Z, &[(1, 0), (1, 1)]);
        assert_eq!(num.exact_divide(&uni(Z, &[(1, 0), (-1, 1)])), Err(Error::InexactDivision));
        assert_eq!(num.exact_divide(&uni(Z, &[(2, 0)])), Err(Error::InexactDivision));
        assert_eq!(num.exact_divide(&LaurentPoly::zero(Z, 1)), Err(Error::InexactDivision));
        let two_vars = LaurentPoly::from_int_terms(Z, 2, &[(1, vec![1, 0]), (1, vec![0, 1])]).unwrap();
        let other = LaurentPoly::from_int_terms(Z, 2, &[(1, vec![1, 0]), (-1, vec![0, 1])]).unwrap();
        assert_eq!(two_vars.exact_divide(&other), Err(Error::InexactDivision));
        assert_eq!(uni(Q, &[(1, 0), (1, 1)]).exact_divide(&uni(Q, &[(2, 0)])).unwrap().num_terms(), 2);
    }

    #[test]
    fn leading_calculus_examples() {
        let x_plus_y = LaurentPoly::from_int_terms(Z, 2, &[(1, vec![1, 0]), (1, vec![0, 1])]).unwrap();
        assert_eq!(x_plus_y.leading_value(&xi(&[1, -1])).unwrap(), BigRational::one());
        assert_eq!(x_plus_y.leading_part(&xi(&[1, -1])).unwrap(), LaurentPoly::variable(Z, 2, 0));
        let five = LaurentPoly::from_i64(Z, 2, 5);
        assert_eq!(five.leading_value(&xi(&[3, 4])).unwrap(), BigRational::zero());
        let x2y = LaurentPoly::from_int_terms(Z, 2, &[(1, vec![2, 1])]).unwrap();
        assert_eq!(x2y.leading_value(&xi(&[1, -1])).unwrap(), BigRational::one());

        let p = LaurentPoly::from_int_terms(Z, 2, &[(2, vec![1, 0]), (3, vec![0, 1])]).unwrap();
        assert_eq!(p.leading_part(&xi(&[1, 1])).unwrap(), p);
        let one_plus_t = uni(Z, &[(1, 0), (1, 1)]);
        assert_eq!(one_plus_t.leading_part(&xi(&[0])).unwrap(), one_plus_t);
    }

    #[test]
    fn zero_polynomial_has_no_leading_data() {
        let zero = LaurentPoly::zero(Z, 1);
        assert_eq!(zero.leading_value(&xi(&[1])), Err(Error::ZeroPolynomial("leading value")));
        assert!(zero.leading_part(&xi(&[1])).is_err());
        assert!(!zero.in_novikov_units(&xi(&[1])).unwrap());
    }

    #[test]
    fn novikov_unit_examples() {
        assert!(uni(Z, &[(1, 0), (1, 1)]).in_novikov_units(&xi(&[1])).unwrap());
        assert!(!uni(Z, &[(2, 0), (1, 1)]).in_novikov_units(&xi(&[-1])).unwrap());
        assert!(uni(Q, &[(2, 0), (1, 1)]).in_novikov_units(&xi(&[-1])).unwrap());
        assert!(!uni(Z, &[(1, 0), (1, 1)]).in_novikov_units(&xi(&[0])).unwrap());
    }

    #[test]
    fn evaluation() {
        let p = uni(Z, &[(1, -1), (2, 2)]);
        let half = Scalar::new(1.into(), 2.into());
        assert_eq!(p.evaluate(&[half]).unwrap(), Scalar::new(5.into(), 2.into()));
        assert!(p.evaluate(&[Scalar::zero()]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(uni(Z, &[(1, 0), (-3, 1), (1, 2)]).to_string(), "1 - 3*t + t^2");
        let p = LaurentPoly::from_int_terms(Z, 2, &[(-1, vec![0, -1]), (2, vec![1, 1])]).unwrap();
        assert_eq!(p.to_string(), "-x2^-1 + 2*x1*x2");
    }
}
