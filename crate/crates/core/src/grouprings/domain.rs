use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact scalar representation shared by all coefficient domains.
///
/// Integers are stored with denominator one and prime-field residues as
/// integers in `[0, p)`; [`CoefficientDomain::normalize`] enforces this.
pub type Scalar = BigRational;

/// The coefficient ring `S` of a group ring `S[Γ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientDomain {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl CoefficientDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientDomain::PrimeField(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    fn modulus(&self) -> Option<BigInt> {
        match self {
            CoefficientDomain::PrimeField(p) => Some(BigInt::from(*p)),
            _ => None,
        }
    }

    /// Maps an arbitrary rational into canonical form for this domain.
    ///
    /// Fails for non-integers over `ℤ` and for denominators divisible by `p`.
    pub fn normalize(&self, value: Scalar) -> Result<Scalar> {
        match self {
            CoefficientDomain::Rationals => Ok(value),
            CoefficientDomain::Integers => {
                if value.is_integer() {
                    Ok(value)
                } else {
                    Err(Error::NotInDomain(value.to_string()))
                }
            }
            CoefficientDomain::PrimeField(_) => {
                let p = self.modulus().unwrap();
                let num = value.numer().mod_floor(&p);
                let den = value.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::NotInDomain(value.to_string()));
                }
                let inv = mod_inverse(&den, &p).ok_or_else(|| Error::NotInDomain(value.to_string()))?;
                Ok(Scalar::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    pub fn from_i64(&self, value: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(value)))
    }

    /// Reduction of a value already known to be integral (or rational over `ℚ`).
    pub(crate) fn reduce(&self, value: Scalar) -> Scalar {
        match self.modulus() {
            Some(p) => Scalar::from_integer(value.to_integer().mod_floor(&p)),
            None => value,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            CoefficientDomain::Integers => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    /// Returns `a / b` if it exists in the domain.
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return None;
        }
        match self {
            CoefficientDomain::Rationals => Some(a / b),
            CoefficientDomain::Integers => {
                let (q, r) = a.to_integer().div_rem(&b.to_integer());
                r.is_zero().then(|| Scalar::from_integer(q))
            }
            CoefficientDomain::PrimeField(_) => {
                let p = self.modulus().unwrap();
                let inv = mod_inverse(&b.to_integer(), &p)?;
                Some(Scalar::from_integer((a.to_integer() * inv).mod_floor(&p)))
            }
        }
    }

    pub fn tag(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Integers => write!(f, "Z"),
            CoefficientDomain::Rationals => write!(f, "Q"),
            CoefficientDomain::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl std::str::FromStr for CoefficientDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Z" => Ok(CoefficientDomain::Integers),
            "Q" => Ok(CoefficientDomain::Rationals),
            _ => {
                let inner = s
                    .strip_prefix("GF(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| Error::Validation(format!("unknown domain tag {s:?}")))?;
                let p: u64 = inner.trim().parse().map_err(|_| Error::Validation(format!("bad modulus in {s:?}")))?;
                CoefficientDomain::prime_field(p)
            }
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let ext = a.mod_floor(p).extended_gcd(p);
    ext.gcd.is_one().then(|| ext.x.mod_floor(p))
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..2000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn units() {
        let z = CoefficientDomain::Integers;
        assert!(z.is_unit(&q(-1, 1)));
        assert!(!z.is_unit(&q(2, 1)));
        assert!(CoefficientDomain::Rationals.is_unit(&q(2, 1)));
        let f2 = CoefficientDomain::prime_field(2).unwrap();
        assert!(f2.is_unit(&q(1, 1)));
        assert!(!f2.is_unit(&q(0, 1)));
    }

    #[test]
    fn prime_field_normalization() {
        let f5 = CoefficientDomain::prime_field(5).unwrap();
        assert_eq!(f5.normalize(q(-1, 1)).unwrap(), q(4, 1));
        assert_eq!(f5.normalize(q(1, 2)).unwrap(), q(3, 1));
        assert!(f5.normalize(q(1, 5)).is_err());
        assert_eq!(f5.div_exact(&q(1, 1), &q(2, 1)), Some(q(3, 1)));
        assert!(CoefficientDomain::prime_field(4).is_err());
    }

    #[test]
    fn integer_division() {
        let z = CoefficientDomain::Integers;
        assert_eq!(z.div_exact(&q(6, 1), &q(-3, 1)), Some(q(-2, 1)));
        assert_eq!(z.div_exact(&q(7, 1), &q(2, 1)), None);
        assert!(z.normalize(q(1, 2)).is_err());
    }

    #[test]
    fn tags_round_trip() {
        for tag in ["Z", "Q", "GF(7)"] {
            let d: CoefficientDomain = tag.parse().unwrap();
            assert_eq!(d.to_string(), tag);
        }
        assert_eq!("GF(4)".parse::<CoefficientDomain>(), Err(Error::NonPrimeModulus(4)));
        assert!("R".parse::<CoefficientDomain>().is_err());
    }
}
