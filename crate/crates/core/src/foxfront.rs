//! Twisted chain complexes of presentation 2-complexes via Fox calculus.
//!
//! Words are sequences of signed, one-based generator indices: `2` is the
//! second generator and `-2` its inverse.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complexes::{copy_block, BasedChainComplex};
use crate::error::{Error, Result};
use crate::grouprings::{CoefficientDomain, Exponent, LaurentPoly, Scalar};
use crate::invertibility::PolyMatrix;

pub type Word = Vec<i32>;

/// Cancels adjacent `x x⁻¹` pairs.
pub fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &letter in word {
        if out.last() == Some(&-letter) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    out
}

/// An element of the integral group ring of a free group, keyed by reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<Word, BigInt>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn word(word: &[i32]) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(word, BigInt::one());
        s
    }

    pub fn add_term(&mut self, word: &[i32], coeff: BigInt) {
        let key = free_reduce(word);
        let slot = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w, -c);
        }
        out
    }

    /// `u · self` for a word `u`.
    pub fn left_mul(&self, word: &[i32]) -> FormalSum {
        let mut out = FormalSum::zero();
        for (w, c) in &self.terms {
            let joined: Word = word.iter().chain(w).copied().collect();
            out.add_term(&joined, c.clone());
        }
        out
    }

    /// `self · u` for a word `u`.
    pub fn right_mul(&self, word: &[i32]) -> FormalSum {
        let mut out = FormalSum::zero();
        for (w, c) in &self.terms {
            let joined: Word = w.iter().chain(word).copied().collect();
            out.add_term(&joined, c.clone());
        }
        out
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let render = |w: &Word| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|l| if *l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) }).join("*")
            }
        };
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{}", render(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `∂w/∂x` for the one-based generator `generator`, by the product rule
/// `∂(uv)/∂x = ∂u/∂x + u·∂v/∂x` with `∂x/∂x = 1` and `∂x⁻¹/∂x = −x⁻¹`.
pub fn fox_derivative(word: &[i32], generator: usize, generators: usize) -> Result<FormalSum> {
    if generator == 0 || generator > generators {
        return Err(Error::Validation(format!("unknown generator {generator}")));
    }
    check_word(word, generators)?;
    let x = generator as i32;
    let mut out = FormalSum::zero();
    for (k, &letter) in word.iter().enumerate() {
        let prefix = &word[..k];
        if letter == x {
            out.add_term(prefix, BigInt::one());
        } else if letter == -x {
            out.add_term(&word[..=k], -BigInt::one());
        }
    }
    Ok(out)
}

fn check_word(word: &[i32], generators: usize) -> Result<()> {
    match word.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > generators) {
        Some(l) => Err(Error::Validation(format!("unknown generator index {l}"))),
        None => Ok(()),
    }
}

/// A finite presentation with an abelian coefficient map `ψ : π → ℤ^r` and a
/// representation `α : π → GL(k, S)`, both given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedPresentation {
    domain: CoefficientDomain,
    rank: usize,
    generators: usize,
    relators: Vec<Word>,
    psi: Vec<Exponent>,
    alpha: Vec<PolyMatrix>,
    k: usize,
}

impl TwistedPresentation {
    /// `alpha[i]` is a `k × k` matrix over `S` (`Γ`-rank 0). Relators are freely reduced.
    pub fn new(
        domain: CoefficientDomain,
        rank: usize,
        generators: usize,
        relators: Vec<Word>,
        psi: Vec<Exponent>,
        alpha: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if psi.len() != generators {
            return Err(Error::Validation(format!("psi needs {generators} images, got {}", psi.len())));
        }
        if let Some(e) = psi.iter().find(|e| e.rank() != rank) {
            return Err(Error::rank(rank, e.rank()));
        }
        if alpha.len() != generators {
            return Err(Error::Validation(format!("alpha needs {generators} matrices, got {}", alpha.len())));
        }
        let k = alpha.first().map_or(1, PolyMatrix::rows);
        for (i, a) in alpha.iter().enumerate() {
            if a.rows() != k || a.cols() != k || a.rank() != 0 || a.domain() != domain {
                return Err(Error::Validation(format!(
                    "alpha of generator {} must be a {k}x{k} matrix over {domain}",
                    i + 1
                )));
            }
        }
        for r in &relators {
            check_word(r, generators)?;
        }
        let relators = relators.iter().map(|r| free_reduce(r)).collect();
        Ok(TwistedPresentation { domain, rank, generators, relators, psi, alpha, k })
    }

    /// The untwisted case: `k = 1` and `α` trivial.
    pub fn untwisted(
        domain: CoefficientDomain,
        rank: usize,
        generators: usize,
        relators: Vec<Word>,
        psi: Vec<Exponent>,
    ) -> Result<Self> {
        let alpha = vec![PolyMatrix::identity(domain, 0, 1); generators];
        Self::new(domain, rank, generators, relators, psi, alpha)
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn psi(&self) -> &[Exponent] {
        &self.psi
    }

    pub fn alpha(&self) -> &[PolyMatrix] {
        &self.alpha
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn psi_of(&self, word: &[i32]) -> Result<Exponent> {
        word.iter().try_fold(Exponent::zero(self.rank), |acc, &l| {
            let e = &self.psi[l.unsigned_abs() as usize - 1];
            if l > 0 {
                acc.checked_add(e)
            } else {
                acc.checked_sub(e)
            }
        })
    }

    fn alpha_of(&self, word: &[i32], inverses: &[PolyMatrix]) -> Result<PolyMatrix> {
        word.iter().try_fold(PolyMatrix::identity(self.domain, 0, self.k), |acc, &l| {
            let i = l.unsigned_abs() as usize - 1;
            acc.mul(if l > 0 { &self.alpha[i] } else { &inverses[i] })
        })
    }

    fn alpha_inverses(&self) -> Result<Vec<PolyMatrix>> {
        self.alpha
            .iter()
            .enumerate()
            .map(|(i, a)| {
                a.inverse_over_coefficients()
                    .map_err(|e| Error::Validation(format!("alpha of generator {} is not invertible: {e}", i + 1)))
            })
            .collect()
    }

    /// Index of `ψ(π)` in `ℤ^r`: the gcd of the maximal minors of the
    /// generator images. `None` if the image has rank below `r`.
    pub fn psi_index(&self) -> Option<BigInt> {
        let r = self.rank;
        let mut g = BigInt::zero();
        for rows in (0..self.generators).combinations(r) {
            let entries = rows
                .iter()
                .flat_map(|&i| {
                    self.psi[i].entries().iter().map(|&v| LaurentPoly::from_i64(CoefficientDomain::Integers, 0, v))
                })
                .collect();
            let minor = PolyMatrix::new(CoefficientDomain::Integers, 0, r, r, entries)
                .and_then(|m| m.determinant())
                .map(|d| d.constant_value().to_integer())
                .unwrap_or_default();
            g = g.gcd(&minor);
        }
        (!g.is_zero()).then_some(g)
    }

    /// Checks that `ψ` and `α` are well defined on the group and that `ψ` has full rank.
    pub fn validate(&self) -> Result<()> {
        let inverses = self.alpha_inverses()?;
        let identity = PolyMatrix::identity(self.domain, 0, self.k);
        for (j, r) in self.relators.iter().enumerate() {
            if !self.psi_of(r)?.is_zero() {
                return Err(Error::Validation(format!(
                    "psi is not well defined: relator {} maps to a nonzero element",
                    j + 1
                )));
            }
            if self.alpha_of(r, &inverses)? != identity {
                return Err(Error::Validation(format!(
                    "alpha is not well defined: relator {} does not map to the identity",
                    j + 1
                )));
            }
        }
        if self.psi_index().is_none() {
            return Err(Error::Validation(format!("the image of psi has rank below {}", self.rank)));
        }
        Ok(())
    }

    /// `Σ_u n_u · α(u) · t^{ψ(u)}` as a `k × k` matrix over `S[Γ]`.
    pub fn push_forward(&self, sum: &FormalSum) -> Result<PolyMatrix> {
        let inverses = self.alpha_inverses()?;
        self.push_with(sum, &inverses)
    }

    fn push_with(&self, sum: &FormalSum, inverses: &[PolyMatrix]) -> Result<PolyMatrix> {
        let mut acc = PolyMatrix::zero(self.domain, self.rank, self.k, self.k)?;
        for (word, coeff) in sum.terms() {
            check_word(word, self.generators)?;
            let exponent = self.psi_of(word)?;
            let scalar = Scalar::from_integer(coeff.clone());
            let block = self
                .alpha_of(word, inverses)?
                .extend_rank(self.rank)?
                .map_entries(|p| p.mul_term(&scalar, &exponent))?;
            acc = acc.add(&block)?;
        }
        Ok(acc)
    }

    /// The twisted cellular chain complex of the presentation 2-complex, with
    /// `dims = (k, g·k, h·k)` (or `(k, g·k)` without relators).
    pub fn presentation_complex(&self) -> Result<BasedChainComplex> {
        self.validate()?;
        let inverses = self.alpha_inverses()?;
        let (k, g, h) = (self.k, self.generators, self.relators.len());
        let identity = PolyMatrix::identity(self.domain, self.rank, k);

        let mut a0 = PolyMatrix::zero(self.domain, self.rank, g * k, k)?;
        for x in 0..g {
            let block = self.push_with(&FormalSum::word(&[x as i32 + 1]), &inverses)?.sub(&identity)?;
            copy_block(&mut a0, &block, x * k, 0)?;
        }
        let mut dims = vec![k, g * k];
        let mut boundaries = vec![a0];
        if h > 0 {
            let mut a1 = PolyMatrix::zero(self.domain, self.rank, h * k, g * k)?;
            for (j, r) in self.relators.iter().enumerate() {
                for x in 0..g {
                    let derivative = fox_derivative(r, x + 1, g)?;
                    copy_block(&mut a1, &self.push_with(&derivative, &inverses)?, j * k, x * k)?;
                }
            }
            dims.push(h * k);
            boundaries.push(a1);
        }
        let complex = BasedChainComplex::new(self.domain, self.rank, dims, boundaries)?;
        complex.ensure_valid()?;
        Ok(complex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoefficientDomain = CoefficientDomain::Integers;

    fn sum(terms: &[(i64, &[i32])]) -> FormalSum {
        let mut s = FormalSum::zero();
        for (c, w) in terms {
            s.add_term(w, BigInt::from(*c));
        }
        s
    }

    /// Product-rule evaluator splitting the word in half, independent of the
    /// left-to-right scan in `fox_derivative`.
    fn fox_recursive(word: &[i32], x: i32) -> FormalSum {
        match word.len() {
            0 => FormalSum::zero(),
            1 if word[0] == x => FormalSum::word(&[]),
            1 if word[0] == -x => sum(&[(-1, &[-x])]),
            1 => FormalSum::zero(),
            n => {
                let (u, v) = word.split_at(n / 2);
                fox_recursive(u, x).add(&fox_recursive(v, x).left_mul(u))
            }
        }
    }

    const TREFOIL: [i32; 6] = [1, 2, 1, -2, -1, -2];

    #[test]
    fn basic_derivatives() {
        assert_eq!(fox_derivative(&[1, 2], 1, 2).unwrap(), FormalSum::word(&[]));
        assert_eq!(fox_derivative(&[1, 2], 2, 2).unwrap(), FormalSum::word(&[1]));
        assert_eq!(fox_derivative(&[-1], 1, 1).unwrap(), sum(&[(-1, &[-1])]));
        assert!(fox_derivative(&[1, 3], 1, 2).is_err());
        assert!(fox_derivative(&[1], 3, 2).is_err());
    }

    #[test]
    fn trefoil_derivative() {
        let d = fox_derivative(&TREFOIL, 1, 2).unwrap();
        assert_eq!(d, sum(&[(1, &[]), (1, &[1, 2]), (-1, &[1, 2, 1, -2, -1])]));
        assert_eq!(d, fox_recursive(&TREFOIL, 1));
        assert_eq!(fox_derivative(&TREFOIL, 2, 2).unwrap(), fox_recursive(&TREFOIL, 2));
    }

    #[test]
    fn fundamental_identity() {
        let words: [&[i32]; 4] = [&TREFOIL, &[1, 1, -2, 3, -1, -3, 2], &[-2, -2, 1], &[]];
        for w in words {
            let mut total = FormalSum::zero();
            for x in 1..=3 {
                let dx = fox_derivative(w, x, 3).unwrap();
                total = total.add(&dx.right_mul(&[x as i32]).sub(&dx));
            }
            assert_eq!(total, FormalSum::word(w).sub(&FormalSum::word(&[])), "word {w:?}");
        }
    }

    #[test]
    fn push_forward_examples() {
        let psi = vec![Exponent::new(vec![1]), Exponent::new(vec![1])];
        let p = TwistedPresentation::untwisted(Z, 1, 2, vec![TREFOIL.to_vec()], psi).unwrap();
        assert_eq!(p.push_forward(&FormalSum::word(&[])).unwrap(), PolyMatrix::identity(Z, 1, 1));
        let s = sum(&[(1, &[]), (1, &[1, 2]), (-1, &[1, 2, 1, -2, -1])]);
        let expected = LaurentPoly::from_int_terms(Z, 1, &[(1, vec![0]), (-1, vec![1]), (1, vec![2])]).unwrap();
        assert_eq!(p.push_forward(&s).unwrap().get(0, 0), &expected);

        let q = TwistedPresentation::untwisted(Z, 1, 1, vec![], vec![Exponent::new(vec![1])]).unwrap();
        let expected = LaurentPoly::from_int_terms(Z, 1, &[(-1, vec![-1])]).unwrap();
        assert_eq!(q.push_forward(&sum(&[(-1, &[-1])])).unwrap().get(0, 0), &expected);
    }

    #[test]
    fn ill_defined_psi_names_the_relator() {
        let psi = vec![Exponent::new(vec![1]), Exponent::new(vec![2])];
        let p = TwistedPresentation::untwisted(Z, 1, 2, vec![TREFOIL.to_vec()], psi).unwrap();
        match p.presentation_complex() {
            Err(Error::Validation(msg)) => assert!(msg.contains("relator 1"), "{msg}"),
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn twisted_trefoil() {
        // a ↦ [[1,1],[0,1]], b ↦ [[1,0],[-1,1]] satisfy aba = bab in SL(2, Z).
        let scal = |rows: &[&[i64]]| {
            let rows: Vec<Vec<Scalar>> =
                rows.iter().map(|r| r.iter().map(|&x| Scalar::from_integer(x.into())).collect()).collect();
            PolyMatrix::from_scalars(Z, 0, &rows).unwrap()
        };
        let alpha = vec![scal(&[&[1, 1], &[0, 1]]), scal(&[&[1, 0], &[-1, 1]])];
        let psi = vec![Exponent::new(vec![1]), Exponent::new(vec![1])];
        let p = TwistedPresentation::new(Z, 1, 2, vec![TREFOIL.to_vec()], psi.clone(), alpha).unwrap();
        let c = p.presentation_complex().unwrap();
        assert_eq!(c.dims(), &[2, 4, 2]);

        // The commutator relator fails because the two matrices do not commute.
        let bad = vec![scal(&[&[1, 1], &[0, 1]]), scal(&[&[1, 0], &[1, 1]])];
        let p = TwistedPresentation::new(Z, 1, 2, vec![vec![1, 2, -1, -2]], psi.clone(), bad).unwrap();
        assert!(p.validate().is_err());
        let singular = vec![scal(&[&[2, 0], &[0, 1]]), scal(&[&[1, 0], &[0, 1]])];
        let p = TwistedPresentation::new(Z, 1, 2, vec![], psi, singular).unwrap();
        assert!(p.validate().is_err());
    }

    #[test]
    fn psi_index_reports_sublattices() {
        let p = TwistedPresentation::untwisted(Z, 1, 2, vec![], vec![Exponent::new(vec![2]), Exponent::new(vec![4])])
            .unwrap();
        assert_eq!(p.psi_index(), Some(BigInt::from(2)));
        let p =
            TwistedPresentation::untwisted(Z, 2, 2, vec![], vec![Exponent::new(vec![1, 1]), Exponent::new(vec![2, 2])])
                .unwrap();
        assert_eq!(p.psi_index(), None);
        assert!(p.validate().is_err());
    }

    #[test]
    fn free_reduction() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(free_reduce(&[1, -1, 1]), vec![1]);
    }
}
