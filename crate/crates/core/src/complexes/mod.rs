//! Based finite free chain complexes over `S[Γ]`.
//!
//! Boundary matrices follow the row-vector convention: `A_i` is the matrix of
//! `∂ : C_{i+1} → C_i` with one row per basis element of `C_{i+1}`, acting on
//! the right. Composability therefore reads `A_{i+1} · A_i = 0`.

mod positivity;
mod tau;
mod torus;

use std::fmt;

use crate::error::{Error, Result};
use crate::grouprings::CoefficientDomain;
use crate::invertibility::PolyMatrix;

pub use positivity::PositivityVerdict;
pub use tau::{TauChain, VanishingOptions, VanishingReport, DEFAULT_TAU_CAP};
pub use torus::{mapping_torus, mapping_torus_of_dims};

/// First defect found by [`BasedChainComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape {
        index: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// `A_{index+1} · A_index` has a nonzero entry at `(row, col)`.
    NonZeroComposite {
        index: usize,
        row: usize,
        col: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { index, expected, found } => {
                write!(f, "boundary A{index} should be {}x{} but is {}x{}", expected.0, expected.1, found.0, found.1)
            }
            Violation::NonZeroComposite { index, row, col } => {
                write!(f, "A{} * A{index} is nonzero at entry ({}, {})", index + 1, row + 1, col + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedChainComplex {
    domain: CoefficientDomain,
    rank: usize,
    dims: Vec<usize>,
    boundaries: Vec<PolyMatrix>,
}

impl BasedChainComplex {
    /// Assembles a complex with `dims = (dim C_0, …, dim C_m)` and boundaries
    /// `A_0, …, A_{m-1}`. Matrix shapes and `∂∂ = 0` are checked by
    /// [`validate`](Self::validate), not here.
    pub fn new(domain: CoefficientDomain, rank: usize, dims: Vec<usize>, boundaries: Vec<PolyMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("a chain complex needs at least one chain module".into()));
        }
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} chain modules need {} boundary matrices, got {}",
                dims.len(),
                dims.len() - 1,
                boundaries.len()
            )));
        }
        for a in &boundaries {
            if a.rank() != rank {
                return Err(Error::rank(rank, a.rank()));
            }
            if a.domain() != domain {
                return Err(Error::DomainMismatch { left: domain.tag(), right: a.domain().tag() });
            }
        }
        Ok(BasedChainComplex { domain, rank, dims, boundaries })
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    /// Rank of `Γ`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundaries(&self) -> &[PolyMatrix] {
        &self.boundaries
    }

    /// The length `m`: chain modules live in degrees `0..=m`.
    pub fn length(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (i, a) in self.boundaries.iter().enumerate() {
            let expected = (self.dims[i + 1], self.dims[i]);
            if (a.rows(), a.cols()) != expected {
                return Err(Violation::Shape { index: i, expected, found: (a.rows(), a.cols()) });
            }
        }
        for i in 0..self.boundaries.len().saturating_sub(1) {
            let product = self.boundaries[i + 1].mul(&self.boundaries[i]).expect("shapes checked above");
            for row in 0..product.rows() {
                for col in 0..product.cols() {
                    if !product.get(row, col).is_zero() {
                        return Err(Violation::NonZeroComposite { index: i, row, col });
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidComplex)
    }

    /// Ranks of homology over the fraction field of `S[Γ]`.
    ///
    /// The rational Novikov completion is a localization of `S[Γ]` with the
    /// same fraction field, so these are the Novikov–Betti numbers at every `ξ`.
    pub fn betti_numbers(&self) -> Result<Vec<usize>> {
        self.ensure_valid()?;
        let ranks = self.boundaries.iter().map(PolyMatrix::rank_over_fraction_field).collect::<Result<Vec<_>>>()?;
        Ok((0..self.dims.len())
            .map(|i| {
                let outgoing = if i == 0 { 0 } else { ranks[i - 1] };
                let incoming = ranks.get(i).copied().unwrap_or(0);
                self.dims[i] - outgoing - incoming
            })
            .collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// Block-diagonal direct sum; the shorter complex is padded with zero modules.
    pub fn direct_sum(&self, other: &BasedChainComplex) -> Result<BasedChainComplex> {
        if self.rank != other.rank {
            return Err(Error::rank(self.rank, other.rank));
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { left: self.domain.tag(), right: other.domain.tag() });
        }
        let len = self.dims.len().max(other.dims.len());
        let dim = |c: &BasedChainComplex, i: usize| c.dims.get(i).copied().unwrap_or(0);
        let dims: Vec<usize> = (0..len).map(|i| dim(self, i) + dim(other, i)).collect();
        let mut boundaries = Vec::with_capacity(len - 1);
        for i in 0..len - 1 {
            let mut block = PolyMatrix::zero(self.domain, self.rank, dims[i + 1], dims[i])?;
            let (r0, c0) = (dim(self, i + 1), dim(self, i));
            if let Some(a) = self.boundaries.get(i) {
                copy_block(&mut block, a, 0, 0)?;
            }
            if let Some(b) = other.boundaries.get(i) {
                copy_block(&mut block, b, r0, c0)?;
            }
            boundaries.push(block);
        }
        BasedChainComplex::new(self.domain, self.rank, dims, boundaries)
    }
}

pub(crate) fn copy_block(target: &mut PolyMatrix, source: &PolyMatrix, row0: usize, col0: usize) -> Result<()> {
    for r in 0..source.rows() {
        for c in 0..source.cols() {
            target.set(row0 + r, col0 + c, source.get(r, c).clone())?;
        }
    }
    Ok(())
}
