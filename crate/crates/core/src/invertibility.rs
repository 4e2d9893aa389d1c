//! Matrices over `S[Γ]` and the integral subsets `M(p)`, `M(A)` of characters
//! at which a polynomial or a square matrix becomes invertible over the
//! rational Novikov completion.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::conegeometry::{HalfSpace, IntegralCone, IntegralSubset};
use crate::error::{Error, Result};
use crate::grouprings::{CoefficientDomain, LaurentPoly, Scalar};

/// Dense matrix over `S[Γ]`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    domain: CoefficientDomain,
    rank: usize,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn new(
        domain: CoefficientDomain,
        rank: usize,
        rows: usize,
        cols: usize,
        entries: Vec<LaurentPoly>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for p in &entries {
            if p.rank() != rank {
                return Err(Error::rank(rank, p.rank()));
            }
            if p.domain() != domain {
                return Err(Error::DomainMismatch { left: domain.tag(), right: p.domain().tag() });
            }
        }
        Ok(PolyMatrix { domain, rank, rows, cols, entries })
    }

    pub fn from_rows(domain: CoefficientDomain, rank: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(domain, rank, nrows, ncols, rows.into_iter().flatten().collect())
    }

    /// Matrix of constants in `S`, as a matrix over `S[ℤ^rank]`.
    pub fn from_scalars(domain: CoefficientDomain, rank: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let polys = rows
            .iter()
            .map(|r| r.iter().map(|c| LaurentPoly::constant(domain, rank, c.clone())).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        if rows.is_empty() {
            return Self::zero(domain, rank, 0, 0);
        }
        Self::from_rows(domain, rank, polys)
    }

    pub fn zero(domain: CoefficientDomain, rank: usize, rows: usize, cols: usize) -> Result<Self> {
        Self::new(domain, rank, rows, cols, vec![LaurentPoly::zero(domain, rank); rows * cols])
    }

    pub fn identity(domain: CoefficientDomain, rank: usize, n: usize) -> Self {
        let mut m = Self::zero(domain, rank, n, n).expect("shape is consistent");
        for i in 0..n {
            m.entries[i * n + i] = LaurentPoly::one(domain, rank);
        }
        m
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPoly) -> Result<()> {
        self.entries[row * self.cols + col].check_compatible(&value)?;
        self.entries[row * self.cols + col] = value;
        Ok(())
    }

    pub fn row(&self, row: usize) -> &[LaurentPoly] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    fn check_compatible(&self, other: &PolyMatrix) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::rank(self.rank, other.rank));
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { left: self.domain.tag(), right: other.domain.tag() });
        }
        Ok(())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_compatible(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero(self.domain, self.rank);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add_unchecked(&a.mul_unchecked(b)?);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix { domain: self.domain, rank: self.rank, rows: self.rows, cols: other.cols, entries })
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, LaurentPoly::add_unchecked)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, LaurentPoly::sub_unchecked)
    }

    fn zip_with(
        &self,
        other: &PolyMatrix,
        f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly,
    ) -> Result<PolyMatrix> {
        self.check_compatible(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} and {}x{} differ in shape",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(PolyMatrix { domain: self.domain, rank: self.rank, rows: self.rows, cols: self.cols, entries })
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            domain: self.domain,
            rank: self.rank,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(LaurentPoly::neg).collect(),
        }
    }

    pub fn map_entries(&self, f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        let rank = entries.first().map_or(self.rank, LaurentPoly::rank);
        PolyMatrix::new(self.domain, rank, self.rows, self.cols, entries)
    }

    pub fn extend_rank(&self, new_rank: usize) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|p| p.extend_rank(new_rank)).collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(self.domain, new_rank, self.rows, self.cols, entries)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { domain: self.domain, rank: self.rank, rows: self.cols, cols: self.rows, entries }
    }

    /// Rows and columns selected by index lists, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::Shape(format!("row index {r} out of range for {} rows", self.rows)));
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::Shape(format!("column index {c} out of range for {} columns", self.cols)));
        }
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        Ok(PolyMatrix { domain: self.domain, rank: self.rank, rows: rows.len(), cols: cols.len(), entries })
    }

    /// Determinant in `S[Γ]`; the empty matrix has determinant one.
    ///
    /// Cofactor expansion up to 4x4, fraction-free Bareiss elimination above.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows <= 4 {
            self.determinant_cofactor()
        } else {
            self.determinant_bareiss()
        }
    }

    pub(crate) fn determinant_cofactor(&self) -> Result<LaurentPoly> {
        let n = self.rows;
        let idx: Vec<usize> = (0..n).collect();
        cofactor(self, &idx, &idx)
    }

    pub(crate) fn determinant_bareiss(&self) -> Result<LaurentPoly> {
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(self.domain, self.rank));
        }
        let mut m: Vec<Vec<LaurentPoly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one(self.domain, self.rank);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(LaurentPoly::zero(self.domain, self.rank)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k].mul_unchecked(&m[i][j])?.sub_unchecked(&m[i][k].mul_unchecked(&m[k][j])?);
                    m[i][j] = num.exact_divide(&prev)?;
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { det.neg() } else { det })
    }

    /// Rank over the fraction field of `S[Γ]`, by fraction-free row reduction.
    pub fn rank_over_fraction_field(&self) -> Result<usize> {
        let mut m: Vec<Vec<LaurentPoly>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut prev = LaurentPoly::one(self.domain, self.rank);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(p) = (pivot_row..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, p);
            for i in pivot_row + 1..self.rows {
                for j in col + 1..self.cols {
                    let num = m[pivot_row][col]
                        .mul_unchecked(&m[i][j])?
                        .sub_unchecked(&m[i][col].mul_unchecked(&m[pivot_row][j])?);
                    m[i][j] = num.exact_divide(&prev)?;
                }
                m[i][col] = LaurentPoly::zero(self.domain, self.rank);
            }
            prev = m[pivot_row][col].clone();
            pivot_row += 1;
        }
        Ok(pivot_row)
    }

    /// Inverse of a matrix whose entries are constants of `S`.
    ///
    /// Adjugate formula up to 4x4, Gauss–Jordan over the fraction field above;
    /// either way every entry of the result must lie in `S`.
    pub fn inverse_over_coefficients(&self) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.entries.iter().any(|p| p.terms().any(|(e, _)| !e.is_zero())) {
            return Err(Error::Validation("matrix has non-constant entries".into()));
        }
        let n = self.rows;
        let det = self.determinant()?.constant_value();
        if !self.domain.is_unit(&det) {
            return Err(Error::Validation(format!(
                "matrix is not invertible over {} (determinant {det})",
                self.domain
            )));
        }
        let mut out = Vec::with_capacity(n * n);
        if n <= 4 {
            let idx: Vec<usize> = (0..n).collect();
            for i in 0..n {
                for j in 0..n {
                    let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != j).collect();
                    let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != i).collect();
                    let minor = cofactor(self, &rows, &cols)?.constant_value();
                    let signed = if (i + j) % 2 == 0 { minor } else { -minor };
                    let value = self.domain.div_exact(&signed, &det).ok_or(Error::InexactDivision)?;
                    out.push(LaurentPoly::constant(self.domain, self.rank, value)?);
                }
            }
        } else {
            for value in gauss_jordan_inverse(self)? {
                out.push(LaurentPoly::constant(self.domain, self.rank, value)?);
            }
        }
        PolyMatrix::new(self.domain, self.rank, n, n, out)
    }
}

fn cofactor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Result<LaurentPoly> {
    match rows.len() {
        0 => Ok(LaurentPoly::one(m.domain, m.rank)),
        1 => Ok(m.get(rows[0], cols[0]).clone()),
        _ => {
            let mut acc = LaurentPoly::zero(m.domain, m.rank);
            let rest_rows = &rows[1..];
            for (k, &c) in cols.iter().enumerate() {
                let a = m.get(rows[0], c);
                if a.is_zero() {
                    continue;
                }
                let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = a.mul_unchecked(&cofactor(m, rest_rows, &rest_cols)?)?;
                acc = if k % 2 == 0 { acc.add_unchecked(&term) } else { acc.sub_unchecked(&term) };
            }
            Ok(acc)
        }
    }
}

fn gauss_jordan_inverse(m: &PolyMatrix) -> Result<Vec<Scalar>> {
    let field = match m.domain {
        CoefficientDomain::Integers => CoefficientDomain::Rationals,
        d => d,
    };
    let n = m.rows;
    let mut a: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut row: Vec<Scalar> = m.row(i).iter().map(LaurentPoly::constant_value).collect();
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero()).ok_or(Error::InexactDivision)?;
        a.swap(col, p);
        let inv = field.div_exact(&Scalar::one(), &a[col][col]).ok_or(Error::InexactDivision)?;
        for v in a[col].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let pivot = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v = field.sub(v, &field.mul(&factor, p));
                }
            }
        }
    }
    Ok(a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect())
}

/// `M(p)`: the characters at which `p` is a Novikov unit.
///
/// For `p = Σ aᵢ gᵢ` this is the disjoint union, over terms with `aᵢ` a unit
/// of `S`, of the open cones where `gᵢ` strictly dominates every other
/// exponent.
pub fn invertibility_cones(p: &LaurentPoly) -> IntegralSubset {
    let rank = p.rank();
    let terms: Vec<_> = p.terms().collect();
    let mut cones = Vec::new();
    for (i, (gi, ai)) in terms.iter().enumerate() {
        if !p.domain().is_unit(ai) {
            continue;
        }
        let constraints = terms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, (gj, _))| {
            let form = gi.entries().iter().zip(gj.entries()).map(|(a, b)| BigInt::from(*a) - BigInt::from(*b));
            HalfSpace::new(form.collect(), true)
        });
        cones.push(IntegralCone::new(constraints));
    }
    IntegralSubset::from_cones(rank, cones).expect("forms have the polynomial's rank")
}

/// `M(A)` for a square matrix: `A` is invertible iff `det A` is a unit.
pub fn matrix_invertibility_cones(a: &PolyMatrix) -> Result<IntegralSubset> {
    Ok(invertibility_cones(&a.determinant()?))
}

/// Pointwise check that `A` is invertible over the Novikov completion at `ξ`.
pub fn matrix_invertible_at(a: &PolyMatrix, xi: &crate::grouprings::Character) -> Result<bool> {
    a.determinant()?.in_novikov_units(xi)
}
