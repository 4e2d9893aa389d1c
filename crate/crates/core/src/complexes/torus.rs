use super::{copy_block, BasedChainComplex};
use crate::error::{Error, Result};
use crate::grouprings::{CoefficientDomain, LaurentPoly};
use crate::invertibility::PolyMatrix;

/// Algebraic mapping torus of a chain automorphism `φ` of a complex `D` over `S`.
///
/// The result is the mapping cone of `id − t·φ : D[t^±1] → D[t^±1]` over
/// `S[ℤ]`, with `C_j = D_{j-1} ⊕ D_j` and boundary
/// `(a, b) ↦ (−a·d, a·(id − tφ) + b·d)` in the row-vector convention.
///
/// `fiber` must have `Γ`-rank 0, and `monodromy[i]` is `φ_i : D_i → D_i`.
pub fn mapping_torus(fiber: &BasedChainComplex, monodromy: &[PolyMatrix]) -> Result<BasedChainComplex> {
    if fiber.rank() != 0 {
        return Err(Error::Validation(format!("fiber complex must be over S (Γ-rank 0), found rank {}", fiber.rank())));
    }
    fiber.ensure_valid()?;
    let domain = fiber.domain();
    let dims = fiber.dims();
    if monodromy.len() != dims.len() {
        return Err(Error::Validation(format!(
            "monodromy needs one matrix per degree ({}), got {}",
            dims.len(),
            monodromy.len()
        )));
    }
    for (i, phi) in monodromy.iter().enumerate() {
        if (phi.rows(), phi.cols()) != (dims[i], dims[i]) {
            return Err(Error::Validation(format!(
                "monodromy in degree {i} must be {}x{}, got {}x{}",
                dims[i],
                dims[i],
                phi.rows(),
                phi.cols()
            )));
        }
        if phi.rank() != 0 || phi.domain() != domain {
            return Err(Error::Validation(format!("monodromy in degree {i} is not a matrix over {domain}")));
        }
        let det = phi.determinant()?.constant_value();
        if !domain.is_unit(&det) {
            return Err(Error::Validation(format!(
                "monodromy in degree {i} is not invertible over {domain} (determinant {det})"
            )));
        }
    }
    for (i, d) in fiber.boundaries().iter().enumerate() {
        if d.mul(&monodromy[i])? != monodromy[i + 1].mul(d)? {
            return Err(Error::Validation(format!("monodromy does not commute with the boundary d{i}")));
        }
    }

    let n = fiber.length();
    let t = LaurentPoly::variable(domain, 1, 0);
    let lift = |m: &PolyMatrix| m.extend_rank(1);
    let fiber_dim = |j: isize| if j < 0 || j as usize > n { 0 } else { dims[j as usize] };
    let cone_dims: Vec<usize> = (0..=n + 1).map(|j| fiber_dim(j as isize - 1) + fiber_dim(j as isize)).collect();

    let mut boundaries = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let (rows, cols) = (cone_dims[j + 1], cone_dims[j]);
        let mut a = PolyMatrix::zero(domain, 1, rows, cols)?;
        let low = fiber_dim(j as isize - 1);
        if j >= 1 {
            copy_block(&mut a, &lift(&fiber.boundaries()[j - 1])?.neg(), 0, 0)?;
        }
        let phi = lift(&monodromy[j])?;
        let t_phi = phi.map_entries(|p| p.mul(&t))?;
        let f = PolyMatrix::identity(domain, 1, dims[j]).sub(&t_phi)?;
        copy_block(&mut a, &f, 0, low)?;
        if j < n {
            copy_block(&mut a, &lift(&fiber.boundaries()[j])?, dims[j], low)?;
        }
        boundaries.push(a);
    }
    let torus = BasedChainComplex::new(domain, 1, cone_dims, boundaries)?;
    torus.ensure_valid()?;
    Ok(torus)
}

/// Mapping torus of a fiber with zero differentials.
pub fn mapping_torus_of_dims(
    domain: CoefficientDomain,
    fiber_dims: &[usize],
    monodromy: &[PolyMatrix],
) -> Result<BasedChainComplex> {
    let boundaries =
        fiber_dims.windows(2).map(|w| PolyMatrix::zero(domain, 0, w[1], w[0])).collect::<Result<Vec<_>>>()?;
    let fiber = BasedChainComplex::new(domain, 0, fiber_dims.to_vec(), boundaries)?;
    mapping_torus(&fiber, monodromy)
}
