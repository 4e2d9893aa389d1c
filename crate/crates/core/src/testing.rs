//! Seeded random generators for property tests and the acceptance suite.
//!
//! Enabled by the `testing` feature. Every generator takes an explicit RNG,
//! so a seed reproduces the exact same objects.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::BasedChainComplex;
use crate::conegeometry::{HalfSpace, IntegralCone, IntegralSubset};
use crate::grouprings::{Character, CoefficientDomain, Exponent, LaurentPoly, Scalar};
use crate::invertibility::PolyMatrix;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits for [`random_complex`].
#[derive(Clone, Debug)]
pub struct ComplexParams {
    pub max_length: usize,
    pub max_dim: usize,
    pub max_terms: usize,
    pub coeff_bound: i64,
    pub exp_bound: i64,
}

impl Default for ComplexParams {
    fn default() -> Self {
        ComplexParams { max_length: 3, max_dim: 3, max_terms: 4, coeff_bound: 2, exp_bound: 2 }
    }
}

pub fn random_domain(rng: &mut TestRng) -> CoefficientDomain {
    *[CoefficientDomain::Integers, CoefficientDomain::Rationals, CoefficientDomain::PrimeField(2)]
        .choose(rng)
        .expect("nonempty")
}

fn random_exponent(rng: &mut TestRng, rank: usize, bound: i64) -> Exponent {
    Exponent::new((0..rank).map(|_| rng.gen_range(-bound..=bound)).collect())
}

/// A polynomial with at most `max_terms` terms and coefficients in `[-coeff_bound, coeff_bound]`.
pub fn random_poly(rng: &mut TestRng, domain: CoefficientDomain, rank: usize, params: &ComplexParams) -> LaurentPoly {
    let n = rng.gen_range(0..=params.max_terms);
    let terms: Vec<(Scalar, Exponent)> = (0..n)
        .map(|_| {
            let c = rng.gen_range(-params.coeff_bound..=params.coeff_bound);
            (Scalar::from_integer(c.into()), random_exponent(rng, rank, params.exp_bound))
        })
        .collect();
    LaurentPoly::from_terms(domain, rank, terms).expect("ranks agree")
}

/// Like [`random_poly`] but never zero and with at most `max_terms` terms.
fn random_nonzero_poly(
    rng: &mut TestRng,
    domain: CoefficientDomain,
    rank: usize,
    max_terms: usize,
    bound: i64,
) -> LaurentPoly {
    let params = ComplexParams { max_terms, exp_bound: bound, ..ComplexParams::default() };
    loop {
        let p = random_poly(rng, domain, rank, &params);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_matrix(
    rng: &mut TestRng,
    domain: CoefficientDomain,
    rank: usize,
    rows: usize,
    cols: usize,
    params: &ComplexParams,
) -> PolyMatrix {
    let entries = (0..rows * cols).map(|_| random_poly(rng, domain, rank, params)).collect();
    PolyMatrix::new(domain, rank, rows, cols, entries).expect("shape")
}

fn matrix(domain: CoefficientDomain, rank: usize, rows: Vec<Vec<LaurentPoly>>, cols: usize) -> PolyMatrix {
    let r = rows.len();
    PolyMatrix::new(domain, rank, r, cols, rows.into_iter().flatten().collect()).expect("shape")
}

/// A small piece starting in degree 0: a single module, an arrow `p`, or a
/// Koszul complex on two or three elements. `room` is the highest degree the
/// piece may reach.
fn random_piece(
    rng: &mut TestRng,
    domain: CoefficientDomain,
    rank: usize,
    room: usize,
    params: &ComplexParams,
) -> BasedChainComplex {
    let zero = LaurentPoly::zero(domain, rank);
    let small = |rng: &mut TestRng| random_nonzero_poly(rng, domain, rank, 2, 1);
    let roll = rng.gen_range(0..100);
    let (dims, boundaries) = if room == 0 || roll < 10 {
        (vec![1], vec![])
    } else if room == 1 || roll < 65 {
        let p = if rng.gen_bool(0.9) {
            random_nonzero_poly(rng, domain, rank, params.max_terms, params.exp_bound)
        } else {
            random_poly(rng, domain, rank, params)
        };
        (vec![1, 1], vec![matrix(domain, rank, vec![vec![p]], 1)])
    } else if room == 2 || roll < 90 {
        let (a, b) = (small(rng), small(rng));
        let a0 = matrix(domain, rank, vec![vec![a.clone()], vec![b.clone()]], 1);
        let a1 = matrix(domain, rank, vec![vec![b, a.neg()]], 2);
        (vec![1, 2, 1], vec![a0, a1])
    } else {
        let (a, b, c) = (small(rng), small(rng), small(rng));
        let a0 = matrix(domain, rank, vec![vec![a.clone()], vec![b.clone()], vec![c.clone()]], 1);
        let a1 = matrix(
            domain,
            rank,
            vec![
                vec![b.clone(), a.neg(), zero.clone()],
                vec![c.clone(), zero.clone(), a.neg()],
                vec![zero.clone(), c.clone(), b.neg()],
            ],
            3,
        );
        let a2 = matrix(domain, rank, vec![vec![c, b.neg(), a]], 3);
        (vec![1, 3, 3, 1], vec![a0, a1, a2])
    };
    BasedChainComplex::new(domain, rank, dims, boundaries).expect("piece")
}

/// Shifts a complex up by `shift` degrees, padding with zero modules.
fn shifted(c: &BasedChainComplex, shift: usize) -> BasedChainComplex {
    let (domain, rank) = (c.domain(), c.rank());
    let mut dims = vec![0; shift];
    dims.extend_from_slice(c.dims());
    let mut boundaries: Vec<PolyMatrix> =
        (0..shift).map(|i| PolyMatrix::zero(domain, rank, dims[i + 1], dims[i]).expect("shape")).collect();
    boundaries.extend_from_slice(c.boundaries());
    BasedChainComplex::new(domain, rank, dims, boundaries).expect("shift")
}

fn max_terms(m: &PolyMatrix) -> usize {
    m.entries().iter().map(LaurentPoly::num_terms).max().unwrap_or(0)
}

/// Replaces basis vector `a` of `C_j` by `e_a + m·e_b` for a monomial `m`,
/// keeping the change only if every entry still has at most `max_terms` terms.
fn random_basis_change(rng: &mut TestRng, c: &BasedChainComplex, params: &ComplexParams) -> BasedChainComplex {
    let (domain, rank) = (c.domain(), c.rank());
    let j = rng.gen_range(0..c.dims().len());
    let n = c.dims()[j];
    if n < 2 {
        return c.clone();
    }
    let a = rng.gen_range(0..n);
    let b = (a + rng.gen_range(1..n)) % n;
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let m =
        LaurentPoly::monomial(domain, Scalar::from_integer(sign.into()), random_exponent(rng, rank, 1)).expect("rank");
    let elementary = |m: &LaurentPoly| {
        let mut e = PolyMatrix::identity(domain, rank, n);
        e.set(a, b, m.clone()).expect("index");
        e
    };
    let mut boundaries = c.boundaries().to_vec();
    if j >= 1 {
        boundaries[j - 1] = elementary(&m).mul(&boundaries[j - 1]).expect("shape");
    }
    if j < boundaries.len() {
        boundaries[j] = boundaries[j].mul(&elementary(&m.neg())).expect("shape");
    }
    if boundaries.iter().any(|m| max_terms(m) > params.max_terms) {
        return c.clone();
    }
    BasedChainComplex::new(domain, rank, c.dims().to_vec(), boundaries).expect("basis change")
}

/// A valid complex (`∂∂ = 0`) within the limits of `params`.
///
/// Length-one complexes use arbitrary matrices. Longer ones are direct sums of
/// shifted elementary and Koszul pieces, followed by random monomial basis
/// changes, which keeps `∂∂ = 0` while mixing the blocks.
pub fn random_complex(
    rng: &mut TestRng,
    domain: CoefficientDomain,
    rank: usize,
    params: &ComplexParams,
) -> BasedChainComplex {
    let length = rng.gen_range(0..=params.max_length);
    if length <= 1 {
        let mut dims: Vec<usize> = (0..=length).map(|_| rng.gen_range(1..=params.max_dim)).collect();
        if length == 1 && rng.gen_bool(0.75) {
            dims[1] = dims[0];
        }
        let boundaries = (0..length).map(|i| random_matrix(rng, domain, rank, dims[i + 1], dims[i], params)).collect();
        return BasedChainComplex::new(domain, rank, dims, boundaries).expect("random complex");
    }
    let mut c = BasedChainComplex::new(
        domain,
        rank,
        vec![0; length + 1],
        (0..length).map(|_| PolyMatrix::zero(domain, rank, 0, 0).expect("shape")).collect(),
    )
    .expect("empty complex");
    for _ in 0..rng.gen_range(1..=4) {
        let start = rng.gen_range(0..length);
        let piece = shifted(&random_piece(rng, domain, rank, length - start, params), start);
        let candidate = c.direct_sum(&piece).expect("same ring");
        if candidate.dims().iter().all(|&d| d <= params.max_dim) {
            c = candidate;
        }
    }
    for _ in 0..rng.gen_range(0..=4) {
        c = random_basis_change(rng, &c, params);
    }
    debug_assert!(c.validate().is_ok());
    c
}

/// A random lattice character with coordinates in `[-bound, bound]`.
pub fn random_lattice_character(rng: &mut TestRng, rank: usize, bound: i64) -> Character {
    Character::from_integers(&(0..rank).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

/// A random rational character with numerators in `[-bound, bound]` and denominators in `1..=3`.
pub fn random_rational_character(rng: &mut TestRng, rank: usize, bound: i64) -> Character {
    Character::new(
        (0..rank)
            .map(|_| BigRational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=3i64).into()))
            .collect(),
    )
}

/// A union of up to three cones, each cut out by up to three half-spaces with entries in `[-2, 2]`.
pub fn random_subset(rng: &mut TestRng, rank: usize) -> IntegralSubset {
    let cones = (0..rng.gen_range(0..=3))
        .map(|_| {
            IntegralCone::new((0..rng.gen_range(1..=3)).map(|_| {
                let form: Vec<BigInt> = (0..rank).map(|_| BigInt::from(rng.gen_range(-2..=2i64))).collect();
                HalfSpace::new(form, rng.gen_bool(0.6))
            }))
        })
        .collect();
    IntegralSubset::from_cones(rank, cones).expect("rank")
}

fn int_matrix(domain: CoefficientDomain, rows: &[Vec<i64>]) -> PolyMatrix {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let entries = rows.iter().flatten().map(|&v| LaurentPoly::from_i64(domain, 0, v)).collect();
    PolyMatrix::new(domain, 0, n, cols, entries).expect("shape")
}

/// A matrix in `GL(n, ℤ)` with entries in `[-bound, bound]`: a signed
/// permutation multiplied by random elementary matrices, rejecting steps that
/// leave the entry bound.
pub fn random_unimodular(rng: &mut TestRng, n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if perm[i] == j {
                        if rng.gen_bool(0.5) {
                            1
                        } else {
                            -1
                        }
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    if n < 2 {
        return m;
    }
    for _ in 0..rng.gen_range(0..=3 * n) {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let k = if rng.gen_bool(0.5) { 1 } else { -1 };
        let candidate: Vec<i64> = (0..n).map(|j| m[a][j] + k * m[b][j]).collect();
        if candidate.iter().all(|v| v.abs() <= bound) {
            m[a] = candidate;
        }
    }
    m
}

/// A fiber complex over `ℤ` and a chain automorphism of it, with fiber dims at most `max_dim`.
pub fn random_mapping_torus_data(rng: &mut TestRng, max_dim: usize) -> (BasedChainComplex, Vec<PolyMatrix>) {
    let z = CoefficientDomain::Integers;
    let unimodular = |rng: &mut TestRng, n: usize| int_matrix(z, &random_unimodular(rng, n, 2));
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(1..=max_dim);
            let fiber = BasedChainComplex::new(z, 0, vec![n], vec![]).expect("fiber");
            (fiber, vec![unimodular(rng, n)])
        }
        1 => {
            let (n, m) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
            let d = PolyMatrix::zero(z, 0, m, n).expect("shape");
            let fiber = BasedChainComplex::new(z, 0, vec![n, m], vec![d]).expect("fiber");
            (fiber, vec![unimodular(rng, n), unimodular(rng, m)])
        }
        _ => {
            let n = rng.gen_range(1..=max_dim);
            let d = PolyMatrix::identity(z, 0, n);
            let fiber = BasedChainComplex::new(z, 0, vec![n, n], vec![d]).expect("fiber");
            let phi = unimodular(rng, n);
            (fiber, vec![phi.clone(), phi])
        }
    }
}
