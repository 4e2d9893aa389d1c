use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use super::BasedChainComplex;
use crate::conegeometry::IntegralSubset;
use crate::error::{Error, Result};
use crate::grouprings::{Character, LaurentPoly};
use crate::invertibility::{invertibility_cones, PolyMatrix};

pub const DEFAULT_TAU_CAP: u128 = 1_000_000;

/// Index sets `α = (α_0, …, α_m)` (zero-based) with `α_0 = ∅` such that every
/// selected submatrix `A_i(α)` is square and `α_m` is all of `C_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauChain {
    sets: Vec<Vec<usize>>,
}

impl TauChain {
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }
}

impl fmt::Display for TauChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.sets.iter().map(|s| format!("{{{}}}", s.iter().map(|i| (i + 1).to_string()).join(","))).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingOptions {
    /// Hard limit on the number of `τ`-chains; exceeding it is an error.
    pub tau_cap: u128,
    /// Worker threads for the per-chain work; `1` runs on the calling thread.
    pub jobs: usize,
}

impl Default for VanishingOptions {
    fn default() -> Self {
        VanishingOptions { tau_cap: DEFAULT_TAU_CAP, jobs: 1 }
    }
}

/// The vanishing locus `M(C_*)` of a complex.
///
/// At every `ξ` in `vanishing_set` the homology with rational Novikov
/// coefficients is zero, so every Novikov–Betti number and every Novikov
/// torsion number vanishes there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub vanishing_set: IntegralSubset,
    pub tau_chains: u128,
}

impl VanishingReport {
    /// `true` when `b_i(ξ) = q_i(ξ) = 0` for all `i` is certified.
    pub fn certifies_vanishing_at(&self, xi: &Character) -> Result<bool> {
        self.vanishing_set.contains_point(xi)
    }
}

type BlockKey = (usize, Vec<usize>, Vec<usize>);

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

impl BasedChainComplex {
    /// `|α_i|` for every degree, or `None` if no `τ`-chain exists.
    fn tau_sizes(&self) -> Option<Vec<usize>> {
        let mut sizes = vec![0usize];
        for i in 0..self.length() {
            let next = self.dims[i].checked_sub(sizes[i])?;
            if next > self.dims[i + 1] {
                return None;
            }
            sizes.push(next);
        }
        (sizes[self.length()] == self.dims[self.length()]).then_some(sizes)
    }

    pub fn tau_chain_count(&self) -> u128 {
        match self.tau_sizes() {
            None => 0,
            Some(sizes) => sizes.iter().zip(&self.dims).fold(1u128, |acc, (&k, &n)| acc.saturating_mul(binomial(n, k))),
        }
    }

    /// All `τ`-chains in lexicographic order.
    ///
    /// The cardinalities are forced degree by degree, so the chains form a
    /// product of subset families.
    pub fn tau_chains(&self) -> Result<Box<dyn Iterator<Item = TauChain> + '_>> {
        self.ensure_valid()?;
        let Some(sizes) = self.tau_sizes() else {
            return Ok(Box::new(std::iter::empty()));
        };
        if self.length() == 0 {
            return Ok(Box::new(std::iter::once(TauChain { sets: vec![Vec::new()] })));
        }
        let levels = (1..=self.length()).map(|i| (0..self.dims[i]).combinations(sizes[i]));
        Ok(Box::new(levels.multi_cartesian_product().map(|choice| {
            let mut sets = Vec::with_capacity(choice.len() + 1);
            sets.push(Vec::new());
            sets.extend(choice);
            TauChain { sets }
        })))
    }

    fn selection(&self, i: usize, chain: &TauChain) -> Result<BlockKey> {
        let sets = chain.sets();
        if sets.len() != self.dims.len() {
            return Err(Error::Shape(format!(
                "matrix chain has {} index sets, complex has {} chain modules",
                sets.len(),
                self.dims.len()
            )));
        }
        let rows = sets[i + 1].clone();
        let cols: Vec<usize> = (0..self.dims[i]).filter(|c| !sets[i].contains(c)).collect();
        if let Some(&c) = sets[i].iter().find(|&&c| c >= self.dims[i]) {
            return Err(Error::Shape(format!("index {} out of range in degree {i}", c + 1)));
        }
        Ok((i, rows, cols))
    }

    /// `A_i(α)`: rows in `α_{i+1}`, columns outside `α_i`, original order kept.
    pub fn submatrix(&self, i: usize, chain: &TauChain) -> Result<PolyMatrix> {
        if i >= self.length() {
            return Err(Error::Shape(format!("no boundary matrix A{i}")));
        }
        let (_, rows, cols) = self.selection(i, chain)?;
        self.boundaries[i].submatrix(&rows, &cols)
    }

    fn check_cap(&self, options: &VanishingOptions) -> Result<u128> {
        let count = self.tau_chain_count();
        if count > options.tau_cap {
            return Err(Error::ResourceLimit(format!("{count} tau-chains exceed the cap of {}", options.tau_cap)));
        }
        Ok(count)
    }

    pub fn vanishes_at(&self, xi: &Character) -> Result<bool> {
        self.vanishes_at_with(xi, &VanishingOptions::default())
    }

    /// Pointwise test: some `τ`-chain has every `det A_i(α)` a Novikov unit at `ξ`.
    ///
    /// Evaluates leading parts directly and never touches cone arithmetic.
    pub fn vanishes_at_with(&self, xi: &Character, options: &VanishingOptions) -> Result<bool> {
        xi.check_rank(self.rank)?;
        self.ensure_valid()?;
        self.check_cap(options)?;
        let mut dets: HashMap<BlockKey, LaurentPoly> = HashMap::new();
        'chains: for chain in self.tau_chains()? {
            for i in 0..self.length() {
                let key = self.selection(i, &chain)?;
                let det = match dets.get(&key) {
                    Some(d) => d,
                    None => {
                        let d = self.boundaries[i].submatrix(&key.1, &key.2)?.determinant()?;
                        dets.entry(key).or_insert(d)
                    }
                };
                if !det.in_novikov_units(xi)? {
                    continue 'chains;
                }
            }
            return Ok(true);
        }
        Ok(false)
    }

    /// `M(C_*) = ⋃_α ⋂_i M(A_i(α))`.
    pub fn vanishing_set(&self, options: &VanishingOptions) -> Result<VanishingReport> {
        self.ensure_valid()?;
        let count = self.check_cap(options)?;
        let chains: Vec<TauChain> = self.tau_chains()?.collect();
        let memo: Mutex<HashMap<BlockKey, Arc<IntegralSubset>>> = Mutex::new(HashMap::new());

        let per_chain = |chain: &TauChain| -> Result<Option<IntegralSubset>> {
            let mut acc = IntegralSubset::whole(self.rank);
            for i in 0..self.length() {
                let key = self.selection(i, chain)?;
                let cached = memo.lock().expect("memo lock").get(&key).cloned();
                let cones = match cached {
                    Some(c) => c,
                    None => {
                        let det = self.boundaries[i].submatrix(&key.1, &key.2)?.determinant()?;
                        let c = Arc::new(invertibility_cones(&det));
                        memo.lock().expect("memo lock").entry(key).or_insert(c).clone()
                    }
                };
                acc = acc.intersect(&cones)?;
                if acc.cones().is_empty() {
                    return Ok(None);
                }
            }
            Ok(Some(acc))
        };

        let pieces = run_ordered(&chains, options.jobs, per_chain)?;
        let mut total = IntegralSubset::empty(self.rank);
        for piece in pieces.into_iter().flatten() {
            total = total.union(&piece)?;
        }
        Ok(VanishingReport { vanishing_set: total.simplified(), tau_chains: count })
    }
}

/// Maps `f` over `items`, possibly in parallel, returning results in input order.
fn run_ordered<T, R, F>(items: &[T], jobs: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync,
{
    #[cfg(feature = "parallel")]
    if jobs > 1 && items.len() > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::ResourceLimit(format!("thread pool: {e}")))?;
        return pool.install(|| items.par_iter().map(&f).collect());
    }
    let _ = jobs;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conegeometry::{HalfSpace, IntegralCone};
    use crate::grouprings::CoefficientDomain;

    const Z: CoefficientDomain = CoefficientDomain::Integers;
    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    fn uni(domain: CoefficientDomain, coeffs: &[(i64, i64)]) -> LaurentPoly {
        let terms: Vec<_> = coeffs.iter().map(|&(c, e)| (c, vec![e])).collect();
        LaurentPoly::from_int_terms(domain, 1, &terms).unwrap()
    }

    fn bare(dims: Vec<usize>) -> BasedChainComplex {
        let boundaries = dims.windows(2).map(|w| PolyMatrix::zero(Z, 1, w[1], w[0]).unwrap()).collect();
        BasedChainComplex::new(Z, 1, dims, boundaries).unwrap()
    }

    fn single(p: LaurentPoly) -> BasedChainComplex {
        let d = p.domain();
        BasedChainComplex::new(d, 1, vec![1, 1], vec![PolyMatrix::from_rows(d, 1, vec![vec![p]]).unwrap()]).unwrap()
    }

    fn ray(sign: i64) -> IntegralCone {
        IntegralCone::new([HalfSpace::from_i64(&[sign], true)])
    }

    #[test]
    fn enumeration_examples() {
        let chains: Vec<_> = bare(vec![1, 1]).tau_chains().unwrap().collect();
        assert_eq!(chains, vec![TauChain { sets: vec![vec![], vec![0]] }]);

        let chains: Vec<_> = bare(vec![1, 2, 1]).tau_chains().unwrap().collect();
        assert_eq!(
            chains,
            vec![TauChain { sets: vec![vec![], vec![0], vec![0]] }, TauChain { sets: vec![vec![], vec![1], vec![0]] },]
        );
        assert_eq!(chains[1].to_string(), "({}, {2}, {1})");
        assert_eq!(bare(vec![2, 1]).tau_chains().unwrap().count(), 0);
        // The top module must be covered: (1, 2) has square selections but H_1 ≠ 0.
        assert_eq!(bare(vec![1, 2]).tau_chains().unwrap().count(), 0);
        assert_eq!(bare(vec![0]).tau_chains().unwrap().count(), 1);
        assert_eq!(bare(vec![2]).tau_chains().unwrap().count(), 0);
        assert_eq!(bare(vec![2, 3, 1]).tau_chain_count(), 3);
        assert_eq!(bare(vec![2, 3, 1]).tau_chains().unwrap().count(), 3);
    }

    #[test]
    fn submatrix_examples() {
        let tm1 = uni(Z, &[(-1, 0), (1, 1)]);
        let a0 = PolyMatrix::from_rows(Z, 1, vec![vec![tm1.clone()], vec![tm1.clone()]]).unwrap();
        let a1 = PolyMatrix::from_rows(Z, 1, vec![vec![tm1.clone(), tm1.neg()]]).unwrap();
        let c = BasedChainComplex::new(Z, 1, vec![1, 2, 1], vec![a0.clone(), a1]).unwrap();
        let chain = TauChain { sets: vec![vec![], vec![1], vec![0]] };
        assert_eq!(c.submatrix(0, &chain).unwrap(), PolyMatrix::from_rows(Z, 1, vec![vec![tm1.clone()]]).unwrap());
        let full = TauChain { sets: vec![vec![], vec![0, 1], vec![]] };
        assert_eq!(c.submatrix(0, &full).unwrap(), a0);
        let empty = c.submatrix(1, &TauChain { sets: vec![vec![], vec![0, 1], vec![]] }).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 0));
        assert!(empty.determinant().unwrap().is_one());
        assert!(c.submatrix(2, &chain).is_err());
        assert!(c.submatrix(0, &TauChain { sets: vec![vec![], vec![5], vec![0]] }).is_err());
    }

    #[test]
    fn pointwise_examples() {
        let c = single(uni(Z, &[(1, 0), (1, 1)]));
        assert!(c.vanishes_at(&Character::from_integers(&[1])).unwrap());
        assert!(!c.vanishes_at(&Character::from_integers(&[0])).unwrap());
        let c = single(uni(Z, &[(2, 0), (1, 1)]));
        assert!(!c.vanishes_at(&Character::from_integers(&[-1])).unwrap());
        assert!(c.vanishes_at(&Character::from_integers(&[1, 1])).is_err());
    }

    #[test]
    fn vanishing_set_examples() {
        let opts = VanishingOptions::default();
        let nonzero = IntegralSubset::from_cones(1, vec![ray(1), ray(-1)]).unwrap();
        let positive = IntegralSubset::from_cones(1, vec![ray(1)]).unwrap();

        let m = single(uni(Z, &[(1, 0), (1, 1)])).vanishing_set(&opts).unwrap().vanishing_set;
        assert!(m.semantically_equal(&nonzero).unwrap());
        let m = single(uni(Z, &[(2, 0), (1, 1)])).vanishing_set(&opts).unwrap().vanishing_set;
        assert!(m.semantically_equal(&positive).unwrap());
        let m = single(uni(Q, &[(2, 0), (1, 1)])).vanishing_set(&opts).unwrap().vanishing_set;
        assert!(m.semantically_equal(&nonzero).unwrap());
        for x in -3..=3 {
            let xi = Character::from_integers(&[x]);
            let c = single(uni(Z, &[(2, 0), (1, 1)]));
            assert_eq!(c.vanishes_at(&xi).unwrap(), x > 0);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let c = bare(vec![3, 6, 3]);
        assert_eq!(c.tau_chain_count(), 20);
        let opts = VanishingOptions { tau_cap: 10, jobs: 1 };
        assert!(matches!(c.vanishing_set(&opts), Err(Error::ResourceLimit(_))));
        assert!(matches!(c.vanishes_at_with(&Character::from_integers(&[1]), &opts), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(6, 0), 1);
        assert_eq!(binomial(6, 6), 1);
        assert_eq!(binomial(10, 3), 120);
    }
}
