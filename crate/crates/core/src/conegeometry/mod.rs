//! Integral half-spaces, cones and subsets of `Hom(Γ, ℝ)`.
//!
//! An [`IntegralSubset`] is a finite union of [`IntegralCone`]s, each of which
//! is a finite intersection of open or closed [`HalfSpace`]s cut out by
//! integral linear forms. All constraints are homogeneous, so membership is
//! invariant under positive scaling and every nonempty subset contains a
//! lattice point.
//!
//! No canonical form is attempted; equality is semantic
//! ([`IntegralSubset::semantically_equal`]).

mod fm;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::grouprings::Character;

/// `{ξ : f(ξ) > 0}` when `strict`, `{ξ : f(ξ) ≥ 0}` otherwise.
///
/// The form is divided by the gcd of its entries; its sign is never changed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    form: Vec<BigInt>,
    strict: bool,
}

impl HalfSpace {
    pub fn new(form: Vec<BigInt>, strict: bool) -> Self {
        let g = form.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let form = if g.is_zero() || g == BigInt::from(1) { form } else { form.into_iter().map(|v| v / &g).collect() };
        HalfSpace { form, strict }
    }

    pub fn from_i64(form: &[i64], strict: bool) -> Self {
        Self::new(form.iter().map(|&v| BigInt::from(v)).collect(), strict)
    }

    pub fn form(&self) -> &[BigInt] {
        &self.form
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    fn is_zero_form(&self) -> bool {
        self.form.iter().all(Zero::is_zero)
    }

    /// `0 > 0`.
    pub fn is_trivially_empty(&self) -> bool {
        self.strict && self.is_zero_form()
    }

    /// `0 ≥ 0`.
    pub fn is_trivially_full(&self) -> bool {
        !self.strict && self.is_zero_form()
    }

    /// The complementary half-space: `¬(f > 0) = (-f ≥ 0)` and `¬(f ≥ 0) = (-f > 0)`.
    pub fn negated(&self) -> HalfSpace {
        HalfSpace { form: self.form.iter().map(|v| -v).collect(), strict: !self.strict }
    }

    pub fn contains(&self, xi: &Character) -> bool {
        let value = xi.evaluate_form(&self.form);
        if self.strict {
            value.is_positive()
        } else {
            !value.is_negative()
        }
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.form.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ") {} 0", if self.strict { ">" } else { ">=" })
    }
}

/// Conjunction of half-spaces, stored sorted and without duplicates.
/// The empty conjunction is the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralCone {
    constraints: Vec<HalfSpace>,
}

impl IntegralCone {
    pub fn new(constraints: impl IntoIterator<Item = HalfSpace>) -> Self {
        let mut constraints: Vec<HalfSpace> = constraints.into_iter().filter(|h| !h.is_trivially_full()).collect();
        constraints.sort();
        constraints.dedup();
        IntegralCone { constraints }
    }

    pub fn whole() -> Self {
        IntegralCone { constraints: Vec::new() }
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    pub fn contains(&self, xi: &Character) -> bool {
        self.constraints.iter().all(|h| h.contains(xi))
    }

    pub fn intersect(&self, other: &IntegralCone) -> IntegralCone {
        IntegralCone::new(self.constraints.iter().chain(&other.constraints).cloned())
    }

    pub fn with(&self, h: HalfSpace) -> IntegralCone {
        IntegralCone::new(self.constraints.iter().cloned().chain(std::iter::once(h)))
    }

    /// Exact emptiness over the reals.
    pub fn is_empty(&self, rank: usize) -> bool {
        !fm::is_feasible(rank, &self.constraints)
    }

    /// Whether every point of the cone lies in `h`.
    pub fn implies(&self, rank: usize, h: &HalfSpace) -> bool {
        self.with(h.negated()).is_empty(rank)
    }

    /// A primitive integer point of the cone, if it is nonempty.
    pub fn lattice_point(&self, rank: usize) -> Option<Vec<BigInt>> {
        fm::rational_solution(rank, &self.constraints).map(|x| fm::to_lattice(&x))
    }

    /// Syntactic containment: every constraint of `other` appears here.
    fn syntactically_within(&self, other: &IntegralCone) -> bool {
        other.constraints.iter().all(|h| self.constraints.binary_search(h).is_ok())
    }

    /// Drops constraints implied by the others.
    pub fn without_redundancy(&self, rank: usize) -> IntegralCone {
        let mut kept = self.constraints.clone();
        let mut i = 0;
        while i < kept.len() {
            let h = kept.remove(i);
            let rest = IntegralCone { constraints: kept.clone() };
            if rest.implies(rank, &h) {
                continue;
            }
            kept.insert(i, h);
            i += 1;
        }
        IntegralCone { constraints: kept }
    }
}

impl fmt::Display for IntegralCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constraints.is_empty() {
            return write!(f, "true");
        }
        for (i, h) in self.constraints.iter().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// Finite union of integral cones in `Hom(ℤ^rank, ℝ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralSubset {
    rank: usize,
    cones: Vec<IntegralCone>,
}

impl IntegralSubset {
    pub fn empty(rank: usize) -> Self {
        IntegralSubset { rank, cones: Vec::new() }
    }

    pub fn whole(rank: usize) -> Self {
        IntegralSubset { rank, cones: vec![IntegralCone::whole()] }
    }

    pub fn from_cones(rank: usize, cones: Vec<IntegralCone>) -> Result<Self> {
        for h in cones.iter().flat_map(|c| &c.constraints) {
            if h.rank() != rank {
                return Err(Error::rank(rank, h.rank()));
            }
        }
        Ok(IntegralSubset { rank, cones })
    }

    pub fn single(rank: usize, cone: IntegralCone) -> Result<Self> {
        Self::from_cones(rank, vec![cone])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cones(&self) -> &[IntegralCone] {
        &self.cones
    }

    fn check_rank(&self, other: &IntegralSubset) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::rank(self.rank, other.rank))
        }
    }

    pub fn contains_point(&self, xi: &Character) -> Result<bool> {
        xi.check_rank(self.rank)?;
        Ok(self.cones.iter().any(|c| c.contains(xi)))
    }

    pub fn is_empty(&self) -> bool {
        self.cones.iter().all(|c| c.is_empty(self.rank))
    }

    pub fn lattice_point(&self) -> Option<Vec<BigInt>> {
        self.cones.iter().find_map(|c| c.lattice_point(self.rank))
    }

    pub fn union(&self, other: &IntegralSubset) -> Result<IntegralSubset> {
        self.check_rank(other)?;
        let cones = self.cones.iter().chain(&other.cones).cloned().collect();
        Ok(self.reduced(cones))
    }

    pub fn intersect(&self, other: &IntegralSubset) -> Result<IntegralSubset> {
        self.check_rank(other)?;
        let mut cones = Vec::with_capacity(self.cones.len() * other.cones.len());
        for a in &self.cones {
            for b in &other.cones {
                cones.push(a.intersect(b));
            }
        }
        Ok(self.reduced(cones))
    }

    pub fn complement(&self) -> IntegralSubset {
        self.complement_within(&IntegralSubset::whole(self.rank)).expect("ranks agree by construction")
    }

    /// `seed ∖ self`, computed by intersecting `seed` with the negation of each
    /// cone in turn. Cones of the running result that already miss a cone of
    /// `self` pass through unchanged, which keeps intermediate unions small.
    pub fn complement_within(&self, seed: &IntegralSubset) -> Result<IntegralSubset> {
        self.check_rank(seed)?;
        let rank = self.rank;
        let mut acc = self.reduced(seed.cones.clone());
        for cone in &self.cones {
            let mut next = Vec::new();
            for region in &acc.cones {
                if region.intersect(cone).is_empty(rank) {
                    next.push(region.clone());
                    continue;
                }
                for h in &cone.constraints {
                    let nh = h.negated();
                    if region.implies(rank, &nh) {
                        next.push(region.clone());
                        break;
                    }
                    next.push(region.with(nh));
                }
            }
            acc = self.reduced(next);
            if acc.cones.is_empty() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn difference(&self, other: &IntegralSubset) -> Result<IntegralSubset> {
        other.complement_within(self)
    }

    /// Set equality, decided by emptiness of both differences.
    pub fn semantically_equal(&self, other: &IntegralSubset) -> Result<bool> {
        Ok(self.difference(other)?.is_empty() && other.difference(self)?.is_empty())
    }

    /// Prunes empty cones, removes exact duplicates and cones syntactically
    /// contained in another. Order of first appearance is preserved.
    fn reduced(&self, cones: Vec<IntegralCone>) -> IntegralSubset {
        let rank = self.rank;
        let mut live: Vec<IntegralCone> = Vec::with_capacity(cones.len());
        for cone in cones {
            if live.iter().any(|k| cone.syntactically_within(k)) {
                continue;
            }
            if cone.is_empty(rank) {
                continue;
            }
            live.retain(|k| !k.syntactically_within(&cone));
            live.push(cone);
        }
        IntegralSubset { rank, cones: live }
    }

    /// An equivalent subset in canonical presentation: redundant constraints
    /// dropped, empty and subsumed cones removed, cones sorted by constraint
    /// count and then lexicographically.
    pub fn simplified(&self) -> IntegralSubset {
        let cones =
            self.cones.iter().filter(|c| !c.is_empty(self.rank)).map(|c| c.without_redundancy(self.rank)).collect();
        let mut out = self.reduced(cones);
        out.sort_canonical();
        out
    }

    pub fn sort_canonical(&mut self) {
        self.cones.sort_by(|a, b| {
            a.constraints.len().cmp(&b.constraints.len()).then_with(|| a.constraints.cmp(&b.constraints))
        });
        self.cones.dedup();
    }
}

impl fmt::Display for IntegralSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cones.is_empty() {
            return write!(f, "empty");
        }
        for (i, c) in self.cones.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{{{c}}}")?;
        }
        Ok(())
    }
}
