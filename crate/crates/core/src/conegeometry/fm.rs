//! Fourier–Motzkin elimination for homogeneous systems of strict and
//! non-strict integral inequalities.
//!
//! Variables are eliminated in ascending index order. A combined inequality is
//! strict iff one of its parents is strict.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::HalfSpace;

/// Canonicalizes a system in place. Returns `None` if it contains `0 > 0`.
fn normalize_system(mut rows: Vec<HalfSpace>) -> Option<Vec<HalfSpace>> {
    if rows.iter().any(HalfSpace::is_trivially_empty) {
        return None;
    }
    rows.retain(|h| !h.is_trivially_full());
    rows.sort();
    rows.dedup();
    // `f > 0` implies `f >= 0`; keep only the strict copy.
    let strict_forms: Vec<Vec<BigInt>> = rows.iter().filter(|h| h.strict).map(|h| h.form.clone()).collect();
    rows.retain(|h| h.strict || strict_forms.binary_search(&h.form).is_err());
    Some(rows)
}

fn eliminate(rows: &[HalfSpace], var: usize) -> Vec<HalfSpace> {
    let mut out = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for h in rows {
        match h.form[var].sign() {
            num_bigint::Sign::Plus => pos.push(h),
            num_bigint::Sign::Minus => neg.push(h),
            num_bigint::Sign::NoSign => out.push(h.clone()),
        }
    }
    for p in &pos {
        for n in &neg {
            let a = &p.form[var];
            let b = -&n.form[var];
            let form: Vec<BigInt> = p.form.iter().zip(&n.form).map(|(x, y)| &b * x + a * y).collect();
            out.push(HalfSpace::new(form, p.strict || n.strict));
        }
    }
    out
}

/// The successive systems `stages[k]` in which variables `0..k` are eliminated,
/// or `None` when the cone is empty.
fn elimination_stages(rank: usize, rows: &[HalfSpace]) -> Option<Vec<Vec<HalfSpace>>> {
    let mut stages = Vec::with_capacity(rank + 1);
    let mut current = normalize_system(rows.to_vec())?;
    for var in 0..rank {
        let next = normalize_system(eliminate(&current, var))?;
        stages.push(current);
        current = next;
    }
    stages.push(current);
    Some(stages)
}

pub(crate) fn is_feasible(rank: usize, rows: &[HalfSpace]) -> bool {
    elimination_stages(rank, rows).is_some()
}

/// A rational point satisfying every row, found by back substitution.
pub(crate) fn rational_solution(rank: usize, rows: &[HalfSpace]) -> Option<Vec<BigRational>> {
    let stages = elimination_stages(rank, rows)?;
    let mut x = vec![BigRational::zero(); rank];
    for var in (0..rank).rev() {
        let mut lower: Option<(BigRational, bool)> = None;
        let mut upper: Option<(BigRational, bool)> = None;
        for h in &stages[var] {
            let a = &h.form[var];
            if a.is_zero() {
                continue;
            }
            let rest: BigRational = ((var + 1)..rank)
                .filter(|&j| !h.form[j].is_zero())
                .map(|j| &x[j] * &h.form[j])
                .fold(BigRational::zero(), |acc, v| acc + v);
            let bound = -rest / BigRational::from_integer(a.clone());
            if a.is_positive() {
                tighten(&mut lower, bound, h.strict, |new, old| new > old);
            } else {
                tighten(&mut upper, bound, h.strict, |new, old| new < old);
            }
        }
        x[var] = pick_value(lower, upper);
    }
    Some(x)
}

fn tighten(
    slot: &mut Option<(BigRational, bool)>,
    bound: BigRational,
    strict: bool,
    better: impl Fn(&BigRational, &BigRational) -> bool,
) {
    match slot {
        None => *slot = Some((bound, strict)),
        Some((old, old_strict)) => {
            if better(&bound, old) {
                *slot = Some((bound, strict));
            } else if bound == *old && strict {
                *old_strict = true;
            }
        }
    }
}

fn pick_value(lower: Option<(BigRational, bool)>, upper: Option<(BigRational, bool)>) -> BigRational {
    let above = |l: &BigRational, strict: bool| {
        if strict {
            l.floor() + BigRational::one()
        } else {
            l.ceil()
        }
    };
    let below = |u: &BigRational, strict: bool| {
        if strict {
            u.ceil() - BigRational::one()
        } else {
            u.floor()
        }
    };
    match (lower, upper) {
        (None, None) => BigRational::zero(),
        (Some((l, ls)), None) => {
            if !(l.is_positive() || (l.is_zero() && ls)) {
                BigRational::zero()
            } else {
                above(&l, ls)
            }
        }
        (None, Some((u, us))) => {
            if !(u.is_negative() || (u.is_zero() && us)) {
                BigRational::zero()
            } else {
                below(&u, us)
            }
        }
        (Some((l, ls)), Some((u, us))) => {
            let candidate = above(&l, ls);
            let fits = if us { candidate < u } else { candidate <= u };
            if fits {
                candidate
            } else if l == u {
                l
            } else {
                (l + u) / BigRational::from_integer(2.into())
            }
        }
    }
}

/// Scales a rational solution of a homogeneous system to a primitive integer vector.
pub(crate) fn to_lattice(point: &[BigRational]) -> Vec<BigInt> {
    let lcm = point.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = point.iter().map(|c| (c * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|v| v / &g).collect()
    }
}
