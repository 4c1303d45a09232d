//! The additive semigroup `S(A)` of an open set `A ⊆ (0,1)` and its gap value
//! `G(A) = sup{u : u ∉ S(A)}`.
//!
//! Everything above the bound of a single part `(β, γ)`, namely
//! `⌊γ/(γ−β)⌋·β`, is a sum of elements of that part, so `S(A)` only needs
//! to be computed up to the smallest such bound. Below it the semigroup is
//! built as a fixpoint on the integer grid of the common denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid;
use crate::interval::{ClosedRemnant, IntervalUnion};
use crate::rational::{self, Rational};

/// Default cap on `B·q`, the number of grid cells below the truncation bound.
pub const DEFAULT_MAX_GRID_CELLS: u64 = 10_000_000;

/// Size and iteration guards for the fixpoint engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineLimits {
    pub max_grid_cells: u64,
    /// `None` means `10·B·q`.
    pub iteration_cap: Option<u64>,
}

impl Default for EngineLimits {
    fn default() -> Self {
        Self {
            max_grid_cells: DEFAULT_MAX_GRID_CELLS,
            iteration_cap: None,
        }
    }
}

/// Exact `G(A)` with the data that certifies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapResult {
    #[serde(with = "rational::as_string")]
    pub gap: Rational,
    #[serde(with = "rational::as_string")]
    pub truncation_bound: Rational,
    /// Points of `(0, B]` outside `S(A)`.
    pub remnant: ClosedRemnant,
    pub iterations: u64,
}

fn require_unit_set(a: &IntervalUnion) -> Result<()> {
    a.check_in_unit_interval()
}

/// `min` over parts `(β, γ)` of `⌊γ/(γ−β)⌋·β`; an upper bound for `G(A)`.
pub fn safe_bound(a: &IntervalUnion) -> Result<Rational> {
    require_unit_set(a)?;
    Ok(a.parts()
        .iter()
        .map(|p| {
            let k = Rational::from_integer(rational::floor(&(p.hi() / p.length())));
            k * p.lo()
        })
        .min()
        .expect("non-empty"))
}

/// Grid of a set plus a bound; fails when the grid is finer than allowed.
struct Grid {
    q: BigInt,
    a: Vec<grid::Cell>,
    limit: i64,
}

fn grid_for(a: &IntervalUnion, bound: &Rational, extra: i64, limits: &EngineLimits) -> Result<Grid> {
    let q = grid::common_denominator(a.endpoints().chain(std::iter::once(bound)));
    let cells = bound * Rational::from_integer(q.clone());
    let too_large = || Error::GridTooLarge {
        cells: rational::fmt(&cells),
        limit: limits.max_grid_cells,
    };
    let n = cells.to_integer().to_u64().ok_or_else(too_large)?;
    if n > limits.max_grid_cells {
        return Err(too_large());
    }
    let a = grid::to_grid(a, &q).ok_or_else(too_large)?;
    Ok(Grid {
        q,
        a,
        limit: n as i64 + extra,
    })
}

fn run_fixpoint(g: &Grid, limits: &EngineLimits) -> Result<(IntervalUnion, u64)> {
    let cap = limits
        .iteration_cap
        .unwrap_or_else(|| 10 * (g.limit.max(1) as u64));
    let (s, rounds) = grid::semigroup_fixpoint(&g.a, g.limit, cap)?;
    Ok((grid::from_grid(&s, &g.q), rounds))
}

/// `hA`, the set of sums of exactly `h` elements of `A`.
pub fn h_fold(a: &IntervalUnion, h: u32) -> Result<IntervalUnion> {
    if h == 0 {
        return Err(Error::ZeroFold);
    }
    if a.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let q = grid::common_denominator(a.endpoints());
    // i64 is ample when h·max|endpoint|·q stays below 2^60.
    let fits = a.endpoints().all(|r| {
        (r.abs() * Rational::from_integer(q.clone()) * Rational::from_integer(h.into()))
            < Rational::from_integer(BigInt::one() << 60)
    });
    if fits {
        let cells = grid::to_grid(a, &q).expect("checked range");
        return Ok(grid::from_grid(&grid::fold(&cells, h), &q));
    }
    let mut acc = a.clone();
    for _ in 1..h {
        acc = acc.minkowski_sum(a)?;
    }
    Ok(acc)
}

/// `S(A) ∩ (0, B)` as an open union. Whether `B` itself is representable is
/// answered by [`is_representable`].
pub fn truncated_semigroup(a: &IntervalUnion, bound: &Rational) -> Result<IntervalUnion> {
    truncated_semigroup_with(a, bound, &EngineLimits::default())
}

pub fn truncated_semigroup_with(
    a: &IntervalUnion,
    bound: &Rational,
    limits: &EngineLimits,
) -> Result<IntervalUnion> {
    require_unit_set(a)?;
    if !bound.is_positive() {
        return Err(Error::NonPositive {
            what: "truncation bound",
            value: rational::fmt(bound),
        });
    }
    let g = grid_for(a, bound, 0, limits)?;
    Ok(run_fixpoint(&g, limits)?.0)
}

pub fn gap(a: &IntervalUnion) -> Result<GapResult> {
    gap_with(a, &EngineLimits::default())
}

pub fn gap_with(a: &IntervalUnion, limits: &EngineLimits) -> Result<GapResult> {
    let bound = safe_bound(a)?;
    if bound.is_zero() {
        // A contains some (0, γ): every positive real is a sum.
        return Ok(GapResult {
            gap: Rational::zero(),
            truncation_bound: bound,
            remnant: ClosedRemnant::default(),
            iterations: 0,
        });
    }
    // One extra grid cell past B decides whether B itself is in S(A).
    let g = grid_for(a, &bound, 1, limits)?;
    let (s, iterations) = run_fixpoint(&g, limits)?;
    let zero = Rational::zero();
    let remnant = s.complement_within(&zero, &bound).without_point(&zero);
    let gap = remnant.max().cloned().unwrap_or_default();
    Ok(GapResult {
        gap,
        truncation_bound: bound,
        remnant,
        iterations,
    })
}

/// Whether `u ∈ S(A)`.
pub fn is_representable(a: &IntervalUnion, u: &Rational) -> Result<bool> {
    is_representable_with(a, u, &EngineLimits::default())
}

pub fn is_representable_with(a: &IntervalUnion, u: &Rational, limits: &EngineLimits) -> Result<bool> {
    if !u.is_positive() {
        return Err(Error::NonPositive {
            what: "point",
            value: rational::fmt(u),
        });
    }
    if u > &safe_bound(a)? {
        return Ok(true);
    }
    let g = grid_for(a, u, 1, limits)?;
    Ok(run_fixpoint(&g, limits)?.0.contains(u))
}

/// `mes(S(A) ∩ (j−1, j))` for a set with `sup A = 1`.
pub fn sj_slice(a: &IntervalUnion, j: u32) -> Result<Rational> {
    Ok(sj_slices(a, j)?.pop().expect("j >= 1"))
}

/// `mes(S(A) ∩ (j−1, j))` for `j = 1..=jmax`, from a single fixpoint run.
pub fn sj_slices(a: &IntervalUnion, jmax: u32) -> Result<Vec<Rational>> {
    require_unit_set(a)?;
    let sup = a.sup().expect("non-empty");
    if !sup.is_one() {
        return Err(Error::SupNotOne(rational::fmt(sup)));
    }
    if jmax == 0 {
        return Err(Error::NonPositive {
            what: "slice index",
            value: "0".into(),
        });
    }
    let top = Rational::from_integer(jmax.into());
    let s = truncated_semigroup(a, &top)?;
    Ok((1..=jmax)
        .map(|j| {
            let lo = Rational::from_integer((j - 1).into());
            let hi = Rational::from_integer(j.into());
            s.clip(&lo, &hi).measure()
        })
        .collect())
}
