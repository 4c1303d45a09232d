//! Integer-grid form of interval unions.
//!
//! After multiplying every endpoint by a common denominator `q`, unions of
//! open intervals become unions of open intervals with integer endpoints.
//! The heavy loops (h-fold sums, the semigroup fixpoint) run here on `i64`
//! pairs and convert back to exact rationals at the end.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::interval::{IntervalUnion, OpenInterval};
use crate::rational::{self, Rational};

/// Open interval `(lo, hi)` in grid units.
pub(crate) type Cell = (i64, i64);

/// Common denominator of all given rationals.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    rational::lcm_denominators(values)
}

pub(crate) fn to_grid_value(r: &Rational, q: &BigInt) -> Option<i64> {
    let scaled = r * Rational::from_integer(q.clone());
    debug_assert!(scaled.is_integer());
    scaled.to_integer().to_i64()
}

pub(crate) fn to_grid(u: &IntervalUnion, q: &BigInt) -> Option<Vec<Cell>> {
    u.parts()
        .iter()
        .map(|p| Some((to_grid_value(p.lo(), q)?, to_grid_value(p.hi(), q)?)))
        .collect()
}

pub(crate) fn from_grid(parts: &[Cell], q: &BigInt) -> IntervalUnion {
    let q = Rational::from_integer(q.clone());
    IntervalUnion::from_canonical_parts(
        parts
            .iter()
            .map(|&(lo, hi)| {
                OpenInterval::new(
                    Rational::from_integer(lo.into()) / &q,
                    Rational::from_integer(hi.into()) / &q,
                )
                .expect("grid parts are non-empty")
            })
            .collect(),
    )
}

/// Canonical form: sort, merge overlaps, keep abutting parts apart.
pub(crate) fn normalize(mut parts: Vec<Cell>) -> Vec<Cell> {
    parts.retain(|&(lo, hi)| lo < hi);
    parts.sort_unstable();
    let mut out: Vec<Cell> = Vec::with_capacity(parts.len());
    for (lo, hi) in parts {
        match out.last_mut() {
            Some(last) if lo < last.1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

pub(crate) fn sum(a: &[Cell], b: &[Cell]) -> Vec<Cell> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &(x0, x1) in a {
        for &(y0, y1) in b {
            out.push((x0 + y0, x1 + y1));
        }
    }
    normalize(out)
}

/// Intersection with the open window `(0, limit)`.
fn clip(parts: &[Cell], limit: i64) -> Vec<Cell> {
    parts
        .iter()
        .map(|&(lo, hi)| (lo.max(0), hi.min(limit)))
        .filter(|&(lo, hi)| lo < hi)
        .collect()
}

/// `h`-fold sumset, computed by repeated addition.
pub(crate) fn fold(a: &[Cell], h: u32) -> Vec<Cell> {
    let mut acc = a.to_vec();
    for _ in 1..h {
        acc = sum(&acc, a);
    }
    acc
}

/// Connected components of `(lo, hi) \ s`, each given by its `(inf, sup)`.
/// A component may be a single point (`inf == sup`).
fn components_outside(lo: i64, hi: i64, s: &[Cell], out: &mut Vec<(i64, i64)>) {
    let start = s.partition_point(|&(_, h)| h <= lo);
    let mut cur = lo;
    let push = |inf: i64, sup: i64, out: &mut Vec<(i64, i64)>| {
        if inf < sup || (inf == sup && inf > lo && inf < hi) {
            out.push((inf, sup));
        }
    };
    for &(s0, s1) in &s[start..] {
        if s0 >= hi {
            break;
        }
        if s0 >= cur {
            push(cur, s0, out);
        }
        cur = cur.max(s1);
        if cur >= hi {
            return;
        }
    }
    push(cur, hi, out);
}

/// Least fixpoint of `S ← (S ∪ (S + A)) ∩ (0, limit)` starting from
/// `A ∩ (0, limit)`; this is `S(A) ∩ (0, limit)` for `A` of positive
/// elements.
///
/// Each round only adds `A` to the points gained in the previous round:
/// `S_i + A ⊆ S_{i+1}` holds because `S_i = S_{i-1} ∪ D_i` and `D_i + A` is
/// added explicitly. A component of `D_i` is an interval (possibly
/// degenerate or half-closed), and its sum with an open part `(c, d)` is
/// the open interval `(inf + c, sup + d)`.
///
/// Returns the set and the number of rounds.
pub(crate) fn semigroup_fixpoint(a: &[Cell], limit: i64, cap: u64) -> Result<(Vec<Cell>, u64)> {
    let mut s = normalize(clip(a, limit));
    let mut frontier: Vec<(i64, i64)> = s.clone();
    let mut rounds = 0u64;
    while !frontier.is_empty() {
        rounds += 1;
        if rounds > cap {
            return Err(Error::IterationCapExceeded(cap));
        }
        let mut cand = Vec::with_capacity(frontier.len() * a.len());
        for &(f0, f1) in &frontier {
            for &(a0, a1) in a {
                cand.push((f0 + a0, f1 + a1));
            }
        }
        let cand = normalize(clip(&cand, limit));
        let mut fresh = Vec::new();
        for &(c0, c1) in &cand {
            components_outside(c0, c1, &s, &mut fresh);
        }
        if fresh.is_empty() {
            break;
        }
        s.extend_from_slice(&cand);
        s = normalize(s);
        frontier = fresh;
    }
    Ok((s, rounds))
}
