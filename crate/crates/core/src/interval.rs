//! Finite unions of open intervals with rational endpoints.
//!
//! An [`IntervalUnion`] is kept in canonical form: parts sorted by their
//! lower end, pairwise disjoint, none empty. Two open parts may share an
//! endpoint (`(1/3,1/2)` and `(1/2,2/3)`); the shared point is then missing
//! from the set and the parts are never merged. Canonical form is unique for
//! a given point set, so structural equality is set equality.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// The open interval `(lo, hi)`, with `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpenInterval {
    lo: Rational,
    hi: Rational,
}

impl OpenInterval {
    /// Returns `None` when `lo >= hi`.
    pub fn new(lo: Rational, hi: Rational) -> Option<Self> {
        (lo < hi).then_some(Self { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// `self ⊆ other` as point sets.
    pub fn is_subset_of(&self, other: &OpenInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// The closed interval `[lo, hi]`, `lo <= hi`; `lo == hi` is a single point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Serialize for ClosedInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [rational::fmt(&self.lo), rational::fmt(&self.hi)].serialize(s)
    }
}

/// A closed subset of the line given as maximal, pairwise separated pieces.
///
/// Produced by [`IntervalUnion::complement_within`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct ClosedRemnant {
    pieces: Vec<ClosedInterval>,
}

impl ClosedRemnant {
    pub fn pieces(&self) -> &[ClosedInterval] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.pieces.last().map(|p| &p.hi)
    }

    pub fn measure(&self) -> Rational {
        self.pieces.iter().map(|p| &p.hi - &p.lo).sum()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.pieces.iter().any(|p| &p.lo <= x && x <= &p.hi)
    }

    /// Drops the isolated piece `[x, x]` if present.
    pub(crate) fn without_point(mut self, x: &Rational) -> Self {
        self.pieces.retain(|p| !(p.lo == *x && p.hi == *x));
        self
    }
}

/// A canonical finite union of disjoint open intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalUnion {
    parts: Vec<OpenInterval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Canonical union of the point set covered by `intervals`.
    ///
    /// Overlapping intervals merge; intervals that only share an endpoint not
    /// covered by any input stay separate.
    pub fn normalize(mut intervals: Vec<OpenInterval>) -> Self {
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut parts: Vec<OpenInterval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match parts.last_mut() {
                Some(last) if iv.lo < last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => parts.push(iv),
            }
        }
        Self { parts }
    }

    /// Builds a union from `(lo, hi)` pairs, rejecting any pair with `lo >= hi`.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut out = Vec::new();
        for (index, (lo, hi)) in pairs.into_iter().enumerate() {
            if lo >= hi {
                return Err(Error::InvalidInterval {
                    index,
                    lo: rational::fmt(&lo),
                    hi: rational::fmt(&hi),
                });
            }
            out.push(OpenInterval { lo, hi });
        }
        Ok(Self::normalize(out))
    }

    /// Convenience constructor from small integer fractions `(p1,q1,p2,q2)`
    /// meaning `(p1/q1, p2/q2)`. Panics on invalid input.
    pub fn from_fracs(fracs: &[(i64, i64, i64, i64)]) -> Self {
        Self::from_pairs(
            fracs
                .iter()
                .map(|&(a, b, c, d)| (rational::rat(a, b), rational::rat(c, d))),
        )
        .expect("valid intervals")
    }

    pub fn single(lo: Rational, hi: Rational) -> Self {
        Self::normalize(OpenInterval::new(lo, hi).into_iter().collect())
    }

    pub fn parts(&self) -> &[OpenInterval] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<OpenInterval> {
        self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn measure(&self) -> Rational {
        self.parts.iter().map(OpenInterval::length).sum()
    }

    pub fn inf(&self) -> Option<&Rational> {
        self.parts.first().map(|p| &p.lo)
    }

    pub fn sup(&self) -> Option<&Rational> {
        self.parts.last().map(|p| &p.hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        // First part with hi > x is the only candidate.
        let idx = self.parts.partition_point(|p| &p.hi <= x);
        self.parts.get(idx).is_some_and(|p| p.contains(x))
    }

    /// Whether the open interval `(lo, hi)` lies inside the union.
    pub fn contains_interval(&self, iv: &OpenInterval) -> bool {
        let idx = self.parts.partition_point(|p| p.hi <= iv.lo);
        self.parts.get(idx).is_some_and(|p| iv.is_subset_of(p))
    }

    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        self.parts.iter().all(|p| other.contains_interval(p))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        Self::normalize(self.parts.iter().chain(&other.parts).cloned().collect())
    }

    /// Minkowski sum `{u + v}`; a sum of open intervals is the open interval
    /// of summed endpoints, so the result is exact.
    pub fn minkowski_sum(&self, other: &IntervalUnion) -> Result<IntervalUnion> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyOperand);
        }
        let mut out = Vec::with_capacity(self.len() * other.len());
        for u in &self.parts {
            for v in &other.parts {
                out.push(OpenInterval {
                    lo: &u.lo + &v.lo,
                    hi: &u.hi + &v.hi,
                });
            }
        }
        Ok(Self::normalize(out))
    }

    /// `{c·u : u ∈ self}` for `c > 0`.
    pub fn scale(&self, c: &Rational) -> Result<IntervalUnion> {
        if !c.is_positive() {
            return Err(Error::NonPositiveScale(rational::fmt(c)));
        }
        Ok(Self {
            parts: self
                .parts
                .iter()
                .map(|p| OpenInterval {
                    lo: &p.lo * c,
                    hi: &p.hi * c,
                })
                .collect(),
        })
    }

    pub fn translate(&self, d: &Rational) -> IntervalUnion {
        Self {
            parts: self
                .parts
                .iter()
                .map(|p| OpenInterval {
                    lo: &p.lo + d,
                    hi: &p.hi + d,
                })
                .collect(),
        }
    }

    /// Intersection with the open interval `(lo, hi)`.
    pub fn clip(&self, lo: &Rational, hi: &Rational) -> IntervalUnion {
        Self {
            parts: self
                .parts
                .iter()
                .filter_map(|p| {
                    OpenInterval::new(p.lo.clone().max(lo.clone()), p.hi.clone().min(hi.clone()))
                })
                .collect(),
        }
    }

    /// Removes the closed interval `[a, b]` (a single point when `a == b`).
    pub fn remove_closed(&self, a: &Rational, b: &Rational) -> IntervalUnion {
        let mut out = Vec::with_capacity(self.len() + 1);
        for p in &self.parts {
            if &p.hi <= a || &p.lo >= b {
                out.push(p.clone());
                continue;
            }
            out.extend(OpenInterval::new(p.lo.clone(), a.clone()));
            out.extend(OpenInterval::new(b.clone(), p.hi.clone()));
        }
        Self { parts: out }
    }

    /// `[a, b] \ self` as maximal closed pieces. Points where two open parts
    /// abut show up as one-point pieces.
    pub fn complement_within(&self, a: &Rational, b: &Rational) -> ClosedRemnant {
        let mut pieces = Vec::new();
        let mut cur = a.clone();
        for p in &self.parts {
            if &p.hi <= a {
                continue;
            }
            if &p.lo >= b {
                break;
            }
            if p.lo >= cur {
                pieces.push(ClosedInterval {
                    lo: cur.clone(),
                    hi: p.lo.clone(),
                });
            }
            if p.hi > cur {
                cur = p.hi.clone();
            }
        }
        if &cur <= b {
            pieces.push(ClosedInterval {
                lo: cur,
                hi: b.clone(),
            });
        }
        ClosedRemnant { pieces }
    }

    /// Checks `self ⊆ (0,1)`; the error names the first offending part.
    pub fn check_in_unit_interval(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        for p in &self.parts {
            if p.lo.is_negative() || p.hi > Rational::from_integer(1.into()) {
                return Err(Error::NotInUnitInterval(p.to_string()));
            }
        }
        Ok(())
    }

    pub fn endpoints(&self) -> impl Iterator<Item = &Rational> {
        self.parts.iter().flat_map(|p| [&p.lo, &p.hi])
    }

    /// Lexicographic order on the part lists; used as a deterministic
    /// tie-breaker.
    pub fn lex_cmp(&self, other: &IntervalUnion) -> Ordering {
        for (a, b) in self.parts.iter().zip(&other.parts) {
            let c = a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.len().cmp(&other.len())
    }

    pub(crate) fn from_canonical_parts(parts: Vec<OpenInterval>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0].hi <= w[1].lo));
        debug_assert!(parts.iter().all(|p| p.lo < p.hi));
        Self { parts }
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl Serialize for IntervalUnion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self
            .parts
            .iter()
            .map(|p| [rational::fmt(&p.lo), rational::fmt(&p.hi)])
            .collect();
        pairs.serialize(s)
    }
}

/// On-disk set description: `{"intervals": [["1/4","1/2"],["1/2","1"]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetFile {
    pub intervals: Vec<[String; 2]>,
}

impl SetFile {
    pub fn from_union(u: &IntervalUnion) -> Self {
        Self {
            intervals: u
                .parts
                .iter()
                .map(|p| [rational::fmt(&p.lo), rational::fmt(&p.hi)])
                .collect(),
        }
    }

    /// Parses endpoints and normalizes; overlaps are merged silently.
    pub fn to_union(&self) -> Result<IntervalUnion> {
        let mut pairs = Vec::with_capacity(self.intervals.len());
        for (index, [lo, hi]) in self.intervals.iter().enumerate() {
            let parse = |s: &str| {
                rational::parse(s).map_err(|_| {
                    Error::SetFile(format!("interval #{index} [{lo:?}, {hi:?}]: bad rational {s:?}"))
                })
            };
            pairs.push((parse(lo)?, parse(hi)?));
        }
        IntervalUnion::from_pairs(pairs)
    }
}

/// Reads a set file from JSON text. Unknown top-level keys are ignored.
pub fn parse_set_json(text: &str) -> Result<IntervalUnion> {
    let file: SetFile = serde_json::from_str(text).map_err(|e| Error::SetFile(e.to_string()))?;
    file.to_union()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn u(fracs: &[(i64, i64, i64, i64)]) -> IntervalUnion {
        IntervalUnion::from_fracs(fracs)
    }

    fn ci(a: Rational, b: Rational) -> ClosedInterval {
        ClosedInterval { lo: a, hi: b }
    }

    #[test]
    fn normalize_merges_overlaps_only() {
        assert_eq!(u(&[(0, 1, 1, 2), (1, 4, 3, 4)]), u(&[(0, 1, 3, 4)]));
        let abut = u(&[(1, 3, 1, 2), (1, 2, 2, 3)]);
        assert_eq!(abut.len(), 2);
        assert!(!abut.contains(&rat(1, 2)));
        let three = u(&[(1, 4, 1, 2), (1, 3, 1, 2), (1, 2, 1, 1)]);
        assert_eq!(three.parts().len(), 2);
        assert_eq!(three, u(&[(1, 4, 1, 2), (1, 2, 1, 1)]));
    }

    #[test]
    fn normalize_matches_grid_membership() {
        // 1/48 grid covers all endpoints and midpoints of the 1/24 grid.
        let raw = [(1, 4, 1, 2), (1, 3, 1, 2), (1, 2, 1, 1)];
        let set = u(&raw);
        for k in 0..=48 {
            let x = rat(k, 48);
            let direct = raw
                .iter()
                .any(|&(a, b, c, d)| rat(a, b) < x && x < rat(c, d));
            assert_eq!(set.contains(&x), direct, "x = {x}");
        }
    }

    #[test]
    fn rejects_degenerate_input() {
        let err = IntervalUnion::from_pairs([(rat(1, 2), rat(1, 2))]).unwrap_err();
        assert!(matches!(err, Error::InvalidInterval { index: 0, .. }));
    }

    #[test]
    fn measure_values() {
        assert_eq!(u(&[(1, 4, 1, 2), (1, 2, 1, 1)]).measure(), rat(3, 4));
        assert_eq!(IntervalUnion::empty().measure(), int(0));
    }

    #[test]
    fn minkowski_examples() {
        let half = u(&[(1, 2, 1, 1)]);
        assert_eq!(half.minkowski_sum(&half).unwrap(), u(&[(1, 1, 2, 1)]));
        let ex2 = u(&[(1, 4, 1, 2), (1, 2, 1, 1)]);
        assert_eq!(ex2.minkowski_sum(&ex2).unwrap(), u(&[(1, 2, 2, 1)]));
        assert_eq!(
            u(&[(1, 4, 1, 2)]).minkowski_sum(&u(&[(1, 3, 1, 1)])).unwrap(),
            u(&[(7, 12, 3, 2)])
        );
        assert_eq!(
            half.minkowski_sum(&IntervalUnion::empty()),
            Err(Error::EmptyOperand)
        );
    }

    #[test]
    fn scale_examples() {
        assert_eq!(u(&[(1, 2, 1, 1)]).scale(&int(2)).unwrap(), u(&[(1, 1, 2, 1)]));
        assert_eq!(IntervalUnion::empty().scale(&rat(3, 7)).unwrap(), IntervalUnion::empty());
        assert!(u(&[(1, 2, 1, 1)]).scale(&int(0)).is_err());
        assert!(u(&[(1, 2, 1, 1)]).scale(&int(-1)).is_err());
    }

    #[test]
    fn complement_examples() {
        let s = u(&[(1, 4, 1, 2), (1, 2, 2, 1)]);
        let c = s.complement_within(&int(0), &int(2));
        assert_eq!(
            c.pieces(),
            &[ci(int(0), rat(1, 4)), ci(rat(1, 2), rat(1, 2)), ci(int(2), int(2))]
        );
        let c = u(&[(0, 1, 2, 1)]).complement_within(&int(0), &int(2));
        assert_eq!(c.pieces(), &[ci(int(0), int(0)), ci(int(2), int(2))]);
        // S(A) ∩ (0,1] for A = (1/2,1) is (1/2,1): 1 itself is missing.
        let c = u(&[(1, 2, 1, 1)]).complement_within(&int(0), &int(1));
        assert_eq!(c.pieces(), &[ci(int(0), rat(1, 2)), ci(int(1), int(1))]);
        for k in 0..=8 {
            let x = rat(k, 8);
            assert_ne!(c.contains(&x), u(&[(1, 2, 1, 1)]).contains(&x));
        }
    }

    #[test]
    fn complement_with_part_straddling_bounds() {
        let s = u(&[(0, 1, 1, 1)]);
        let c = s.complement_within(&rat(1, 4), &rat(1, 2));
        assert!(c.is_empty());
        let c = s.complement_within(&rat(1, 2), &int(2));
        assert_eq!(c.pieces(), &[ci(int(1), int(2))]);
    }

    #[test]
    fn remove_closed_point_and_block() {
        let s = u(&[(1, 4, 1, 1)]);
        assert_eq!(s.remove_closed(&rat(1, 2), &rat(1, 2)), u(&[(1, 4, 1, 2), (1, 2, 1, 1)]));
        assert_eq!(s.remove_closed(&rat(1, 2), &rat(3, 4)), u(&[(1, 4, 1, 2), (3, 4, 1, 1)]));
        assert_eq!(s.remove_closed(&int(2), &int(3)), s);
        assert_eq!(s.remove_closed(&int(0), &rat(1, 2)), u(&[(1, 2, 1, 1)]));
        assert_eq!(s.remove_closed(&int(0), &int(1)), IntervalUnion::empty());
        assert_eq!(s.remove_closed(&int(1), &int(1)), s);
    }

    #[test]
    fn set_file_round_trip() {
        let text = r#"{"intervals": [["1/4","1/2"],["1/2","1"],["1/3","2/5"]]}"#;
        let s = parse_set_json(text).unwrap();
        assert_eq!(s, u(&[(1, 4, 1, 2), (1, 2, 1, 1)]));
        let back = serde_json::to_string(&SetFile::from_union(&s)).unwrap();
        assert_eq!(back, r#"{"intervals":[["1/4","1/2"],["1/2","1"]]}"#);
        assert_eq!(parse_set_json(&back).unwrap(), s);
    }

    #[test]
    fn set_file_errors_name_the_interval() {
        let err = parse_set_json(r#"{"intervals": [["1/4","1/2"],["3/4","1/2"]]}"#).unwrap_err();
        assert_eq!(
            err.to_string(),
            "invalid interval #1 (3/4, 1/2): lower end must be below upper end"
        );
        let err = parse_set_json(r#"{"intervals": [["a","1/2"]]}"#).unwrap_err();
        assert!(err.to_string().contains("interval #0"), "{err}");
        assert!(parse_set_json(r#"{"intervals": 3}"#).is_err());
    }

    #[test]
    fn unit_interval_check() {
        assert!(u(&[(0, 1, 1, 1)]).check_in_unit_interval().is_ok());
        assert!(u(&[(1, 2, 3, 2)]).check_in_unit_interval().is_err());
        assert!(IntervalUnion::empty().check_in_unit_interval().is_err());
    }
}
