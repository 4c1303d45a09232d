//! Open subsets of the circle ℝ/ℤ as wrapped interval unions.
//!
//! A [`TorusUnion`] stores its parts as a canonical [`IntervalUnion`] inside
//! `[0,1]`. An arc crossing `0 ≡ 1` is stored as the two line parts touching
//! `1` and `0`, together with the flag `covers_zero` telling whether the point
//! `0` itself belongs to the set.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{IntervalUnion, OpenInterval};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TorusUnion {
    parts: IntervalUnion,
    covers_zero: bool,
}

impl TorusUnion {
    pub fn full() -> Self {
        Self {
            parts: IntervalUnion::single(Rational::zero(), Rational::one()),
            covers_zero: true,
        }
    }

    pub fn empty() -> Self {
        Self {
            parts: IntervalUnion::empty(),
            covers_zero: false,
        }
    }

    pub fn parts(&self) -> &IntervalUnion {
        &self.parts
    }

    pub fn covers_zero(&self) -> bool {
        self.covers_zero
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.covers_zero && self.parts.len() == 1 && self.parts.measure().is_one()
    }

    pub fn measure(&self) -> Rational {
        self.parts.measure()
    }

    /// Membership of `x mod 1`.
    pub fn contains(&self, x: &Rational) -> bool {
        let r = crate::rational::fract(x);
        if r.is_zero() {
            self.covers_zero
        } else {
            self.parts.contains(&r)
        }
    }

    /// Image of a line set under `x ↦ x mod 1`.
    pub fn project(u: &IntervalUnion) -> TorusUnion {
        Self::project_parts(u.parts().iter().cloned())
    }

    fn project_parts(parts: impl IntoIterator<Item = OpenInterval>) -> TorusUnion {
        let one = Rational::one();
        let mut out = Vec::new();
        let mut covers_zero = false;
        for p in parts {
            if p.length() > one {
                return Self::full();
            }
            let shift = p.lo().floor();
            let lo = p.lo() - &shift;
            let hi = p.hi() - &shift;
            if hi > one {
                covers_zero = true;
                out.extend(OpenInterval::new(lo, one.clone()));
                out.extend(OpenInterval::new(Rational::zero(), hi - &one));
            } else {
                out.extend(OpenInterval::new(lo, hi));
            }
        }
        let parts = IntervalUnion::normalize(out);
        TorusUnion { parts, covers_zero }
    }

    /// Parts lifted to the line with a wrapped arc kept contiguous, so that
    /// sums of lifts project onto sums on the circle.
    fn lift(&self) -> Vec<OpenInterval> {
        let parts = self.parts.parts();
        if !self.covers_zero || parts.len() < 2 {
            return parts.to_vec();
        }
        let first = &parts[0];
        let last = &parts[parts.len() - 1];
        let mut out: Vec<OpenInterval> = parts[1..parts.len() - 1].to_vec();
        out.extend(OpenInterval::new(last.lo() - Rational::one(), first.hi().clone()));
        out
    }

    /// Sumset `{u + v mod 1}`.
    pub fn sum(&self, other: &TorusUnion) -> Result<TorusUnion> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyOperand);
        }
        if self.is_full() || other.is_full() {
            return Ok(Self::full());
        }
        let a = self.lift();
        let b = other.lift();
        let mut sums = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                sums.extend(OpenInterval::new(x.lo() + y.lo(), x.hi() + y.hi()));
            }
        }
        Ok(Self::project_parts(sums))
    }
}
