//! Extremal sets with known gap values.
//!
//! * `example1`: the single interval `(1−α, 1)`.
//! * `example2`: `(1−α, 1)` with the point `2(1−α)` removed, `1/2 < α < 1`.
//! * `example3`: a chain of `k−1` scaled copies of `(x, 1)` followed by
//!   `(tx, 1)`, for `1/3 < α < 1/2`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{IntervalUnion, OpenInterval};
use crate::rational::{self, int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainParams {
    pub k: u64,
    #[serde(with = "rational::as_string")]
    pub x: Rational,
    #[serde(with = "rational::as_string")]
    pub t: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub family: &'static str,
    pub set: IntervalUnion,
    #[serde(with = "rational::as_string")]
    pub alpha: Rational,
    #[serde(with = "rational::as_string")]
    pub predicted_gap: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ChainParams>,
}

fn out_of_range(alpha: &Rational, range: &'static str) -> Error {
    Error::AlphaOutOfRange {
        alpha: rational::fmt(alpha),
        range,
    }
}

/// `(1−α)·⌊1/α⌋`, the gap of `(1−α, 1)`.
pub fn first_case_value(alpha: &Rational) -> Rational {
    let k = Rational::from_integer(rational::floor(&alpha.recip()));
    (Rational::one() - alpha) * k
}

pub fn example1(alpha: &Rational) -> Result<ConstructionReport> {
    if !(alpha > &Rational::zero() && alpha <= &Rational::one()) {
        return Err(out_of_range(alpha, "(0, 1]"));
    }
    let one = Rational::one();
    Ok(ConstructionReport {
        family: "ex1",
        set: IntervalUnion::single(&one - alpha, one),
        alpha: alpha.clone(),
        predicted_gap: first_case_value(alpha),
        params: None,
    })
}

pub fn example2(alpha: &Rational) -> Result<ConstructionReport> {
    if !(alpha > &rat(1, 2) && alpha < &Rational::one()) {
        return Err(out_of_range(alpha, "(1/2, 1)"));
    }
    let one = Rational::one();
    let hole = int(2) * (&one - alpha);
    let set = IntervalUnion::single(&one - alpha, one).remove_closed(&hole, &hole);
    Ok(ConstructionReport {
        family: "ex2",
        set,
        alpha: alpha.clone(),
        predicted_gap: hole,
        params: None,
    })
}

/// Chain `∪_{i=1}^{k−1} (itx/k, it/k) ∪ (tx, 1)`.
pub fn chain_set(k: u64, x: &Rational, t: &Rational) -> Result<IntervalUnion> {
    let kr = Rational::from_integer(k.into());
    let mut parts = Vec::with_capacity(k as usize);
    for i in 1..k {
        let step = Rational::from_integer(i.into()) * t / &kr;
        let part = OpenInterval::new(&step * x, step)
            .ok_or_else(|| Error::Inconsistent(format!("empty chain link {i}")))?;
        parts.push(part);
    }
    parts.push(
        OpenInterval::new(t * x, Rational::one())
            .ok_or_else(|| Error::Inconsistent("empty top link".into()))?,
    );
    let n = parts.len();
    let set = IntervalUnion::normalize(parts);
    if set.len() != n {
        return Err(Error::Inconsistent("chain links overlap".into()));
    }
    Ok(set)
}

pub fn example3(alpha: &Rational) -> Result<ConstructionReport> {
    if !(alpha > &rat(1, 3) && alpha < &rat(1, 2)) {
        return Err(out_of_range(alpha, "(1/3, 1/2)"));
    }
    let one = Rational::one();
    let kk: num_bigint::BigInt = rational::ceil(&(&one - int(2) * alpha).recip()) - 2;
    let k: u64 = kk.try_into().map_err(|_| Error::Inconsistent("k out of range".into()))?;
    let kr = Rational::from_integer(k.into());
    let x = &one - (&kr + int(2)).recip();
    let t = int(2) * (&one - (&kr + int(3)).recip()) * (&one - alpha);

    if k < 2 {
        return Err(Error::Inconsistent(format!("k = {k} < 2")));
    }
    let lower = rat(1, 2) * (&one - (&kr + int(1)).recip());
    let upper = rat(1, 2) * (&one - (&kr + int(2)).recip());
    if !(lower < *alpha && *alpha <= upper) {
        return Err(Error::Inconsistent(format!("alpha not in the k = {k} range")));
    }
    if !(&one - kr.recip() < x && x < t.recip() && t.recip() <= one) {
        return Err(Error::Inconsistent(format!("1 - 1/k < x < 1/t <= 1 fails (x = {x}, t = {t})")));
    }
    let set = chain_set(k, &x, &t)?;
    if set.measure() != *alpha {
        return Err(Error::Inconsistent(format!("measure {} != alpha", set.measure())));
    }
    let predicted_gap =
        int(2) * (&one + int(2) / (&kr * (&kr + int(3)))) * (&one - alpha);
    Ok(ConstructionReport {
        family: "ex3",
        set,
        alpha: alpha.clone(),
        predicted_gap,
        params: Some(ChainParams { k, x, t }),
    })
}

/// Dispatch by family name (`ex1`, `ex2`, `ex3`).
pub fn construct(family: &str, alpha: &Rational) -> Result<ConstructionReport> {
    match family {
        "ex1" => example1(alpha),
        "ex2" => example2(alpha),
        "ex3" => example3(alpha),
        other => Err(Error::Unknown {
            what: "construction family",
            value: other.to_string(),
        }),
    }
}
