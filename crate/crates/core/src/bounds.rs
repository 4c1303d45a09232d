//! Upper bounds for `G(A)` in terms of `α = mes A`, the interval predicted
//! inside `hA` for large `h`, and the continuous-side theorem checks.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{IntervalUnion, OpenInterval};
use crate::rational::{self, int, rat, Rational};
use crate::semigroup;
use crate::torus::TorusUnion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `α ≤ 1/10`
    Sparse,
    /// `1/10 < α < 1/2`
    Middle,
    /// `α ≥ 1/2`
    Dense,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(with = "rational::as_string")]
    pub alpha: Rational,
    pub regime: Regime,
    #[serde(with = "rational::as_string")]
    pub value: Rational,
}

fn sparse_formula(alpha: &Rational) -> Rational {
    crate::constructions::first_case_value(alpha)
}

fn middle_formula(alpha: &Rational) -> Rational {
    let inv = alpha.recip();
    let k = Rational::from_integer(rational::floor(&inv));
    (Rational::one() - alpha + alpha * rational::fract(&inv)) * k
}

fn dense_formula(alpha: &Rational) -> Rational {
    int(2) * (Rational::one() - alpha)
}

/// Piecewise upper bound on `G(A)` for `mes A = α`. At `α = 1/10` and
/// `α = 1/2` both adjacent formulas apply and the smaller one is returned.
pub fn bound_main(alpha: &Rational) -> Result<BoundReport> {
    if !(alpha > &Rational::zero() && alpha <= &Rational::one()) {
        return Err(Error::AlphaOutOfRange {
            alpha: rational::fmt(alpha),
            range: "(0, 1]",
        });
    }
    let tenth = rat(1, 10);
    let half = rat(1, 2);
    let mut candidates = Vec::with_capacity(2);
    if alpha <= &tenth {
        candidates.push(sparse_formula(alpha));
    }
    if alpha >= &tenth && alpha <= &half {
        candidates.push(middle_formula(alpha));
    }
    if alpha >= &half {
        candidates.push(dense_formula(alpha));
    }
    let regime = if alpha <= &tenth {
        Regime::Sparse
    } else if alpha < &half {
        Regime::Middle
    } else {
        Regime::Dense
    };
    Ok(BoundReport {
        alpha: alpha.clone(),
        regime,
        value: candidates.into_iter().min().expect("some case applies"),
    })
}

/// `(1−α+α{1/α})⌊1/α⌋`, valid for every `α ≤ 1/2`.
pub fn bound_strengthened(alpha: &Rational) -> Result<Rational> {
    if !(alpha > &Rational::zero() && alpha <= &rat(1, 2)) {
        return Err(Error::AlphaOutOfRange {
            alpha: rational::fmt(alpha),
            range: "(0, 1/2]",
        });
    }
    Ok(middle_formula(alpha))
}

/// The interval `(vh + m, wh − m)` with `m = (2λ − (κ+1)α)κ` that must lie in
/// `hA` once `h ≥ 2κ`, where `v = inf A`, `w = sup A`, `λ = w − v`,
/// `α = mes A` and `κ = ⌊λ/α⌋`. `None` when `h < 2κ` or the interval is
/// empty.
pub fn clint_predicted(a: &IntervalUnion, h: u32) -> Result<Option<OpenInterval>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let v = a.inf().expect("non-empty");
    let w = a.sup().expect("non-empty");
    let lambda = w - v;
    let alpha = a.measure();
    let kappa = Rational::from_integer(rational::floor(&(&lambda / &alpha)));
    let h = Rational::from_integer(h.into());
    if h < int(2) * &kappa {
        return Ok(None);
    }
    let margin = (int(2) * &lambda - (&kappa + int(1)) * &alpha) * &kappa;
    Ok(OpenInterval::new(v * &h + &margin, w * &h - &margin))
}

/// `κ = ⌊(sup A − inf A)/mes A⌋`.
pub fn clint_kappa(a: &IntervalUnion) -> Result<u32> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let lambda = a.sup().unwrap() - a.inf().unwrap();
    let k = rational::floor(&(lambda / a.measure()));
    u32::try_from(k).map_err(|_| Error::Precondition("kappa too large".into()))
}

/// `mes(U+V) ≥ min(mes U + mes V, 1)` on the circle.
pub fn check_macbeath(u: &TorusUnion, v: &TorusUnion) -> Result<bool> {
    let s = u.sum(v)?;
    let rhs = (u.measure() + v.measure()).min(Rational::one());
    Ok(s.measure() >= rhs)
}

/// `G(A) ≤ bound_main(mes A)`.
pub fn check_main_bound(a: &IntervalUnion) -> Result<bool> {
    let g = semigroup::gap(a)?;
    Ok(g.gap <= bound_main(&a.measure())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{example1, example2, example3};

    fn u(fracs: &[(i64, i64, i64, i64)]) -> IntervalUnion {
        IntervalUnion::from_fracs(fracs)
    }

    #[test]
    fn bound_main_values() {
        assert_eq!(bound_main(&rat(1, 20)).unwrap().value, int(19));
        assert_eq!(bound_main(&rat(1, 20)).unwrap().regime, Regime::Sparse);
        assert_eq!(bound_main(&rat(3, 10)).unwrap().value, rat(12, 5));
        assert_eq!(bound_main(&rat(3, 10)).unwrap().regime, Regime::Middle);
        assert_eq!(bound_main(&rat(3, 4)).unwrap().value, rat(1, 2));
        assert_eq!(bound_main(&rat(5, 12)).unwrap().value, rat(3, 2));
        assert!(bound_main(&int(0)).is_err());
        assert!(bound_main(&rat(11, 10)).is_err());
    }

    #[test]
    fn bound_main_case_boundaries() {
        let half = rat(1, 2);
        assert_eq!(middle_formula(&half), dense_formula(&half));
        assert_eq!(bound_main(&half).unwrap().value, int(1));
        let tenth = rat(1, 10);
        assert!(sparse_formula(&tenth) <= middle_formula(&tenth));
        assert_eq!(bound_main(&tenth).unwrap().value, int(9));
    }

    #[test]
    fn strengthened_values() {
        assert_eq!(bound_strengthened(&rat(1, 4)).unwrap(), int(3));
        assert_eq!(bound_strengthened(&rat(1, 20)).unwrap(), int(19));
        assert_eq!(bound_strengthened(&rat(2, 5)).unwrap(), rat(8, 5));
        assert!(bound_strengthened(&rat(3, 5)).is_err());
    }

    #[test]
    fn clint_examples() {
        let p = clint_predicted(&u(&[(0, 1, 1, 1)]), 2).unwrap().unwrap();
        assert_eq!(p, OpenInterval::new(int(0), int(2)).unwrap());

        let a = u(&[(2, 3, 1, 1)]);
        let p = clint_predicted(&a, 6).unwrap().unwrap();
        assert_eq!(p, OpenInterval::new(int(4), int(6)).unwrap());
        assert!(semigroup::h_fold(&a, 6).unwrap().contains_interval(&p));

        // mes = 1/2 + 1/10 = 3/5, λ = 3/4, κ = 1, margin = 3/2 − 6/5 = 3/10.
        let a = u(&[(1, 4, 7, 20), (1, 2, 1, 1)]);
        assert_eq!(a.measure(), rat(3, 5));
        let p = clint_predicted(&a, 2).unwrap().unwrap();
        assert_eq!(p, OpenInterval::new(rat(4, 5), rat(17, 10)).unwrap());
        assert!(semigroup::h_fold(&a, 2).unwrap().contains_interval(&p));

        assert_eq!(clint_predicted(&u(&[(1, 10, 1, 5), (9, 10, 1, 1)]), 1).unwrap(), None);
        assert!(clint_predicted(&IntervalUnion::empty(), 2).is_err());
    }

    #[test]
    fn macbeath_examples() {
        let h = TorusUnion::project(&u(&[(0, 1, 1, 2)]));
        assert!(check_macbeath(&h, &h).unwrap());
        let a = TorusUnion::project(&u(&[(0, 1, 1, 4)]));
        let b = TorusUnion::project(&u(&[(1, 2, 3, 4)]));
        assert_eq!(a.sum(&b).unwrap().measure(), rat(1, 2));
        assert!(check_macbeath(&a, &b).unwrap());
        assert!(check_macbeath(&a, &TorusUnion::empty()).is_err());
    }

    #[test]
    fn main_bound_sharpness() {
        assert!(check_main_bound(&example1(&rat(1, 3)).unwrap().set).unwrap());
        assert_eq!(semigroup::gap(&example1(&rat(1, 3)).unwrap().set).unwrap().gap, int(2));
        let ex2 = example2(&rat(3, 4)).unwrap().set;
        assert!(check_main_bound(&ex2).unwrap());
        assert_eq!(semigroup::gap(&ex2).unwrap().gap, bound_main(&rat(3, 4)).unwrap().value);
        assert!(check_main_bound(&example3(&rat(5, 12)).unwrap().set).unwrap());
    }
}
