mod common;

use common::{coverage, grid_parts, grid_set, merge, union_of};
use contfrob_core::rational::{rat, Rational};
use contfrob_core::semigroup::{self, EngineLimits};
use contfrob_core::{Error, IntervalUnion};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// `min ⌊b/(b−a)⌋·a` over the parts, in grid units.
fn safe_bound_units(parts: &[(i64, i64)]) -> i64 {
    parts.iter().map(|&(a, b)| b / (b - a) * a).min().unwrap()
}

/// Gap by brute force: the union of `hA` for every `h` that can reach below
/// the safe bound plus one, then the largest grid point that is either
/// missing itself or has its left cell missing.
fn brute_gap(q: i64, parts: &[(i64, i64)]) -> Rational {
    let parts = merge(parts.to_vec());
    let inf = parts[0].0;
    if inf == 0 {
        return Rational::zero();
    }
    let limit = safe_bound_units(&parts) + q;
    let mut all = Vec::new();
    let mut cur = parts.clone();
    while !cur.is_empty() && cur[0].0 < limit {
        all.extend(cur.iter().copied());
        let mut next = Vec::new();
        for &(a, b) in &cur {
            for &(c, d) in &parts {
                if a + c < limit {
                    next.push((a + c, b + d));
                }
            }
        }
        cur = merge(next);
    }
    let (pts, cells) = coverage(&merge(all), limit);
    (1..=limit)
        .rev()
        .find(|&k| !pts[k as usize] || !cells[k as usize - 1])
        .map_or(Rational::zero(), |k| rat(k, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gap_matches_brute_force((q, parts) in grid_parts(&[4, 6, 8, 12], 3)) {
        let a = union_of(q, &parts);
        let g = semigroup::gap(&a).unwrap();
        prop_assert_eq!(&g.gap, &brute_gap(q, &parts));
        prop_assert!(g.gap <= g.truncation_bound || g.truncation_bound.is_zero());
        prop_assert_eq!(g.remnant.max().cloned().unwrap_or_else(Rational::zero), g.gap.clone());
    }

    #[test]
    fn gap_is_homogeneous(a in grid_set(&[6, 12, 24], 4), d in 2i64..5) {
        let c = rat(1, d);
        let ga = semigroup::gap(&a).unwrap().gap;
        let gc = semigroup::gap(&a.scale(&c).unwrap()).unwrap().gap;
        prop_assert_eq!(gc, ga * c);
    }

    #[test]
    fn gap_shrinks_as_set_grows(a in grid_set(&[12, 24], 4), b in grid_set(&[12, 24], 2)) {
        let big = a.union(&b);
        prop_assert!(semigroup::gap(&big).unwrap().gap <= semigroup::gap(&a).unwrap().gap);
    }

    #[test]
    fn gap_at_least_inf(a in grid_set(&[12, 24, 48], 6)) {
        let g = semigroup::gap(&a).unwrap().gap;
        prop_assert!(&g >= a.inf().unwrap());
        if !g.is_zero() {
            prop_assert!(!semigroup::is_representable(&a, &g).unwrap());
        }
        let above = &g + rat(1, 96);
        prop_assert!(semigroup::is_representable(&a, &above).unwrap() || a.inf().unwrap().is_zero());
    }

    #[test]
    fn h_fold_recurrence(a in grid_set(&[6, 12, 24], 4), h in 1u32..6) {
        let next = semigroup::h_fold(&a, h + 1).unwrap();
        prop_assert_eq!(next, semigroup::h_fold(&a, h).unwrap().minkowski_sum(&a).unwrap());
    }

    #[test]
    fn truncation_is_a_restriction(a in grid_set(&[6, 12], 4), t in 1i64..24, extra in 1i64..12) {
        let small = rat(t, 6);
        let large = &small + rat(extra, 6);
        let s_small = semigroup::truncated_semigroup(&a, &small).unwrap();
        let s_large = semigroup::truncated_semigroup(&a, &large).unwrap();
        prop_assert_eq!(&s_small, &s_large.clip(&Rational::zero(), &small));
        // S ∩ (0, B) is closed under addition inside the window.
        if !s_small.is_empty() {
            let twice = s_small.minkowski_sum(&a).unwrap().clip(&Rational::zero(), &small);
            prop_assert!(twice.is_subset_of(&s_small));
        }
    }

    #[test]
    fn slices_grow((q, mut parts) in grid_parts(&[12, 24], 4), c in 1i64..12) {
        parts.push((c * q / 12, q));
        let a = union_of(q, &parts);
        let alpha = a.measure();
        let jmax = 2 + (alpha.recip().to_integer()).to_string().parse::<u32>().unwrap();
        let s = semigroup::sj_slices(&a, jmax).unwrap();
        for (j, m) in (1..=jmax).zip(&s) {
            prop_assert!(*m >= (Rational::from_integer(j.into()) * &alpha).min(Rational::one()));
        }
    }
}

#[test]
fn single_interval_gaps() {
    // G((1−α, 1)) = (1−α)⌊1/α⌋ for a few α, computed by hand.
    for (lo, want) in [(rat(2, 3), rat(2, 1)), (rat(3, 4), rat(3, 1)), (rat(1, 2), rat(1, 1))] {
        let a = IntervalUnion::single(lo, Rational::one());
        assert_eq!(semigroup::gap(&a).unwrap().gap, want);
    }
}

#[test]
fn size_guard_rejects_fine_grids() {
    let a = IntervalUnion::single(rat(999_999, 1_000_000), Rational::one());
    let tight = EngineLimits {
        max_grid_cells: 1000,
        iteration_cap: None,
    };
    assert!(matches!(semigroup::gap_with(&a, &tight), Err(Error::GridTooLarge { .. })));
}
