mod common;

use common::{grid_parts, grid_set, union_of};
use contfrob_core::rational::{rat, Rational};
use contfrob_core::{IntervalUnion, SetFile};
use num_traits::Zero;
use proptest::prelude::*;

/// Membership in a raw (unnormalized) list of grid parts.
fn raw_contains(q: i64, parts: &[(i64, i64)], x: &Rational) -> bool {
    parts.iter().any(|&(a, b)| rat(a, q) < *x && *x < rat(b, q))
}

/// Probe points: every grid point and cell midpoint on `1/(2q)`.
fn probes(q: i64, span: i64) -> impl Iterator<Item = Rational> {
    (0..=2 * q * span).map(move |k| rat(k, 2 * q))
}

proptest! {
    #[test]
    fn normalize_matches_raw_membership((q, parts) in grid_parts(&[6, 12, 24], 6)) {
        let u = union_of(q, &parts);
        for x in probes(q, 1) {
            prop_assert_eq!(u.contains(&x), raw_contains(q, &parts, &x), "x = {}", x);
        }
        let again = IntervalUnion::normalize(u.parts().to_vec());
        prop_assert_eq!(&again, &u);
        for w in u.parts().windows(2) {
            prop_assert!(w[0].hi() <= w[1].lo());
        }
    }

    #[test]
    fn minkowski_sum_membership(a in grid_set(&[6, 12], 3), b in grid_set(&[4, 12], 3)) {
        let s = a.minkowski_sum(&b).unwrap();
        prop_assert_eq!(&s, &b.minkowski_sum(&a).unwrap());
        // Endpoints of A + B lie on 1/12, so testing x on 1/48 finds a witness
        // for every z on 1/24 that has one.
        for k in 0..=48 {
            let z = rat(k, 24);
            let brute = (0..=48).any(|j| {
                let x = rat(j, 48);
                a.contains(&x) && b.contains(&(&z - &x))
            });
            prop_assert_eq!(s.contains(&z), brute, "z = {}", z);
        }
    }

    #[test]
    fn minkowski_sum_associative(a in grid_set(&[6, 12], 3), b in grid_set(&[6, 12], 3), c in grid_set(&[4, 8], 2)) {
        let left = a.minkowski_sum(&b).unwrap().minkowski_sum(&c).unwrap();
        let right = a.minkowski_sum(&b.minkowski_sum(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn scale_round_trip(a in grid_set(&[6, 12, 24], 5), p in 1i64..20, r in 1i64..20) {
        let c = rat(p, r);
        let back = a.scale(&c).unwrap().scale(&c.recip()).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(a.scale(&c).unwrap().measure(), a.measure() * &c);
    }

    #[test]
    fn complement_partitions_window(a in grid_set(&[6, 12], 5), lo in 0i64..6, len in 1i64..12) {
        let (l, h) = (rat(lo, 6), rat(lo + len, 6));
        let r = a.complement_within(&l, &h);
        prop_assert_eq!(a.clip(&l, &h).measure() + r.measure(), &h - &l);
        for k in 0..=4 * len {
            let x = &l + rat(k, 24);
            prop_assert!(a.contains(&x) != r.contains(&x), "x = {}", x);
        }
    }

    #[test]
    fn remove_closed_membership(a in grid_set(&[12], 4), x in 0i64..=12, w in 0i64..4) {
        let (lo, hi) = (rat(x, 12), rat(x + w, 12));
        let u = a.remove_closed(&lo, &hi);
        for k in 0..=48 {
            let z = rat(k, 48);
            let inside = lo <= z && z <= hi;
            prop_assert_eq!(u.contains(&z), a.contains(&z) && !inside, "z = {}", z);
        }
    }

    #[test]
    fn set_file_round_trip(a in grid_set(&[6, 12, 24, 48], 6)) {
        let text = serde_json::to_string(&SetFile::from_union(&a)).unwrap();
        prop_assert_eq!(contfrob_core::interval::parse_set_json(&text).unwrap(), a);
    }
}

#[test]
fn empty_sum_is_an_error() {
    let a = IntervalUnion::single(rat(1, 2), rat(1, 1));
    assert!(a.minkowski_sum(&IntervalUnion::empty()).is_err());
    assert!(IntervalUnion::empty().measure().is_zero());
}
