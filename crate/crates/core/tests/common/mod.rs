#![allow(dead_code)]

use contfrob_core::rational::rat;
use contfrob_core::IntervalUnion;
use proptest::prelude::*;

/// Raw parts `(a, b)` with `0 <= a < b <= q`, on the grid `1/q`.
pub fn grid_parts(qs: &'static [i64], max_parts: usize) -> impl Strategy<Value = (i64, Vec<(i64, i64)>)> {
    proptest::sample::select(qs).prop_flat_map(move |q| {
        let part = (0..q).prop_flat_map(move |a| (Just(a), a + 1..=q));
        (Just(q), proptest::collection::vec(part, 1..=max_parts))
    })
}

pub fn union_of(q: i64, parts: &[(i64, i64)]) -> IntervalUnion {
    IntervalUnion::from_pairs(parts.iter().map(|&(a, b)| (rat(a, q), rat(b, q)))).unwrap()
}

pub fn grid_set(qs: &'static [i64], max_parts: usize) -> impl Strategy<Value = IntervalUnion> {
    grid_parts(qs, max_parts).prop_map(|(q, p)| union_of(q, &p))
}

/// Merge open integer intervals, keeping abutting ones apart.
pub fn merge(mut v: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    v.sort();
    let mut out: Vec<(i64, i64)> = Vec::new();
    for (a, b) in v {
        match out.last_mut() {
            Some(l) if a < l.1 => l.1 = l.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

/// Point `k` and cell `(k, k+1)` coverage of a union of open integer
/// intervals, for `k` in `0..n`.
pub fn coverage(parts: &[(i64, i64)], n: i64) -> (Vec<bool>, Vec<bool>) {
    let mut pts = vec![false; n as usize + 1];
    let mut cells = vec![false; n as usize];
    for &(a, b) in parts {
        for k in a.max(0)..b.min(n) {
            cells[k as usize] = true;
        }
        for k in (a + 1).max(0)..b.min(n + 1) {
            pts[k as usize] = true;
        }
    }
    (pts, cells)
}
