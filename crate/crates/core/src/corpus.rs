//! Seeded random inputs for the property harnesses and the search.
//!
//! Every trial draws from its own ChaCha8 stream: the 256-bit key is the
//! master seed followed by a per-suite tag, and the stream number is the
//! trial index. A trial therefore sees the same numbers no matter which
//! worker runs it or in what order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::interval::{IntervalUnion, OpenInterval};
use crate::rational::{rat, Rational};
use crate::torus::TorusUnion;

/// Grid denominators used for random sets.
pub const GRID_DENOMINATORS: [i64; 3] = [12, 24, 48];
pub const MAX_PARTS: usize = 6;

/// Independent stream for `(seed, tag, index)`.
pub fn trial_rng(seed: u64, tag: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&tag.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

pub fn pick_denominator<R: Rng>(rng: &mut R) -> i64 {
    GRID_DENOMINATORS[rng.random_range(0..GRID_DENOMINATORS.len())]
}

/// Union of 1..=`max_parts` random intervals with endpoints on the grid
/// `1/q` inside `[0, 1]`.
pub fn random_grid_set<R: Rng>(rng: &mut R, q: i64, max_parts: usize) -> IntervalUnion {
    let m = rng.random_range(1..=max_parts);
    let parts = (0..m)
        .map(|_| {
            let a = rng.random_range(0..q);
            let b = rng.random_range(a + 1..=q);
            OpenInterval::new(rat(a, q), rat(b, q)).expect("a < b")
        })
        .collect();
    IntervalUnion::normalize(parts)
}

/// A corpus set: grid `q ∈ {12, 24, 48}`, up to six parts.
pub fn corpus_set<R: Rng>(rng: &mut R) -> IntervalUnion {
    let q = pick_denominator(rng);
    random_grid_set(rng, q, MAX_PARTS)
}

/// A random grid set whose supremum is `1`.
pub fn corpus_set_with_top<R: Rng>(rng: &mut R) -> IntervalUnion {
    let q = pick_denominator(rng);
    let base = random_grid_set(rng, q, MAX_PARTS - 1);
    let c = rng.random_range(1..q);
    base.union(&IntervalUnion::single(rat(c, q), rat(1, 1)))
}

/// A random open subset of the circle: up to three arcs on the grid `1/q`,
/// each of length below one, possibly crossing `0`.
pub fn random_torus_set<R: Rng>(rng: &mut R) -> TorusUnion {
    let q = pick_denominator(rng);
    let m = rng.random_range(1..=3);
    let parts = (0..m)
        .map(|_| {
            let a = rng.random_range(0..q);
            let len = rng.random_range(1..q);
            OpenInterval::new(rat(a, q), rat(a + len, q)).expect("len > 0")
        })
        .collect();
    TorusUnion::project(&IntervalUnion::normalize(parts))
}

/// `v > 0` and an open `U ⊆ (0, v)` with `mes U > v/2`: `(0, v)` with up to
/// four closed pieces (possibly single points) cut out.
pub fn boxing_instance<R: Rng>(rng: &mut R) -> (Rational, IntervalUnion) {
    let q = 2 * pick_denominator(rng);
    let n = rng.random_range(1..=2 * q);
    let v = rat(n, q);
    let mut u = IntervalUnion::single(rat(0, 1), v.clone());
    for _ in 0..rng.random_range(0..=4) {
        let a = rng.random_range(0..=n);
        let b = rng.random_range(a..=n.min(a + n / 3));
        let cut = u.remove_closed(&rat(a, q), &rat(b, q));
        if cut.measure() * rat(2, 1) > v {
            u = cut;
        }
    }
    (v, u)
}

/// `n` random points on the circle with denominators up to 48, possibly
/// repeated.
pub fn random_circle_points<R: Rng>(rng: &mut R) -> Vec<Rational> {
    let n = rng.random_range(1..=40);
    (0..n)
        .map(|_| {
            let q = rng.random_range(1..=48);
            rat(rng.random_range(0..q), q)
        })
        .collect()
}
