//! Integer and modular counterparts: Frobenius numbers, h-fold sumsets of
//! integer sets, and brute-force checks of the classical sumset theorems
//! (Freiman's `3n−3`, Lev's bounds on `|hA|` and the long block inside `hA`,
//! Cauchy–Davenport, Freiman's half-circle lemma).

use std::collections::{BTreeSet, BinaryHeap};
use std::cmp::Reverse;
use std::f64::consts::TAU;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A finite set of integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IntSet(Vec<i64>);

impl IntSet {
    pub fn new(elems: impl IntoIterator<Item = i64>) -> Self {
        let set: BTreeSet<i64> = elems.into_iter().collect();
        Self(set.into_iter().collect())
    }

    pub fn elements(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0, |g, &x| g.gcd(&x))
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Sumset `A + B`.
    pub fn sum(&self, other: &IntSet) -> IntSet {
        let (Some(lo), Some(hi)) = (
            self.min().zip(other.min()).map(|(a, b)| a + b),
            self.max().zip(other.max()).map(|(a, b)| a + b),
        ) else {
            return IntSet(Vec::new());
        };
        let mut hit = vec![false; (hi - lo + 1) as usize];
        for &a in &self.0 {
            for &b in &other.0 {
                hit[(a + b - lo) as usize] = true;
            }
        }
        IntSet(
            hit.iter()
                .enumerate()
                .filter(|(_, &h)| h)
                .map(|(i, _)| lo + i as i64)
                .collect(),
        )
    }

    /// `min A = 0`, `gcd A = 1`, `|A| ≥ min_len`; returns `(n, l)`.
    fn normalized_params(&self, min_len: usize) -> Result<(i64, i64)> {
        if self.len() < min_len {
            return Err(Error::Precondition(format!("need |A| >= {min_len}, got {}", self.len())));
        }
        if self.min() != Some(0) {
            return Err(Error::Precondition("need min A = 0".into()));
        }
        if self.gcd() != 1 {
            return Err(Error::Precondition(format!("need gcd A = 1, got {}", self.gcd())));
        }
        Ok((self.len() as i64, self.max().unwrap()))
    }
}

/// `hA` for `h ≥ 1`.
pub fn int_hfold(a: &IntSet, h: u32) -> Result<IntSet> {
    if h == 0 {
        return Err(Error::ZeroFold);
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut acc = a.clone();
    for _ in 1..h {
        acc = acc.sum(a);
    }
    Ok(acc)
}

fn check_frobenius_input(a: &IntSet) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if a.min().unwrap() < 1 {
        return Err(Error::Precondition("elements must be positive".into()));
    }
    if a.gcd() != 1 {
        return Err(Error::Precondition(format!("gcd is {}, not 1", a.gcd())));
    }
    Ok(())
}

/// Largest positive integer that is not a sum of elements of `A`, or `0` if
/// there is none.
///
/// Sieves representable sums up to `min A · max A`; the Frobenius number of
/// a coprime set is at most `(min A − 1)(max A − 1) − 1`, below that limit.
pub fn frobenius_number(a: &IntSet) -> Result<i64> {
    check_frobenius_input(a)?;
    let limit = (a.min().unwrap() * a.max().unwrap()) as usize;
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for n in 1..=limit {
        reach[n] = a.0.iter().any(|&x| x as usize <= n && reach[n - x as usize]);
    }
    Ok((1..=limit).rev().find(|&n| !reach[n]).unwrap_or(0) as i64)
}

/// Frobenius number from shortest representable values in each residue
/// class modulo `min A` (Dijkstra over residues).
pub fn frobenius_by_residues(a: &IntSet) -> Result<i64> {
    check_frobenius_input(a)?;
    let m = a.min().unwrap();
    let mut dist = vec![i64::MAX; m as usize];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0i64, 0i64))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r as usize] {
            continue;
        }
        for &x in &a.0[1..] {
            let nd = d + x;
            let nr = ((r + x) % m) as usize;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr as i64)));
            }
        }
    }
    Ok((dist.into_iter().max().unwrap() - m).max(0))
}

/// `|2A| ≥ min(l, 2n−3) + n`.
pub fn check_3n3(a: &IntSet) -> Result<bool> {
    let (n, l) = a.normalized_params(2)?;
    Ok(a.sum(a).len() as i64 >= l.min(2 * n - 3) + n)
}

/// `κ = ⌊(l−1)/(n−2)⌋` for sets with `n ≥ 3`.
pub fn discrete_kappa(a: &IntSet) -> Result<i64> {
    let (n, l) = a.normalized_params(3)?;
    Ok(Integer::div_floor(&(l - 1), &(n - 2)))
}

/// Lower bound on `|hA|`:
/// `h(h+1)/2·(n−2)+h+1` for `h ≤ κ`, else `κ(κ+1)/2·(n−2)+κ+1+(h−κ)l`.
pub fn lev_bound(n: i64, l: i64, h: i64) -> i64 {
    let kappa = Integer::div_floor(&(l - 1), &(n - 2));
    if h <= kappa {
        h * (h + 1) / 2 * (n - 2) + h + 1
    } else {
        kappa * (kappa + 1) / 2 * (n - 2) + kappa + 1 + (h - kappa) * l
    }
}

pub fn check_lev_ha(a: &IntSet, h: u32) -> Result<bool> {
    let (n, l) = a.normalized_params(3)?;
    let size = int_hfold(a, h)?.len() as i64;
    Ok(size >= lev_bound(n, l, h as i64))
}

/// The block `[m, hl − m]`, `m = (2l − (κ+1)(n−2) − 2)κ`, for `h ≥ 2κ`.
pub fn lint_block(a: &IntSet, h: u32) -> Result<(i64, i64)> {
    let (n, l) = a.normalized_params(3)?;
    let kappa = Integer::div_floor(&(l - 1), &(n - 2));
    if (h as i64) < 2 * kappa {
        return Err(Error::Precondition(format!("h = {h} < 2κ = {}", 2 * kappa)));
    }
    let m = (2 * l - (kappa + 1) * (n - 2) - 2) * kappa;
    Ok((m, h as i64 * l - m))
}

pub fn check_lint_block(a: &IntSet, h: u32) -> Result<bool> {
    let (lo, hi) = lint_block(a, h)?;
    let ha = int_hfold(a, h)?;
    Ok((lo..=hi).all(|z| ha.contains(z)))
}

/// `|hA| ≥ n + (h−1)l` when `l ≤ 2n − 4`.
pub fn check_corollary_ha(a: &IntSet, h: u32) -> Result<bool> {
    let (n, l) = a.normalized_params(3)?;
    if l > 2 * n - 4 {
        return Err(Error::Precondition(format!("need max A <= 2n-4, got l = {l}, n = {n}")));
    }
    Ok(int_hfold(a, h)?.len() as i64 >= n + (h as i64 - 1) * l)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// A subset of `ℤ/pℤ` for prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ModSet {
    p: u64,
    elements: Vec<u64>,
}

impl ModSet {
    pub fn new(p: u64, elems: impl IntoIterator<Item = i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let set: BTreeSet<u64> = elems
            .into_iter()
            .map(|e| e.rem_euclid(p as i64) as u64)
            .collect();
        Ok(Self {
            p,
            elements: set.into_iter().collect(),
        })
    }

    /// Subset given by the bits of `mask` (bit `i` ↔ residue `i`).
    pub fn from_mask(p: u64, mask: u64) -> Result<Self> {
        Self::new(p, (0..p as i64).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() as u64 == self.p
    }
}

pub fn mod_sum(u: &ModSet, v: &ModSet) -> Result<ModSet> {
    if u.p != v.p {
        return Err(Error::ModulusMismatch(u.p, v.p));
    }
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let mut hit = vec![false; u.p as usize];
    for &a in &u.elements {
        for &b in &v.elements {
            hit[((a + b) % u.p) as usize] = true;
        }
    }
    Ok(ModSet {
        p: u.p,
        elements: (0..u.p).filter(|&i| hit[i as usize]).collect(),
    })
}

/// Cauchy–Davenport: `|U+V| ≥ min(|U|+|V|−1, p)`.
pub fn check_cd(u: &ModSet, v: &ModSet) -> Result<bool> {
    let s = mod_sum(u, v)?;
    Ok(s.len() as u64 >= ((u.len() + v.len() - 1) as u64).min(u.p))
}

/// If `A_1 + … + A_h ≠ ℤ/pℤ` then `Σ|A_i| ≤ p + h − 2`.
pub fn check_cd_corollary(sets: &[ModSet]) -> Result<bool> {
    let (first, rest) = sets
        .split_first()
        .ok_or_else(|| Error::Precondition("need at least one set".into()))?;
    let mut acc = first.clone();
    for s in rest {
        acc = mod_sum(&acc, s)?;
    }
    if acc.is_full() {
        return Ok(true);
    }
    let total: u64 = sets.iter().map(|s| s.len() as u64).sum();
    Ok(total + 2 <= first.p + sets.len() as u64)
}

/// Numeric slack allowed when comparing a count with `(n + |S|)/2`.
pub const FREIMAN_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfArc {
    #[serde(with = "rational::as_string")]
    pub beta: Rational,
    pub count: usize,
    /// `|Σ e^{2πi z_j}|`, floating point.
    pub modulus: f64,
    pub n: usize,
}

impl HalfArc {
    /// `count ≥ (n + |S|)/2 − ε`.
    pub fn satisfies_bound(&self) -> bool {
        self.count as f64 >= (self.n as f64 + self.modulus) / 2.0 - FREIMAN_EPS
    }
}

/// Number of `z_j` with `z_j ∈ [β, β + 1/2) mod 1`.
pub fn half_arc_count(points: &[Rational], beta: &Rational) -> usize {
    let half = rational::rat(1, 2);
    points
        .iter()
        .filter(|z| rational::fract(&(*z - beta)) < half)
        .count()
}

/// A `β` maximizing the number of points in the half-open half circle
/// `[β, β + 1/2)`. The count only changes at `β ∈ {z_j}` and
/// `β ∈ {z_j + 1/2}`, so those candidates suffice.
pub fn freiman_half_arc(points: &[Rational]) -> Result<HalfArc> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let half = rational::rat(1, 2);
    let (re, im) = points.iter().fold((0.0f64, 0.0f64), |(re, im), z| {
        let theta = TAU * rational::to_f64(&rational::fract(z));
        (re + theta.cos(), im + theta.sin())
    });
    let mut best: Option<(usize, Rational)> = None;
    let mut candidates: Vec<Rational> = points
        .iter()
        .flat_map(|z| [rational::fract(z), rational::fract(&(z + &half))])
        .collect();
    candidates.sort();
    candidates.dedup();
    for beta in candidates {
        let c = half_arc_count(points, &beta);
        if best.as_ref().is_none_or(|(bc, _)| c > *bc) {
            best = Some((c, beta));
        }
    }
    let (count, beta) = best.expect("non-empty");
    Ok(HalfArc {
        beta,
        count,
        modulus: re.hypot(im),
        n: points.len(),
    })
}

/// Outcome of searching for a short progression containing a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KpProbe {
    Found { difference: u64, terms: u64 },
    /// No short progression at this prime; says nothing about large primes.
    Indeterminate { shortest: u64 },
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Fewest terms of a progression with difference `d` containing `A`.
fn progression_terms(a: &ModSet, d: u64) -> u64 {
    let p = a.p;
    let dinv = inverse_mod(d, p);
    let mut r: Vec<u64> = a.elements.iter().map(|&x| x * dinv % p).collect();
    r.sort_unstable();
    let mut max_gap = r[0] + p - r[r.len() - 1];
    for w in r.windows(2) {
        max_gap = max_gap.max(w[1] - w[0]);
    }
    p - max_gap + 1
}

/// Looks for an arithmetic progression of at most `(p−2n)/(k−2)+1` terms
/// containing `A`, given `n > p/(k+1)` and `kA ≠ ℤ/pℤ`.
pub fn probe_kp_conclusion(a: &ModSet, k: u32) -> Result<KpProbe> {
    if k < 8 {
        return Err(Error::Precondition(format!("k = {k} < 8")));
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let (p, n) = (a.p, a.len() as u64);
    if n * (k as u64 + 1) <= p {
        return Err(Error::Precondition(format!("|A| = {n} <= p/(k+1)")));
    }
    let mut ka = a.clone();
    for _ in 1..k {
        ka = mod_sum(&ka, a)?;
    }
    if ka.is_full() {
        return Err(Error::Precondition("kA is all of Z/pZ".into()));
    }
    let limit = Rational::new(
        (p as i64 - 2 * n as i64).into(),
        (k as i64 - 2).into(),
    ) + Rational::from_integer(1.into());
    let mut shortest = (u64::MAX, 0u64);
    for d in 1..=(p - 1) / 2 {
        let t = progression_terms(a, d);
        if t < shortest.0 {
            shortest = (t, d);
        }
    }
    let (terms, difference) = shortest;
    if Rational::from_integer((terms as i64).into()) <= limit {
        Ok(KpProbe::Found { difference, terms })
    } else {
        Ok(KpProbe::Indeterminate { shortest: terms })
    }
}

/// All subsets of `[0, max_elem]` containing `0`, of size `2..=max_size`,
/// with `gcd = 1`, in increasing bitmask order.
pub fn normalized_subsets(max_elem: u32, max_size: usize) -> impl Iterator<Item = IntSet> {
    (0u64..1u64 << max_elem).filter_map(move |mask| {
        let size = mask.count_ones() as usize + 1;
        if size < 2 || size > max_size {
            return None;
        }
        let set = IntSet::new(
            std::iter::once(0).chain((1..=max_elem as i64).filter(|i| mask >> (i - 1) & 1 == 1)),
        );
        (set.gcd() == 1).then_some(set)
    })
}
