//! Seeded search for sets of a prescribed measure with large gap value.
//!
//! Candidates are scored by `G(A) / ((1−α)⌊1/α⌋)`: a ratio above one beats
//! the single interval `(1−α, 1)` of the same measure.

use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds;
use crate::constructions::{chain_set, first_case_value};
use crate::corpus::{random_grid_set, trial_rng};
use crate::error::{Error, Result};
use crate::interval::{IntervalUnion, OpenInterval};
use crate::rational::{self, int, rat, Rational};
use crate::semigroup::{self, EngineLimits};

const SEARCH_TAG: u64 = 0x5EA2C4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `∪ (itx/k, it/k) ∪ (tx, 1)` with free `k` and `x`, `t` solved from `α`.
    ScaledChain,
    /// `(1−α−W, 1)` with a few closed pieces of total length `W` removed.
    Punctured,
    /// Random grid union with its top part stretched to measure `α`.
    RandomGrid,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scaled-chain" => Ok(Family::ScaledChain),
            "punctured" => Ok(Family::Punctured),
            "random-grid" => Ok(Family::RandomGrid),
            other => Err(Error::Unknown {
                what: "search family",
                value: other.into(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub alpha: Rational,
    pub family: Family,
    pub budget: u64,
    pub seed: u64,
    pub grid_denominator: i64,
    /// Records kept, best first.
    pub top: usize,
    /// Fixes `(k, x)` for the scaled-chain family.
    pub chain: Option<(u64, Rational)>,
    pub limits: EngineLimits,
}

impl SearchConfig {
    pub fn new(alpha: Rational, family: Family) -> Self {
        Self {
            alpha,
            family,
            budget: 100,
            seed: 0,
            grid_denominator: 24,
            top: 10,
            chain: None,
            limits: EngineLimits::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha.is_positive() && self.alpha < Rational::one()) {
            return Err(Error::AlphaOutOfRange {
                alpha: rational::fmt(&self.alpha),
                range: "(0, 1)",
            });
        }
        if self.budget == 0 {
            return Err(Error::Precondition("budget must be at least 1".into()));
        }
        if self.grid_denominator < 1 || self.grid_denominator as u64 > self.limits.max_grid_cells {
            return Err(Error::Precondition(format!(
                "grid denominator {} outside [1, {}]",
                self.grid_denominator, self.limits.max_grid_cells
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub set: IntervalUnion,
    #[serde(with = "rational::as_string")]
    pub alpha: Rational,
    #[serde(with = "rational::as_string")]
    pub gap: Rational,
    #[serde(with = "rational::as_string")]
    pub ratio: Rational,
    #[serde(with = "rational::as_string")]
    pub bound_main: Rational,
    pub family_params: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub records: Vec<SearchRecord>,
    pub evaluated: u64,
    /// Draws that could not be shaped into a set of measure `α`.
    pub infeasible: u64,
    /// Candidates the engine refused (size guard).
    pub rejected: u64,
}

/// `t` making the chain for `(k, x)` have measure `α`, if the chain is
/// admissible: `t > 0` and `tx < 1`.
pub fn chain_scale(alpha: &Rational, k: u64, x: &Rational) -> Option<Rational> {
    let one = Rational::one();
    let kr = Rational::from_integer(k.into());
    if k < 2 || !(x > &(&one - kr.recip()) && x < &one) {
        return None;
    }
    // mes = t(1−x)(k−1)/2 + 1 − tx
    let denom = x - (&one - x) * (&kr - &one) / int(2);
    if !denom.is_positive() {
        return None;
    }
    let t = (&one - alpha) / denom;
    (t.is_positive() && &t * x < one).then_some(t)
}

fn chain_candidate<R: Rng>(cfg: &SearchConfig, rng: &mut R) -> Option<(IntervalUnion, Value)> {
    let (k, x) = match &cfg.chain {
        Some((k, x)) => (*k, x.clone()),
        None => {
            let k = rng.random_range(2..=12u64);
            let g = cfg.grid_denominator;
            let j = rng.random_range(1..=g);
            (k, Rational::one() - rat(j, g * k as i64 + 1))
        }
    };
    let t = chain_scale(&cfg.alpha, k, &x)?;
    let set = chain_set(k, &x, &t).ok()?;
    (set.measure() == cfg.alpha).then(|| {
        (
            set,
            json!({"k": k, "x": rational::fmt(&x), "t": rational::fmt(&t)}),
        )
    })
}

fn punctured_candidate<R: Rng>(cfg: &SearchConfig, rng: &mut R) -> Option<(IntervalUnion, Value)> {
    let q = cfg.grid_denominator;
    let r = rng.random_range(1..=3);
    let widths: Vec<Rational> = (0..r)
        .map(|_| match rng.random_range(0..4) {
            0 => rat(1, q),
            1 => rat(2, q),
            _ => Rational::zero(),
        })
        .collect();
    let total: Rational = widths.iter().sum();
    let left = Rational::one() - &cfg.alpha - &total;
    if left.is_negative() {
        return None;
    }
    let mut set = IntervalUnion::single(left.clone(), Rational::one());
    let mut cuts = Vec::with_capacity(r);
    for w in widths {
        let p = rat(rng.random_range(1..q), q);
        let end = &p + &w;
        if p <= left || end >= Rational::one() {
            return None;
        }
        set = set.remove_closed(&p, &end);
        cuts.push(vec![rational::fmt(&p), rational::fmt(&end)]);
    }
    (set.measure() == cfg.alpha).then(|| (set, json!({"removed": cuts})))
}

fn random_grid_candidate<R: Rng>(cfg: &SearchConfig, rng: &mut R) -> Option<(IntervalUnion, Value)> {
    let base = random_grid_set(rng, cfg.grid_denominator, 6);
    let delta = &cfg.alpha - base.measure();
    let mut parts = base.into_parts();
    let last = parts.pop()?;
    let floor = parts.last().map(|p| p.hi().clone()).unwrap_or_default();
    let one = Rational::one();
    let mut hi = last.hi() + &delta;
    let mut lo = last.lo().clone();
    if hi > one {
        lo -= &hi - &one;
        hi = one;
    }
    if lo < floor {
        return None;
    }
    parts.push(OpenInterval::new(lo, hi)?);
    let set = IntervalUnion::normalize(parts);
    (set.measure() == cfg.alpha).then(|| (set, json!({"grid": cfg.grid_denominator})))
}

enum Trial {
    Record(SearchRecord),
    Infeasible,
    Rejected,
}

fn run_trial(cfg: &SearchConfig, index: u64) -> Trial {
    let mut rng = trial_rng(cfg.seed, SEARCH_TAG, index);
    let cand = match cfg.family {
        Family::ScaledChain => chain_candidate(cfg, &mut rng),
        Family::Punctured => punctured_candidate(cfg, &mut rng),
        Family::RandomGrid => random_grid_candidate(cfg, &mut rng),
    };
    let Some((set, params)) = cand else {
        return Trial::Infeasible;
    };
    match semigroup::gap_with(&set, &cfg.limits) {
        Ok(g) => {
            let ratio = &g.gap / first_case_value(&cfg.alpha);
            Trial::Record(SearchRecord {
                set,
                alpha: cfg.alpha.clone(),
                gap: g.gap,
                ratio,
                bound_main: bounds::bound_main(&cfg.alpha).expect("0 < α < 1").value,
                family_params: params,
            })
        }
        Err(_) => Trial::Rejected,
    }
}

/// Runs the search on the current rayon pool. The result depends only on
/// the configuration.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    if cfg.family == Family::ScaledChain {
        if let Some((k, x)) = &cfg.chain {
            if chain_scale(&cfg.alpha, *k, x).is_none() {
                return Err(Error::Infeasible(format!(
                    "no admissible chain with k = {k}, x = {x} at alpha = {}",
                    cfg.alpha
                )));
            }
        }
    }
    if cfg.family == Family::Punctured && cfg.grid_denominator < 2 {
        return Err(Error::Infeasible("punctured family needs grid denominator >= 2".into()));
    }
    let trials: Vec<Trial> = (0..cfg.budget).into_par_iter().map(|i| run_trial(cfg, i)).collect();
    let mut out = SearchOutcome {
        records: Vec::new(),
        evaluated: 0,
        infeasible: 0,
        rejected: 0,
    };
    for t in trials {
        match t {
            Trial::Record(r) => {
                out.evaluated += 1;
                out.records.push(r);
            }
            Trial::Infeasible => out.infeasible += 1,
            Trial::Rejected => out.rejected += 1,
        }
    }
    out.records
        .sort_by(|a, b| b.ratio.cmp(&a.ratio).then_with(|| a.set.lex_cmp(&b.set)));
    out.records.dedup_by(|a, b| a.set == b.set);
    out.records.truncate(cfg.top);
    Ok(out)
}

/// `run_search` on a dedicated pool of `workers` threads.
pub fn run_search_with_workers(cfg: &SearchConfig, workers: usize) -> Result<SearchOutcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    pool.install(|| run_search(cfg))
}
