//! Falsification suites: each suite draws seeded inputs, runs one of the
//! bound or theorem checks, and tallies passes and counterexamples.
//!
//! Results depend only on `(seed, trials)`; workers split the trials and the
//! outcomes are gathered back in trial order.

use std::str::FromStr;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds;
use crate::constructions::first_case_value;
use crate::corpus::{self, trial_rng};
use crate::discrete::{self, IntSet, ModSet};
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::rational::{self, rat, Rational};
use crate::semigroup;

/// Counterexamples kept per suite.
const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    MainBound,
    Strengthened,
    Clint,
    Macbeath,
    MesSj,
    Boxing,
    Discrete,
    /// First-case formula on `α ∈ (1/10, 1/3]`; open, never fails a run.
    Conjecture,
}

impl Suite {
    pub const THEOREMS: [Suite; 7] = [
        Suite::MainBound,
        Suite::Strengthened,
        Suite::Clint,
        Suite::Macbeath,
        Suite::MesSj,
        Suite::Boxing,
        Suite::Discrete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainBound => "main-bound",
            Suite::Strengthened => "strengthened",
            Suite::Clint => "clint",
            Suite::Macbeath => "macbeath",
            Suite::MesSj => "mesSj",
            Suite::Boxing => "boxing",
            Suite::Discrete => "discrete",
            Suite::Conjecture => "conjecture",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "main-bound" => Suite::MainBound,
            "strengthened" => Suite::Strengthened,
            "clint" => Suite::Clint,
            "macbeath" => Suite::Macbeath,
            "mesSj" | "messj" => Suite::MesSj,
            "boxing" => Suite::Boxing,
            "discrete" => Suite::Discrete,
            "conjecture" => Suite::Conjecture,
            other => {
                return Err(Error::Unknown {
                    what: "suite",
                    value: other.into(),
                })
            }
        })
    }
}

/// Random streams are keyed by suite so that suites do not share draws,
/// except that `main-bound`, `strengthened`, `clint` and `conjecture` all
/// read the same corpus.
mod tags {
    pub const CORPUS: u64 = 0;
    pub const MACBEATH: u64 = 1;
    pub const MES_SJ: u64 = 2;
    pub const BOXING: u64 = 3;
    pub const FREIMAN: u64 = 4;
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Pass,
    Skip,
    Fail(Value),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// `"theorem"` or `"conjecture"`.
    pub kind: &'static str,
    pub trials: u64,
    pub checked: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub counterexamples: Vec<Value>,
}

impl SuiteReport {
    fn collect(suite: impl Into<String>, kind: &'static str, outcomes: Vec<Outcome>) -> Self {
        let mut r = SuiteReport {
            suite: suite.into(),
            kind,
            trials: outcomes.len() as u64,
            checked: 0,
            passed: 0,
            failed: 0,
            skipped: 0,
            counterexamples: Vec::new(),
        };
        for o in outcomes {
            match o {
                Outcome::Pass => {
                    r.checked += 1;
                    r.passed += 1;
                }
                Outcome::Skip => r.skipped += 1,
                Outcome::Fail(v) => {
                    r.checked += 1;
                    r.failed += 1;
                    if r.counterexamples.len() < MAX_COUNTEREXAMPLES {
                        r.counterexamples.push(v);
                    }
                }
            }
        }
        r
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: u64,
    pub suites: Vec<SuiteReport>,
    /// Conjecture suites do not count.
    pub all_passed: bool,
}

/// Enumeration bounds for the exhaustive discrete checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteBounds {
    pub max_elem: u32,
    pub max_size: usize,
    pub max_h: u32,
    pub lint_extra: u32,
    pub primes: Vec<u64>,
    pub corollary_prime: u64,
    pub corollary_sets: usize,
    pub frobenius_min: i64,
    pub frobenius_max: i64,
    pub frobenius_size: usize,
}

impl Default for DiscreteBounds {
    fn default() -> Self {
        Self {
            max_elem: 12,
            max_size: 7,
            max_h: 6,
            lint_extra: 2,
            primes: vec![3, 5, 7],
            corollary_prime: 5,
            corollary_sets: 3,
            frobenius_min: 8,
            frobenius_max: 40,
            frobenius_size: 4,
        }
    }
}

fn set_json(a: &IntervalUnion) -> Value {
    serde_json::to_value(a).expect("serializable")
}

fn s(r: &Rational) -> Value {
    Value::String(rational::fmt(r))
}

fn engine_failure(a: &IntervalUnion, e: Error) -> Outcome {
    Outcome::Fail(json!({"set": set_json(a), "error": e.to_string()}))
}

fn run_trials<F>(trials: u64, f: F) -> Vec<Outcome>
where
    F: Fn(u64) -> Outcome + Sync + Send,
{
    (0..trials).into_par_iter().map(f).collect()
}

fn main_bound_trial(seed: u64, i: u64) -> Outcome {
    let a = corpus::corpus_set(&mut trial_rng(seed, tags::CORPUS, i));
    let alpha = a.measure();
    let g = match semigroup::gap(&a) {
        Ok(g) => g.gap,
        Err(e) => return engine_failure(&a, e),
    };
    let bound = bounds::bound_main(&alpha).expect("0 < α ≤ 1").value;
    if g <= bound {
        Outcome::Pass
    } else {
        Outcome::Fail(json!({"set": set_json(&a), "alpha": s(&alpha), "gap": s(&g), "bound": s(&bound)}))
    }
}

fn strengthened_trial(seed: u64, i: u64) -> Outcome {
    let a = corpus::corpus_set(&mut trial_rng(seed, tags::CORPUS, i));
    let alpha = a.measure();
    let Ok(bound) = bounds::bound_strengthened(&alpha) else {
        return Outcome::Skip;
    };
    match semigroup::gap(&a) {
        Ok(g) if g.gap <= bound => Outcome::Pass,
        Ok(g) => Outcome::Fail(
            json!({"set": set_json(&a), "alpha": s(&alpha), "gap": s(&g.gap), "bound": s(&bound)}),
        ),
        Err(e) => engine_failure(&a, e),
    }
}

/// Checks the predicted interval against `hA` for `h = 2κ, …, 2κ+4`.
pub fn clint_check(a: &IntervalUnion, extra: u32) -> Result<std::result::Result<(), Value>> {
    let kappa = bounds::clint_kappa(a)?;
    let h0 = (2 * kappa).max(1);
    let mut ha = semigroup::h_fold(a, h0)?;
    for h in h0..=2 * kappa + extra {
        if h > h0 {
            ha = ha.minkowski_sum(a)?;
        }
        if let Some(p) = bounds::clint_predicted(a, h)? {
            if !ha.contains_interval(&p) {
                return Ok(Err(json!({
                    "set": set_json(a), "h": h,
                    "predicted": [s(p.lo()), s(p.hi())],
                    "h_fold": set_json(&ha),
                })));
            }
        }
    }
    Ok(Ok(()))
}

fn clint_trial(seed: u64, i: u64) -> Outcome {
    let a = corpus::corpus_set(&mut trial_rng(seed, tags::CORPUS, i));
    match clint_check(&a, 4) {
        Ok(Ok(())) => Outcome::Pass,
        Ok(Err(v)) => Outcome::Fail(v),
        Err(e) => engine_failure(&a, e),
    }
}

fn macbeath_trial(seed: u64, i: u64) -> Outcome {
    let mut rng = trial_rng(seed, tags::MACBEATH, i);
    let u = corpus::random_torus_set(&mut rng);
    let v = corpus::random_torus_set(&mut rng);
    match bounds::check_macbeath(&u, &v) {
        Ok(true) => Outcome::Pass,
        Ok(false) | Err(_) => Outcome::Fail(json!({
            "u": serde_json::to_value(&u).unwrap(),
            "v": serde_json::to_value(&v).unwrap(),
        })),
    }
}

fn mes_sj_trial(seed: u64, i: u64) -> Outcome {
    let a = corpus::corpus_set_with_top(&mut trial_rng(seed, tags::MES_SJ, i));
    let alpha = a.measure();
    let jmax = rational::floor(&alpha.recip()) + 2;
    let jmax = u32::try_from(jmax).expect("small");
    let slices = match semigroup::sj_slices(&a, jmax) {
        Ok(v) => v,
        Err(e) => return engine_failure(&a, e),
    };
    for (j, m) in (1..=jmax).zip(&slices) {
        let want = (Rational::from_integer(j.into()) * &alpha).min(Rational::one());
        if m < &want {
            return Outcome::Fail(json!({"set": set_json(&a), "j": j, "mes": s(m), "min": s(&want)}));
        }
    }
    Outcome::Pass
}

fn boxing_trial(seed: u64, i: u64) -> Outcome {
    let (v, u) = corpus::boxing_instance(&mut trial_rng(seed, tags::BOXING, i));
    match u.minkowski_sum(&u) {
        Ok(uu) if uu.contains(&v) => Outcome::Pass,
        _ => Outcome::Fail(json!({"v": s(&v), "set": set_json(&u)})),
    }
}

fn conjecture_trial(seed: u64, i: u64) -> Outcome {
    let a = corpus::corpus_set(&mut trial_rng(seed, tags::CORPUS, i));
    let alpha = a.measure();
    if !(alpha > rat(1, 10) && alpha <= rat(1, 3)) {
        return Outcome::Skip;
    }
    let bound = first_case_value(&alpha);
    match semigroup::gap(&a) {
        Ok(g) if g.gap <= bound => Outcome::Pass,
        Ok(g) => Outcome::Fail(
            json!({"set": set_json(&a), "alpha": s(&alpha), "gap": s(&g.gap), "bound": s(&bound)}),
        ),
        Err(e) => engine_failure(&a, e),
    }
}

/// Discrete theorem checks, each exhaustive over its own domain except
/// `freiman`, which is seeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscreteCheck {
    ThreeN3,
    Lev,
    Lint,
    CorollaryHA,
    Cd,
    CdCorollary,
    Frobenius,
    Freiman,
}

impl DiscreteCheck {
    pub const ALL: [DiscreteCheck; 8] = [
        DiscreteCheck::ThreeN3,
        DiscreteCheck::Lev,
        DiscreteCheck::Lint,
        DiscreteCheck::CorollaryHA,
        DiscreteCheck::Cd,
        DiscreteCheck::CdCorollary,
        DiscreteCheck::Frobenius,
        DiscreteCheck::Freiman,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DiscreteCheck::ThreeN3 => "3n3",
            DiscreteCheck::Lev => "lev",
            DiscreteCheck::Lint => "lint",
            DiscreteCheck::CorollaryHA => "chA",
            DiscreteCheck::Cd => "cd",
            DiscreteCheck::CdCorollary => "cdcor",
            DiscreteCheck::Frobenius => "frobenius",
            DiscreteCheck::Freiman => "freiman",
        }
    }
}

impl FromStr for DiscreteCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DiscreteCheck::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown {
                what: "theorem",
                value: s.into(),
            })
    }
}

fn int_set_fail(a: &IntSet, extra: Value) -> Outcome {
    Outcome::Fail(json!({"set": a.elements(), "detail": extra}))
}

fn check_int_set(check: DiscreteCheck, a: &IntSet, b: &DiscreteBounds) -> Outcome {
    let n = a.len();
    let run = || -> Result<Option<Value>> {
        match check {
            DiscreteCheck::ThreeN3 => Ok((!discrete::check_3n3(a)?).then(|| json!("3n3"))),
            DiscreteCheck::Lev => {
                for h in 1..=b.max_h {
                    if !discrete::check_lev_ha(a, h)? {
                        return Ok(Some(json!({"h": h})));
                    }
                }
                Ok(None)
            }
            DiscreteCheck::Lint => {
                let kappa = discrete::discrete_kappa(a)? as u32;
                for h in (2 * kappa).max(1)..=2 * kappa + b.lint_extra {
                    if !discrete::check_lint_block(a, h)? {
                        return Ok(Some(json!({"h": h})));
                    }
                }
                Ok(None)
            }
            DiscreteCheck::CorollaryHA => {
                for h in 1..=b.max_h {
                    if !discrete::check_corollary_ha(a, h)? {
                        return Ok(Some(json!({"h": h})));
                    }
                }
                Ok(None)
            }
            _ => unreachable!("not an integer-set check"),
        }
    };
    let applicable = match check {
        DiscreteCheck::ThreeN3 => n >= 2,
        DiscreteCheck::Lev | DiscreteCheck::Lint => n >= 3,
        DiscreteCheck::CorollaryHA => n >= 3 && a.max().unwrap() <= 2 * n as i64 - 4,
        _ => false,
    };
    if !applicable {
        return Outcome::Skip;
    }
    match run() {
        Ok(None) => Outcome::Pass,
        Ok(Some(v)) => int_set_fail(a, v),
        Err(e) => int_set_fail(a, json!(e.to_string())),
    }
}

fn frobenius_candidates(b: &DiscreteBounds) -> Vec<IntSet> {
    fn extend(cur: &mut Vec<i64>, next: i64, b: &DiscreteBounds, out: &mut Vec<IntSet>) {
        if !cur.is_empty() {
            let s = IntSet::new(cur.iter().copied());
            if s.gcd() == 1 {
                out.push(s);
            }
        }
        if cur.len() == b.frobenius_size {
            return;
        }
        for x in next..=b.frobenius_max {
            if cur.is_empty() && x > b.frobenius_min {
                break;
            }
            cur.push(x);
            extend(cur, x + 1, b, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, b, &mut out);
    out
}

/// Runs one discrete check over its domain.
pub fn run_discrete(check: DiscreteCheck, b: &DiscreteBounds, trials: u64, seed: u64) -> SuiteReport {
    let name = format!("discrete/{}", check.name());
    let outcomes: Vec<Outcome> = match check {
        DiscreteCheck::ThreeN3 | DiscreteCheck::Lev | DiscreteCheck::Lint | DiscreteCheck::CorollaryHA => {
            let sets: Vec<IntSet> = discrete::normalized_subsets(b.max_elem, b.max_size).collect();
            sets.par_iter().map(|a| check_int_set(check, a, b)).collect()
        }
        DiscreteCheck::Cd => {
            let pairs: Vec<(u64, u64, u64)> = b
                .primes
                .iter()
                .flat_map(|&p| {
                    let n = 1u64 << p;
                    (1..n).flat_map(move |x| (1..n).map(move |y| (p, x, y)))
                })
                .collect();
            pairs
                .par_iter()
                .map(|&(p, x, y)| {
                    let u = ModSet::from_mask(p, x).expect("prime");
                    let v = ModSet::from_mask(p, y).expect("prime");
                    match discrete::check_cd(&u, &v) {
                        Ok(true) => Outcome::Pass,
                        _ => Outcome::Fail(json!({"p": p, "u": u.elements(), "v": v.elements()})),
                    }
                })
                .collect()
        }
        DiscreteCheck::CdCorollary => {
            let p = b.corollary_prime;
            let n = 1u64 << p;
            let h = b.corollary_sets as u32;
            let total = (n - 1).pow(h);
            (0..total)
                .into_par_iter()
                .map(|mut idx| {
                    let sets: Vec<ModSet> = (0..h)
                        .map(|_| {
                            let m = idx % (n - 1) + 1;
                            idx /= n - 1;
                            ModSet::from_mask(p, m).expect("prime")
                        })
                        .collect();
                    match discrete::check_cd_corollary(&sets) {
                        Ok(true) => Outcome::Pass,
                        _ => Outcome::Fail(json!({
                            "p": p,
                            "sets": sets.iter().map(|s| s.elements().to_vec()).collect::<Vec<_>>(),
                        })),
                    }
                })
                .collect()
        }
        DiscreteCheck::Frobenius => {
            let sets = frobenius_candidates(b);
            sets.par_iter()
                .map(|a| {
                    let x = discrete::frobenius_number(a);
                    let y = discrete::frobenius_by_residues(a);
                    match (x, y) {
                        (Ok(x), Ok(y)) if x == y => Outcome::Pass,
                        (x, y) => Outcome::Fail(json!({
                            "set": a.elements(),
                            "sieve": format!("{x:?}"),
                            "residues": format!("{y:?}"),
                        })),
                    }
                })
                .collect()
        }
        DiscreteCheck::Freiman => run_trials(trials, |i| {
            let pts = corpus::random_circle_points(&mut trial_rng(seed, tags::FREIMAN, i));
            let r = discrete::freiman_half_arc(&pts).expect("non-empty");
            if r.satisfies_bound() {
                Outcome::Pass
            } else {
                Outcome::Fail(json!({
                    "points": pts.iter().map(rational::fmt).collect::<Vec<_>>(),
                    "count": r.count,
                    "modulus": r.modulus,
                }))
            }
        }),
    };
    SuiteReport::collect(name, "theorem", outcomes)
}

/// Runs one suite. `Discrete` expands into one report per check.
pub fn run_suite(suite: Suite, trials: u64, seed: u64) -> Vec<SuiteReport> {
    let theorem = |outcomes| vec![SuiteReport::collect(suite.name(), "theorem", outcomes)];
    match suite {
        Suite::MainBound => theorem(run_trials(trials, |i| main_bound_trial(seed, i))),
        Suite::Strengthened => theorem(run_trials(trials, |i| strengthened_trial(seed, i))),
        Suite::Clint => theorem(run_trials(trials, |i| clint_trial(seed, i))),
        Suite::Macbeath => theorem(run_trials(trials, |i| macbeath_trial(seed, i))),
        Suite::MesSj => theorem(run_trials(trials, |i| mes_sj_trial(seed, i))),
        Suite::Boxing => theorem(run_trials(trials, |i| boxing_trial(seed, i))),
        Suite::Conjecture => vec![SuiteReport::collect(
            suite.name(),
            "conjecture",
            run_trials(trials, |i| conjecture_trial(seed, i)),
        )],
        Suite::Discrete => {
            let b = DiscreteBounds::default();
            DiscreteCheck::ALL
                .iter()
                .map(|&c| run_discrete(c, &b, trials, seed))
                .collect()
        }
    }
}

/// Runs `suites` on a pool of `workers` threads.
pub fn verify(suites: &[Suite], trials: u64, seed: u64, workers: usize) -> Result<VerifyReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    let reports: Vec<SuiteReport> = pool.install(|| {
        suites
            .iter()
            .flat_map(|&s| run_suite(s, trials, seed))
            .collect()
    });
    let all_passed = reports.iter().filter(|r| r.kind == "theorem").all(SuiteReport::ok);
    Ok(VerifyReport {
        seed,
        trials,
        suites: reports,
        all_passed,
    })
}
