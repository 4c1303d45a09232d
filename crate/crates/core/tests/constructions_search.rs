use contfrob_core::bounds;
use contfrob_core::constructions::{self, example1, example2, example3};
use contfrob_core::rational::{rat, Rational};
use contfrob_core::search::{self, Family, SearchConfig};
use contfrob_core::semigroup;
use num_traits::One;
use proptest::prelude::*;

fn first_case(alpha: &Rational) -> Rational {
    (Rational::one() - alpha) * Rational::from_integer(alpha.recip().floor().to_integer())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn example1_is_sharp(q in 2i64..40, p in 1i64..40) {
        prop_assume!(p <= q);
        let alpha = rat(p, q);
        let r = example1(&alpha).unwrap();
        prop_assert_eq!(r.set.measure(), alpha.clone());
        let g = semigroup::gap(&r.set).unwrap().gap;
        prop_assert_eq!(&g, &r.predicted_gap);
        prop_assert_eq!(&g, &first_case(&alpha));
        let bound = bounds::bound_main(&alpha).unwrap().value;
        if alpha <= rat(1, 10) {
            prop_assert_eq!(g, bound);
        } else {
            prop_assert!(g <= bound);
        }
    }

    #[test]
    fn example2_is_sharp(q in 3i64..60, p in 1i64..60) {
        prop_assume!(2 * p > q && p < q);
        let alpha = rat(p, q);
        let r = example2(&alpha).unwrap();
        prop_assert_eq!(r.set.measure(), alpha.clone());
        let g = semigroup::gap(&r.set).unwrap().gap;
        prop_assert_eq!(&g, &(rat(2, 1) * (Rational::one() - &alpha)));
        prop_assert_eq!(g, bounds::bound_main(&alpha).unwrap().value);
    }

    #[test]
    fn example3_beats_first_case(q in 7i64..80, p in 1i64..40) {
        let alpha = rat(p, q);
        prop_assume!(alpha > rat(1, 3) && alpha < rat(1, 2));
        let r = example3(&alpha).unwrap();
        prop_assert_eq!(r.set.measure(), alpha.clone());
        let g = semigroup::gap(&r.set).unwrap().gap;
        prop_assert_eq!(&g, &r.predicted_gap);
        prop_assert!(g > first_case(&alpha));
        prop_assert!(g <= bounds::bound_main(&alpha).unwrap().value);
    }
}

#[test]
fn construct_rejects_out_of_range() {
    assert!(constructions::construct("ex2", &rat(1, 3)).is_err());
    assert!(constructions::construct("ex3", &rat(3, 5)).is_err());
    assert!(constructions::construct("ex1", &rat(0, 1)).is_err());
}

fn config(alpha: Rational, family: Family, seed: u64) -> SearchConfig {
    let mut cfg = SearchConfig::new(alpha, family);
    cfg.budget = 120;
    cfg.seed = seed;
    cfg.top = 8;
    cfg
}

#[test]
fn search_records_reverify() {
    for family in [Family::ScaledChain, Family::Punctured, Family::RandomGrid] {
        for alpha in [rat(1, 5), rat(2, 5), rat(3, 4)] {
            let out = search::run_search(&config(alpha.clone(), family, 3)).unwrap();
            for r in &out.records {
                assert_eq!(r.set.measure(), alpha);
                assert_eq!(semigroup::gap(&r.set).unwrap().gap, r.gap);
                assert_eq!(r.ratio, &r.gap / first_case(&alpha));
            }
            for w in out.records.windows(2) {
                assert!(w[0].ratio >= w[1].ratio);
            }
        }
    }
}

#[test]
fn search_ignores_worker_count() {
    for family in [Family::ScaledChain, Family::Punctured, Family::RandomGrid] {
        let cfg = config(rat(1, 4), family, 42);
        let base = search::run_search_with_workers(&cfg, 1).unwrap();
        for w in [2, 3, 8] {
            assert_eq!(search::run_search_with_workers(&cfg, w).unwrap(), base);
        }
    }
}

#[test]
fn random_grid_at_one_fifth_stays_below_first_case() {
    let mut cfg = config(rat(1, 5), Family::RandomGrid, 42);
    cfg.budget = 1000;
    let out = search::run_search(&cfg).unwrap();
    assert!(!out.records.is_empty());
    assert!(out.records[0].ratio <= Rational::one());
}

#[test]
fn pinned_chain_matches_third_example() {
    let mut cfg = config(rat(5, 12), Family::ScaledChain, 0);
    cfg.chain = Some((4, rat(5, 6)));
    let out = search::run_search(&cfg).unwrap();
    let best = &out.records[0];
    assert_eq!(best.ratio, rat(15, 14));
    assert_eq!(best.set, example3(&rat(5, 12)).unwrap().set);
}
