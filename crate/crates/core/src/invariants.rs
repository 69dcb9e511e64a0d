//! Property tests of the public API against the brute-force oracles in
//! `tests/common`.

use std::sync::LazyLock;

use crate::enumerate::{closed_row, fib_poly_eval, fib_poly_radical};
use crate::gaps::total_gaps;
use crate::oracles as common;
use crate::sampler::exact_moments_below;
use crate::stats::{gn_at_one_closed, pmf, variance_closed_form};
use crate::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn nat(x: u128) -> Nat {
    Nat::from(x)
}

// ---- kernel ----

#[test]
fn table_matches_closed_form_to_5000() {
    let table = SequenceTable::with_terms(5000);
    for n in 1..=5000 {
        assert_eq!(table.term(n).unwrap(), &term_closed_form(n), "n={n}");
    }
}

#[test]
fn table_matches_oracle_terms() {
    let table = SequenceTable::with_terms(120);
    for n in 1..=120 {
        assert_eq!(table.term(n).unwrap(), &nat(common::term(n)), "n={n}");
    }
}

#[test]
fn even_and_odd_recurrences() {
    let table = SequenceTable::with_terms(5001);
    let a = |i: usize| table.term(i).unwrap().clone();
    for n in 2..=2500 {
        assert_eq!(a(2 * n), a(2 * n - 1) + a(2 * n - 3), "even n={n}");
        assert_eq!(a(2 * n + 1), a(2 * n) + a(2 * n - 3), "odd n={n}");
    }
}

#[test]
fn odd_terms_straddle_powers_of_two() {
    let table = SequenceTable::with_terms(5001);
    for n in 1..=2501 {
        let lhs = BigInt::from(table.term(2 * n - 1).unwrap().clone()) * 3;
        let diff = lhs - (BigInt::one() << (n + 1));
        let expected = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(diff, BigInt::from(expected), "n={n}");
    }
}

#[test]
fn constructive_matches_recurrence() {
    let built = build_constructive(1, 2, 30).unwrap();
    assert_eq!(built.terms, SequenceTable::with_terms(30).terms());
}

// ---- decomp ----

static TABLE_2001: LazyLock<SequenceTable> = LazyLock::new(|| SequenceTable::with_terms(2001));

fn below_a2001() -> impl Strategy<Value = Nat> {
    let bound = term_closed_form(2001);
    let words = bound.to_u32_digits().len();
    proptest::collection::vec(any::<u32>(), words).prop_map(move |w| Nat::new(w) % &bound)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100_000))]

    #[test]
    fn decompose_round_trips(m in below_a2001()) {
        let table = &*TABLE_2001;
        let d = decompose(table, &m).unwrap();
        prop_assert_eq!(d.terms(table).unwrap().iter().sum::<Nat>(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn decompositions_are_legal_with_gaps_at_least_three(m in below_a2001()) {
        let table = &*TABLE_2001;
        let d = decompose(table, &m).unwrap();
        prop_assert!(is_legal(&d.indices).unwrap());
        prop_assert!(gaps_of(&d).gaps.iter().all(|&g| g >= 3));
        prop_assert_eq!(d.summand_count(), crate::decomp::summand_count(table, &m).unwrap());
    }

    #[test]
    fn greedy_is_the_unique_enumerated_decomposition(m in 0u64..1365) {
        let table = SequenceTable::with_terms(21);
        let all = enumerate_all(&Nat::from(m), 20).unwrap();
        prop_assert_eq!(all.len(), 1);
        prop_assert_eq!(&all[0], &decompose(&table, &Nat::from(m)).unwrap());
    }

    #[test]
    fn legal_sets_have_gaps_at_least_three(n in 1usize..=9) {
        for (set, _) in common::legal_sets(2 * n) {
            prop_assert!(is_legal(&set).unwrap());
            prop_assert!(set.windows(2).all(|w| w[1] - w[0] >= 3));
        }
    }
}

#[test]
fn greedy_matches_oracle_on_desk_range() {
    let table = SequenceTable::with_terms(25);
    for (value, set) in common::unique_decompositions(12) {
        assert_eq!(
            decompose(&table, &nat(value)).unwrap().indices,
            set,
            "m={value}"
        );
    }
}

#[test]
fn indices_up_to_2n_cover_exactly_below_a_2n_plus_1() {
    for n in 1..=12 {
        let values = common::unique_decompositions(n);
        let top = common::term(2 * n + 1);
        assert_eq!(values.len() as u128, top, "n={n}");
        assert_eq!(*values.keys().next_back().unwrap(), top - 1);
        if n >= 2 {
            assert_eq!(top - 1, common::term(2 * n) + common::term(2 * n - 3) - 1);
        }
    }
}

// ---- enumerate ----

proptest! {
    #[test]
    fn counting_triple_agreement(n in 0usize..=60) {
        let gf = pnk_from_gf(n).unwrap();
        let width = n.div_ceil(2) + 1;
        prop_assert!(gf.len() <= width + 1);
        for k in 0..=width {
            let from_gf = gf.get(k).cloned().unwrap_or_default();
            prop_assert_eq!(&pnk_recurrence(n, k), &pnk_closed(n, k), "n={} k={}", n, k);
            prop_assert_eq!(&pnk_closed(n, k), &from_gf, "n={} k={}", n, k);
        }
        prop_assert_eq!(closed_row(n).iter().sum::<Nat>(), term_closed_form(2 * n + 1));
    }

    #[test]
    fn gn_three_forms_agree(n in 0usize..=30, y in prop::sample::select(vec![(1, 1), (2, 1), (1, 2)])) {
        let y_rat = rat(y.0, y.1);
        let poly = gn_poly(n).eval(&y_rat);
        prop_assert_eq!(&poly, &gn_fibform(n, &y_rat).unwrap());
        let exact = rat_to_f64(&poly);
        let radical = gn_radical(n, y.0 as f64 / y.1 as f64).unwrap();
        prop_assert!(((radical - exact) / exact).abs() < 1e-9, "n={} y={:?}", n, y);
    }

    #[test]
    fn fibonacci_radical_matches_recurrence(n in 1usize..=50, x in prop::sample::select(vec![(1, 2), (1, 1), (3, 2)])) {
        let exact = rat_to_f64(&fib_poly_eval(n, &rat(x.0, x.1)));
        let radical = fib_poly_radical(n, x.0 as f64 / x.1 as f64);
        prop_assert!(((radical - exact) / exact).abs() < 1e-9, "n={} x={:?}", n, x);
    }
}

#[test]
fn pnk_matches_bruteforce_to_12() {
    for n in 0..=12 {
        let brute = common::pnk_bruteforce(n);
        let row = closed_row(n);
        assert_eq!(row.len(), brute.len(), "n={n}");
        for (k, (p, b)) in row.iter().zip(&brute).enumerate() {
            assert_eq!(p, &nat(*b), "n={n} k={k}");
        }
    }
}

#[test]
fn stars_and_bars() {
    for n in 1..=12usize {
        for k in 1..=n.div_ceil(2) {
            let expected = common::binomial((n - (k - 1)) as u64, k as u64);
            assert_eq!(
                common::compositions(n + 1 - 2 * k, k + 1),
                expected,
                "n={n} k={k}"
            );
            assert_eq!(common::nonadjacent_subsets(n, k), expected, "n={n} k={k}");
        }
    }
}

// ---- stats ----

#[test]
fn variance_closed_form_exact_to_60() {
    for n in 0..=60 {
        assert_eq!(exact_variance(n), variance_closed_form(n), "n={n}");
        assert_eq!(gn_at_one_closed(n), term_closed_form(2 * n + 1), "n={n}");
    }
}

#[test]
fn moments_near_asymptotic_60_to_200() {
    let tol = Rat::new(BigInt::one(), BigInt::from(10u64.pow(9)));
    for n in 60..=200 {
        let (mu, var) = crate::stats::asymptotic_moments_exact(n);
        assert!((exact_mean(n) - mu).abs() < tol, "mean n={n}");
        assert!((exact_variance(n) - var).abs() < tol, "variance n={n}");
    }
}

proptest! {
    #[test]
    fn pmf_is_a_distribution(n in 0usize..=300) {
        let p = pmf(n);
        prop_assert!(p.iter().all(|x| !x.is_negative() && x <= &Rat::one()));
        prop_assert_eq!(p.iter().sum::<Rat>(), Rat::one());
    }
}

#[test]
fn ks_decreases() {
    let ks: Vec<f64> = [50, 200, 800]
        .iter()
        .map(|&n| gaussian_diagnostics(n, &[]).unwrap().ks_to_normal)
        .collect();
    assert!(ks[0] > ks[1] && ks[1] > ks[2], "{ks:?}");
}

// ---- gaps ----

#[test]
fn gap_formula_matches_oracle() {
    for n in 3..=12 {
        let oracle = common::gaps_bruteforce(n);
        assert!(oracle.keys().all(|&g| g >= 3));
        for g in 0..2 * n {
            let expected = oracle.get(&g).copied().unwrap_or(0);
            assert_eq!(gap_count_formula(n, g), nat(expected), "n={n} g={g}");
        }
    }
}

#[test]
fn gap_formula_matches_library_bruteforce() {
    for n in 3..=12 {
        let brute = gap_histogram_bruteforce(n, false).unwrap();
        assert_eq!(brute, GapHistogram::from_formula(n), "n={n}");
        assert!(brute.counts.keys().all(|&g| g >= 3));
    }
}

#[test]
fn limit_tail_at_60() {
    let sum: Rat = (3..=60).map(limit_p).sum();
    let deficit = Rat::one() - sum;
    assert!(!deficit.is_negative());
    assert!(deficit < Rat::new(BigInt::one(), BigInt::one() << 28usize));
}

#[test]
fn pn_converges_at_200() {
    for g in 3..=10 {
        let diff = rat_to_f64(&(pn_of_g(200, g).unwrap() - limit_p(g))).abs();
        assert!(diff < 0.01, "g={g} diff={diff}");
    }
}

#[test]
fn gap_normaliser_asymptotics() {
    for n in [50usize, 100, 200] {
        let scaled = Rat::new(
            BigInt::from(total_gaps(n)) * 9,
            BigInt::from(n) * (BigInt::one() << (n + 2)),
        );
        let ratio = rat_to_f64(&scaled);
        assert!((ratio - 1.0).abs() < 0.05, "n={n} ratio={ratio}");
    }
}

// ---- sampler ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sampler_is_reproducible(seed in any::<u64>(), workers in 1usize..=8, digits in 1u32..=80) {
        let cfg = SampleConfig::new(500, Nat::from(10u32).pow(digits), seed, workers).unwrap();
        prop_assert_eq!(run_experiment(&cfg).unwrap(), run_experiment(&cfg).unwrap());
    }

    #[test]
    fn uniform_below_stays_below(seed in any::<u64>(), bound in 1u64..u64::MAX) {
        let mut rng = crate::sampler::worker_rng(seed, 0);
        let bound = Nat::from(bound);
        for _ in 0..100 {
            prop_assert!(uniform_below(&bound, &mut rng).unwrap() < bound);
        }
    }
}

#[test]
fn worker_count_does_not_change_the_law() {
    let bound = Nat::from(10u32).pow(120);
    let (mean, var) = exact_moments_below(&bound);
    let (mean, sd) = (rat_to_f64(&mean), rat_to_f64(&var).sqrt());
    let count = 20_000u64;
    let se = sd / (count as f64).sqrt();
    for workers in [1usize, 8] {
        let cfg = SampleConfig::new(count, bound.clone(), 2024, workers).unwrap();
        let report = run_experiment(&cfg).unwrap();
        assert!(
            (report.empirical_mean - mean).abs() < 5.0 * se,
            "workers={workers} mean={} expected={mean}",
            report.empirical_mean
        );
        assert_eq!(report.histogram.values().sum::<u64>(), count);
    }
}

#[test]
fn leading_digit_is_uniform() {
    // Leading decimal digit of uniform draws below 10^600 is uniform on 0..=9
    // (a leading zero meaning fewer than 600 digits).
    let bound = Nat::from(10u32).pow(600);
    let scale = Nat::from(10u32).pow(599);
    let mut rng = crate::sampler::worker_rng(11, 3);
    let draws = 20_000;
    let mut counts = [0u64; 10];
    for _ in 0..draws {
        let d = (uniform_below(&bound, &mut rng).unwrap() / &scale)
            .to_usize()
            .unwrap();
        counts[d] += 1;
    }
    let expected = draws as f64 / 10.0;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    // 9 degrees of freedom; 0.999 quantile is 27.88.
    assert!(chi2 < 27.88, "chi2={chi2} counts={counts:?}");
    assert!(counts.iter().all(|c| !c.is_zero()));
}
