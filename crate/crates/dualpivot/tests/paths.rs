//! Lattice-path model: enumeration oracles for the closed forms, sampling
//! statistics, the zero-count distribution, and its high-precision asymptotics.

use dualpivot::exact::{rat, ratio, to_f64, Rational};
use dualpivot::lattice::{
    enumerate_paths, expected_down_from_zero, expected_up_to_zero, expected_zeros_asymptotic,
    expected_zeros_asymptotic_fixed, expected_zeros_closed, expected_zeros_double_sum,
    expected_zeros_double_sum_simple, expected_zeros_fixed, expected_zeros_quicksort_sum,
    point_probability, sample_path, tally_zeros, zero_distribution,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

#[test]
fn four_expected_zero_expressions_agree() {
    for n in 0..=200 {
        let closed = expected_zeros_closed(n);
        assert_eq!(closed, expected_zeros_double_sum(n), "gf double sum, n = {n}");
        assert_eq!(closed, expected_zeros_double_sum_simple(n), "direct sum, n = {n}");
        assert_eq!(closed, expected_zeros_quicksort_sum(n), "quicksort sum, n = {n}");
    }
}

#[test]
fn enumeration_reproduces_all_expectations() {
    for n in 0..=14u64 {
        let mut mass = vec![rat(0); (n / 2 + 2) as usize];
        let mut zeros = rat(0);
        let mut up = rat(0);
        let mut down = rat(0);
        let mut total = rat(0);
        let mut count = 0u64;
        for (path, prob) in enumerate_paths(n).unwrap() {
            let t = tally_zeros(&path);
            mass[t.zeros as usize] += &prob;
            zeros += &prob * rat(t.zeros as i64);
            up += &prob * rat(t.up_to_zero as i64);
            down += &prob * rat(t.down_from_zero as i64);
            total += prob;
            count += 1;
        }
        assert_eq!(count, 1 << n, "path count, n = {n}");
        assert_eq!(total, rat(1), "probability mass, n = {n}");
        assert_eq!(zeros, expected_zeros_closed(n), "zeros mean, n = {n}");
        assert_eq!(up, expected_up_to_zero(n), "up mean, n = {n}");
        assert_eq!(down, expected_down_from_zero(n), "down mean, n = {n}");
        for (r, observed) in mass.iter().enumerate() {
            assert_eq!(
                zero_distribution(n, r as u64),
                observed.clone(),
                "distribution at n = {n}, r = {r}"
            );
        }
        // infeasible counts get zero probability
        for r in (n / 2 + 2)..=(n / 2 + 5) {
            assert_eq!(zero_distribution(n, r), rat(0));
        }
        let sum: Rational = (0..=n / 2 + 1).map(|r| zero_distribution(n, r)).sum();
        assert_eq!(sum, rat(1), "distribution sums to 1, n = {n}");
    }
}

#[test]
fn pass_through_probability_is_uniform() {
    // P{path of length n runs through (n-m, k)} = 1/(m+1) whenever feasible.
    for n in 0..=12u64 {
        let heights_and_probs: Vec<(Vec<i64>, Rational)> = enumerate_paths(n)
            .unwrap()
            .map(|(path, prob)| (path.heights(), prob))
            .collect();
        for m in 0..=n {
            let x = (n - m) as usize;
            for k in -(m as i64 + 2)..=(m as i64 + 2) {
                let mut observed = rat(0);
                for (heights, prob) in &heights_and_probs {
                    if heights[x] == k {
                        observed += prob;
                    }
                }
                let feasible = k.unsigned_abs() <= m && (k + m as i64) % 2 == 0;
                let predicted = point_probability(n, m, k);
                assert_eq!(
                    predicted,
                    if feasible { ratio(1, m as i64 + 1) } else { rat(0) },
                    "closed form at n = {n}, m = {m}, k = {k}"
                );
                assert_eq!(predicted, observed, "enumeration at n = {n}, m = {m}, k = {k}");
            }
        }
        // beyond the path there is no point to pass through
        assert_eq!(point_probability(n, n + 1, 0), rat(0));
    }
}

#[test]
fn sampled_zero_means_match_closed_form() {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for n in [10u64, 100, 1000] {
        let samples = 100_000u64;
        let mut sum = 0u64;
        let mut sum_sq = 0u64;
        for _ in 0..samples {
            let z = tally_zeros(&sample_path(n, &mut rng)).zeros;
            sum += z;
            sum_sq += z * z;
        }
        let mean = sum as f64 / samples as f64;
        let var = (sum_sq as f64 - samples as f64 * mean * mean) / (samples as f64 - 1.0);
        let se = (var / samples as f64).sqrt();
        let exact = to_f64(&expected_zeros_closed(n));
        assert!(
            (mean - exact).abs() <= 4.0 * se,
            "n = {n}: sample mean {mean} vs exact {exact}, se {se}"
        );
    }
}

#[test]
fn zero_count_limit_law() {
    // As n grows, P{Z_n = r} -> 1/(r(r+1)): check the exact distribution is
    // already within 1e-4 at n = 10^4, and that seeded sampling agrees with
    // the exact distribution within 4 standard errors.
    let n = 10_000u64;
    let samples = 200_000u64;
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    let mut hits = [0u64; 4];
    for _ in 0..samples {
        let z = tally_zeros(&sample_path(n, &mut rng)).zeros;
        if (1..=3).contains(&z) {
            hits[z as usize] += 1;
        }
    }
    for r in 1..=3u64 {
        let exact = to_f64(&zero_distribution(n, r));
        let limit = 1.0 / (r * (r + 1)) as f64;
        assert!(
            (exact - limit).abs() <= 1e-4,
            "r = {r}: exact {exact} vs limit {limit}"
        );
        let freq = hits[r as usize] as f64 / samples as f64;
        let se = (exact * (1.0 - exact) / samples as f64).sqrt();
        assert!(
            (freq - exact).abs() <= 4.0 * se,
            "r = {r}: frequency {freq} vs exact {exact}, se {se}"
        );
    }
}

#[test]
fn zeros_asymptotic_residual_is_fourth_order_free() {
    // |E{Z_n} - expansion| * n^3 stays bounded (the expansion stops at 1/n^2).
    for n in [1_000u64, 10_000, 100_000, 1_000_000] {
        let exact = expected_zeros_fixed(n);
        let asy = expected_zeros_asymptotic_fixed(n);
        let residual = (&exact - &asy).abs().to_f64();
        let scaled = residual * (n as f64).powi(3);
        assert!(scaled <= 4.0, "n = {n}: residual * n^3 = {scaled}");
        // and the f64 expansion agrees with the fixed-point one
        let f = expected_zeros_asymptotic(n).unwrap();
        assert!((f - asy.to_f64()).abs() <= 1e-12 * f.abs());
    }
}

#[test]
fn distribution_value_spot_checks() {
    assert_eq!(zero_distribution(0, 1), rat(1));
    assert_eq!(zero_distribution(4, 3), ratio(2, 15));
    assert_eq!(zero_distribution(5, 1), ratio(3, 5));
    // boundary case n + 2 = 2r: only the zigzag path family contributes
    assert_eq!(zero_distribution(6, 4), ratio(2, 35));
    assert_eq!(zero_distribution(6, 5), rat(0));
}
