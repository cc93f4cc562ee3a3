//! Monte Carlo runner and CSV emitters: schema stability, reproducibility,
//! and statistical agreement with the exact expectations.

use dualpivot::cost::{expected_total_cost, scale_by_n_ln_n};
use dualpivot::exact::to_f64;
use dualpivot::experiment::{
    run_trials, summarize, write_distribution_csv, write_exact_csv, write_paths_csv,
    write_simulate_csv, ExperimentConfig,
};
use dualpivot::{Rational, StrategyKind};

fn text_of(bytes: Vec<u8>) -> String {
    String::from_utf8(bytes).expect("CSV output is UTF-8")
}

#[test]
fn simulate_csv_is_byte_identical_across_runs() {
    let config = ExperimentConfig {
        strategy: StrategyKind::Count,
        sizes: vec![64, 256],
        trials: 64,
        seed: 1234,
    };
    let mut first = Vec::new();
    write_simulate_csv(&config, &mut first).unwrap();
    let mut second = Vec::new();
    write_simulate_csv(&config, &mut second).unwrap();
    assert_eq!(first, second, "identical config and seed must give identical bytes");

    let mut reseeded = Vec::new();
    let other = ExperimentConfig { seed: 1235, ..config };
    write_simulate_csv(&other, &mut reseeded).unwrap();
    assert_ne!(first, reseeded, "a different seed must change the stream");
}

#[test]
fn simulate_csv_columns_are_self_consistent() {
    let config = ExperimentConfig {
        strategy: StrategyKind::Clairvoyant,
        sizes: vec![128],
        trials: 50,
        seed: 9,
    };
    let mut buf = Vec::new();
    write_simulate_csv(&config, &mut buf).unwrap();
    let text = text_of(buf);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,trial,comparisons,scaled,se_scaled"));
    let mut scaled_values = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 5, "row {i} has 5 fields");
        assert_eq!(fields[0], "128");
        if fields[1] == "summary" {
            let mean: f64 = fields[2].parse().unwrap();
            let mean_scaled: f64 = fields[3].parse().unwrap();
            let se: f64 = fields[4].parse().unwrap();
            let expect_mean =
                scaled_values.iter().map(|&(c, _): &(u64, f64)| c as f64).sum::<f64>()
                    / scaled_values.len() as f64;
            assert!((mean - expect_mean).abs() < 1e-9);
            let expect_scaled = scaled_values.iter().map(|&(_, s)| s).sum::<f64>()
                / scaled_values.len() as f64;
            assert!((mean_scaled - expect_scaled).abs() < 1e-12);
            assert!(se > 0.0);
        } else {
            let trial: u64 = fields[1].parse().unwrap();
            assert_eq!(trial as usize, scaled_values.len(), "trials in order");
            let comparisons: u64 = fields[2].parse().unwrap();
            let scaled: f64 = fields[3].parse().unwrap();
            assert_eq!(scaled, scale_by_n_ln_n(comparisons as f64, 128));
            assert!(fields[4].is_empty(), "per-trial rows leave the SE empty");
            scaled_values.push((comparisons, scaled));
        }
    }
    assert_eq!(scaled_values.len(), 50);
}

#[test]
fn sample_means_sit_within_four_standard_errors() {
    for strategy in StrategyKind::ALL {
        let n = 256u64;
        let rows = run_trials(strategy, n, 300, 2025);
        let summary = summarize(&rows);
        let exact = scale_by_n_ln_n(to_f64(&expected_total_cost(strategy, n)), n);
        assert!(
            (summary.mean_scaled - exact).abs() <= 4.0 * summary.se_scaled,
            "{strategy}: mean {} vs exact {exact} (se {})",
            summary.mean_scaled,
            summary.se_scaled
        );
    }
}

#[test]
fn exact_csv_columns_cross_check() {
    let mut buf = Vec::new();
    write_exact_csv(&StrategyKind::ALL, &[2, 16, 100], &mut buf).unwrap();
    let text = text_of(buf);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,strategy,exact(rational),exact(float),asymptotic(float),residual")
    );
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6);
        let n: u64 = fields[0].parse().unwrap();
        let strategy: StrategyKind = fields[1].parse().unwrap();
        let rational: Rational = fields[2].parse().unwrap();
        assert_eq!(rational, expected_total_cost(strategy, n));
        let float: f64 = fields[3].parse().unwrap();
        assert!((float - to_f64(&rational)).abs() <= 1e-12 * float.max(1.0));
        let asymptotic: f64 = fields[4].parse().unwrap();
        let residual: f64 = fields[5].parse().unwrap();
        assert!(residual >= 0.0);
        // the residual column is the exact |exact - asymptotic|, so it should
        // be consistent with the two float columns up to their own rounding
        assert!((float - asymptotic).abs() <= residual + 1e-9 * float.max(1.0));
    }
}

#[test]
fn paths_csv_degenerate_length_has_unit_zero_counts() {
    let mut buf = Vec::new();
    write_paths_csv(0, 5, 3, true, &mut buf).unwrap();
    let text = text_of(buf);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,trial,zeros,up_to_zero,down_from_zero,path"));
    for trial in 0..5 {
        assert_eq!(lines.next(), Some(format!("0,{trial},1,0,0,0").as_str()));
    }
    assert_eq!(lines.next(), Some("0,expected,1,0,0,"));
    assert_eq!(lines.next(), Some("0,enumerated,1,0,0,"));
    assert_eq!(lines.next(), None);
}

#[test]
fn paths_csv_sampled_tallies_match_their_paths() {
    use dualpivot::lattice::ENUMERATION_CAP;
    let mut buf = Vec::new();
    write_paths_csv(12, 40, 11, false, &mut buf).unwrap();
    let text = text_of(buf);
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields[1] == "expected" {
            continue;
        }
        let zeros: u64 = fields[2].parse().unwrap();
        // re-derive the tally from the serialized path
        let path = fields[5];
        let (start, steps) = path.split_once(' ').unwrap_or((path, ""));
        let mut h: i64 = start.parse().unwrap();
        let mut count = u64::from(h == 0);
        for step in steps.bytes() {
            h += if step == b'U' { 1 } else { -1 };
            count += u64::from(h == 0);
        }
        assert_eq!(h, 0, "path must end at zero");
        assert_eq!(count, zeros, "zeros column matches the path");
    }
    // the exhaustive flag refuses beyond the enumeration cap
    let mut refuse = Vec::new();
    assert!(write_paths_csv(ENUMERATION_CAP + 1, 1, 0, true, &mut refuse).is_err());
}

#[test]
fn distribution_csv_is_complete_and_normalized() {
    let mut buf = Vec::new();
    write_distribution_csv(14, None, &mut buf).unwrap();
    let text = text_of(buf);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,r,probability(rational),probability(float)");
    // rows r = 0 ..= n/2 + 1
    assert_eq!(lines.len(), 1 + (14 / 2 + 2));
    let total: Rational = lines[1..]
        .iter()
        .map(|line| line.split(',').nth(2).unwrap().parse::<Rational>().unwrap())
        .sum();
    assert_eq!(total, dualpivot::exact::rat(1));
}
