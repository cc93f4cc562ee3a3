//! Seeded Monte Carlo experiments and the CSV emitters behind the CLI.
//!
//! Reproducibility contract: every trial derives its own [`ChaCha12Rng`] seed
//! from `(master_seed, n, trial)` via a splitmix64 chain, so results are
//! independent of thread scheduling and identical across runs and platforms.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::classify::StrategyKind;
use crate::cost::{
    asymptotic_total_cost, asymptotic_total_cost_fixed, dual_pivot_sort, expected_total_cost,
    expected_total_cost_fixed, expected_total_cost_float, scale_by_n_ln_n,
};
use crate::exact::to_f64;
use crate::lattice::{
    enumerate_paths, expected_down_from_zero, expected_up_to_zero, expected_zeros_closed,
    sample_path, tally_zeros, zero_distribution,
};
use crate::{Error, Result};

/// Default number of Monte Carlo trials per input size.
pub const DEFAULT_TRIALS: u64 = 400;

/// Largest `n` for which the exact-cost CSV includes the full rational value.
/// Beyond this the numerator alone runs to megabytes; the float and residual
/// columns stay exact-backed at every size.
pub const RATIONAL_COST_CAP: u64 = 10_000;

/// Standard size grid: powers of two from 2^11 up to 2^20, or up to 2^28 when
/// `full_grid` is set (the large sizes are opt-in purely for wall-clock reasons).
pub fn default_sizes(full_grid: bool) -> Vec<u64> {
    let top = if full_grid { 28 } else { 20 };
    (11..=top).map(|k| 1u64 << k).collect()
}

/// Parameters of one simulation run.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub strategy: StrategyKind,
    pub sizes: Vec<u64>,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Argument("trials must be at least 1".into()));
        }
        if self.sizes.is_empty() {
            return Err(Error::Argument("at least one input size is required".into()));
        }
        if let Some(&n) = self.sizes.iter().find(|&&n| n < 2) {
            return Err(Error::Argument(format!(
                "input sizes must be at least 2, got {n}"
            )));
        }
        Ok(())
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the per-trial stream seed from the master seed and trial coordinates.
pub fn derive_seed(master: u64, n: u64, trial: u64) -> u64 {
    let mut state = master;
    let mut out = splitmix64(&mut state);
    state ^= n;
    out ^= splitmix64(&mut state);
    state ^= trial;
    out ^ splitmix64(&mut state)
}

/// Uniformly random permutation of `1..=n`.
pub fn random_permutation<R: Rng + ?Sized>(n: u64, rng: &mut R) -> Vec<u64> {
    let mut keys: Vec<u64> = (1..=n).collect();
    keys.shuffle(rng);
    keys
}

/// One sorted input: total comparison count plus its `n ln n` scaling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialRow {
    pub n: u64,
    pub trial: u64,
    pub comparisons: u64,
    pub scaled: f64,
}

/// Per-size aggregate over all trials.
#[derive(Clone, Copy, Debug)]
pub struct SizeSummary {
    pub n: u64,
    pub trials: u64,
    pub mean_comparisons: f64,
    pub mean_scaled: f64,
    /// Standard error of the scaled mean (sample standard deviation / sqrt(trials)).
    pub se_scaled: f64,
}

/// Sort `trials` random permutations of size `n`, counting comparisons.
/// Every output is checked to be exactly `1..=n`; rows come back in trial order.
pub fn run_trials(strategy: StrategyKind, n: u64, trials: u64, master_seed: u64) -> Vec<TrialRow> {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(master_seed, n, trial));
            let input = random_permutation(n, &mut rng);
            let report = dual_pivot_sort(input, strategy);
            assert!(
                report.output.iter().zip(1..=n).all(|(&k, want)| k == want),
                "sorter produced an unsorted output (strategy {strategy}, n {n}, trial {trial})"
            );
            TrialRow {
                n,
                trial,
                comparisons: report.comparisons,
                scaled: scale_by_n_ln_n(report.comparisons as f64, n),
            }
        })
        .collect()
}

/// Aggregate trial rows for a single size.
pub fn summarize(rows: &[TrialRow]) -> SizeSummary {
    assert!(!rows.is_empty(), "summarize requires at least one trial");
    let n = rows[0].n;
    let trials = rows.len() as u64;
    let tf = trials as f64;
    let mean_comparisons = rows.iter().map(|r| r.comparisons as f64).sum::<f64>() / tf;
    let mean_scaled = rows.iter().map(|r| r.scaled).sum::<f64>() / tf;
    let se_scaled = if trials > 1 {
        let var = rows
            .iter()
            .map(|r| (r.scaled - mean_scaled).powi(2))
            .sum::<f64>()
            / (tf - 1.0);
        (var / tf).sqrt()
    } else {
        0.0
    };
    SizeSummary {
        n,
        trials,
        mean_comparisons,
        mean_scaled,
        se_scaled,
    }
}

/// Emit the simulation CSV: one row per trial, then one `summary` row per size.
///
/// Schema: `n,trial,comparisons,scaled,se_scaled` — the standard-error column
/// is only populated on summary rows.
pub fn write_simulate_csv<W: Write + ?Sized>(config: &ExperimentConfig, out: &mut W) -> Result<()> {
    config.validate()?;
    writeln!(out, "n,trial,comparisons,scaled,se_scaled")?;
    for &n in &config.sizes {
        let rows = run_trials(config.strategy, n, config.trials, config.seed);
        for row in &rows {
            writeln!(out, "{},{},{},{},", row.n, row.trial, row.comparisons, row.scaled)?;
        }
        let s = summarize(&rows);
        writeln!(
            out,
            "{},summary,{},{},{}",
            s.n, s.mean_comparisons, s.mean_scaled, s.se_scaled
        )?;
    }
    Ok(())
}

/// Emit the exact-cost CSV for the given strategies and sizes.
///
/// Schema: `n,strategy,exact(rational),exact(float),asymptotic(float),residual`.
/// The rational column is left empty above [`RATIONAL_COST_CAP`]; the residual
/// `|exact - asymptotic|` is evaluated in 192-bit fixed point so it stays
/// meaningful (~n^-4) far below f64 resolution of the values themselves.
pub fn write_exact_csv<W: Write + ?Sized>(
    strategies: &[StrategyKind],
    sizes: &[u64],
    out: &mut W,
) -> Result<()> {
    writeln!(
        out,
        "n,strategy,exact(rational),exact(float),asymptotic(float),residual"
    )?;
    for &n in sizes {
        for &strategy in strategies {
            let rational = if n <= RATIONAL_COST_CAP {
                expected_total_cost(strategy, n).to_string()
            } else {
                String::new()
            };
            let exact_float = expected_total_cost_float(strategy, n);
            let (asy, residual) = if n >= 2 {
                let asy = asymptotic_total_cost(strategy, n)?;
                let diff = &expected_total_cost_fixed(strategy, n)
                    - &asymptotic_total_cost_fixed(strategy, n);
                (asy.to_string(), diff.abs().to_f64().to_string())
            } else {
                (String::new(), String::new())
            };
            writeln!(
                out,
                "{},{},{},{},{},{}",
                n, strategy, rational, exact_float, asy, residual
            )?;
        }
    }
    Ok(())
}

/// Emit the lattice-path CSV: sampled paths with their zero statistics, the
/// closed-form expectations, and (optionally) the exhaustive-enumeration means.
///
/// Schema: `n,trial,zeros,up_to_zero,down_from_zero,path`; the expectation rows
/// use `expected` / `enumerated` in the trial column and leave the path empty.
pub fn write_paths_csv<W: Write + ?Sized>(
    n: u64,
    trials: u64,
    seed: u64,
    exhaustive: bool,
    out: &mut W,
) -> Result<()> {
    writeln!(out, "n,trial,zeros,up_to_zero,down_from_zero,path")?;
    let rows: Vec<(u64, crate::lattice::ZeroTally, String)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, n, trial));
            let path = sample_path(n, &mut rng);
            let tally = tally_zeros(&path);
            (trial, tally, path.to_string())
        })
        .collect();
    for (trial, tally, path) in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            n, trial, tally.zeros, tally.up_to_zero, tally.down_from_zero, path
        )?;
    }
    writeln!(
        out,
        "{},expected,{},{},{},",
        n,
        expected_zeros_closed(n),
        expected_up_to_zero(n),
        expected_down_from_zero(n)
    )?;
    if exhaustive {
        let mut zeros = crate::exact::rat(0);
        let mut up = crate::exact::rat(0);
        let mut down = crate::exact::rat(0);
        for (path, prob) in enumerate_paths(n)? {
            let tally = tally_zeros(&path);
            zeros += &prob * crate::exact::rat(tally.zeros as i64);
            up += &prob * crate::exact::rat(tally.up_to_zero as i64);
            down += prob * crate::exact::rat(tally.down_from_zero as i64);
        }
        writeln!(out, "{},enumerated,{},{},{},", n, zeros, up, down)?;
    }
    Ok(())
}

/// Emit the zero-count distribution CSV for one path length.
///
/// Schema: `n,r,probability(rational),probability(float)`; rows run from
/// `r = 0` through the largest feasible count (or `max_r` when given).
pub fn write_distribution_csv<W: Write + ?Sized>(n: u64, max_r: Option<u64>, out: &mut W) -> Result<()> {
    writeln!(out, "n,r,probability(rational),probability(float)")?;
    let top = max_r.unwrap_or(n / 2 + 1);
    for r in 0..=top {
        let p = zero_distribution(n, r);
        writeln!(out, "{},{},{},{}", n, r, p, to_f64(&p))?;
    }
    Ok(())
}
