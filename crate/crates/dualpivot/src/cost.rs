//! Dual-pivot quicksort, its cost recurrence, and total-cost formulas.
//!
//! The sorter takes the first and last elements of each (sub)input as pivots,
//! orders them with one counted comparison, classifies the rest with the
//! chosen strategy, and recurses on the three groups with their relative
//! order preserved (stable partition), so sub-inputs of a random input remain
//! random. The expected comparison total obeys
//!
//! `E{C_n} = E{P_n} + 3/C(n,2) * sum_{k=1}^{n-2} (n-1-k) E{C_k}`
//!
//! which [`solve_recurrence`] solves exactly; [`expected_total_cost`] is the
//! closed-form solution, and [`asymptotic_total_cost`] its expansion
//! `9/5 n ln n + A n + B ln n + C + D/n + E/n^2 + (F [n even] + G)/n^3`.

use num_bigint::BigInt;

use crate::classify::{classify_core, expected_partition_cost, ClassLabel, StrategyKind};
use crate::exact::{harmonic, harmonic_alt, rat, ratio, to_f64, Rational};
use crate::precision::{
    gamma, harmonic_alt_f64, harmonic_alt_fixed, harmonic_f64, harmonic_fixed, ln_2, ln_u64,
    Fixed, GAMMA_F64,
};
use crate::{Error, Result};

/// Output and comparison count of one sort.
#[derive(Clone, Debug)]
pub struct SortReport<T> {
    pub output: Vec<T>,
    pub comparisons: u64,
}

/// Sorts by dual-pivot quicksort with the given first-pivot strategy and
/// counts every key comparison (pivot ordering plus classification, across
/// all recursive calls). Inputs of length <= 1 cost nothing. Duplicate keys
/// are permitted: elements equal to a pivot classify as Medium, and the
/// output is always a sorted permutation of the input.
pub fn dual_pivot_sort<T: Ord>(input: Vec<T>, strategy: StrategyKind) -> SortReport<T> {
    let mut comparisons = 0;
    let output = sort_recursive(input, strategy, &mut comparisons);
    SortReport { output, comparisons }
}

fn sort_recursive<T: Ord>(input: Vec<T>, strategy: StrategyKind, comparisons: &mut u64) -> Vec<T> {
    if input.len() <= 1 {
        return input;
    }
    let mut iter = input.into_iter();
    let first = iter.next().expect("len >= 2");
    let mut rest: Vec<T> = iter.collect();
    let last = rest.pop().expect("len >= 2");
    *comparisons += 1;
    let (p, q) = if first <= last { (first, last) } else { (last, first) };
    let run = classify_core(&rest, &p, &q, strategy);
    *comparisons += run.cost.total();
    let mut small = Vec::with_capacity(run.small_count as usize);
    let mut medium = Vec::new();
    let mut large = Vec::with_capacity(run.large_count as usize);
    for (x, label) in rest.into_iter().zip(run.labels) {
        match label {
            ClassLabel::Small => small.push(x),
            ClassLabel::Medium => medium.push(x),
            ClassLabel::Large => large.push(x),
        }
    }
    let mut output = sort_recursive(small, strategy, comparisons);
    output.push(p);
    output.extend(sort_recursive(medium, strategy, comparisons));
    output.push(q);
    output.extend(sort_recursive(large, strategy, comparisons));
    output
}

/// Exact expected total costs for `0..=n_max`, indexed by input length.
#[derive(Clone, Debug)]
pub struct CostTable {
    values: Vec<Rational>,
}

impl CostTable {
    pub fn get(&self, n: u64) -> &Rational {
        &self.values[usize::try_from(n).expect("table index")]
    }

    pub fn max_n(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Solves the total-cost recurrence by dynamic programming with prefix sums
/// (`O(n_max)` rational operations): `values[0] = values[1] = 0` and
///
/// `values[n] = partition_cost(n) + 3/C(n,2) * ((n-1) S0 - S1)`
///
/// where `S0 = sum E{C_k}` and `S1 = sum k E{C_k}` over `k <= n-2`.
pub fn solve_recurrence(partition_cost: impl Fn(u64) -> Rational, n_max: u64) -> CostTable {
    let mut values = vec![rat(0), rat(0)];
    values.truncate(n_max as usize + 1);
    let mut s0 = rat(0);
    let mut s1 = rat(0);
    for n in 2..=n_max {
        let prev = &values[n as usize - 2];
        s0 += prev;
        s1 += prev * rat(n as i64 - 2);
        let pairs = BigInt::from(n) * BigInt::from(n - 1) / BigInt::from(2);
        let weighted = &s0 * rat(n as i64 - 1) - &s1;
        values.push(partition_cost(n) + Rational::new(BigInt::from(3), pairs) * weighted);
    }
    CostTable { values }
}

/// The parity-dependent tail `r_n` of both total-cost theorems:
/// `[n even]/320 (1/(n-3) + 3/(n-1)) - [n odd]/320 (3/(n-2) + 1/n)`.
/// Only meaningful for `n >= 4`; the even branch is singular at `n <= 3`.
pub fn theorem_tail(n: u64) -> Rational {
    let n = n as i64;
    if n % 2 == 0 {
        (ratio(1, n - 3) + ratio(3, n - 1)) / rat(320)
    } else {
        -(ratio(3, n - 2) + ratio(1, n)) / rat(320)
    }
}

/// Exact expected comparisons to sort `n` uniformly random distinct keys.
///
/// For `n >= 4` this is the closed-form theorem value,
///
/// * Clairvoyant: `9/5 n H_n + 1/5 n H^alt_n - 89/25 n + 77/40 H_n
///   + 3/40 H^alt_n + 67/800 - (-1)^n/10 + r_n`,
/// * Count: `9/5 n H_n - 1/5 n H^alt_n - 89/25 n + 67/40 H_n
///   - 3/40 H^alt_n - 83/800 + (-1)^n/10 - r_n`;
///
/// for `n < 4` (where the `r_n` denominators degenerate) it delegates to the
/// recurrence, whose weighted sum vanishes there.
pub fn expected_total_cost(strategy: StrategyKind, n: u64) -> Rational {
    if n < 4 {
        let table = solve_recurrence(
            |k| expected_partition_cost(strategy, k).expect("recurrence queries k >= 2"),
            n,
        );
        return table.get(n).clone();
    }
    let h = harmonic(n);
    let h_alt = harmonic_alt(n);
    let n_rat = rat(n as i64);
    let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
    match strategy {
        StrategyKind::Clairvoyant => {
            ratio(9, 5) * &n_rat * &h
                + ratio(1, 5) * &n_rat * &h_alt
                - ratio(89, 25) * &n_rat
                + ratio(77, 40) * &h
                + ratio(3, 40) * &h_alt
                + ratio(67, 800)
                - sign / rat(10)
                + theorem_tail(n)
        }
        StrategyKind::Count => {
            ratio(9, 5) * &n_rat * &h
                - ratio(1, 5) * &n_rat * &h_alt
                - ratio(89, 25) * &n_rat
                + ratio(67, 40) * &h
                - ratio(3, 40) * &h_alt
                - ratio(83, 800)
                + sign / rat(10)
                - theorem_tail(n)
        }
    }
}

/// Floating-point evaluation of [`expected_total_cost`] using compensated
/// harmonic summation; relative error stays well below `1e-12` even at
/// `n = 10^6`, while exact rational evaluation is only practical for
/// `n <= 10^4` (bignum sizes grow linearly in `n`).
pub fn expected_total_cost_float(strategy: StrategyKind, n: u64) -> f64 {
    if n < 4 {
        return to_f64(&expected_total_cost(strategy, n));
    }
    let h = harmonic_f64(n);
    let h_alt = harmonic_alt_f64(n);
    let x = n as f64;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let tail = to_f64(&theorem_tail(n));
    match strategy {
        StrategyKind::Clairvoyant => {
            1.8 * x * h + 0.2 * x * h_alt - 3.56 * x + 77.0 / 40.0 * h + 3.0 / 40.0 * h_alt
                + 67.0 / 800.0
                - sign / 10.0
                + tail
        }
        StrategyKind::Count => {
            1.8 * x * h - 0.2 * x * h_alt - 3.56 * x + 67.0 / 40.0 * h - 3.0 / 40.0 * h_alt
                - 83.0 / 800.0
                + sign / 10.0
                - tail
        }
    }
}

/// [`expected_total_cost`] on the 192-bit fixed-point grid (exact harmonic
/// sums on that grid), for residual checks beyond `f64` resolution.
pub fn expected_total_cost_fixed(strategy: StrategyKind, n: u64) -> Fixed {
    if n < 4 {
        return Fixed::from_rational(&expected_total_cost(strategy, n));
    }
    let h = harmonic_fixed(n);
    let h_alt = harmonic_alt_fixed(n);
    let big_n = BigInt::from(n);
    let n_h = h.mul_bigint(&big_n);
    let n_h_alt = h_alt.mul_bigint(&big_n);
    let sign: i64 = if n % 2 == 0 { 1 } else { -1 };
    let mut value = n_h.mul_frac(9, 5);
    match strategy {
        StrategyKind::Clairvoyant => {
            value = &value + &n_h_alt.mul_frac(1, 5);
            value = &value - &Fixed::from_u64(n).mul_frac(89, 25);
            value = &value + &h.mul_frac(77, 40);
            value = &value + &h_alt.mul_frac(3, 40);
            value = &value + &Fixed::from_rational(&(ratio(67, 800) - ratio(sign, 10) + theorem_tail(n)));
        }
        StrategyKind::Count => {
            value = &value - &n_h_alt.mul_frac(1, 5);
            value = &value - &Fixed::from_u64(n).mul_frac(89, 25);
            value = &value + &h.mul_frac(67, 40);
            value = &value - &h_alt.mul_frac(3, 40);
            value = &value + &Fixed::from_rational(&(ratio(-83, 800) + ratio(sign, 10) - theorem_tail(n)));
        }
    }
    value
}

/// The asymptotic-expansion constants of one strategy, with `A` and `C`
/// split into their exact rational and transcendental parts so the `f64`
/// and fixed-point evaluations share one definition.
struct ExpansionParts {
    a_gamma: Rational,
    a_ln2: Rational,
    a_const: Rational,
    b: Rational,
    c_gamma: Rational,
    c_ln2: Rational,
    c_const: Rational,
    d: Rational,
    e: Rational,
    f_even: Rational,
    g: Rational,
}

fn expansion_parts(strategy: StrategyKind) -> ExpansionParts {
    match strategy {
        StrategyKind::Clairvoyant => ExpansionParts {
            a_gamma: ratio(9, 5),
            a_ln2: ratio(-1, 5),
            a_const: ratio(-89, 25),
            b: ratio(77, 40),
            c_gamma: ratio(77, 40),
            c_ln2: ratio(-3, 40),
            c_const: ratio(787, 800),
            d: ratio(13, 16),
            e: ratio(-77, 480),
            f_even: ratio(1, 8),
            g: ratio(-19, 400),
        },
        StrategyKind::Count => ExpansionParts {
            a_gamma: ratio(9, 5),
            a_ln2: ratio(1, 5),
            a_const: ratio(-89, 25),
            b: ratio(67, 40),
            c_gamma: ratio(67, 40),
            c_ln2: ratio(3, 40),
            c_const: ratio(637, 800),
            d: ratio(11, 16),
            e: ratio(-67, 480),
            f_even: ratio(-1, 8),
            g: ratio(31, 400),
        },
    }
}

/// The constants `A..G` of `9/5 n ln n + A n + B ln n + C + D/n + E/n^2 +
/// (F [n even] + G)/n^3` as `f64` values.
#[derive(Clone, Copy, Debug)]
pub struct AsymptoticConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f_even: f64,
    pub g: f64,
}

pub fn asymptotic_constants(strategy: StrategyKind) -> AsymptoticConstants {
    let parts = expansion_parts(strategy);
    let ln2 = std::f64::consts::LN_2;
    AsymptoticConstants {
        a: to_f64(&parts.a_gamma) * GAMMA_F64 + to_f64(&parts.a_ln2) * ln2 + to_f64(&parts.a_const),
        b: to_f64(&parts.b),
        c: to_f64(&parts.c_gamma) * GAMMA_F64 + to_f64(&parts.c_ln2) * ln2 + to_f64(&parts.c_const),
        d: to_f64(&parts.d),
        e: to_f64(&parts.e),
        f_even: to_f64(&parts.f_even),
        g: to_f64(&parts.g),
    }
}

/// Asymptotic expected total cost through the `1/n^3` term.
pub fn asymptotic_total_cost(strategy: StrategyKind, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("asymptotic total cost needs n >= 2, got {n}")));
    }
    let k = asymptotic_constants(strategy);
    let x = n as f64;
    let even = if n % 2 == 0 { 1.0 } else { 0.0 };
    Ok(1.8 * x * x.ln()
        + k.a * x
        + k.b * x.ln()
        + k.c
        + k.d / x
        + k.e / (x * x)
        + (k.f_even * even + k.g) / (x * x * x))
}

/// [`asymptotic_total_cost`] on the 192-bit fixed-point grid.
pub fn asymptotic_total_cost_fixed(strategy: StrategyKind, n: u64) -> Fixed {
    assert!(n >= 2, "asymptotic total cost needs n >= 2");
    let parts = expansion_parts(strategy);
    let ln_n = ln_u64(n);
    let even = n % 2 == 0;
    let a = &(&gamma().mul_rational(&parts.a_gamma) + &ln_2().mul_rational(&parts.a_ln2))
        + &Fixed::from_rational(&parts.a_const);
    let c = &(&gamma().mul_rational(&parts.c_gamma) + &ln_2().mul_rational(&parts.c_ln2))
        + &Fixed::from_rational(&parts.c_const);
    let big_n = BigInt::from(n);
    let mut value = ln_n.mul_bigint(&big_n).mul_frac(9, 5);
    value = &value + &a.mul_bigint(&big_n);
    value = &value + &ln_n.mul_rational(&parts.b);
    value = &value + &c;
    value = &value + &Fixed::from_rational(&parts.d).div_u64_pow(n, 1);
    value = &value + &Fixed::from_rational(&parts.e).div_u64_pow(n, 2);
    let cubic = if even { &parts.f_even + &parts.g } else { parts.g.clone() };
    &value + &Fixed::from_rational(&cubic).div_u64_pow(n, 3)
}

/// `value / (n ln n)`, the scaling that makes costs comparable across sizes.
pub fn scale_by_n_ln_n(value: f64, n: u64) -> f64 {
    value / (n as f64 * (n as f64).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_trivial_inputs() {
        let empty: Vec<u32> = vec![];
        let report = dual_pivot_sort(empty, StrategyKind::Count);
        assert_eq!(report.comparisons, 0);
        assert!(report.output.is_empty());

        let report = dual_pivot_sort(vec![7], StrategyKind::Clairvoyant);
        assert_eq!((report.output, report.comparisons), (vec![7], 0));

        let report = dual_pivot_sort(vec![2, 1], StrategyKind::Clairvoyant);
        assert_eq!((report.output, report.comparisons), (vec![1, 2], 1));
    }

    #[test]
    fn sorting_handles_duplicates() {
        let input = vec![3, 1, 3, 2, 3, 1, 1, 2, 3];
        let mut expected = input.clone();
        expected.sort();
        let report = dual_pivot_sort(input, StrategyKind::Count);
        assert_eq!(report.output, expected);
    }

    #[test]
    fn recurrence_base_values() {
        let zero_costs = solve_recurrence(|_| rat(0), 10);
        assert!(zero_costs.values().iter().all(|v| *v == rat(0)));

        let table = solve_recurrence(
            |n| expected_partition_cost(StrategyKind::Clairvoyant, n).unwrap(),
            3,
        );
        assert_eq!(*table.get(0), rat(0));
        assert_eq!(*table.get(1), rat(0));
        assert_eq!(*table.get(2), rat(1));
        assert_eq!(*table.get(3), ratio(7, 3));
    }

    #[test]
    fn total_cost_small_values() {
        assert_eq!(expected_total_cost(StrategyKind::Clairvoyant, 0), rat(0));
        assert_eq!(expected_total_cost(StrategyKind::Clairvoyant, 1), rat(0));
        assert_eq!(expected_total_cost(StrategyKind::Clairvoyant, 2), rat(1));
        assert_eq!(expected_total_cost(StrategyKind::Clairvoyant, 3), ratio(7, 3));
        assert_eq!(expected_total_cost(StrategyKind::Count, 2), rat(1));
        assert_eq!(expected_total_cost(StrategyKind::Count, 3), ratio(8, 3));
        // n = 4 exercises the theorem branch.
        assert_eq!(expected_total_cost(StrategyKind::Clairvoyant, 4), ratio(17, 4));
        assert_eq!(expected_total_cost(StrategyKind::Count, 4), ratio(19, 4));
    }

    #[test]
    fn float_path_matches_rational_path() {
        for strategy in StrategyKind::ALL {
            for n in [2u64, 3, 7, 10, 100, 1000] {
                let exact = to_f64(&expected_total_cost(strategy, n));
                let float = expected_total_cost_float(strategy, n);
                let rel = ((float - exact) / exact).abs();
                assert!(rel < 1e-12, "{strategy} n={n}: rel error {rel}");
            }
        }
    }

    #[test]
    fn asymptotic_b_constants_are_exact() {
        assert_eq!(asymptotic_constants(StrategyKind::Clairvoyant).b, 77.0 / 40.0);
        assert_eq!(asymptotic_constants(StrategyKind::Count).b, 67.0 / 40.0);
        assert!(asymptotic_total_cost(StrategyKind::Count, 1).is_err());
    }

    #[test]
    fn fixed_paths_match_f64_paths() {
        for strategy in StrategyKind::ALL {
            let exact64 = expected_total_cost_float(strategy, 5000);
            let fixed = expected_total_cost_fixed(strategy, 5000).to_f64();
            assert!(((exact64 - fixed) / fixed).abs() < 1e-12);
            let asy64 = asymptotic_total_cost(strategy, 5000).unwrap();
            let asy_fixed = asymptotic_total_cost_fixed(strategy, 5000).to_f64();
            assert!(((asy64 - asy_fixed) / asy_fixed).abs() < 1e-12);
        }
    }
}
