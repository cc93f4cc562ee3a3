//! Fixed-length random lattice paths and their zero statistics.
//!
//! The model: pick a start height `S` uniformly from `{-n, -n+2, ..., n}`,
//! then pick a path of `n` steps from `(0, S)` to `(n, 0)` uniformly among all
//! such paths. Equivalently (the urn view, which is how [`sample_path`]
//! works): draw `R` uniformly from `{0..n}`, shuffle a multiset of `R`
//! down-markers and `n - R` up-markers, and start at `s = 2R - n`.
//!
//! The quantity of interest is the number of *zeros* of the path (lattice
//! points on the x-axis, start and end included). Its expectation is
//! `H^odd_{n+1}`, which this module exposes along with two independent
//! double-sum expressions for the same quantity, the per-zero-count
//! distribution, point pass-through probabilities, and the expected counts of
//! up-to-zero and down-from-zero situations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::exact::{harmonic_odd, rat, ratio, Rational};
use crate::precision::{gamma, harmonic_odd_fixed, ln_2, ln_u64, Fixed};
use crate::{Error, Result};

/// One ±1 step of a lattice path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }

    fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }
}

/// A lattice path from `(0, start)` to `(n, 0)` with steps in `{+1, -1}`.
///
/// Ending at height 0 forces `|start| <= n` and `start ≡ n (mod 2)`, so the
/// constructor only needs to check the endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePath {
    start: i64,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(start: i64, steps: Vec<Step>) -> Result<Self> {
        let end = start + steps.iter().map(|s| s.delta()).sum::<i64>();
        if end != 0 {
            return Err(Error::Argument(format!(
                "path from height {start} with {} steps ends at {end}, not 0",
                steps.len()
            )));
        }
        Ok(LatticePath { start, steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// The `n + 1` heights `d_0 = start, d_1, ..., d_n = 0`.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut h = self.start;
        out.push(h);
        for step in &self.steps {
            h += step.delta();
            out.push(h);
        }
        out
    }
}

/// Serializes as the start height followed by a `U`/`D` word, e.g. `2 UDDDD…`;
/// a zero-length path is just its start height.
impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        if !self.steps.is_empty() {
            f.write_str(" ")?;
            for step in &self.steps {
                write!(f, "{}", step.letter())?;
            }
        }
        Ok(())
    }
}

/// Zero statistics of one path.
///
/// `zeros` counts indices `i` with height 0 (both endpoints included when they
/// qualify); `up_to_zero` counts zeros reached from height -1 (`i >= 1`);
/// `down_from_zero` counts zeros left toward height -1 (`i <= n-1`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZeroTally {
    pub zeros: u64,
    pub up_to_zero: u64,
    pub down_from_zero: u64,
}

pub fn tally_zeros(path: &LatticePath) -> ZeroTally {
    let heights = path.heights();
    let mut tally = ZeroTally::default();
    for (i, &h) in heights.iter().enumerate() {
        if h != 0 {
            continue;
        }
        tally.zeros += 1;
        if i > 0 && heights[i - 1] == -1 {
            tally.up_to_zero += 1;
        }
        if i + 1 < heights.len() && heights[i + 1] == -1 {
            tally.down_from_zero += 1;
        }
    }
    debug_assert!(tally.zeros >= 1, "the endpoint (n, 0) is always a zero");
    tally
}

/// Draws one path from the model distribution via the urn equivalence:
/// `R` uniform on `{0..n}` down-markers, Fisher-Yates shuffle, start `2R - n`.
pub fn sample_path<R: Rng + ?Sized>(n: u64, rng: &mut R) -> LatticePath {
    let downs = rng.random_range(0..=n);
    let mut steps = Vec::with_capacity(n as usize);
    steps.resize(downs as usize, Step::Down);
    steps.resize(n as usize, Step::Up);
    steps.shuffle(rng);
    let start = 2 * downs as i64 - n as i64;
    debug_assert_eq!(start + steps.iter().map(|s| s.delta()).sum::<i64>(), 0);
    LatticePath { start, steps }
}

/// Exhaustive enumeration refuses above this length (`(n+1) * 2^n` work).
pub const ENUMERATION_CAP: u64 = 16;

/// Iterator over every feasible path of length `n` paired with its model
/// probability `1 / ((n+1) * C(n, R))`. Start heights ascend (`R` = number of
/// down-steps from 0 to `n`); within a start height the down-step position
/// sets advance in lexicographic order.
pub struct PathEnumerator {
    n: u64,
    downs: u64,
    // Positions of the down-steps for the next path, or None when the current
    // `downs` block is exhausted.
    positions: Option<Vec<usize>>,
    prob: Rational,
}

impl PathEnumerator {
    fn new(n: u64) -> Self {
        let mut e = PathEnumerator {
            n,
            downs: 0,
            positions: None,
            prob: Rational::zero(),
        };
        e.reset_block();
        e
    }

    fn reset_block(&mut self) {
        self.positions = Some((0..self.downs as usize).collect());
        let weight = BigInt::from(self.n + 1) * BigInt::from(crate::exact::binomial(self.n, self.downs as i64));
        self.prob = Rational::new(BigInt::one(), weight);
    }

    fn advance(&mut self) {
        let n = self.n as usize;
        let positions = self.positions.as_mut().expect("advance past end");
        let r = positions.len();
        // Rightmost index that can still move right.
        let mut i = r;
        while i > 0 {
            i -= 1;
            if positions[i] < n - r + i {
                positions[i] += 1;
                for j in i + 1..r {
                    positions[j] = positions[j - 1] + 1;
                }
                return;
            }
        }
        // Block exhausted: next start height.
        if self.downs < self.n {
            self.downs += 1;
            self.reset_block();
        } else {
            self.positions = None;
        }
    }
}

impl Iterator for PathEnumerator {
    type Item = (LatticePath, Rational);

    fn next(&mut self) -> Option<Self::Item> {
        let positions = self.positions.as_ref()?;
        let mut steps = vec![Step::Up; self.n as usize];
        for &p in positions {
            steps[p] = Step::Down;
        }
        let start = 2 * self.downs as i64 - self.n as i64;
        let path = LatticePath { start, steps };
        let prob = self.prob.clone();
        self.advance();
        Some((path, prob))
    }
}

/// Enumerates all paths of length `n` with their probabilities.
pub fn enumerate_paths(n: u64) -> Result<PathEnumerator> {
    if n > ENUMERATION_CAP {
        return Err(Error::Size(format!(
            "path enumeration capped at n = {ENUMERATION_CAP}, got {n}"
        )));
    }
    Ok(PathEnumerator::new(n))
}

/// Expected number of zeros, closed form: `E{Z_n} = H^odd_{n+1}`.
pub fn expected_zeros_closed(n: u64) -> Rational {
    harmonic_odd(n + 1)
}

/// Builds the binomial row `C(n, 0..=top)` by the multiplicative recurrence.
fn binomial_row(n: u64, top: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(top as usize + 1);
    let mut value = BigInt::one();
    row.push(value.clone());
    for j in 0..top {
        value = value * BigInt::from(n - j) / BigInt::from(j + 1);
        row.push(value.clone());
    }
    row
}

/// Expected number of zeros via the generating-function double sum:
///
/// `4/(n+1) * sum_{0 <= k < l < ceil(n/2)} C(n,k)/C(n,l)
///  + [n even] (2^n / C(n, n/2) - 1) / (n+1) + 1`.
///
/// The inner sum over `k` is collapsed with prefix sums, so the whole
/// evaluation is `O(n)` rational operations.
pub fn expected_zeros_double_sum(n: u64) -> Rational {
    let ceil_half = n.div_ceil(2);
    let row = binomial_row(n, ceil_half.saturating_sub(1));
    let mut sum = Rational::zero();
    let mut prefix = BigInt::zero();
    for l in 0..ceil_half {
        if l > 0 {
            prefix += &row[l as usize - 1];
            sum += Rational::new(prefix.clone(), row[l as usize].clone());
        }
    }
    let mut result = sum * ratio(4, n as i64 + 1) + rat(1);
    if n % 2 == 0 {
        let central = BigInt::from(crate::exact::binomial(n, (n / 2) as i64));
        let correction = Rational::new(BigInt::one() << n, central) - rat(1);
        result += correction * ratio(1, n as i64 + 1);
    }
    result
}

/// Expected number of zeros via the single-parity double sum
/// (`fl = floor(n/2)`, `N = 2 fl + 1`):
///
/// `2/(fl+1) * sum_{0 <= k < l <= fl} C(N,k)/C(N,l) + 1`.
pub fn expected_zeros_double_sum_simple(n: u64) -> Rational {
    let fl = n / 2;
    let big_n = 2 * fl + 1;
    let row = binomial_row(big_n, fl);
    let mut sum = Rational::zero();
    let mut prefix = BigInt::zero();
    for l in 0..=fl {
        if l > 0 {
            prefix += &row[l as usize - 1];
            sum += Rational::new(prefix.clone(), row[l as usize].clone());
        }
    }
    sum * ratio(2, fl as i64 + 1) + rat(1)
}

/// Expected number of zeros via the quicksort-shaped double sum:
///
/// `1/(n+1) * sum_{m=0}^{floor(n/2)} sum_{l=m}^{n-m}
///    C(2m, m) C(n-2m, l-m) / C(n, l)`.
pub fn expected_zeros_quicksort_sum(n: u64) -> Rational {
    let fl = n / 2;
    // numerators[l] = sum over m of C(2m, m) * C(n - 2m, l - m).
    let mut numerators = vec![BigInt::zero(); n as usize + 1];
    let mut central = BigInt::one(); // C(2m, m)
    for m in 0..=fl {
        if m > 0 {
            // C(2m, m) = C(2m-2, m-1) * 2(2m-1)/m.
            central = central * BigInt::from(2 * (2 * m - 1)) / BigInt::from(m);
        }
        let inner = binomial_row(n - 2 * m, n - 2 * m);
        for (j, value) in inner.iter().enumerate() {
            numerators[m as usize + j] += &central * value;
        }
    }
    let denominators = binomial_row(n, n);
    let mut sum = Rational::zero();
    for (l, numer) in numerators.into_iter().enumerate() {
        sum += Rational::new(numer, denominators[l].clone());
    }
    sum * ratio(1, n as i64 + 1)
}

/// Probability that a path of positive length `n` has exactly `r` zeros.
///
/// For `n = 0` the single-point path has exactly one zero. For `n >= 1` and
/// `r = 0` the probability is 0 by the side condition (the closed form is
/// singular at `r = 0`, and the endpoint is always a zero); enumeration up to
/// `n = 14` confirms this resolution. Outside `n >= 2r - 2` the probability
/// is 0.
pub fn zero_distribution(n: u64, r: u64) -> Rational {
    if n == 0 {
        return if r == 1 { rat(1) } else { rat(0) };
    }
    if r == 0 || n + 2 < 2 * r {
        return rat(0);
    }
    let ceil_half = n.div_ceil(2);
    let c_top = Rational::new(
        BigInt::from(crate::exact::binomial(ceil_half, r as i64)),
        BigInt::from(crate::exact::binomial(n, r as i64)),
    );
    let bracket = ratio(2 * ceil_half as i64, (r * (r + 1)) as i64)
        + ratio(r as i64 - 1, r as i64 + 1)
        + if n % 2 == 0 {
            ratio(1, r as i64)
        } else {
            rat(0)
        };
    let mut prob = Rational::new(BigInt::one() << r, BigInt::from(n + 1)) * c_top * bracket;
    if n % 2 == 0 {
        let extra = Rational::new(
            (BigInt::one() << (r - 1)) * BigInt::from(r - 1),
            BigInt::from(n + 1) * BigInt::from(r),
        ) * Rational::new(
            BigInt::from(crate::exact::binomial(n / 2, r as i64 - 1)),
            BigInt::from(crate::exact::binomial(n, r as i64)),
        );
        prob += extra;
    }
    prob
}

/// Probability that a path of length `n` passes through the point
/// `(n - m, k)`: exactly `1/(m+1)` whenever the point is feasible
/// (`|k| <= m` and `k ≡ m (mod 2)`), independent of `k`. Points with
/// `m > n` lie left of the origin and get probability 0.
pub fn point_probability(n: u64, m: u64, k: i64) -> Rational {
    if m > n || k.unsigned_abs() > m || (m as i64 - k).rem_euclid(2) != 0 {
        return rat(0);
    }
    ratio(1, m as i64 + 1)
}

/// Expected number of up-to-zero situations: `H^odd_n / 2`.
pub fn expected_up_to_zero(n: u64) -> Rational {
    harmonic_odd(n) / rat(2)
}

/// Expected number of down-from-zero situations: `(H^odd_{n+1} - 1) / 2`.
pub fn expected_down_from_zero(n: u64) -> Rational {
    (harmonic_odd(n + 1) - rat(1)) / rat(2)
}

/// Asymptotic expansion of `E{Z_n}` through the `1/n^2` term:
///
/// `1/2 ln n + (gamma + ln 2)/2 + (1 + [n even])/(2n) - (2 + 9 [n even])/(12 n^2)`.
pub fn expected_zeros_asymptotic(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("asymptotic expansion needs n >= 1 (ln 0)".into()));
    }
    let even = if n % 2 == 0 { 1.0 } else { 0.0 };
    let x = n as f64;
    Ok(0.5 * x.ln()
        + (crate::precision::GAMMA_F64 + std::f64::consts::LN_2) / 2.0
        + (1.0 + even) / (2.0 * x)
        - (2.0 + 9.0 * even) / (12.0 * x * x))
}

/// `E{Z_n} = H^odd_{n+1}` on the 192-bit fixed-point grid, for residual
/// checks beyond `f64` resolution.
pub fn expected_zeros_fixed(n: u64) -> Fixed {
    harmonic_odd_fixed(n + 1)
}

/// The [`expected_zeros_asymptotic`] expansion on the fixed-point grid.
pub fn expected_zeros_asymptotic_fixed(n: u64) -> Fixed {
    assert!(n > 0, "asymptotic expansion needs n >= 1");
    let even = n % 2 == 0;
    let mut value = ln_u64(n).mul_frac(1, 2);
    value = &value + &(&gamma().mul_frac(1, 2) + &ln_2().mul_frac(1, 2));
    value = &value + &Fixed::from_u64(if even { 2 } else { 1 }).div_u64(2 * n);
    let quadratic = Fixed::from_u64(if even { 11 } else { 2 }).div_u64(12).div_u64_pow(n, 2);
    &value - &quadratic
}
