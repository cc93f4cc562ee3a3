//! High-precision numeric support for asymptotic residual checks.
//!
//! The asymptotic expansions implemented in this crate have residuals of
//! order `n^-3` or `n^-4`; at `n = 10^6` that is around `1e-24`, far below
//! what `f64` subtraction can resolve against values of order `10^7`. This
//! module provides
//!
//! * [`Fixed`], a signed fixed-point number with a `BigInt` mantissa scaled
//!   by `2^192` (about 57 decimal digits of fraction), plus the logarithms
//!   and harmonic sums needed to evaluate both the exact and the asymptotic
//!   side of every expansion at that precision, and
//! * [`Neumaier`], compensated `f64` summation used for the fast floating
//!   evaluation of harmonic sums at large `n` (relative error well below
//!   `1e-12` at `n = 10^6`).
//!
//! The embedded decimal constants are verified in-repo: `LN_2_DIGITS`
//! against its own arctanh series and `GAMMA_DIGITS` against an
//! Euler-Maclaurin evaluation of `H_n - ln n` (see the tests).

use std::cmp::Ordering;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact::Rational;

/// Fraction bits of the fixed-point representation.
pub const FRAC_BITS: u32 = 192;

/// Euler-Mascheroni constant, 80 decimal digits.
pub const GAMMA_DIGITS: &str =
    "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467";

/// Natural logarithm of 2, 80 decimal digits.
pub const LN_2_DIGITS: &str =
    "0.69314718055994530941723212145817656807550013436025525412068000949339362196969472";

/// [`GAMMA_DIGITS`] at `f64` precision (agreement is checked in tests).
pub const GAMMA_F64: f64 = 0.577_215_664_901_532_9;

/// Signed fixed-point value `mantissa / 2^192`.
///
/// Operations truncate toward zero at the last bit; with fewer than a few
/// hundred operations per evaluated expression the accumulated error stays
/// below `2^-180`, which is all the residual checks need.
#[derive(Clone, PartialEq, Eq)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn from_i64(v: i64) -> Self {
        Fixed(BigInt::from(v) << FRAC_BITS)
    }

    pub fn from_u64(v: u64) -> Self {
        Fixed(BigInt::from(v) << FRAC_BITS)
    }

    /// `numer / denom` rounded to the fixed-point grid (truncated).
    pub fn from_big_ratio(numer: &BigInt, denom: &BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Fixed((numer << FRAC_BITS) / denom)
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::from_big_ratio(r.numer(), r.denom())
    }

    /// Parses a plain decimal literal like `-0.577215...`.
    pub fn from_decimal(s: &str) -> Self {
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        let digits: String = format!("{int_part}{frac_part}");
        let value: BigInt = digits.parse().expect("decimal digits");
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        Self::from_big_ratio(&(value * sign), &scale)
    }

    /// `1/k` on the fixed-point grid.
    pub fn inv_u64(k: u64) -> Self {
        assert!(k > 0, "inverse of zero");
        Fixed((BigInt::from(1) << FRAC_BITS) / k)
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Fixed(self.0.abs())
    }

    pub fn mul(&self, other: &Fixed) -> Self {
        Fixed((&self.0 * &other.0) >> FRAC_BITS)
    }

    /// Multiplication by an exact rational `numer/denom` (no precision loss
    /// beyond the final truncation).
    pub fn mul_frac(&self, numer: i64, denom: u64) -> Self {
        assert!(denom > 0, "zero denominator");
        Fixed((&self.0 * numer) / denom)
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        Fixed(&self.0 * k)
    }

    /// Multiplication by an exact [`Rational`] of any size.
    pub fn mul_rational(&self, r: &Rational) -> Self {
        Fixed((&self.0 * r.numer()) / r.denom())
    }

    pub fn div_u64(&self, k: u64) -> Self {
        assert!(k > 0, "division by zero");
        Fixed(&self.0 / k)
    }

    /// Division by `n^power` without intermediate overflow concerns.
    pub fn div_u64_pow(&self, n: u64, power: u32) -> Self {
        Fixed(&self.0 / BigInt::from(n).pow(power))
    }

    pub fn to_f64(&self) -> f64 {
        // BigInt::to_f64 saturates to infinity rather than failing.
        let mantissa = self.0.to_f64().unwrap_or(f64::NAN);
        mantissa * (2f64).powi(-(FRAC_BITS as i32))
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 + &rhs.0)
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 - &rhs.0)
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed(-&self.0)
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl std::fmt::Debug for Fixed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Fixed({} ~ {})", self.0, self.to_f64())
    }
}

/// Euler-Mascheroni constant on the fixed-point grid.
pub fn gamma() -> &'static Fixed {
    static CELL: OnceLock<Fixed> = OnceLock::new();
    CELL.get_or_init(|| Fixed::from_decimal(GAMMA_DIGITS))
}

/// `ln 2` on the fixed-point grid.
pub fn ln_2() -> &'static Fixed {
    static CELL: OnceLock<Fixed> = OnceLock::new();
    CELL.get_or_init(|| Fixed::from_decimal(LN_2_DIGITS))
}

/// `ln x` for fixed-point `x` in `[1, 2)`, via `2 atanh((x-1)/(x+1))`.
/// The series ratio is at most 1/9, so 65 terms exceed 192 bits.
fn ln_reduced(x: &Fixed) -> Fixed {
    let one = Fixed::from_u64(1);
    debug_assert!(*x >= one && *x < Fixed::from_u64(2));
    let t = Fixed::from_big_ratio(&(&x.0 - &one.0), &(&x.0 + &one.0));
    let t_sq = t.mul(&t);
    let mut power = t; // t^(2j+1)
    let mut sum = Fixed::zero();
    let mut j = 0u64;
    loop {
        let term = power.div_u64(2 * j + 1);
        if term.0.is_zero() {
            break;
        }
        sum = &sum + &term;
        power = power.mul(&t_sq);
        j += 1;
    }
    sum.mul_frac(2, 1)
}

/// Natural logarithm of a positive integer: reduce `n = x * 2^k` with
/// `x in [1, 2)` (exact in binary), then `ln n = ln x + k ln 2`.
pub fn ln_u64(n: u64) -> Fixed {
    assert!(n > 0, "ln of zero");
    let k = 63 - n.leading_zeros();
    let x = Fixed(BigInt::from(n) << (FRAC_BITS - k));
    &ln_reduced(&x) + &ln_2().mul_frac(k as i64, 1)
}

/// `H_n` summed on the fixed-point grid (error below `n * 2^-192`).
pub fn harmonic_fixed(n: u64) -> Fixed {
    let mut sum = Fixed::zero();
    for k in 1..=n {
        sum = &sum + &Fixed::inv_u64(k);
    }
    sum
}

/// `H^odd_n` summed on the fixed-point grid.
pub fn harmonic_odd_fixed(n: u64) -> Fixed {
    let mut sum = Fixed::zero();
    let mut k = 1;
    while k <= n {
        sum = &sum + &Fixed::inv_u64(k);
        k += 2;
    }
    sum
}

/// `H^alt_n` via the identity `H^alt_n = H_{floor(n/2)} - H_n` (the direct
/// alternating sum agrees; the identity needs one pass fewer).
pub fn harmonic_alt_fixed(n: u64) -> Fixed {
    &harmonic_fixed(n / 2) - &harmonic_fixed(n)
}

/// Neumaier's variant of Kahan compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// `H_n` in `f64` with compensated summation.
pub fn harmonic_f64(n: u64) -> f64 {
    let mut acc = Neumaier::new();
    for k in 1..=n {
        acc.add(1.0 / k as f64);
    }
    acc.total()
}

/// `H^alt_n` in `f64` with compensated summation.
pub fn harmonic_alt_f64(n: u64) -> f64 {
    let mut acc = Neumaier::new();
    for k in 1..=n {
        let term = 1.0 / k as f64;
        acc.add(if k % 2 == 1 { -term } else { term });
    }
    acc.total()
}

/// `H^odd_n` in `f64` with compensated summation.
pub fn harmonic_odd_f64(n: u64) -> f64 {
    let mut acc = Neumaier::new();
    let mut k = 1;
    while k <= n {
        acc.add(1.0 / k as f64);
        k += 2;
    }
    acc.total()
}
