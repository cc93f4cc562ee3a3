//! Arbitrary-precision rationals, binomial coefficients and harmonic sums.
//!
//! Every closed-form expectation in this crate is carried by [`Rational`];
//! conversion to floating point happens only at reporting boundaries via
//! [`to_f64`]. The three harmonic variants are memoized incrementally because
//! identity suites query dense ranges of `n`.

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact fraction in canonical form: positive denominator, fully reduced.
/// (`num_rational::Ratio` maintains both invariants after every operation.)
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision non-negative integer (binomials, factorials, counts).
pub type BigNat = BigUint;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `numer/denom` as an exact [`Rational`].
///
/// Panics if `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Binomial coefficient `C(n, k)`, with the convention that out-of-range `k`
/// (negative or above `n`) yields 0.
pub fn binomial(n: u64, k: i64) -> BigNat {
    if k < 0 || k as u64 > n {
        return BigNat::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k as u64))
}

static HARMONIC: Mutex<Vec<Rational>> = Mutex::new(Vec::new());
static HARMONIC_ODD: Mutex<Vec<Rational>> = Mutex::new(Vec::new());
static HARMONIC_ALT: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Extends `cache` so that index `n` holds `sum_{m=1}^{n} term(m)` and returns
/// that entry. The lock makes concurrent callers safe; each value is computed
/// once per process.
fn memoized_sum(cache: &Mutex<Vec<Rational>>, n: u64, term: impl Fn(u64) -> Rational) -> Rational {
    let n = usize::try_from(n).expect("harmonic index fits in usize");
    let mut values = cache.lock().expect("harmonic cache poisoned");
    if values.is_empty() {
        values.push(Rational::zero());
    }
    while values.len() <= n {
        let m = values.len() as u64;
        let next = values.last().expect("nonempty") + term(m);
        values.push(next);
    }
    values[n].clone()
}

/// Harmonic number `H_n = sum_{m=1}^{n} 1/m`; `H_0 = 0`.
pub fn harmonic(n: u64) -> Rational {
    memoized_sum(&HARMONIC, n, |m| ratio(1, m as i64))
}

/// Odd-index harmonic sum `H^odd_n = sum over odd m <= n of 1/m`.
pub fn harmonic_odd(n: u64) -> Rational {
    memoized_sum(&HARMONIC_ODD, n, |m| {
        if m % 2 == 1 {
            ratio(1, m as i64)
        } else {
            Rational::zero()
        }
    })
}

/// Alternating harmonic sum `H^alt_n = sum_{m=1}^{n} (-1)^m/m`, so the m = 1
/// term is negative. Satisfies `H^alt_n = H_n - 2 H^odd_n`.
pub fn harmonic_alt(n: u64) -> Rational {
    memoized_sum(&HARMONIC_ALT, n, |m| {
        if m % 2 == 1 {
            ratio(-1, m as i64)
        } else {
            ratio(1, m as i64)
        }
    })
}

/// Round-to-nearest conversion at 64-bit precision, valid for numerators and
/// denominators of any size (delegates to `num-rational`'s shift-based
/// conversion rather than naive numerator/denominator division).
pub fn to_f64(r: &Rational) -> f64 {
    match r.to_f64() {
        Some(x) => x,
        // Canonical rationals never produce NaN; keep the fallback total.
        None => {
            if r.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        }
    }
}
