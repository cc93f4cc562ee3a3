//! Variable-length lattice paths induced by a random pivot pair.
//!
//! Drawing two pivot positions `P < Q` uniformly from `{1..n}` leaves
//! `N' = n - 1 - (Q - P)` non-medium elements, so the induced classification
//! path has random length with `P{N' = n'} = (n'+1) / C(n,2)`. The
//! expectations of up-to-zero and down-from-zero counts under this mixture,
//! written `E{X↗_n}` and `E{X↘_n}`, have the closed forms implemented here;
//! they feed directly into the strategies' additional-comparison formulas.

use rand::Rng;

use crate::exact::{rat, ratio, Rational};
use crate::lattice::{sample_path, LatticePath};
use crate::precision::{gamma, harmonic_odd_fixed, ln_2, ln_u64, Fixed, GAMMA_F64};
use crate::{Error, Result};

/// One draw from the variable-length model: the pivot pair, the reduced
/// length, and a path of that length from the fixed-length model.
#[derive(Clone, Debug)]
pub struct VarLenDraw {
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub reduced_length: u64,
    pub path: LatticePath,
}

fn require_n_at_least_2(n: u64, what: &str) -> Result<()> {
    if n < 2 {
        Err(Error::Domain(format!("{what} needs n >= 2, got {n}")))
    } else {
        Ok(())
    }
}

/// `P{N' = n'} = (n'+1) / C(n,2)` for `0 <= n' <= n-2`, else 0.
pub fn length_probability(n: u64, n_prime: u64) -> Result<Rational> {
    require_n_at_least_2(n, "length distribution")?;
    if n_prime > n - 2 {
        return Ok(rat(0));
    }
    Ok(ratio(n_prime as i64 + 1, (n * (n - 1) / 2) as i64))
}

/// Samples a pivot pair uniformly from all `C(n,2)` possibilities and a path
/// of the induced reduced length.
pub fn sample_varlen<R: Rng + ?Sized>(n: u64, rng: &mut R) -> Result<VarLenDraw> {
    require_n_at_least_2(n, "variable-length sampling")?;
    let first = rng.random_range(1..=n);
    let second = loop {
        let s = rng.random_range(1..=n);
        if s != first {
            break s;
        }
    };
    let (p, q) = (first.min(second), first.max(second));
    let reduced_length = n - 1 - (q - p);
    let path = sample_path(reduced_length, rng);
    Ok(VarLenDraw { n, p, q, reduced_length, path })
}

/// Exact `E{X↗_n} = 1/2 H^odd_{n-2} - 1/8 + (-1)^n / (8 (n - [n even]))`.
///
/// Equals the mixture `sum over n' of P{N'=n'} * E{Z↗_{n'}}` (verified
/// exactly in the test suite). Note `E{X↗_3} = 1/3`: the length-1 path from
/// height -1 ends in an up-to-zero.
pub fn expected_up_var(n: u64) -> Result<Rational> {
    require_n_at_least_2(n, "E{X-up}")?;
    let even = n % 2 == 0;
    let sign = if even { 1 } else { -1 };
    let odd_part = crate::exact::harmonic_odd(n - 2) / rat(2);
    Ok(odd_part - ratio(1, 8) + ratio(sign, 8 * (n as i64 - i64::from(even))))
}

/// Exact `E{X↘_n} = E{X↗_n} - 1/2 + 1/(2 (n - [n even]))`.
pub fn expected_down_var(n: u64) -> Result<Rational> {
    let up = expected_up_var(n)?;
    let even = n % 2 == 0;
    Ok(up - ratio(1, 2) + ratio(1, 2 * (n as i64 - i64::from(even))))
}

/// Asymptotic `E{X↗_n}` through the `1/n^3` term:
///
/// `1/4 ln n + (2 gamma + 2 ln 2 - 1)/8 - 3/(8n)
///  - (3 [n even] + 1)/(12 n^2) - 3 [n even]/(8 n^3)`.
pub fn expected_up_var_asymptotic(n: u64) -> Result<f64> {
    require_n_at_least_2(n, "asymptotic E{X-up}")?;
    let even = if n % 2 == 0 { 1.0 } else { 0.0 };
    let x = n as f64;
    Ok(0.25 * x.ln() + (2.0 * GAMMA_F64 + 2.0 * std::f64::consts::LN_2 - 1.0) / 8.0
        - 3.0 / (8.0 * x)
        - (3.0 * even + 1.0) / (12.0 * x * x)
        - 3.0 * even / (8.0 * x * x * x))
}

/// Asymptotic `E{X↘_n}` through the `1/n^3` term:
///
/// `1/4 ln n + (2 gamma + 2 ln 2 - 5)/8 + 1/(8n)
///  + (3 [n even] - 1)/(12 n^2) + [n even]/(8 n^3)`.
pub fn expected_down_var_asymptotic(n: u64) -> Result<f64> {
    require_n_at_least_2(n, "asymptotic E{X-down}")?;
    let even = if n % 2 == 0 { 1.0 } else { 0.0 };
    let x = n as f64;
    Ok(0.25 * x.ln() + (2.0 * GAMMA_F64 + 2.0 * std::f64::consts::LN_2 - 5.0) / 8.0
        + 1.0 / (8.0 * x)
        + (3.0 * even - 1.0) / (12.0 * x * x)
        + even / (8.0 * x * x * x))
}

/// Exact `E{X↗_n}` on the 192-bit fixed-point grid, for residual checks
/// beyond `f64` resolution.
pub fn expected_up_var_fixed(n: u64) -> Result<Fixed> {
    require_n_at_least_2(n, "E{X-up}")?;
    let even = n % 2 == 0;
    let sign = if even { 1 } else { -1 };
    let value = &harmonic_odd_fixed(n - 2).div_u64(2) - &Fixed::inv_u64(8);
    Ok(&value + &Fixed::from_i64(sign).div_u64(8 * (n - u64::from(even))))
}

/// Exact `E{X↘_n}` on the fixed-point grid.
pub fn expected_down_var_fixed(n: u64) -> Result<Fixed> {
    let up = expected_up_var_fixed(n)?;
    let even = n % 2 == 0;
    let shift = &Fixed::inv_u64(2) - &Fixed::inv_u64(2 * (n - u64::from(even)));
    Ok(&up - &shift)
}

/// The [`expected_up_var_asymptotic`] expansion on the fixed-point grid.
pub fn expected_up_var_asymptotic_fixed(n: u64) -> Result<Fixed> {
    require_n_at_least_2(n, "asymptotic E{X-up}")?;
    let even = n % 2 == 0;
    let mut value = ln_u64(n).div_u64(4);
    value = &value + &(&(gamma() + ln_2()).div_u64(4) - &Fixed::inv_u64(8));
    value = &value - &Fixed::from_u64(3).div_u64(8 * n);
    value = &value - &Fixed::from_u64(if even { 4 } else { 1 }).div_u64(12).div_u64_pow(n, 2);
    if even {
        value = &value - &Fixed::from_u64(3).div_u64(8).div_u64_pow(n, 3);
    }
    Ok(value)
}

/// The [`expected_down_var_asymptotic`] expansion on the fixed-point grid.
pub fn expected_down_var_asymptotic_fixed(n: u64) -> Result<Fixed> {
    require_n_at_least_2(n, "asymptotic E{X-down}")?;
    let even = n % 2 == 0;
    let mut value = ln_u64(n).div_u64(4);
    value = &value + &(&(gamma() + ln_2()).div_u64(4) - &Fixed::from_u64(5).div_u64(8));
    value = &value + &Fixed::inv_u64(8 * n);
    let quad = Fixed::from_i64(if even { 2 } else { -1 }).div_u64(12).div_u64_pow(n, 2);
    value = &value + &quad;
    if even {
        value = &value + &Fixed::inv_u64(8).div_u64_pow(n, 3);
    }
    Ok(value)
}
