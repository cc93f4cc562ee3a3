//! Cross-validation suites: every closed form in the crate checked against an
//! independent route (alternative formula, exhaustive enumeration, or brute
//! force over all permutations). The CLI `verify` subcommand runs all of them.

use std::fmt;

use crate::classify::StrategyKind;
use crate::cost::{dual_pivot_sort, expected_total_cost, solve_recurrence};
use crate::exact::{rat, Rational};
use crate::lattice::{
    enumerate_paths, expected_down_from_zero, expected_up_to_zero, expected_zeros_closed,
    expected_zeros_double_sum, expected_zeros_double_sum_simple, expected_zeros_quicksort_sum,
    tally_zeros, zero_distribution,
};
use crate::varlen::{expected_down_var, expected_up_var, length_probability};
use crate::{Error, Result};

/// Result of one verification suite.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Scope on success, first counterexample on failure.
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &'static str, detail: String) -> Self {
        CheckOutcome { name, passed: true, detail }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckOutcome { name, passed: false, detail }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

/// Default and maximum range for [`identity_suite`]. The cap keeps the bignum
/// double sums (quadratic per n) at desk-scale runtime.
pub const IDENTITY_DEFAULT_MAX_N: u64 = 200;
pub const IDENTITY_MAX_N_CAP: u64 = 500;
/// Exhaustive path enumeration range for the distribution check.
pub const DISTRIBUTION_MAX_N: u64 = 14;
/// Range of the variable-length mixture identity.
pub const VARLEN_MAX_N: u64 = 60;
/// Range over which the cost recurrence is compared with the closed form.
pub const RECURRENCE_MAX_N: u64 = 400;
/// All permutations up to this size are sorted by the brute-force oracle.
pub const PERMUTATION_MAX_N: u64 = 8;

/// Checks that the four expected-zero expressions (closed form, generating
/// function double sum, its direct form, and the quicksort-derived sum) agree
/// exactly for every `n <= max_n`.
pub fn identity_suite(max_n: u64) -> Result<CheckOutcome> {
    const NAME: &str = "identity-suite";
    if max_n > IDENTITY_MAX_N_CAP {
        return Err(Error::Argument(format!(
            "identity suite capped at n = {IDENTITY_MAX_N_CAP}, got {max_n}"
        )));
    }
    for n in 0..=max_n {
        let closed = expected_zeros_closed(n);
        let candidates = [
            ("gf double sum", expected_zeros_double_sum(n)),
            ("direct double sum", expected_zeros_double_sum_simple(n)),
            ("quicksort sum", expected_zeros_quicksort_sum(n)),
        ];
        for (label, value) in candidates {
            if value != closed {
                return Ok(CheckOutcome::fail(
                    NAME,
                    format!("n = {n}: {label} gives {value}, closed form gives {closed}"),
                ));
            }
        }
    }
    Ok(CheckOutcome::pass(
        NAME,
        format!("four expected-zero expressions agree for n <= {max_n}"),
    ))
}

/// Compares the zero-count distribution and the three expectation closed forms
/// against exhaustive path enumeration for `n <= 14`.
pub fn distribution_vs_enumeration() -> CheckOutcome {
    const NAME: &str = "distribution-vs-enumeration";
    for n in 0..=DISTRIBUTION_MAX_N {
        let mut mass: Vec<Rational> = vec![rat(0); (n / 2 + 2) as usize + 1];
        let mut zeros = rat(0);
        let mut up = rat(0);
        let mut down = rat(0);
        for (path, prob) in enumerate_paths(n).expect("within enumeration cap") {
            let tally = tally_zeros(&path);
            mass[tally.zeros as usize] += &prob;
            zeros += &prob * rat(tally.zeros as i64);
            up += &prob * rat(tally.up_to_zero as i64);
            down += prob * rat(tally.down_from_zero as i64);
        }
        for (r, observed) in mass.iter().enumerate() {
            let predicted = zero_distribution(n, r as u64);
            if predicted != *observed {
                return CheckOutcome::fail(
                    NAME,
                    format!(
                        "n = {n}, r = {r}: distribution gives {predicted}, enumeration gives {observed}"
                    ),
                );
            }
        }
        if mass.iter().sum::<Rational>() != rat(1) {
            return CheckOutcome::fail(NAME, format!("n = {n}: probabilities do not sum to 1"));
        }
        let expectations = [
            ("zeros", zeros, expected_zeros_closed(n)),
            ("up-to-zero", up, expected_up_to_zero(n)),
            ("down-from-zero", down, expected_down_from_zero(n)),
        ];
        for (label, observed, predicted) in expectations {
            if observed != predicted {
                return CheckOutcome::fail(
                    NAME,
                    format!(
                        "n = {n}: mean {label} is {observed} by enumeration, {predicted} by closed form"
                    ),
                );
            }
        }
    }
    CheckOutcome::pass(
        NAME,
        format!("distribution and expectations match enumeration for n <= {DISTRIBUTION_MAX_N}"),
    )
}

/// Checks the variable-length closed forms against the explicit mixture over
/// the reduced-length distribution for `2 <= n <= 60`.
pub fn varlen_mixture() -> CheckOutcome {
    const NAME: &str = "varlen-mixture";
    for n in 2..=VARLEN_MAX_N {
        let mut up = rat(0);
        let mut down = rat(0);
        for n_prime in 0..=n - 2 {
            let w = length_probability(n, n_prime).expect("n >= 2");
            up += &w * expected_up_to_zero(n_prime);
            down += w * expected_down_from_zero(n_prime);
        }
        let up_closed = expected_up_var(n).expect("n >= 2");
        let down_closed = expected_down_var(n).expect("n >= 2");
        if up != up_closed {
            return CheckOutcome::fail(
                NAME,
                format!("n = {n}: up mixture {up} differs from closed form {up_closed}"),
            );
        }
        if down != down_closed {
            return CheckOutcome::fail(
                NAME,
                format!("n = {n}: down mixture {down} differs from closed form {down_closed}"),
            );
        }
    }
    CheckOutcome::pass(
        NAME,
        format!("mixture identities hold for n <= {VARLEN_MAX_N}"),
    )
}

/// Compares the total-cost theorem against the recurrence for `4 <= n <= 400`.
pub fn recurrence_vs_theorem() -> CheckOutcome {
    recurrence_vs_theorem_with(&expected_total_cost)
}

/// Same check with the closed form supplied by the caller. Used by the mutation
/// test: a deliberately perturbed closed form must make this suite fail.
pub fn recurrence_vs_theorem_with(
    closed_form: &dyn Fn(StrategyKind, u64) -> Rational,
) -> CheckOutcome {
    const NAME: &str = "recurrence-vs-theorem";
    for strategy in StrategyKind::ALL {
        let table = solve_recurrence(
            |k| {
                crate::classify::expected_partition_cost(strategy, k)
                    .expect("recurrence queries k >= 2")
            },
            RECURRENCE_MAX_N,
        );
        for n in 4..=RECURRENCE_MAX_N {
            let from_recurrence = table.get(n);
            let from_theorem = closed_form(strategy, n);
            if *from_recurrence != from_theorem {
                return CheckOutcome::fail(
                    NAME,
                    format!(
                        "{strategy}, n = {n}: recurrence gives {from_recurrence}, closed form gives {from_theorem}"
                    ),
                );
            }
        }
    }
    CheckOutcome::pass(
        NAME,
        format!("closed forms match the recurrence for 4 <= n <= {RECURRENCE_MAX_N}"),
    )
}

fn for_each_permutation(n: usize, mut visit: impl FnMut(&[u64])) {
    // Heap's algorithm, iterative form.
    let mut keys: Vec<u64> = (1..=n as u64).collect();
    let mut c = vec![0usize; n];
    visit(&keys);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                keys.swap(0, i);
            } else {
                keys.swap(c[i], i);
            }
            visit(&keys);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Sorts every permutation of `{1..n}` for `2 <= n <= 8` with both strategies
/// and checks the average comparison count against the exact expectation.
pub fn permutation_oracle() -> CheckOutcome {
    const NAME: &str = "permutation-oracle";
    for n in 2..=PERMUTATION_MAX_N {
        let mut totals = [0u64; 2];
        let mut count = 0u64;
        for_each_permutation(n as usize, |perm| {
            count += 1;
            for (slot, strategy) in totals.iter_mut().zip(StrategyKind::ALL) {
                let report = dual_pivot_sort(perm.to_vec(), strategy);
                debug_assert!(report.output.iter().zip(1..=n).all(|(&k, want)| k == want));
                *slot += report.comparisons;
            }
        });
        for (&total, strategy) in totals.iter().zip(StrategyKind::ALL) {
            let mean = Rational::new(total.into(), count.into());
            let exact = expected_total_cost(strategy, n);
            if mean != exact {
                return CheckOutcome::fail(
                    NAME,
                    format!(
                        "{strategy}, n = {n}: brute-force mean {mean} differs from exact {exact}"
                    ),
                );
            }
        }
    }
    CheckOutcome::pass(
        NAME,
        format!("brute-force averages match exact costs for n <= {PERMUTATION_MAX_N}"),
    )
}

/// Runs all five suites; the identity suite covers `n <= max_n`.
pub fn default_suite(max_n: u64) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        identity_suite(max_n)?,
        distribution_vs_enumeration(),
        varlen_mixture(),
        recurrence_vs_theorem(),
        permutation_oracle(),
    ])
}
