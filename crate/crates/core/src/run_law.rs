//! Exact distribution of the longest error run over independent,
//! non-identically-distributed Bernoulli cycles.
//!
//! The central object is the reliability sequence `u_j(k) = P(L_j < k)`,
//! where `L_j` is the longest run of erroneous cycles among the first `j`
//! cycles. It satisfies the recurrence
//!
//! ```text
//! u_j(k) = u_{j-1}(k) - lambda_j(k) * u_{j-k-1}(k)
//! lambda_j(k) = q_{j-k} * p_{j-k+1} * ... * p_j        (q_0 = 1)
//! ```
//!
//! with `u_j(k) = 1` for `0 <= j <= k-1` and `u_k(k) = 1 - p_1*...*p_k`.
//! The system failure probability is `P(L_n >= k) = 1 - u_n(k)`.
//!
//! For constant per-cycle probability there is also a closed form as an
//! alternating binomial sum ([`reliability_constant_p`]). That sum cancels
//! catastrophically in floating point for large `n` with moderate `p`, so it
//! is evaluated in exact rational arithmetic internally; the recurrence
//! remains the authoritative general-purpose path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::profile::ErrorProfile;
use crate::Result;

/// Comparison slack for [`stochastic_dominance_check`]: reliabilities are
/// allowed to violate the ordering by at most this much before the check
/// reports `false`.
pub const DOMINANCE_SLACK: f64 = 1e-12;

/// The reliability sequence `u_0..u_n` for one fixed run threshold `k`.
///
/// Entries are nonincreasing, lie in `[0, 1]`, and start with
/// `u_j = 1` for `j <= k-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunLawTable {
    k: usize,
    values: Vec<f64>,
}

impl RunLawTable {
    /// The run threshold `k` this table was computed for.
    pub fn threshold(&self) -> usize {
        self.k
    }

    /// The cycle count `n` (the table holds `n + 1` values).
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    /// All values `u_0..u_n`, indexable by `j` directly.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `u_n(k) = P(L_n < k)`, the probability the zone is survived.
    pub fn final_reliability(&self) -> f64 {
        *self.values.last().expect("table holds at least u_0")
    }

    /// `P(L_n >= k) = 1 - u_n(k)`, the probability of an erroneous run of
    /// length at least `k`.
    pub fn failure_probability(&self) -> f64 {
        1.0 - self.final_reliability()
    }
}

/// Computes the full reliability sequence `u_j(k)` for `j = 0..n` by the
/// longest-run recurrence, in `O(n * k)` arithmetic.
///
/// # Errors
///
/// Rejects `k = 0` with [`Error::ZeroThreshold`]. Profile entries are already
/// guaranteed in `[0, 1]` by construction.
pub fn longest_run_law(profile: &ErrorProfile, k: usize) -> Result<RunLawTable> {
    if k == 0 {
        return Err(Error::ZeroThreshold);
    }
    let p = profile.probs();
    let n = p.len();
    let mut u = vec![1.0; n + 1];
    if n >= k {
        u[k] = 1.0 - p[..k].iter().product::<f64>();
        for j in k + 1..=n {
            // lambda_j = q_{j-k} * p_{j-k+1} * ... * p_j; with 1-based p_m
            // stored at p[m - 1]. The loop starts at j = k + 1, so the q
            // factor never needs the q_0 = 1 convention.
            let q = 1.0 - p[j - k - 1];
            let lambda = q * p[j - k..j].iter().product::<f64>();
            // Mathematically u_j >= 0; guard against rounding pushing a
            // near-zero tail slightly negative.
            u[j] = (u[j - 1] - lambda * u[j - k - 1]).max(0.0);
        }
    }
    Ok(RunLawTable { k, values: u })
}

/// `P(L_n >= k_fail)`: the probability that some run of erroneous cycles
/// reaches length `k_fail` within the profile.
///
/// # Errors
///
/// Same conditions as [`longest_run_law`].
pub fn failure_probability(profile: &ErrorProfile, k_fail: usize) -> Result<f64> {
    Ok(longest_run_law(profile, k_fail)?.failure_probability())
}

/// Closed-form reliability `R(k, n; p) = P(L_n < k)` for a constant
/// per-cycle error probability `p`:
///
/// ```text
/// R(k,n;p) = sum_{m=0}^{floor((n+1)/(k+1))}
///            (-1)^m p^{mk} q^{m-1} [ C(n-mk, m-1) + q * C(n-mk, m) ]
/// ```
///
/// with `q = 1 - p` and the convention `C(a, b) = 0` for `b < 0` or `b > a`,
/// under which the `m = 0` term is exactly 1. The alternating sum is
/// evaluated in exact rational arithmetic and rounded to `f64` once at the
/// end, so it agrees with [`longest_run_law`] on constant profiles to within
/// the recurrence's own rounding error.
///
/// # Errors
///
/// Rejects `k = 0` ([`Error::ZeroThreshold`]) and `p` outside `[0, 1]`
/// ([`Error::InvalidProbability`]).
pub fn reliability_constant_p(n: usize, k: usize, p: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroThreshold);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability { value: p });
    }
    if p == 0.0 {
        return Ok(1.0);
    }
    if p == 1.0 {
        return Ok(if n >= k { 0.0 } else { 1.0 });
    }

    let p_rat = BigRational::from_float(p).expect("p is finite");
    let q_rat = BigRational::one() - &p_rat;
    let p_pow_k = num::pow::pow(p_rat, k);

    let mut sum = BigRational::one();
    let mut p_pow = BigRational::one(); // p^{mk}
    let mut q_pow = BigRational::one(); // q^{m-1}, starting at m = 1
    for m in 1..=(n + 1) / (k + 1) {
        p_pow *= &p_pow_k;
        if m > 1 {
            q_pow *= &q_rat;
        }
        // m*(k+1) <= n+1 guarantees n - m*k >= m - 1 >= 0.
        let a = n - m * k;
        let c_lo = BigRational::from_integer(binomial(a, m - 1));
        let c_hi = BigRational::from_integer(binomial(a, m));
        let term = &p_pow * &q_pow * (c_lo + &q_rat * c_hi);
        if m % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    Ok(rational_to_f64(&sum))
}

/// Verifies Property 2 on a concrete pair of profiles: with `hi` pointwise
/// at least `lo`, the reliability under `lo` must be at least the
/// reliability under `hi` at every prefix length `j = 0..n` (within
/// [`DOMINANCE_SLACK`]).
///
/// A `false` return signals a computation bug, not a domain outcome; the
/// function exists as a test utility.
///
/// # Errors
///
/// [`Error::LengthMismatch`] for unequal lengths,
/// [`Error::NotPointwiseDominating`] when `hi` fails to dominate `lo` at
/// some cycle, plus the [`longest_run_law`] conditions.
pub fn stochastic_dominance_check(
    lo: &ErrorProfile,
    hi: &ErrorProfile,
    k: usize,
) -> Result<bool> {
    if lo.len() != hi.len() {
        return Err(Error::LengthMismatch {
            left: lo.len(),
            right: hi.len(),
        });
    }
    for (i, (&l, &h)) in lo.probs().iter().zip(hi.probs()).enumerate() {
        if h < l {
            return Err(Error::NotPointwiseDominating {
                index: i + 1,
                lo: l,
                hi: h,
            });
        }
    }
    let u_lo = longest_run_law(lo, k)?;
    let u_hi = longest_run_law(hi, k)?;
    Ok(u_lo
        .values()
        .iter()
        .zip(u_hi.values())
        .all(|(&l, &h)| l >= h - DOMINANCE_SLACK))
}

/// Binomial coefficient `C(a, b)` with `C(a, b) = 0` for `b > a`.
fn binomial(a: usize, b: usize) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut result = BigInt::one();
    for i in 1..=b {
        // Every prefix product C(a-b+1..a-b+i) / i! is itself a binomial
        // coefficient, so the division is exact at each step.
        result = result * BigInt::from(a - b + i) / BigInt::from(i);
    }
    result
}

/// Rounds an arbitrary-precision rational to `f64` without overflowing on
/// huge numerators/denominators: the quotient is first scaled to carry ~64
/// significant bits, converted, then rescaled by the matching power of two.
fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let numer = r.numer().abs();
    let denom = r.denom().clone();
    let shift = 64 - (numer.bits() as i64 - denom.bits() as i64);
    let quotient = if shift >= 0 {
        (numer << shift as usize) / denom
    } else {
        numer / (denom << (-shift) as usize)
    };
    let value = quotient.to_f64().expect("quotient fits in ~66 bits");
    let scaled = scale_by_pow2(value, -shift);
    if negative {
        -scaled
    } else {
        scaled
    }
}

/// `value * 2^exp` evaluated in range-safe chunks so intermediate powers of
/// two never overflow or prematurely underflow.
fn scale_by_pow2(mut value: f64, mut exp: i64) -> f64 {
    while exp > 960 {
        value *= 2f64.powi(960);
        exp -= 960;
    }
    while exp < -960 {
        value *= 2f64.powi(-960);
        exp += 960;
    }
    value * 2f64.powi(exp as i32)
}
