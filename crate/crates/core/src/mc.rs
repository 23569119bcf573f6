//! Independent verification oracles: exhaustive enumeration for small zones
//! and seeded Monte Carlo estimation for large ones.
//!
//! The Monte Carlo generator is ChaCha8 (`rand_chacha`), chosen for its
//! explicit stream/counter interface: trial `t` draws from the stream with
//! index `t` of a generator seeded from the master seed, so estimates are
//! bitwise identical whether trials run sequentially or in parallel, on any
//! thread count. The generator choice is part of the reproducibility
//! contract and must stay stable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Error;
use crate::profile::ErrorProfile;
use crate::Result;

/// Largest cycle count accepted by [`enumerate_exact`]; beyond this the
/// 2^n outcome tree is too large to walk at desk scale.
pub const ENUM_MAX_CYCLES: usize = 25;

/// A seeded Monte Carlo estimate of a failure probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    /// Fraction of trials whose longest erroneous run reached the threshold.
    pub p_hat: f64,
    /// Number of simulated zone crossings.
    pub trials: u64,
    /// Binomial standard error `sqrt(p_hat * (1 - p_hat) / trials)`.
    pub std_err: f64,
    /// Master seed the estimate was drawn from.
    pub seed: u64,
}

/// Computes `P(L_n >= k)` exactly by walking every error/success sequence,
/// pruning a branch as soon as its run reaches `k` (all continuations fail
/// alike). Exact up to double rounding; the brute-force oracle for the
/// recurrence.
///
/// # Errors
///
/// [`Error::EnumerationTooLarge`] beyond [`ENUM_MAX_CYCLES`] cycles;
/// [`Error::ZeroThreshold`] for `k = 0`.
pub fn enumerate_exact(profile: &ErrorProfile, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroThreshold);
    }
    let n = profile.len();
    if n > ENUM_MAX_CYCLES {
        return Err(Error::EnumerationTooLarge {
            n,
            max: ENUM_MAX_CYCLES,
        });
    }
    let mut failure_mass = 0.0;
    walk(profile.probs(), k, 0, 1.0, &mut failure_mass);
    Ok(failure_mass)
}

fn walk(p: &[f64], k: usize, run: usize, mass: f64, failure_mass: &mut f64) {
    if run >= k {
        *failure_mass += mass;
        return;
    }
    match p.split_first() {
        None => {}
        Some((&p_i, rest)) => {
            walk(rest, k, run + 1, mass * p_i, failure_mass);
            walk(rest, k, 0, mass * (1.0 - p_i), failure_mass);
        }
    }
}

/// Estimates `P(L_n >= k)` by simulating `trials` independent zone
/// crossings. Each trial streams the cycles in order, tracking only the
/// current run length, and stops early once the run reaches `k`.
///
/// Deterministic for a fixed `seed` (see the module docs for the generator
/// contract); trials execute in parallel.
///
/// # Errors
///
/// [`Error::ZeroTrials`] for `trials = 0`; [`Error::ZeroThreshold`] for
/// `k = 0`.
pub fn mc_estimate(profile: &ErrorProfile, k: usize, trials: u64, seed: u64) -> Result<McEstimate> {
    if k == 0 {
        return Err(Error::ZeroThreshold);
    }
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let master = ChaCha8Rng::seed_from_u64(seed);
    let probs = profile.probs();
    let failures: u64 = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = master.clone();
            rng.set_stream(trial);
            let mut run = 0usize;
            for &p in probs {
                if rng.random::<f64>() < p {
                    run += 1;
                    if run >= k {
                        return 1u64;
                    }
                } else {
                    run = 0;
                }
            }
            0u64
        })
        .sum();
    let p_hat = failures as f64 / trials as f64;
    Ok(McEstimate {
        p_hat,
        trials,
        std_err: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run_law::failure_probability;

    fn profile(probs: &[f64]) -> ErrorProfile {
        ErrorProfile::new(probs.to_vec()).unwrap()
    }

    #[test]
    fn enumerates_the_half_cycle_example() {
        assert_eq!(enumerate_exact(&profile(&[0.5; 3]), 2).unwrap(), 0.375);
    }

    #[test]
    fn threshold_beyond_length_cannot_fail() {
        assert_eq!(enumerate_exact(&profile(&[0.9; 4]), 5).unwrap(), 0.0);
    }

    #[test]
    fn certain_errors_enumerate_to_one() {
        assert_eq!(enumerate_exact(&profile(&[1.0, 1.0]), 2).unwrap(), 1.0);
    }

    #[test]
    fn enumeration_guard_rejects_large_zones() {
        let err = enumerate_exact(&profile(&[0.5; 26]), 3).unwrap_err();
        assert!(matches!(
            err,
            Error::EnumerationTooLarge { n: 26, max: ENUM_MAX_CYCLES }
        ));
    }

    #[test]
    fn enumeration_rejects_zero_threshold() {
        assert!(matches!(
            enumerate_exact(&profile(&[0.5]), 0).unwrap_err(),
            Error::ZeroThreshold
        ));
    }

    #[test]
    fn outcome_probabilities_are_normalized() {
        // Brute-force the full outcome tree independently of the pruned
        // walk: every bitmask is one error/success sequence.
        let p: [f64; 5] = [0.12, 0.9, 0.5, 0.03, 0.77];
        let mut total = 0.0;
        for mask in 0u32..1 << p.len() {
            let mut mass = 1.0;
            for (i, &p_i) in p.iter().enumerate() {
                mass *= if mask >> i & 1 == 1 { p_i } else { 1.0 - p_i };
            }
            total += mass;
        }
        assert!((total - 1.0).abs() <= 1e-12);

        // And the pruned walk splits that mass consistently: failures for
        // threshold 1 are exactly "any error at all".
        let any_error = enumerate_exact(&profile(&p), 1).unwrap();
        let none: f64 = p.iter().map(|&x| 1.0 - x).product();
        assert!((any_error - (1.0 - none)).abs() <= 1e-12);
    }

    #[test]
    fn enumeration_agrees_with_recurrence() {
        let p = profile(&[0.3, 0.8, 0.1, 0.99, 0.45, 0.45, 0.2]);
        for k in 1..=8 {
            let exact = enumerate_exact(&p, k).unwrap();
            let recurred = failure_probability(&p, k).unwrap();
            assert!((exact - recurred).abs() <= 1e-12, "k = {k}");
        }
    }

    #[test]
    fn estimate_is_deterministic_for_a_seed() {
        let p = profile(&[0.5; 3]);
        let a = mc_estimate(&p, 2, 10_000, 42).unwrap();
        let b = mc_estimate(&p, 2, 10_000, 42).unwrap();
        assert_eq!(a, b);
        let c = mc_estimate(&p, 2, 10_000, 43).unwrap();
        assert_ne!(a.p_hat, c.p_hat);
    }

    #[test]
    fn estimate_is_thread_count_invariant() {
        let p = profile(&[0.4, 0.2, 0.9, 0.6, 0.3]);
        let sequential = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| mc_estimate(&p, 2, 50_000, 7).unwrap());
        let parallel = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| mc_estimate(&p, 2, 50_000, 7).unwrap());
        assert_eq!(sequential, parallel);
    }

    #[test]
    fn estimate_converges_to_enumerated_value() {
        let p = profile(&[0.5; 3]);
        let est = mc_estimate(&p, 2, 1_000_000, 2024).unwrap();
        assert!((est.p_hat - 0.375).abs() <= 3.0 * est.std_err);
        assert!((est.std_err - 4.8e-4).abs() < 1e-4);
    }

    #[test]
    fn impossible_and_certain_events_are_exact() {
        let zero = profile(&[0.0; 10]);
        assert_eq!(mc_estimate(&zero, 2, 5_000, 1).unwrap().p_hat, 0.0);
        let one = profile(&[1.0; 10]);
        assert_eq!(mc_estimate(&one, 10, 5_000, 1).unwrap().p_hat, 1.0);
    }

    #[test]
    fn std_err_consistent_with_p_hat() {
        let est = mc_estimate(&profile(&[0.5; 4]), 2, 20_000, 3).unwrap();
        let expected = (est.p_hat * (1.0 - est.p_hat) / est.trials as f64).sqrt();
        assert!((est.std_err - expected).abs() <= 1e-12);
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(matches!(
            mc_estimate(&profile(&[0.5]), 1, 0, 1).unwrap_err(),
            Error::ZeroTrials
        ));
    }
}
