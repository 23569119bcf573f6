//! Failure probability of safety-critical applications on TDMA networks
//! crossing EMI perturbation zones.
//!
//! A distributed control application fails when the number of *consecutive*
//! erroneous TDMA cycles exceeds what its control law tolerates. With
//! per-cycle error probabilities `P = (p_1, ..., p_n)` — independent but not
//! identically distributed — the failure probability is the tail of the
//! longest-run law, `P(L_n >= k)`, computed here by an exact `O(n * k)`
//! recurrence rather than simulation.
//!
//! The crate is organized along the pipeline:
//!
//! - [`profile`]: the probability vector type and its file format;
//! - [`model`]: parametric profiles (constant, radio-transmitter,
//!   scanning-radar perturbations);
//! - [`run_law`]: the longest-run recurrence, the constant-`p` closed form,
//!   and the stochastic-dominance property check;
//! - [`mission`]: physical times (zone crossing, cycle length, outage
//!   tolerance) to discrete `(n, k)`, plus multi-zone composition;
//! - [`mc`]: exhaustive-enumeration and seeded Monte Carlo oracles.
//!
//! # Example
//!
//! Failure probability of an application tolerating 40 ms outages, on a
//! 4 ms TDMA cycle, crossing a zone for 1500 ms with constant per-cycle
//! error probability 0.1:
//!
//! ```
//! use runlaw::{Convention, EmiZone, ErrorModel, TdmaTiming};
//!
//! let zone = EmiZone::from_time(1500.0, ErrorModel::Constant { p: 0.1 })?;
//! let timing = TdmaTiming::new(4.0, 40.0)?;
//! let row = runlaw::zone_failure_probability(&zone, &timing, Convention::Tables)?;
//! assert_eq!((row.n, row.k_tol), (377, 10));
//! assert!(row.p_fail < 4e-9);
//! # Ok::<(), runlaw::Error>(())
//! ```

pub mod error;
pub mod mc;
pub mod mission;
pub mod model;
pub mod profile;
pub mod run_law;

pub use error::Error;
pub use mc::{enumerate_exact, mc_estimate, McEstimate, ENUM_MAX_CYCLES};
pub use mission::{
    compose_zones, profile_failure_row, tolerance_to_k, zone_failure_probability, zone_to_cycles,
    Convention, EmiZone, FailureRow, TdmaTiming, ZoneDuration,
};
pub use model::ErrorModel;
pub use profile::ErrorProfile;
pub use run_law::{
    failure_probability, longest_run_law, reliability_constant_p, stochastic_dominance_check,
    RunLawTable, DOMINANCE_SLACK,
};

/// Convenience alias: all fallible operations in this crate use [`Error`].
pub type Result<T, E = Error> = std::result::Result<T, E>;
