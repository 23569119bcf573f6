//! Mapping physical mission parameters to the discrete run-law quantities.
//!
//! A vehicle crosses an EMI perturbation zone in `t_z` milliseconds while
//! the network runs TDMA cycles of `t_cyc` milliseconds; the distributed
//! application survives data outages up to `t_max` milliseconds. This module
//! converts those times into the cycle count `n` and tolerable-run length
//! `k_tol`, evaluates the per-zone failure probability, and composes
//! independent zones along a trajectory.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::model::ErrorModel;
use crate::profile::ErrorProfile;
use crate::run_law::failure_probability;
use crate::Result;

/// Quotients within this distance of an integer are snapped to it before
/// rounding, so exact physical ratios (e.g. 40 ms / 0.1 ms) survive the
/// floating-point division.
const QUOTIENT_SNAP: f64 = 1e-9;

/// TDMA cycle duration and application outage tolerance, both in
/// milliseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TdmaTiming {
    t_cyc_ms: f64,
    t_max_ms: f64,
}

impl TdmaTiming {
    /// Builds a timing pair; both durations must be positive reals.
    ///
    /// A cycle longer than the tolerance is allowed (the failure model
    /// degenerates to "any erroneous cycle kills the application") but is
    /// worth flagging to users; see
    /// [`cycle_exceeds_tolerance`](Self::cycle_exceeds_tolerance).
    pub fn new(t_cyc_ms: f64, t_max_ms: f64) -> Result<Self> {
        check_positive("t_cyc_ms", t_cyc_ms)?;
        check_positive("t_max_ms", t_max_ms)?;
        Ok(Self { t_cyc_ms, t_max_ms })
    }

    /// TDMA cycle duration in milliseconds.
    pub fn t_cyc_ms(&self) -> f64 {
        self.t_cyc_ms
    }

    /// Application-tolerating threshold in milliseconds.
    pub fn t_max_ms(&self) -> f64 {
        self.t_max_ms
    }

    /// True when a single lost cycle already exceeds the tolerance
    /// (`t_cyc > t_max`), i.e. `k_tol = 0`; legal but usually a
    /// configuration mistake worth warning about.
    pub fn cycle_exceeds_tolerance(&self) -> bool {
        self.t_cyc_ms > self.t_max_ms
    }

    /// A copy with a different cycle duration (sweeps vary `t_cyc` only).
    pub fn with_t_cyc_ms(&self, t_cyc_ms: f64) -> Result<Self> {
        Self::new(t_cyc_ms, self.t_max_ms)
    }
}

/// How the outage tolerance is discretized into the run threshold.
///
/// The published reproduction tables follow `Tables`: `k_tol` is the floor
/// of `t_max / t_cyc` and the application fails once a run strictly exceeds
/// it (reaches `k_tol + 1`). The alternative `Eq5` is the stricter printed
/// formula `k = ceil(t_max / t_cyc)` with failure at runs reaching `k`; both
/// conventions agree except when `t_cyc` divides `t_max` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// Floor tolerance, failure at `k_tol + 1` (reproduces the reference
    /// tables); the default.
    #[default]
    Tables,
    /// Strict ceiling formula: failure at `ceil(t_max / t_cyc)` consecutive
    /// erroneous cycles; reported as `k_tol = ceil(t_max / t_cyc) - 1`.
    Eq5,
}

impl Convention {
    /// The tolerable-run length `k_tol` under this convention; failure means
    /// a run of `k_tol + 1` erroneous cycles regardless of convention.
    pub fn k_tol(self, t_max_ms: f64, t_cyc_ms: f64) -> Result<usize> {
        check_positive("t_max_ms", t_max_ms)?;
        check_positive("t_cyc_ms", t_cyc_ms)?;
        let q = snapped_quotient(t_max_ms, t_cyc_ms);
        Ok(match self {
            Convention::Tables => q.floor() as usize,
            // ceil >= 1 for positive quotients, so the subtraction is safe.
            Convention::Eq5 => q.ceil() as usize - 1,
        })
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Tables => "tables",
            Convention::Eq5 => "eq5",
        })
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "tables" => Ok(Convention::Tables),
            "eq5" => Ok(Convention::Eq5),
            other => Err(format!(
                "unknown convention {other:?} (expected \"tables\" or \"eq5\")"
            )),
        }
    }
}

/// How long the vehicle stays inside a zone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZoneDuration {
    /// Passing-through time given directly, in milliseconds.
    Time { t_z_ms: f64 },
    /// Zone length and (constant) vehicle speed; the passing-through time
    /// is `1000 * length_m / speed_mps` milliseconds.
    Road { length_m: f64, speed_mps: f64 },
}

impl ZoneDuration {
    fn validate(&self) -> Result<()> {
        match *self {
            ZoneDuration::Time { t_z_ms } => check_positive("t_z_ms", t_z_ms),
            ZoneDuration::Road { length_m, speed_mps } => {
                check_positive("length_m", length_m)?;
                check_positive("speed_mps", speed_mps)
            }
        }
    }

    /// The passing-through time in milliseconds.
    pub fn t_z_ms(&self) -> f64 {
        match *self {
            ZoneDuration::Time { t_z_ms } => t_z_ms,
            ZoneDuration::Road { length_m, speed_mps } => 1000.0 * length_m / speed_mps,
        }
    }
}

/// One perturbation zone: how long the vehicle is exposed and which error
/// model applies while inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmiZone {
    duration: ZoneDuration,
    model: ErrorModel,
}

impl EmiZone {
    /// Builds a zone, validating the duration and model parameters.
    pub fn new(duration: ZoneDuration, model: ErrorModel) -> Result<Self> {
        duration.validate()?;
        model.validate()?;
        Ok(Self { duration, model })
    }

    /// Zone with the passing-through time given directly.
    pub fn from_time(t_z_ms: f64, model: ErrorModel) -> Result<Self> {
        Self::new(ZoneDuration::Time { t_z_ms }, model)
    }

    /// Zone given as road length and constant vehicle speed.
    pub fn from_road(length_m: f64, speed_mps: f64, model: ErrorModel) -> Result<Self> {
        Self::new(ZoneDuration::Road { length_m, speed_mps }, model)
    }

    /// The duration as supplied.
    pub fn duration(&self) -> ZoneDuration {
        self.duration
    }

    /// The passing-through time in milliseconds.
    pub fn t_z_ms(&self) -> f64 {
        self.duration.t_z_ms()
    }

    /// The error model active inside the zone.
    pub fn model(&self) -> ErrorModel {
        self.model
    }
}

/// One evaluated grid point: the discretized zone and its failure
/// probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FailureRow {
    /// TDMA cycle duration this row was evaluated at, in milliseconds.
    pub t_cyc_ms: f64,
    /// Worst-case number of perturbed cycles in the zone.
    pub n: usize,
    /// Maximum tolerable number of consecutive erroneous cycles.
    pub k_tol: usize,
    /// Probability that a run of `k_tol + 1` erroneous cycles occurs.
    pub p_fail: f64,
}

/// Worst-case number of TDMA cycles perturbed while crossing a zone:
/// `ceil(t_z / t_cyc) + 2`. The two extra cycles cover the partially
/// corrupted boundary cycle on entry and the late consumption of the last
/// affected sample on exit.
///
/// # Errors
///
/// [`Error::NonpositiveInput`] unless both durations are positive reals.
pub fn zone_to_cycles(t_z_ms: f64, t_cyc_ms: f64) -> Result<usize> {
    check_positive("t_z_ms", t_z_ms)?;
    check_positive("t_cyc_ms", t_cyc_ms)?;
    Ok(snapped_quotient(t_z_ms, t_cyc_ms).ceil() as usize + 2)
}

/// Maximum tolerable number of consecutive erroneous cycles,
/// `k_tol = floor(t_max / t_cyc)`, as printed in the reference tables'
/// `k` column (the [`Convention::Tables`] discretization).
///
/// # Errors
///
/// [`Error::NonpositiveInput`] unless both durations are positive reals.
pub fn tolerance_to_k(t_max_ms: f64, t_cyc_ms: f64) -> Result<usize> {
    Convention::Tables.k_tol(t_max_ms, t_cyc_ms)
}

/// Evaluates one zone at one cycle duration: discretizes `(n, k_tol)`,
/// generates the model profile, and computes the probability of an
/// erroneous run strictly exceeding the tolerable count.
///
/// # Errors
///
/// Propagates discretization and model errors.
pub fn zone_failure_probability(
    zone: &EmiZone,
    timing: &TdmaTiming,
    convention: Convention,
) -> Result<FailureRow> {
    let n = zone_to_cycles(zone.t_z_ms(), timing.t_cyc_ms())?;
    let profile = zone.model().profile(n)?;
    profile_failure_row(&profile, timing, convention)
}

/// Like [`zone_failure_probability`] for a profile already in hand (e.g.
/// loaded from measurements); `n` is the profile length.
///
/// # Errors
///
/// Propagates discretization and run-law errors.
pub fn profile_failure_row(
    profile: &ErrorProfile,
    timing: &TdmaTiming,
    convention: Convention,
) -> Result<FailureRow> {
    let k_tol = convention.k_tol(timing.t_max_ms(), timing.t_cyc_ms())?;
    let p_fail = failure_probability(profile, k_tol + 1)?;
    Ok(FailureRow {
        t_cyc_ms: timing.t_cyc_ms(),
        n: profile.len(),
        k_tol,
        p_fail,
    })
}

/// Probability that at least one of several independent zones causes a
/// failure: `1 - prod_j (1 - p_fail_j)`. Independence is justified by the
/// recovery assumption — one correct cycle between zones fully resets the
/// application.
///
/// # Errors
///
/// [`Error::EmptyComposition`] for an empty row sequence.
pub fn compose_zones(rows: &[FailureRow]) -> Result<f64> {
    if rows.is_empty() {
        return Err(Error::EmptyComposition);
    }
    let survive: f64 = rows.iter().map(|r| 1.0 - r.p_fail).product();
    Ok(1.0 - survive)
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value <= 0.0 || !value.is_finite() {
        return Err(Error::NonpositiveInput { name, value });
    }
    Ok(())
}

fn snapped_quotient(numerator: f64, denominator: f64) -> f64 {
    let q = numerator / denominator;
    let nearest = q.round();
    if (q - nearest).abs() <= QUOTIENT_SNAP {
        nearest
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zone_to_cycles_matches_reference_rows() {
        assert_eq!(zone_to_cycles(1500.0, 4.0).unwrap(), 377);
        assert_eq!(zone_to_cycles(1500.0, 4.25).unwrap(), 355);
        assert_eq!(zone_to_cycles(1500.0, 10.0).unwrap(), 152);
        assert_eq!(zone_to_cycles(7.0, 7.0).unwrap(), 3);
    }

    #[test]
    fn zone_to_cycles_survives_inexact_division() {
        // 21 / 0.7 = 30 exactly as reals, but the float quotient lands at
        // 30.000000000000004; snapping keeps the ceil from overshooting.
        assert_eq!(zone_to_cycles(21.0, 0.7).unwrap(), 32);
        assert_eq!(zone_to_cycles(40.0, 0.1).unwrap(), 402);
        assert_eq!(zone_to_cycles(1500.0, 2.5).unwrap(), 602);
    }

    #[test]
    fn zone_to_cycles_rejects_nonpositive() {
        assert!(matches!(
            zone_to_cycles(0.0, 4.0).unwrap_err(),
            Error::NonpositiveInput { name: "t_z_ms", .. }
        ));
        assert!(zone_to_cycles(1500.0, -1.0).is_err());
        assert!(zone_to_cycles(f64::NAN, 4.0).is_err());
        assert!(zone_to_cycles(f64::INFINITY, 4.0).is_err());
    }

    #[test]
    fn tolerance_matches_reference_rows() {
        assert_eq!(tolerance_to_k(40.0, 4.0).unwrap(), 10);
        // ceil(40 / 8.25) would give 5; the tables print 4.
        assert_eq!(tolerance_to_k(40.0, 8.25).unwrap(), 4);
        assert_eq!(tolerance_to_k(40.0, 9.5).unwrap(), 4);
        assert_eq!(tolerance_to_k(40.0, 0.1).unwrap(), 400);
        // 49 / 0.07 = 700 as reals but 699.9999999999999 as floats; the
        // snap keeps the floor from undershooting.
        assert_eq!(tolerance_to_k(49.0, 0.07).unwrap(), 700);
    }

    #[test]
    fn conventions_agree_except_on_exact_division() {
        // 40 / 8.25 is not an integer: both conventions give 4.
        assert_eq!(Convention::Tables.k_tol(40.0, 8.25).unwrap(), 4);
        assert_eq!(Convention::Eq5.k_tol(40.0, 8.25).unwrap(), 4);
        // 40 / 8 = 5 exactly: the strict form fails one cycle earlier.
        assert_eq!(Convention::Tables.k_tol(40.0, 8.0).unwrap(), 5);
        assert_eq!(Convention::Eq5.k_tol(40.0, 8.0).unwrap(), 4);
    }

    #[test]
    fn convention_parses_from_str() {
        assert_eq!("tables".parse::<Convention>().unwrap(), Convention::Tables);
        assert_eq!("eq5".parse::<Convention>().unwrap(), Convention::Eq5);
        assert!("ceil".parse::<Convention>().is_err());
        assert_eq!(Convention::default(), Convention::Tables);
    }

    #[test]
    fn road_duration_converts_to_time() {
        let zone = EmiZone::from_road(30.0, 20.0, ErrorModel::Constant { p: 0.1 }).unwrap();
        assert_eq!(zone.t_z_ms(), 1500.0);
    }

    #[test]
    fn zone_rejects_invalid_duration_or_model() {
        assert!(EmiZone::from_time(-5.0, ErrorModel::Constant { p: 0.1 }).is_err());
        assert!(EmiZone::from_road(30.0, 0.0, ErrorModel::Constant { p: 0.1 }).is_err());
        assert!(EmiZone::from_time(1500.0, ErrorModel::Radio { a: 3.0, b: 2.0 }).is_err());
    }

    #[test]
    fn timing_flags_cycle_longer_than_tolerance() {
        let timing = TdmaTiming::new(50.0, 40.0).unwrap();
        assert!(timing.cycle_exceeds_tolerance());
        assert!(!TdmaTiming::new(4.0, 40.0).unwrap().cycle_exceeds_tolerance());
    }

    #[test]
    fn zone_failure_matches_published_constant_rows() {
        let zone = EmiZone::from_time(1500.0, ErrorModel::Constant { p: 0.1 }).unwrap();

        let row = zone_failure_probability(
            &zone,
            &TdmaTiming::new(4.0, 40.0).unwrap(),
            Convention::Tables,
        )
        .unwrap();
        assert_eq!((row.n, row.k_tol), (377, 10));
        assert!((row.p_fail - 3.30e-9).abs() <= 0.01 * 3.30e-9);

        let row = zone_failure_probability(
            &zone,
            &TdmaTiming::new(8.0, 40.0).unwrap(),
            Convention::Tables,
        )
        .unwrap();
        assert_eq!((row.n, row.k_tol), (190, 5));
        assert!((row.p_fail - 1.67e-4).abs() <= 0.01 * 1.67e-4);
    }

    #[test]
    fn strict_convention_fails_earlier_on_exact_division() {
        let zone = EmiZone::from_time(1500.0, ErrorModel::Constant { p: 0.1 }).unwrap();
        let timing = TdmaTiming::new(8.0, 40.0).unwrap();
        let tables = zone_failure_probability(&zone, &timing, Convention::Tables).unwrap();
        let strict = zone_failure_probability(&zone, &timing, Convention::Eq5).unwrap();
        assert_eq!(strict.n, tables.n);
        assert_eq!(strict.k_tol, tables.k_tol - 1);
        // One cycle less tolerance costs roughly a factor 1/p = 10 here.
        assert!(strict.p_fail > 9.0 * tables.p_fail);
    }

    #[test]
    fn all_zero_profile_never_fails() {
        let zone = EmiZone::from_time(1500.0, ErrorModel::Constant { p: 0.0 }).unwrap();
        let row = zone_failure_probability(
            &zone,
            &TdmaTiming::new(4.0, 40.0).unwrap(),
            Convention::Tables,
        )
        .unwrap();
        assert_eq!(row.p_fail, 0.0);
    }

    #[test]
    fn compose_zones_examples() {
        let row = |p_fail| FailureRow {
            t_cyc_ms: 4.0,
            n: 10,
            k_tol: 2,
            p_fail,
        };
        assert_eq!(compose_zones(&[row(0.25)]).unwrap(), 0.25);
        assert_eq!(compose_zones(&[row(0.0), row(0.0)]).unwrap(), 0.0);
        assert_eq!(compose_zones(&[row(0.5), row(0.5)]).unwrap(), 0.75);
        assert!(matches!(
            compose_zones(&[]).unwrap_err(),
            Error::EmptyComposition
        ));
    }

    #[test]
    fn composition_between_union_bounds() {
        let rows: Vec<FailureRow> = [1e-3, 2e-4, 5e-2]
            .iter()
            .map(|&p_fail| FailureRow {
                t_cyc_ms: 1.0,
                n: 1,
                k_tol: 0,
                p_fail,
            })
            .collect();
        let combined = compose_zones(&rows).unwrap();
        let max = 5e-2;
        let sum = 1e-3 + 2e-4 + 5e-2;
        assert!(combined >= max);
        assert!(combined <= sum);
    }
}
