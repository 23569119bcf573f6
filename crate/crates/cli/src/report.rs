//! Turning validated requests into evaluated failure reports.

use std::path::PathBuf;

use runlaw::{
    compose_zones, mc_estimate, profile_failure_row, zone_failure_probability, zone_to_cycles,
    Convention, EmiZone, ErrorProfile, FailureRow, McEstimate, TdmaTiming, ZoneDuration,
};

use crate::config::{ComposeRequest, SingleRequest, ZoneModelSpec, ZoneSpec};
use crate::error::CliError;

/// Hard cap on sweep size; a misplaced decimal in `step` should fail fast,
/// not grind through millions of recurrences.
const MAX_GRID_POINTS: usize = 100_000;

/// Grid points may overshoot `end` by accumulated rounding; anything within
/// this fraction of a step still counts as inside.
const GRID_SLACK: f64 = 1e-9;

/// A validated cycle-duration sweep over a single zone.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    t_cyc_start_ms: f64,
    t_cyc_end_ms: f64,
    t_cyc_step_ms: f64,
    t_max_ms: f64,
    zone: ZoneSpec,
}

impl SweepSpec {
    /// Validates the grid bounds; `start == end` degenerates to one point.
    pub fn new(
        start: f64,
        end: f64,
        step: f64,
        t_max_ms: f64,
        zone: ZoneSpec,
    ) -> Result<Self, CliError> {
        for (name, value) in [("start", start), ("end", end), ("step", step)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(CliError::Grid(format!(
                    "\"{name}\" must be a positive real (got {value})"
                )));
            }
        }
        if end < start {
            return Err(CliError::Grid(format!(
                "\"end\" ({end}) is below \"start\" ({start})"
            )));
        }
        Ok(Self {
            t_cyc_start_ms: start,
            t_cyc_end_ms: end,
            t_cyc_step_ms: step,
            t_max_ms,
            zone,
        })
    }

    /// The cycle durations to evaluate: `start, start + step, ...` up to and
    /// including `end` (within rounding slack).
    pub fn grid_points(&self) -> Result<Vec<f64>, CliError> {
        let limit = self.t_cyc_end_ms + self.t_cyc_step_ms * GRID_SLACK;
        let mut points = Vec::new();
        for i in 0.. {
            let t_cyc = self.t_cyc_start_ms + i as f64 * self.t_cyc_step_ms;
            if t_cyc > limit {
                break;
            }
            if points.len() == MAX_GRID_POINTS {
                return Err(CliError::Grid(format!(
                    "more than {MAX_GRID_POINTS} points; check \"step\""
                )));
            }
            points.push(t_cyc);
        }
        Ok(points)
    }
}

/// A zone with its error source materialized: either a parametric model
/// (profiles generated per grid point) or a measured profile from disk.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolvedZone {
    Model(EmiZone),
    Measured {
        duration: ZoneDuration,
        profile: ErrorProfile,
        path: PathBuf,
    },
}

impl ResolvedZone {
    /// Materializes a zone spec, reading the profile file if there is one.
    pub fn resolve(spec: &ZoneSpec) -> Result<Self, CliError> {
        match &spec.model {
            ZoneModelSpec::Parametric(model) => {
                Ok(ResolvedZone::Model(EmiZone::new(spec.duration, *model)?))
            }
            ZoneModelSpec::File(path) => Ok(ResolvedZone::Measured {
                duration: spec.duration,
                profile: ErrorProfile::from_path(path)?,
                path: path.clone(),
            }),
        }
    }

    /// The passing-through time in milliseconds.
    pub fn t_z_ms(&self) -> f64 {
        match self {
            ResolvedZone::Model(zone) => zone.t_z_ms(),
            ResolvedZone::Measured { duration, .. } => duration.t_z_ms(),
        }
    }

    /// Human-readable error-source label for report metadata.
    pub fn describe(&self) -> String {
        match self {
            ResolvedZone::Model(zone) => zone.model().to_string(),
            ResolvedZone::Measured { path, .. } => format!("file({})", path.display()),
        }
    }

    /// The per-cycle error profile for one evaluation: generated from the
    /// model, or the measured profile cut to the zone's cycle count.
    ///
    /// A measured profile shorter than the zone is an error; a longer one is
    /// truncated with a warning (the trailing entries describe cycles after
    /// the vehicle has left).
    pub fn profile_for(
        &self,
        timing: &TdmaTiming,
        warnings: &mut Vec<String>,
    ) -> Result<ErrorProfile, CliError> {
        let n = zone_to_cycles(self.t_z_ms(), timing.t_cyc_ms())?;
        match self {
            ResolvedZone::Model(zone) => Ok(zone.model().profile(n)?),
            ResolvedZone::Measured { profile, path, .. } => {
                if profile.len() < n {
                    return Err(CliError::ProfileTooShort {
                        path: path.clone(),
                        got: profile.len(),
                        needed: n,
                    });
                }
                if profile.len() > n {
                    push_unique(
                        warnings,
                        format!(
                            "profile {} is longer than the zone needs; \
                             trailing entries are ignored",
                            path.display()
                        ),
                    );
                }
                Ok(profile.truncated(n))
            }
        }
    }

    /// One evaluated grid point for this zone.
    pub fn failure_row(
        &self,
        timing: &TdmaTiming,
        convention: Convention,
        warnings: &mut Vec<String>,
    ) -> Result<FailureRow, CliError> {
        warn_if_degenerate(timing, warnings);
        match self {
            ResolvedZone::Model(zone) => {
                Ok(zone_failure_probability(zone, timing, convention)?)
            }
            ResolvedZone::Measured { .. } => {
                let profile = self.profile_for(timing, warnings)?;
                Ok(profile_failure_row(&profile, timing, convention)?)
            }
        }
    }
}

/// Evaluation context shared by every row of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportMeta {
    /// Error-source label (`constant(p=0.1)`, `file(measured.txt)`, ...).
    pub model: String,
    /// Zone passing-through time in milliseconds.
    pub t_z_ms: f64,
    /// Outage tolerance in milliseconds.
    pub t_max_ms: f64,
    /// Threshold discretization in force.
    pub convention: Convention,
}

/// A sweep or single evaluation: one row per cycle duration.
#[derive(Debug, Clone, PartialEq)]
pub struct FailureReport {
    pub rows: Vec<FailureRow>,
    pub meta: ReportMeta,
}

/// A single evaluation, keeping the profile for plotting and simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleReport {
    pub row: FailureRow,
    pub profile: ErrorProfile,
    pub meta: ReportMeta,
}

/// One zone of a composed trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoneRow {
    pub label: String,
    pub row: FailureRow,
}

/// A multi-zone trajectory: per-zone rows and the composed probability.
#[derive(Debug, Clone, PartialEq)]
pub struct ComposeReport {
    pub zones: Vec<ZoneRow>,
    pub trajectory_p_fail: f64,
    pub t_cyc_ms: f64,
    pub t_max_ms: f64,
    pub convention: Convention,
}

/// An analytic row alongside its Monte Carlo cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub row: FailureRow,
    pub estimate: McEstimate,
    pub meta: ReportMeta,
}

/// Evaluates a sweep: the zone's failure probability at every grid point.
pub fn run_sweep(
    spec: &SweepSpec,
    convention: Convention,
    warnings: &mut Vec<String>,
) -> Result<FailureReport, CliError> {
    let zone = ResolvedZone::resolve(&spec.zone)?;
    let base = TdmaTiming::new(spec.t_cyc_start_ms, spec.t_max_ms)?;
    let rows = spec
        .grid_points()?
        .into_iter()
        .map(|t_cyc| zone.failure_row(&base.with_t_cyc_ms(t_cyc)?, convention, warnings))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FailureReport {
        meta: meta_for(&zone, spec.t_max_ms, convention),
        rows,
    })
}

/// Evaluates a single point, retaining the discretized profile.
pub fn run_single(
    req: &SingleRequest,
    convention: Convention,
    warnings: &mut Vec<String>,
) -> Result<SingleReport, CliError> {
    let zone = ResolvedZone::resolve(&req.zone)?;
    let timing = TdmaTiming::new(req.t_cyc_ms, req.t_max_ms)?;
    let row = zone.failure_row(&timing, convention, warnings)?;
    let profile = zone.profile_for(&timing, warnings)?;
    Ok(SingleReport {
        row,
        profile,
        meta: meta_for(&zone, req.t_max_ms, convention),
    })
}

/// Evaluates every zone of a trajectory and composes the results.
pub fn run_compose(
    req: &ComposeRequest,
    convention: Convention,
    warnings: &mut Vec<String>,
) -> Result<ComposeReport, CliError> {
    let timing = TdmaTiming::new(req.t_cyc_ms, req.t_max_ms)?;
    let mut zones = Vec::with_capacity(req.zones.len());
    for spec in &req.zones {
        let zone = ResolvedZone::resolve(spec)?;
        let row = zone.failure_row(&timing, convention, warnings)?;
        zones.push(ZoneRow {
            label: zone.describe(),
            row,
        });
    }
    let rows: Vec<FailureRow> = zones.iter().map(|z| z.row).collect();
    Ok(ComposeReport {
        trajectory_p_fail: compose_zones(&rows)?,
        zones,
        t_cyc_ms: req.t_cyc_ms,
        t_max_ms: req.t_max_ms,
        convention,
    })
}

/// Evaluates a single point analytically and cross-checks it by seeded
/// Monte Carlo simulation of the same profile and threshold.
pub fn run_simulate(
    req: &SingleRequest,
    trials: u64,
    seed: u64,
    convention: Convention,
    warnings: &mut Vec<String>,
) -> Result<SimulationReport, CliError> {
    let single = run_single(req, convention, warnings)?;
    let estimate = mc_estimate(&single.profile, single.row.k_tol + 1, trials, seed)?;
    Ok(SimulationReport {
        row: single.row,
        estimate,
        meta: single.meta,
    })
}

fn meta_for(zone: &ResolvedZone, t_max_ms: f64, convention: Convention) -> ReportMeta {
    ReportMeta {
        model: zone.describe(),
        t_z_ms: zone.t_z_ms(),
        t_max_ms,
        convention,
    }
}

fn warn_if_degenerate(timing: &TdmaTiming, warnings: &mut Vec<String>) {
    if timing.cycle_exceeds_tolerance() {
        push_unique(
            warnings,
            "t_cyc_ms exceeds t_max_ms at one or more evaluation points; a single \
             erroneous cycle is fatal there (k_tol = 0)"
                .to_string(),
        );
    }
}

fn push_unique(warnings: &mut Vec<String>, message: String) {
    if !warnings.contains(&message) {
        warnings.push(message);
    }
}
