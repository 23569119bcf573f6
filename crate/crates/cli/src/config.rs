//! JSON run-configuration parsing.
//!
//! The document has two top-level keys:
//!
//! ```json
//! {
//!   "tdma": {
//!     "t_cyc_ms": 4.0,                                   // or {"start": 4, "end": 10, "step": 0.25}
//!     "t_max_ms": 40.0
//!   },
//!   "zones": [
//!     {
//!       "t_z_ms": 1500.0,                                // or "length_m" + "speed_mps"
//!       "model": {"type": "constant", "p": 0.1}          // or radio / radar / file
//!     }
//!   ]
//! }
//! ```
//!
//! Exactly one duration form per zone. Unknown keys are rejected in strict
//! mode and collected as warnings in lenient mode. Schema violations are
//! reported with a JSON-pointer-style path; parameter-constraint violations
//! are reported with the violated invariant named (and exit differently —
//! see [`CliError::exit_code`]).

use std::path::PathBuf;

use serde_json::{Map, Value};

use runlaw::{ErrorModel, ZoneDuration};

use crate::error::{schema, CliError};

/// Whether unknown config keys abort parsing or only produce warnings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    #[default]
    Strict,
    Lenient,
}

/// The cycle-duration axis: a single value or a sweep grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CycleSpec {
    Scalar(f64),
    Grid { start: f64, end: f64, step: f64 },
}

/// A zone's error model as written in the config: parametric, or a path to
/// a measured profile file.
#[derive(Debug, Clone, PartialEq)]
pub enum ZoneModelSpec {
    Parametric(ErrorModel),
    File(PathBuf),
}

impl ZoneModelSpec {
    /// Human-readable label for report metadata.
    pub fn describe(&self) -> String {
        match self {
            ZoneModelSpec::Parametric(model) => model.to_string(),
            ZoneModelSpec::File(path) => format!("file({})", path.display()),
        }
    }
}

/// One zone entry from the config.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoneSpec {
    pub duration: ZoneDuration,
    pub model: ZoneModelSpec,
}

/// A fully validated config document, not yet specialized to a subcommand
/// shape.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedConfig {
    pub t_cyc: CycleSpec,
    pub t_max_ms: f64,
    pub zones: Vec<ZoneSpec>,
    /// Lenient-mode notes (ignored unknown keys), for stderr.
    pub warnings: Vec<String>,
}

/// A single-evaluation request: one cycle duration, one zone.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleRequest {
    pub t_cyc_ms: f64,
    pub t_max_ms: f64,
    pub zone: ZoneSpec,
}

/// A trajectory-composition request: one cycle duration, one or more zones.
#[derive(Debug, Clone, PartialEq)]
pub struct ComposeRequest {
    pub t_cyc_ms: f64,
    pub t_max_ms: f64,
    pub zones: Vec<ZoneSpec>,
}

impl ParsedConfig {
    /// Specializes to a single evaluation (`eval`, `simulate`).
    pub fn into_single(self) -> Result<SingleRequest, CliError> {
        let t_cyc_ms = match self.t_cyc {
            CycleSpec::Scalar(v) => v,
            CycleSpec::Grid { .. } => {
                return Err(CliError::Usage(
                    "this subcommand evaluates a single point; give \"t_cyc_ms\" as a \
                     number, not a grid (use `sweep` for grids)"
                        .into(),
                ))
            }
        };
        let mut zones = self.zones;
        if zones.len() != 1 {
            return Err(CliError::Usage(format!(
                "this subcommand takes exactly one zone; the config has {} \
                 (use `compose` for multi-zone trajectories)",
                zones.len()
            )));
        }
        Ok(SingleRequest {
            t_cyc_ms,
            t_max_ms: self.t_max_ms,
            zone: zones.remove(0),
        })
    }

    /// Specializes to a sweep (`sweep`); the grid itself is validated by
    /// [`crate::report::SweepSpec`].
    pub fn into_sweep(self) -> Result<crate::report::SweepSpec, CliError> {
        let (start, end, step) = match self.t_cyc {
            CycleSpec::Grid { start, end, step } => (start, end, step),
            CycleSpec::Scalar(_) => {
                return Err(CliError::Usage(
                    "`sweep` needs a grid: give \"t_cyc_ms\" as \
                     {\"start\": ..., \"end\": ..., \"step\": ...}"
                        .into(),
                ))
            }
        };
        let mut zones = self.zones;
        if zones.len() != 1 {
            return Err(CliError::Usage(format!(
                "`sweep` takes exactly one zone; the config has {}",
                zones.len()
            )));
        }
        crate::report::SweepSpec::new(start, end, step, self.t_max_ms, zones.remove(0))
    }

    /// Specializes to a composition (`compose`).
    pub fn into_compose(self) -> Result<ComposeRequest, CliError> {
        let t_cyc_ms = match self.t_cyc {
            CycleSpec::Scalar(v) => v,
            CycleSpec::Grid { .. } => {
                return Err(CliError::Usage(
                    "`compose` evaluates one cycle duration; give \"t_cyc_ms\" as a number"
                        .into(),
                ))
            }
        };
        Ok(ComposeRequest {
            t_cyc_ms,
            t_max_ms: self.t_max_ms,
            zones: self.zones,
        })
    }
}

/// Parses and validates a config document.
///
/// # Errors
///
/// [`CliError::Schema`] for malformed JSON, wrong types, missing or (in
/// strict mode) unknown keys, and ambiguous zone durations;
/// [`CliError::Domain`] when a value violates a model or timing invariant.
pub fn parse_config(text: &str, strictness: Strictness) -> Result<ParsedConfig, CliError> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| schema("/", format!("document is not valid JSON: {e}")))?;
    let mut warnings = Vec::new();

    let obj = as_object(&root, "/")?;
    check_keys(obj, &["tdma", "zones"], "", strictness, &mut warnings)?;

    let tdma = as_object(
        obj.get("tdma")
            .ok_or_else(|| schema("/tdma", "missing required key"))?,
        "/tdma",
    )?;
    check_keys(
        tdma,
        &["t_cyc_ms", "t_max_ms"],
        "/tdma",
        strictness,
        &mut warnings,
    )?;
    let t_cyc = parse_cycle_spec(
        tdma.get("t_cyc_ms")
            .ok_or_else(|| schema("/tdma/t_cyc_ms", "missing required key"))?,
        strictness,
        &mut warnings,
    )?;
    let t_max_ms = number(tdma.get("t_max_ms"), "/tdma/t_max_ms")?;

    let zones_value = obj
        .get("zones")
        .ok_or_else(|| schema("/zones", "missing required key"))?;
    let zones_array = zones_value
        .as_array()
        .ok_or_else(|| schema("/zones", "expected an array of zones"))?;
    if zones_array.is_empty() {
        return Err(schema("/zones", "at least one zone is required"));
    }
    let zones = zones_array
        .iter()
        .enumerate()
        .map(|(i, z)| parse_zone(z, &format!("/zones/{i}"), strictness, &mut warnings))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(ParsedConfig {
        t_cyc,
        t_max_ms,
        zones,
        warnings,
    })
}

fn parse_cycle_spec(
    value: &Value,
    strictness: Strictness,
    warnings: &mut Vec<String>,
) -> Result<CycleSpec, CliError> {
    const PATH: &str = "/tdma/t_cyc_ms";
    match value {
        Value::Number(_) => Ok(CycleSpec::Scalar(number(Some(value), PATH)?)),
        Value::Object(grid) => {
            check_keys(grid, &["start", "end", "step"], PATH, strictness, warnings)?;
            Ok(CycleSpec::Grid {
                start: number(grid.get("start"), &format!("{PATH}/start"))?,
                end: number(grid.get("end"), &format!("{PATH}/end"))?,
                step: number(grid.get("step"), &format!("{PATH}/step"))?,
            })
        }
        _ => Err(schema(
            PATH,
            "expected a number or {\"start\", \"end\", \"step\"}",
        )),
    }
}

fn parse_zone(
    value: &Value,
    path: &str,
    strictness: Strictness,
    warnings: &mut Vec<String>,
) -> Result<ZoneSpec, CliError> {
    let obj = as_object(value, path)?;
    check_keys(
        obj,
        &["t_z_ms", "length_m", "speed_mps", "model"],
        path,
        strictness,
        warnings,
    )?;

    let t_z_ms = opt_number(obj, "t_z_ms", path)?;
    let length_m = opt_number(obj, "length_m", path)?;
    let speed_mps = opt_number(obj, "speed_mps", path)?;

    let duration = match (t_z_ms, length_m, speed_mps) {
        (Some(t_z_ms), None, None) => ZoneDuration::Time { t_z_ms },
        (None, Some(length_m), Some(speed_mps)) => ZoneDuration::Road {
            length_m,
            speed_mps,
        },
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err(schema(
                path,
                "ambiguous duration: give either \"t_z_ms\" or \
                 \"length_m\" + \"speed_mps\", not both",
            ))
        }
        (None, Some(_), None) => {
            return Err(schema(
                format!("{path}/speed_mps"),
                "\"speed_mps\" is required alongside \"length_m\"",
            ))
        }
        (None, None, Some(_)) => {
            return Err(schema(
                format!("{path}/length_m"),
                "\"length_m\" is required alongside \"speed_mps\"",
            ))
        }
        (None, None, None) => {
            return Err(schema(
                path,
                "a zone duration is required: \"t_z_ms\" or \"length_m\" + \"speed_mps\"",
            ))
        }
    };
    validate_duration(&duration)?;

    let model_path = format!("{path}/model");
    let model_value = obj
        .get("model")
        .ok_or_else(|| schema(model_path.clone(), "missing required key"))?;
    let model = parse_model(model_value, &model_path, strictness, warnings)?;

    Ok(ZoneSpec { duration, model })
}

fn validate_duration(duration: &ZoneDuration) -> Result<(), CliError> {
    // Route positivity through the core constructors so the constraint
    // message (and exit class) is the domain one, not a schema error.
    let probe = runlaw::EmiZone::new(*duration, ErrorModel::Constant { p: 0.0 })?;
    let _ = probe;
    Ok(())
}

fn parse_model(
    value: &Value,
    path: &str,
    strictness: Strictness,
    warnings: &mut Vec<String>,
) -> Result<ZoneModelSpec, CliError> {
    let obj = as_object(value, path)?;
    let type_path = format!("{path}/type");
    let kind = obj
        .get("type")
        .ok_or_else(|| schema(type_path.clone(), "missing required key"))?
        .as_str()
        .ok_or_else(|| schema(type_path.clone(), "expected a string"))?;

    let spec = match kind {
        "constant" => {
            check_keys(obj, &["type", "p"], path, strictness, warnings)?;
            ZoneModelSpec::Parametric(ErrorModel::Constant {
                p: number(obj.get("p"), &format!("{path}/p"))?,
            })
        }
        "radio" => {
            check_keys(obj, &["type", "a", "b"], path, strictness, warnings)?;
            ZoneModelSpec::Parametric(ErrorModel::Radio {
                a: number(obj.get("a"), &format!("{path}/a"))?,
                b: number(obj.get("b"), &format!("{path}/b"))?,
            })
        }
        "radar" => {
            check_keys(obj, &["type", "a", "b", "t_cycles"], path, strictness, warnings)?;
            ZoneModelSpec::Parametric(ErrorModel::Radar {
                a: number(obj.get("a"), &format!("{path}/a"))?,
                b: number(obj.get("b"), &format!("{path}/b"))?,
                t_cycles: number(obj.get("t_cycles"), &format!("{path}/t_cycles"))?,
            })
        }
        "file" => {
            check_keys(obj, &["type", "path"], path, strictness, warnings)?;
            let file = obj
                .get("path")
                .ok_or_else(|| schema(format!("{path}/path"), "missing required key"))?
                .as_str()
                .ok_or_else(|| schema(format!("{path}/path"), "expected a string"))?;
            ZoneModelSpec::File(PathBuf::from(file))
        }
        other => {
            return Err(schema(
                type_path,
                format!(
                    "unknown model type {other:?} (expected \"constant\", \"radio\", \
                     \"radar\", or \"file\")"
                ),
            ))
        }
    };
    if let ZoneModelSpec::Parametric(model) = &spec {
        model.validate()?;
    }
    Ok(spec)
}

fn as_object<'v>(value: &'v Value, path: &str) -> Result<&'v Map<String, Value>, CliError> {
    value
        .as_object()
        .ok_or_else(|| schema(path, "expected an object"))
}

fn number(value: Option<&Value>, path: &str) -> Result<f64, CliError> {
    let value = value.ok_or_else(|| schema(path, "missing required key"))?;
    value
        .as_f64()
        .ok_or_else(|| schema(path, "expected a number"))
}

/// Reads an optional numeric key; explicit `null` counts as absent (the
/// schema allows spelling unused duration fields as null).
fn opt_number(
    obj: &Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<Option<f64>, CliError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(value) => value
            .as_f64()
            .map(Some)
            .ok_or_else(|| schema(format!("{path}/{key}"), "expected a number or null")),
    }
}

fn check_keys(
    obj: &Map<String, Value>,
    allowed: &[&str],
    path: &str,
    strictness: Strictness,
    warnings: &mut Vec<String>,
) -> Result<(), CliError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            match strictness {
                Strictness::Strict => {
                    return Err(schema(
                        format!("{path}/{key}"),
                        "unknown key (pass --lenient to ignore)",
                    ))
                }
                Strictness::Lenient => {
                    warnings.push(format!("ignoring unknown config key {path}/{key}"));
                }
            }
        }
    }
    Ok(())
}
