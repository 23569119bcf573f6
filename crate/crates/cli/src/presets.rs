//! Built-in run setups reproducing the published reference sweeps: a
//! 1500 ms zone, 40 ms outage tolerance, and cycle durations swept from
//! 4 ms to 10 ms in 0.25 ms steps.

use runlaw::{ErrorModel, ZoneDuration};

use crate::config::{ZoneModelSpec, ZoneSpec};
use crate::report::SweepSpec;

const T_Z_MS: f64 = 1500.0;
const T_MAX_MS: f64 = 40.0;
const GRID: (f64, f64, f64) = (4.0, 10.0, 0.25);

fn sweep(model: ErrorModel) -> SweepSpec {
    let zone = ZoneSpec {
        duration: ZoneDuration::Time { t_z_ms: T_Z_MS },
        model: ZoneModelSpec::Parametric(model),
    };
    SweepSpec::new(GRID.0, GRID.1, GRID.2, T_MAX_MS, zone).expect("preset grid is valid")
}

/// Reference table 1 (`repro --table 1`): constant error probability
/// p = 0.1.
pub fn table1() -> SweepSpec {
    sweep(ErrorModel::Constant { p: 0.1 })
}

/// Reference table 2 (`repro --table 2`): the radio-interference pair,
/// parameter sets (a=10, b=20) and the pointwise-dominating (a=11, b=19).
pub fn table2() -> (SweepSpec, SweepSpec) {
    (
        sweep(ErrorModel::Radio { a: 10.0, b: 20.0 }),
        sweep(ErrorModel::Radio { a: 11.0, b: 19.0 }),
    )
}
