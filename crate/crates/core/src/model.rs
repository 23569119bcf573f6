//! Parametric per-cycle error-probability models.
//!
//! Three shapes cover the perturbation sources of interest:
//!
//! - **constant**: every cycle errs with the same probability `p`;
//! - **radio**: a fixed transmitter near the road, free-space inverse-square
//!   coupling, `p_i = a / ((((n+1)/2) - i)^2 + b)` — peaks mid-zone where
//!   the vehicle passes closest;
//! - **radar**: a scanning radar sweeping at a fixed period,
//!   `p_i = a + b * sin(2*pi*i / t_cycles)` with the period expressed in
//!   TDMA cycles.

use std::f64::consts::TAU;
use std::fmt;

use crate::error::Error;
use crate::profile::ErrorProfile;
use crate::Result;

/// A parametric model of per-cycle error probabilities, evaluated over a
/// zone of `n` cycles by [`ErrorModel::profile`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorModel {
    /// Same probability `p` for every cycle; requires `0 <= p <= 1`.
    Constant { p: f64 },
    /// Inverse-square coupling to a transmitter at the zone midpoint;
    /// requires `a > 0`, `b > 0`, `a <= b` (so the peak `a/b <= 1`).
    Radio { a: f64, b: f64 },
    /// Sinusoidal sweep with period `t_cycles` TDMA cycles; requires
    /// `a - b > 0`, `a + b <= 1`, `t_cycles > 0`, and (checked per profile)
    /// `t_cycles < n`.
    Radar { a: f64, b: f64, t_cycles: f64 },
}

impl ErrorModel {
    /// Checks the parameter invariants listed on each variant.
    ///
    /// # Errors
    ///
    /// [`Error::ModelConstraint`] naming the violated invariant.
    pub fn validate(&self) -> Result<()> {
        match *self {
            ErrorModel::Constant { p } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(constraint(format!(
                        "constant model requires 0 <= p <= 1 (got p = {p})"
                    )));
                }
            }
            ErrorModel::Radio { a, b } => {
                if a <= 0.0 || !a.is_finite() {
                    return Err(constraint(format!(
                        "radio model requires a > 0 (got a = {a})"
                    )));
                }
                if b <= 0.0 || !b.is_finite() {
                    return Err(constraint(format!(
                        "radio model requires b > 0 (got b = {b})"
                    )));
                }
                if a > b {
                    return Err(constraint(format!(
                        "radio model requires a <= b so the peak a/b stays a probability \
                         (got a = {a}, b = {b})"
                    )));
                }
            }
            ErrorModel::Radar { a, b, t_cycles } => {
                if !a.is_finite() || !b.is_finite() || a - b <= 0.0 {
                    return Err(constraint(format!(
                        "radar model requires a - b > 0 (got a = {a}, b = {b})"
                    )));
                }
                if a + b > 1.0 {
                    return Err(constraint(format!(
                        "radar model requires a + b <= 1 (got a = {a}, b = {b})"
                    )));
                }
                if t_cycles <= 0.0 || !t_cycles.is_finite() {
                    return Err(constraint(format!(
                        "radar model requires t_cycles > 0 (got t_cycles = {t_cycles})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluates the model over a zone of `n` cycles, `i = 1..n`.
    ///
    /// Parameter invariants guarantee every output already lies in `[0, 1]`;
    /// should an output land outside anyway it is reported as a constraint
    /// error rather than clamped.
    ///
    /// # Errors
    ///
    /// [`Error::ModelConstraint`] for invalid parameters (including a radar
    /// period not shorter than the zone), [`Error::ZeroCycles`] for `n = 0`.
    pub fn profile(&self, n: usize) -> Result<ErrorProfile> {
        self.validate()?;
        if n == 0 {
            return Err(Error::ZeroCycles);
        }
        let probs: Vec<f64> = match *self {
            ErrorModel::Constant { p } => vec![p; n],
            ErrorModel::Radio { a, b } => {
                let center = (n as f64 + 1.0) / 2.0;
                (1..=n)
                    .map(|i| {
                        let d = center - i as f64;
                        a / (d * d + b)
                    })
                    .collect()
            }
            ErrorModel::Radar { a, b, t_cycles } => {
                if t_cycles >= n as f64 {
                    return Err(constraint(format!(
                        "radar period must fit inside the zone, t_cycles < n \
                         (got t_cycles = {t_cycles}, n = {n})"
                    )));
                }
                (1..=n).map(|i| a + b * (TAU * i as f64 / t_cycles).sin()).collect()
            }
        };
        ErrorProfile::new(probs).map_err(|e| match e {
            Error::ProfileProbability { index, value } => constraint(format!(
                "model output p_{index} = {value} is outside [0, 1]"
            )),
            other => other,
        })
    }
}

impl fmt::Display for ErrorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ErrorModel::Constant { p } => write!(f, "constant(p={p})"),
            ErrorModel::Radio { a, b } => write!(f, "radio(a={a}, b={b})"),
            ErrorModel::Radar { a, b, t_cycles } => {
                write!(f, "radar(a={a}, b={b}, t_cycles={t_cycles})")
            }
        }
    }
}

fn constraint(message: String) -> Error {
    Error::ModelConstraint {
        constraint: message,
    }
}
