//! Output rendering: CSV for downstream tooling, whitespace-separated plot
//! data, and human-readable summaries. All emitters return the full output
//! as a string with `\n` line endings.

use std::fmt::Write as _;

use runlaw::{ErrorProfile, FailureRow};

use crate::report::{ComposeReport, FailureReport, SimulationReport};

/// Formats a cycle duration without trailing zeros (`4`, `4.25`, `8.125`).
/// Six decimals cover every grid the tool produces before trimming.
pub fn format_t_cyc(t_cyc_ms: f64) -> String {
    let mut s = format!("{t_cyc_ms:.6}");
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}

/// Formats a probability in scientific notation with nine significant
/// digits (`3.30000000e-9`).
pub fn format_p(p: f64) -> String {
    format!("{p:.8e}")
}

fn push_row(out: &mut String, row: &FailureRow) {
    let _ = writeln!(
        out,
        "{},{},{},{}",
        format_t_cyc(row.t_cyc_ms),
        row.n,
        row.k_tol,
        format_p(row.p_fail)
    );
}

/// CSV with header `t_cyc_ms,n,k_tol,p_fail`, one row per grid point.
pub fn csv(report: &FailureReport) -> String {
    let mut out = String::from("t_cyc_ms,n,k_tol,p_fail\n");
    for row in &report.rows {
        push_row(&mut out, row);
    }
    out
}

/// CSV for a pair of sweeps over the same grid (`p_fail` from the first,
/// `p_fail_prime` from the second); both must be row-aligned.
pub fn csv_pair(base: &FailureReport, prime: &FailureReport) -> String {
    debug_assert_eq!(base.rows.len(), prime.rows.len());
    let mut out = String::from("t_cyc_ms,n,k_tol,p_fail,p_fail_prime\n");
    for (row, row_prime) in base.rows.iter().zip(&prime.rows) {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_t_cyc(row.t_cyc_ms),
            row.n,
            row.k_tol,
            format_p(row.p_fail),
            format_p(row_prime.p_fail)
        );
    }
    out
}

/// CSV for a composed trajectory: the per-zone rows, then the composed
/// probability as a trailing comment so the rows stay machine-readable.
pub fn compose_csv(report: &ComposeReport) -> String {
    let mut out = String::from("t_cyc_ms,n,k_tol,p_fail\n");
    for zone in &report.zones {
        push_row(&mut out, &zone.row);
    }
    let _ = writeln!(
        out,
        "# trajectory_p_fail {}",
        format_p(report.trajectory_p_fail)
    );
    out
}

/// CSV for a simulation: the analytic row extended with the estimate.
pub fn simulate_csv(report: &SimulationReport) -> String {
    let mut out = String::from("t_cyc_ms,n,k_tol,p_fail,p_hat,std_err,trials,seed\n");
    let row = &report.row;
    let est = &report.estimate;
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{}",
        format_t_cyc(row.t_cyc_ms),
        row.n,
        row.k_tol,
        format_p(row.p_fail),
        format_p(est.p_hat),
        format_p(est.std_err),
        est.trials,
        est.seed
    );
    out
}

/// Whitespace-separated `t_cyc_ms p_fail` pairs for plotting a sweep.
pub fn plot_data(report: &FailureReport) -> String {
    let mut out = String::from("# t_cyc_ms p_fail\n");
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{} {}",
            format_t_cyc(row.t_cyc_ms),
            format_p(row.p_fail)
        );
    }
    out
}

/// Whitespace-separated `i p_i` pairs (cycles numbered from 1) for plotting
/// a discretized error profile.
pub fn profile_dump(profile: &ErrorProfile) -> String {
    let mut out = String::from("# i p_i\n");
    for (i, p) in profile.probs().iter().enumerate() {
        let _ = writeln!(out, "{} {}", i + 1, p);
    }
    out
}

/// Whitespace-separated `t_cyc_ms p_fail p_fail_prime` triples for
/// plotting a pair of row-aligned sweeps.
pub fn pair_plot_data(base: &FailureReport, prime: &FailureReport) -> String {
    debug_assert_eq!(base.rows.len(), prime.rows.len());
    let mut out = String::from("# t_cyc_ms p_fail p_fail_prime\n");
    for (row, row_prime) in base.rows.iter().zip(&prime.rows) {
        let _ = writeln!(
            out,
            "{} {} {}",
            format_t_cyc(row.t_cyc_ms),
            format_p(row.p_fail),
            format_p(row_prime.p_fail)
        );
    }
    out
}

/// Human-readable pair of sweeps, one block per parameter set.
pub fn pair_pretty(base: &FailureReport, prime: &FailureReport) -> String {
    format!("{}\n{}", pretty(base), pretty(prime))
}

/// Whitespace-separated `zone p_fail` pairs (zones numbered from 1) plus
/// the composed probability, for plotting a trajectory.
pub fn compose_plot_data(report: &ComposeReport) -> String {
    let mut out = String::from("# zone p_fail\n");
    for (i, zone) in report.zones.iter().enumerate() {
        let _ = writeln!(out, "{} {}", i + 1, format_p(zone.row.p_fail));
    }
    let _ = writeln!(
        out,
        "# trajectory_p_fail {}",
        format_p(report.trajectory_p_fail)
    );
    out
}

/// Human-readable sweep or single evaluation.
pub fn pretty(report: &FailureReport) -> String {
    let meta = &report.meta;
    let mut out = format!(
        "zone: {} over {} ms, tolerance {} ms (convention: {})\n\n",
        meta.model,
        format_t_cyc(meta.t_z_ms),
        format_t_cyc(meta.t_max_ms),
        meta.convention
    );
    out.push_str("  t_cyc_ms      n  k_tol          p_fail\n");
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{:>10}  {:>5}  {:>5}  {:>14}",
            format_t_cyc(row.t_cyc_ms),
            row.n,
            row.k_tol,
            format_p(row.p_fail)
        );
    }
    out
}

/// Human-readable trajectory composition.
pub fn compose_pretty(report: &ComposeReport) -> String {
    let mut out = format!(
        "trajectory at t_cyc = {} ms, tolerance {} ms (convention: {})\n",
        format_t_cyc(report.t_cyc_ms),
        format_t_cyc(report.t_max_ms),
        report.convention
    );
    for (i, zone) in report.zones.iter().enumerate() {
        let _ = writeln!(
            out,
            "  zone {}: {}  n = {}, k_tol = {}, p_fail = {}",
            i + 1,
            zone.label,
            zone.row.n,
            zone.row.k_tol,
            format_p(zone.row.p_fail)
        );
    }
    let _ = writeln!(
        out,
        "trajectory p_fail = {}",
        format_p(report.trajectory_p_fail)
    );
    out
}

/// Human-readable simulation cross-check.
pub fn simulate_pretty(report: &SimulationReport) -> String {
    let meta = &report.meta;
    let row = &report.row;
    let est = &report.estimate;
    let mut out = format!(
        "zone: {} over {} ms, tolerance {} ms (convention: {})\n",
        meta.model,
        format_t_cyc(meta.t_z_ms),
        format_t_cyc(meta.t_max_ms),
        meta.convention
    );
    let _ = writeln!(
        out,
        "t_cyc = {} ms  ->  n = {}, k_tol = {}",
        format_t_cyc(row.t_cyc_ms),
        row.n,
        row.k_tol
    );
    let _ = writeln!(out, "analytic     p_fail = {}", format_p(row.p_fail));
    let _ = writeln!(
        out,
        "monte carlo  p_hat  = {}  (std_err = {}, trials = {}, seed = {})",
        format_p(est.p_hat),
        format_p(est.std_err),
        est.trials,
        est.seed
    );
    out
}
