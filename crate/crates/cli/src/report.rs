//! CSV rows and human-readable summaries.

use std::fmt::Write;

use g2u_core::{Design, EnergyPoint, ParetoCurve, SystemParams, TrajectoryKind};

const CIRCULAR_HEADER: &str = "E2_J,E1_J,T_s,r_m,V_mps,p1_W";
const STRAIGHT_HEADER: &str = "E2_J,E1_J,V_mps,p1_W,branch,T_s";

fn num(x: f64) -> String {
    format!("{x:.9e}")
}

fn row(point: &EnergyPoint) -> String {
    let (e2, e1) = (num(point.e2), num(point.e1));
    match &point.design {
        Design::Circular(d) => {
            format!(
                "{e2},{e1},{},{},{},{}",
                num(d.duration),
                num(d.radius),
                num(d.speed),
                num(d.p1)
            )
        }
        Design::Straight(d) => {
            format!(
                "{e2},{e1},{},{},{},{}",
                num(d.speed),
                num(d.p1),
                d.branch,
                num(d.duration)
            )
        }
    }
}

/// Comment line, header, and one row per feasible point.
pub fn csv(curve: &ParetoCurve, comment: &str) -> String {
    let header = match curve.kind {
        TrajectoryKind::Circular => CIRCULAR_HEADER,
        TrajectoryKind::Straight => STRAIGHT_HEADER,
    };
    let mut out = format!("{comment}\n{header}\n");
    for p in &curve.points {
        out.push_str(&row(p));
        out.push('\n');
    }
    out
}

pub fn grid_comment(curve: &ParetoCurve, n: usize) -> String {
    let all_e2 = curve
        .points
        .iter()
        .map(|p| p.e2)
        .chain(curve.skipped.iter().map(|s| s.e2));
    let lo = all_e2.clone().fold(f64::INFINITY, f64::min);
    let hi = all_e2.fold(f64::NEG_INFINITY, f64::max);
    let units = match curve.kind {
        TrajectoryKind::Circular => "E2,E1 in J; T in s; r in m; V in m/s; p1 in W",
        TrajectoryKind::Straight => "E2,E1 in J; V in m/s; p1 in W; T in s",
    };
    format!(
        "# geometric E2 grid, {n} points from {} J to {} J; Pc = {} W; Q = {} bits; units: {units}",
        num(lo),
        num(hi),
        curve.params.circuit_power,
        curve.params.data_bits
    )
}

fn describe(label: &str, p: &EnergyPoint) -> String {
    let design = match &p.design {
        Design::Circular(d) => format!(
            "T = {:.3} s, r = {:.3} m, V = {:.3} m/s, p1 = {:.4e} W",
            d.duration, d.radius, d.speed, d.p1
        ),
        Design::Straight(d) => format!(
            "V = {:.3} m/s ({}), T = {:.3} s, p1 = {:.4e} W",
            d.speed, d.branch, d.duration, d.p1
        ),
    };
    format!(
        "{label}: E1 = {:.6e} J, E2 = {:.6e} J; {design}\n",
        p.e1, p.e2
    )
}

pub fn extremes_summary(uav: &EnergyPoint, gt: &EnergyPoint, params: &SystemParams) -> String {
    let mut s = format!(
        "Pc = {} W, Q = {} bits\n",
        params.circuit_power, params.data_bits
    );
    s.push_str(&describe("UAV-optimal", uav));
    s.push_str(&describe("GT-optimal", gt));
    s
}

pub fn sweep_summary(curve: &ParetoCurve) -> String {
    let mut s = String::new();
    if let (Some(first), Some(last)) = (curve.points.first(), curve.points.last()) {
        s.push_str(&describe("UAV-optimal end", first));
        s.push_str(&describe("GT-optimal end", last));
    }
    let _ = writeln!(s, "{} feasible points", curve.points.len());
    for skip in &curve.skipped {
        let _ = writeln!(
            s,
            "warning: E2 = {:.6e} J skipped: {}",
            skip.e2, skip.reason
        );
    }
    let violations = curve.monotonicity_violations();
    if violations > 0 {
        let _ = writeln!(
            s,
            "warning: E1 increases with E2 at {violations} adjacent pairs"
        );
    }
    s
}
