//! Energy trade-off for a UAV circling the GT.
//!
//! Every returned design delivers exactly `Q` bits: the GT power is always
//! derived from the throughput equation, never clamped.

use std::f64::consts::LN_2;

use crate::channel::circular_throughput;
use crate::error::{Error, Result};
use crate::params::{min_level_power, SystemParams};
use crate::pareto::{
    geometric_grid, within_cap, CircularDesign, Design, EnergyPoint, ParetoCurve, SkippedPoint,
    TrajectoryKind,
};
use crate::propulsion::{min_circular_power, min_radius, optimal_circular_speed, radius_for_power};
use crate::scalar_opt::{bisect_monotone, minimize_1d, SearchSpec};

/// Radius beyond which circular flight is treated as level flight.
pub const MAX_RADIUS: f64 = 1e6;

/// Seed grid size for the searches over mission time and radius.
pub const SEARCH_GRID: usize = 256;

/// Assembles the energy point of a circular design.
pub fn energy_point(design: CircularDesign, params: &SystemParams) -> EnergyPoint {
    EnergyPoint {
        e1: design.duration * (design.p1 + params.circuit_power),
        e2: design.duration * min_circular_power(design.radius, params),
        throughput: circular_throughput(params, design.duration, design.p1, design.radius),
        design: Design::Circular(design),
    }
}

fn design_at(duration: f64, radius: f64, p1: f64, params: &SystemParams) -> CircularDesign {
    CircularDesign {
        duration,
        radius,
        speed: optimal_circular_speed(radius, params),
        p1,
    }
}

/// Time needed to deliver `Q` bits at power `p1` on radius `r`.
fn time_to_deliver(p1: f64, r: f64, params: &SystemParams) -> f64 {
    let snr = p1 * params.gamma0() / (params.altitude.powi(2) + r * r);
    params.data_bits * LN_2 / (params.bandwidth * snr.ln_1p())
}

/// The GT-energy-minimizing extreme point `(E1min, E2max)`.
///
/// The UAV circles at `r_min`; the fractional objective
/// `(p1 + Pc) / ln(1 + a p1)` is quasiconvex, so its minimizer is the root of
/// the monotone stationarity function
/// `ln(1 + a p1) - a (p1 + Pc) / (1 + a p1)`.
pub fn gt_min_energy(params: &SystemParams) -> Result<EnergyPoint> {
    if params.circuit_power == 0.0 {
        return Err(Error::UnboundedTime);
    }
    let r = min_radius(params)?;
    let a = params.gamma0() / (params.altitude.powi(2) + r * r);
    let pc = params.circuit_power;
    let p_max = params.gt_max_power;

    let stationarity = |p: f64| (a * p).ln_1p() - a * (p + pc) / (1.0 + a * p);
    let p1 = if stationarity(p_max) > 0.0 {
        let spec = SearchSpec::new(0.0, p_max).tolerances(1e-15, 1e-15);
        bisect_monotone(stationarity, 0.0, &spec)?
    } else {
        // no interior stationary point: search the fractional objective itself
        let objective = |u: f64| {
            let p = u.exp();
            (p + pc) / (a * p).ln_1p()
        };
        let spec = SearchSpec::new((p_max * 1e-12).ln(), p_max.ln())
            .grid(SEARCH_GRID)
            .tolerances(1e-14, 1e-14);
        minimize_1d(objective, &spec)?.x.exp().min(p_max)
    };

    let duration = time_to_deliver(p1, r, params);
    Ok(energy_point(design_at(duration, r, p1, params), params))
}

/// The UAV-energy-minimizing extreme point `(E1max, E2min)`.
///
/// The GT transmits at full power; the remaining search over the radius uses
/// a log-spaced seed grid on `[r_min, MAX_RADIUS]` refined by golden section.
pub fn uav_min_energy(params: &SystemParams) -> Result<EnergyPoint> {
    let r_min = min_radius(params)?;
    let p1 = params.gt_max_power;
    let objective = |u: f64| {
        let r = u.exp();
        time_to_deliver(p1, r, params) * min_circular_power(r, params)
    };
    let spec = SearchSpec::new(r_min.ln(), MAX_RADIUS.ln())
        .grid(SEARCH_GRID)
        .tolerances(1e-13, 1e-13);
    let best = minimize_1d(objective, &spec)?;
    let r = best.x.exp();
    let duration = time_to_deliver(p1, r, params);
    Ok(energy_point(design_at(duration, r, p1, params), params))
}

/// Radius at which a mission of length `duration` spends exactly `e2` on
/// propulsion, i.e. the inverse of `T * p2*(r)`.
pub fn radius_from_energy(e2: f64, duration: f64, params: &SystemParams) -> Result<f64> {
    let power = e2 / duration;
    let min_level = min_level_power(params);
    if !(power > min_level && within_cap(power, params.uav_max_power)) {
        return Err(Error::PowerOutOfRange {
            power,
            min_level,
            p2_max: params.uav_max_power,
        });
    }
    radius_for_power(power, params)
}

/// GT power needed to deliver `Q` bits in `duration` on the radius that
/// spends `e2`; no cap check.
fn required_power(e2: f64, duration: f64, params: &SystemParams) -> Result<(f64, f64)> {
    let r = radius_from_energy(e2, duration, params)?;
    let growth = (params.data_bits / (params.bandwidth * duration) * LN_2).exp_m1();
    let p1 = (params.altitude.powi(2) + r * r) / params.gamma0() * growth;
    Ok((r, p1))
}

/// GT power `(H^2 + r^2)(2^{Q/(BT)} - 1) / gamma0` for the radius implied by
/// `(e2, duration)`. Fails with [`Error::InfeasiblePoint`] above `P1max`.
pub fn power_from_energy(e2: f64, duration: f64, params: &SystemParams) -> Result<f64> {
    let (_, p1) = required_power(e2, duration, params)?;
    if !within_cap(p1, params.gt_max_power) {
        return Err(Error::InfeasiblePoint {
            p1,
            p1_max: params.gt_max_power,
        });
    }
    Ok(p1)
}

/// GT energy on the Pareto boundary for a fixed mission time:
/// `T [(H^2 + r^2(E2,T)) (2^{Q/(BT)} - 1) / gamma0 + Pc]`.
pub fn e1_closed_form(e2: f64, duration: f64, params: &SystemParams) -> Result<f64> {
    let p1 = power_from_energy(e2, duration, params)?;
    Ok(duration * (p1 + params.circuit_power))
}

/// Feasible mission-time window for a propulsion budget `e2`: times whose
/// average power lies in `[min_circular_power(MAX_RADIUS), P2max]`.
pub fn time_window(e2: f64, params: &SystemParams) -> (f64, f64) {
    (
        e2 / params.uav_max_power,
        e2 / min_circular_power(MAX_RADIUS, params),
    )
}

/// Minimum GT energy achievable with UAV energy `e2`, optimizing the
/// mission time.
///
/// The time window is first narrowed to the set where the GT power cap
/// holds (located from the minimizer of the required power and bisection
/// to the cap on each side), then a 256-point seed grid plus golden section
/// minimizes the closed-form GT energy on it.
pub fn pareto_point(e2: f64, params: &SystemParams) -> Result<EnergyPoint> {
    if !(e2 > 0.0 && e2.is_finite()) {
        return Err(Error::InfeasibleEnergy { e2 });
    }
    let (t_lo, t_hi) = time_window(e2, params);
    let p_cap = params.gt_max_power;
    let p1_at = |t: f64| match required_power(e2, t, params) {
        Ok((_, p1)) => p1,
        Err(_) => f64::INFINITY,
    };

    let lowest = minimize_1d(
        p1_at,
        &SearchSpec::new(t_lo, t_hi)
            .grid(SEARCH_GRID)
            .tolerances(1e-13, 1e-300),
    )
    .map_err(|_| Error::InfeasibleEnergy { e2 })?;
    if !within_cap(lowest.value, p_cap) {
        return Err(Error::InfeasibleEnergy { e2 });
    }

    let (a, b) = if lowest.value >= p_cap {
        (lowest.x, lowest.x)
    } else {
        let edge = |lo: f64, hi: f64, rising: bool| -> Result<f64> {
            let spec = SearchSpec::new(lo, hi).tolerances(1e-13, 1e-300);
            if rising {
                bisect_monotone(p1_at, p_cap, &spec)
            } else {
                bisect_monotone(|t| -p1_at(t), -p_cap, &spec)
            }
        };
        let a = if p1_at(t_lo) <= p_cap || lowest.x <= t_lo {
            t_lo
        } else {
            edge(t_lo, lowest.x, false)?
        };
        let b = if p1_at(t_hi) <= p_cap || lowest.x >= t_hi {
            t_hi
        } else {
            edge(lowest.x, t_hi, true)?
        };
        (a, b)
    };

    let e1_at = |t: f64| e1_closed_form(e2, t, params).unwrap_or(f64::INFINITY);
    let duration = if b - a <= 1e-12 * b {
        lowest.x
    } else {
        let spec = SearchSpec::new(a, b)
            .grid(SEARCH_GRID)
            .tolerances(1e-12, 1e-300);
        let best = minimize_1d(e1_at, &spec)?;
        if e1_at(lowest.x) < best.value {
            lowest.x
        } else {
            best.x
        }
    };

    let (r, p1) = required_power(e2, duration, params)?;
    Ok(energy_point(design_at(duration, r, p1, params), params))
}

/// Sweeps `n` geometrically spaced UAV energies from `E2min` to `E2max`.
/// The two ends are the extreme points themselves.
pub fn pareto_curve(params: &SystemParams, n: usize) -> Result<ParetoCurve> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("sweep needs n >= 2, got {n}")));
    }
    let uav_end = uav_min_energy(params)?;
    let gt_end = gt_min_energy(params)?;
    let grid = geometric_grid(uav_end.e2, gt_end.e2.max(uav_end.e2), n);

    let mut points = Vec::with_capacity(n);
    let mut skipped = Vec::new();
    for (i, &e2) in grid.iter().enumerate() {
        let point = if i == 0 {
            Ok(uav_end)
        } else if i == n - 1 {
            Ok(gt_end)
        } else {
            pareto_point(e2, params)
        };
        match point {
            Ok(p) => points.push(p),
            Err(reason) => skipped.push(SkippedPoint { e2, reason }),
        }
    }
    Ok(ParetoCurve {
        points,
        kind: TrajectoryKind::Circular,
        params: *params,
        skipped,
    })
}
