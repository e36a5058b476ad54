//! Energy trade-off for a constant-speed straight pass from `qA` to `qB`.
//!
//! For a fixed UAV energy the leg-energy equation has two speed roots; each
//! fixes the GT power through the throughput equation, and the boundary
//! point is the cheaper feasible one for the GT.

use std::f64::consts::LN_2;

use crate::channel::{straight_integral, straight_integral_inverse, straight_throughput};
use crate::error::{Error, Result};
use crate::params::{Point2, SystemParams};
use crate::pareto::{
    geometric_grid, within_cap, Branch, Design, EnergyPoint, ParetoCurve, SkippedPoint,
    StraightDesign, TrajectoryKind,
};
use crate::propulsion::{
    min_energy_speed, min_leg_energy, straight_leg_energy, straight_power, straight_speed_limits,
};
use crate::scalar_opt::{minimize_1d, SearchSpec};

/// Seed grid size for the searches over GT power.
pub const SEARCH_GRID: usize = 256;

/// Branch energies closer than this (relative) count as a tie.
pub const TIE_RTOL: f64 = 1e-12;

/// Constants of the straight flight line, relative to the GT at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StraightGeometry {
    pub start: Point2,
    pub end: Point2,
    /// Leg length `D`, m.
    pub distance: f64,
    /// Unit flying direction.
    pub direction: Point2,
    /// Signed along-track position of the start relative to the GT's
    /// foot point, `qA . dhat`, m.
    pub c3: f64,
    /// Squared slant distance at closest approach, `|qA|^2 - c3^2 + H^2`, m^2.
    pub hbar_sq: f64,
}

impl StraightGeometry {
    pub fn new(start: Point2, end: Point2, altitude: f64) -> Result<Self> {
        let delta = [end[0] - start[0], end[1] - start[1]];
        let distance = delta[0].hypot(delta[1]);
        if !(distance > 0.0) {
            return Err(Error::CoincidentEndpoints);
        }
        let direction = [delta[0] / distance, delta[1] / distance];
        let c3 = start[0] * direction[0] + start[1] * direction[1];
        // |qA|^2 - c3^2 is the squared cross-track offset; take it directly
        let offset = start[0] * direction[1] - start[1] * direction[0];
        Ok(StraightGeometry {
            start,
            end,
            distance,
            direction,
            c3,
            hbar_sq: offset * offset + altitude * altitude,
        })
    }

    pub fn from_params(start: Point2, end: Point2, params: &SystemParams) -> Result<Self> {
        Self::new(start, end, params.altitude)
    }

    /// The reference straight flight:
    /// `(-1000, 1000) -> (1000, -1000)`.
    pub fn reference(params: &SystemParams) -> Self {
        Self::from_params([-1000.0, 1000.0], [1000.0, -1000.0], params).expect("distinct endpoints")
    }
}

/// Speed that makes the pass deliver exactly `Q` bits at power `p1`.
fn speed_for_power(p1: f64, geom: &StraightGeometry, params: &SystemParams) -> f64 {
    params.bandwidth * straight_integral(p1, geom, params) / (params.data_bits * LN_2)
}

fn classify(speed: f64, params: &SystemParams) -> Branch {
    let pivot = min_energy_speed(params);
    if speed > pivot * (1.0 + 1e-9) {
        Branch::Fast
    } else {
        Branch::Slow
    }
}

/// Assembles the energy point of a straight design.
pub fn energy_point(
    design: StraightDesign,
    geom: &StraightGeometry,
    params: &SystemParams,
) -> EnergyPoint {
    EnergyPoint {
        e1: geom.distance / design.speed * (design.p1 + params.circuit_power),
        e2: straight_leg_energy(design.speed, geom.distance, params),
        throughput: straight_throughput(design.p1, design.speed, geom, params),
        design: Design::Straight(design),
    }
}

fn design_at(p1: f64, speed: f64, branch: Branch, geom: &StraightGeometry) -> StraightDesign {
    StraightDesign {
        speed,
        p1,
        branch,
        duration: geom.distance / speed,
    }
}

/// GT powers for which both caps hold once the speed is tied to `p1` by
/// the throughput equation.
fn feasible_power_range(geom: &StraightGeometry, params: &SystemParams) -> Result<(f64, f64)> {
    let (v_lo, v_hi) = straight_speed_limits(params)?;
    let target = |v: f64| params.data_bits * v * LN_2 / params.bandwidth;
    let p_lo = straight_integral_inverse(target(v_lo), geom, params)?;
    if !within_cap(p_lo, params.gt_max_power) {
        return Err(Error::EmptyFeasibleSet);
    }
    let p_hi = match straight_integral_inverse(target(v_hi), geom, params) {
        Ok(p) => p.min(params.gt_max_power),
        Err(Error::UnreachableTarget { .. }) => params.gt_max_power,
        Err(e) => return Err(e),
    };
    Ok((p_lo.min(p_hi), p_hi))
}

/// Minimizes `objective(p1, V(p1))` over the feasible GT powers, searching
/// on a log-spaced seed grid refined by golden section.
fn search_power<F>(geom: &StraightGeometry, params: &SystemParams, objective: F) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let (p_lo, p_hi) = feasible_power_range(geom, params)?;
    let value = |p1: f64| {
        let v = speed_for_power(p1, geom, params);
        if v > 0.0
            && within_cap(p1, params.gt_max_power)
            && within_cap(straight_power(v, params), params.uav_max_power)
        {
            objective(p1, v)
        } else {
            f64::INFINITY
        }
    };
    if p_hi <= p_lo * (1.0 + 1e-12) {
        return if value(p_lo).is_finite() {
            Ok(p_lo)
        } else {
            Err(Error::EmptyFeasibleSet)
        };
    }
    let spec = SearchSpec::new(p_lo.ln(), p_hi.ln())
        .grid(SEARCH_GRID)
        .tolerances(1e-13, 1e-13);
    let best = minimize_1d(|u| value(u.exp()), &spec)?;
    Ok(best.x.exp())
}

/// The GT-energy-minimizing extreme point `(E1min, E2max)`.
pub fn gt_min_energy(geom: &StraightGeometry, params: &SystemParams) -> Result<EnergyPoint> {
    let pc = params.circuit_power;
    let d = geom.distance;
    let p1 = search_power(geom, params, |p1, v| d / v * (p1 + pc))?;
    let v = speed_for_power(p1, geom, params);
    Ok(energy_point(
        design_at(p1, v, classify(v, params), geom),
        geom,
        params,
    ))
}

/// The UAV-energy-minimizing extreme point `(E1max, E2min)`.
pub fn uav_min_energy(geom: &StraightGeometry, params: &SystemParams) -> Result<EnergyPoint> {
    let d = geom.distance;
    let p1 = search_power(geom, params, |_, v| straight_leg_energy(v, d, params))?;
    let v = speed_for_power(p1, geom, params);
    Ok(energy_point(
        design_at(p1, v, classify(v, params), geom),
        geom,
        params,
    ))
}

/// The two speeds `(V1, V2)`, `V1 >= V2`, whose leg energy equals `e2`.
pub fn speeds_from_energy(
    e2: f64,
    geom: &StraightGeometry,
    params: &SystemParams,
) -> Result<(f64, f64)> {
    let d = geom.distance;
    let floor = min_leg_energy(d, params);
    if !(e2 >= floor * (1.0 - 1e-12)) {
        return Err(Error::BelowMinimumEnergy { e2, min: floor });
    }
    // E2^2 - 4 c1 c2 D^2 = (E2 - floor)(E2 + floor), clamped at the double root
    let disc = ((e2 - floor) * (e2 + floor)).max(0.0);
    let v1 = ((e2 + disc.sqrt()) / (2.0 * d * params.c1)).sqrt();
    // V1^2 V2^2 = c2 / c1; avoids cancellation in E2 - sqrt(disc)
    let v2 = if disc == 0.0 {
        v1
    } else {
        (params.c2 / params.c1).sqrt() / v1
    };
    Ok((v1, v2))
}

/// One speed root evaluated for the boundary comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchCandidate {
    pub branch: Branch,
    pub speed: f64,
    /// GT power from inverting the throughput equation, if reachable.
    pub p1: Option<f64>,
    /// `(D / V)(p1 + Pc)`, if `p1` is reachable.
    pub e1: Option<f64>,
    pub feasible: bool,
}

/// Evaluates both speed roots for `e2`: fast (`V1`) first, slow (`V2`) second.
pub fn branch_candidates(
    e2: f64,
    geom: &StraightGeometry,
    params: &SystemParams,
) -> Result<[BranchCandidate; 2]> {
    let (v1, v2) = speeds_from_energy(e2, geom, params)?;
    let evaluate = |branch, speed: f64| {
        let target = params.data_bits * speed * LN_2 / params.bandwidth;
        let p1 = straight_integral_inverse(target, geom, params).ok();
        let e1 = p1.map(|p| geom.distance / speed * (p + params.circuit_power));
        let feasible = p1.is_some_and(|p| within_cap(p, params.gt_max_power))
            && within_cap(straight_power(speed, params), params.uav_max_power);
        BranchCandidate {
            branch,
            speed,
            p1,
            e1,
            feasible,
        }
    };
    Ok([evaluate(Branch::Fast, v1), evaluate(Branch::Slow, v2)])
}

/// Picks the boundary branch among evaluated candidates. Ties go to the
/// slow root.
pub fn select_branch(candidates: &[BranchCandidate; 2]) -> Option<BranchCandidate> {
    let [fast, slow] = *candidates;
    match (fast.feasible, slow.feasible) {
        (false, false) => None,
        (true, false) => Some(fast),
        (false, true) => Some(slow),
        (true, true) => {
            let (ef, es) = (fast.e1?, slow.e1?);
            if (ef - es).abs() < TIE_RTOL * ef.min(es) || es <= ef {
                Some(slow)
            } else {
                Some(fast)
            }
        }
    }
}

/// Minimum GT energy achievable with straight-leg UAV energy `e2`.
pub fn pareto_point(
    e2: f64,
    geom: &StraightGeometry,
    params: &SystemParams,
) -> Result<EnergyPoint> {
    let candidates = branch_candidates(e2, geom, params)?;
    let chosen = select_branch(&candidates).ok_or(Error::InfeasibleEnergy { e2 })?;
    let p1 = chosen.p1.ok_or(Error::InfeasibleEnergy { e2 })?;
    Ok(energy_point(
        design_at(p1, chosen.speed, chosen.branch, geom),
        geom,
        params,
    ))
}

/// Sweeps `n` geometrically spaced UAV energies from `E2min` to `E2max`,
/// where `E2max` is the UAV energy of the GT-optimal design.
pub fn pareto_curve(
    geom: &StraightGeometry,
    params: &SystemParams,
    n: usize,
) -> Result<ParetoCurve> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("sweep needs n >= 2, got {n}")));
    }
    let uav_end = uav_min_energy(geom, params)?;
    let gt_end = gt_min_energy(geom, params)?;
    let grid = geometric_grid(uav_end.e2, gt_end.e2.max(uav_end.e2), n);

    let mut points = Vec::with_capacity(n);
    let mut skipped = Vec::new();
    for (i, &e2) in grid.iter().enumerate() {
        let point = if i == 0 {
            Ok(uav_end)
        } else if i == n - 1 {
            Ok(gt_end)
        } else {
            pareto_point(e2, geom, params)
        };
        match point {
            Ok(p) => points.push(p),
            Err(reason) => skipped.push(SkippedPoint { e2, reason }),
        }
    }
    Ok(ParetoCurve {
        points,
        kind: TrajectoryKind::Straight,
        params: *params,
        skipped,
    })
}
