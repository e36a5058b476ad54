//! Independent validators for the closed-form solvers.
//!
//! Nothing here calls the formulas being checked. The throughput integral
//! is integrated numerically from [`spectral_rate`]; the brute-force Pareto
//! solvers rebuild every design from propulsion primitives, the rate, and
//! the integral inverse.

use std::f64::consts::LN_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{
    log_gain_antiderivative, spectral_rate, straight_integral_inverse, RateContext,
};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::pareto::within_cap;
use crate::propulsion::{
    min_circular_power, straight_leg_energy, straight_power, straight_speed_limits,
};
use crate::scalar_opt::{bisect_monotone, minimize_1d, SearchSpec};
use crate::straight::StraightGeometry;

/// Seed for every randomized check.
pub const SEED: u64 = 42;

/// Relative band on `E2` that a brute-force straight speed must satisfy.
pub const ENERGY_BAND: f64 = 1e-3;

/// Largest radius considered by the circular brute force, m.
const MAX_RADIUS: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            abs_tol: 1e-9,
            rel_tol: 1e-11,
            max_depth: 50,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidSpec(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_depth < 10 {
            return Err(Error::InvalidSpec(format!(
                "max_depth = {} < 10",
                self.max_depth
            )));
        }
        Ok(())
    }
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    spec: &QuadSpec,
    depth: usize,
) -> Result<f64> {
    let (value, err) = gauss_kronrod(f, a, b);
    if err <= abs_tol.max(spec.rel_tol * value.abs()) {
        return Ok(value);
    }
    if depth >= spec.max_depth {
        return Err(Error::ToleranceNotMet {
            max_depth: spec.max_depth,
        });
    }
    let mid = 0.5 * (a + b);
    Ok(adapt(f, a, mid, 0.5 * abs_tol, spec, depth + 1)?
        + adapt(f, mid, b, 0.5 * abs_tol, spec, depth + 1)?)
}

/// Adaptive interval-halving Gauss-Kronrod (7/15) quadrature of `f` on
/// `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<f64> {
    spec.validate()?;
    if a == b {
        return Ok(0.0);
    }
    adapt(&f, a, b, spec.abs_tol, spec, 0)
}

/// Bits delivered over a pass at speed `v`, integrating the instantaneous
/// rate along `q(t) = qA + t V dhat` over `[t0, t1]`.
pub fn quad_straight_throughput_over(
    p1: f64,
    v: f64,
    (t0, t1): (f64, f64),
    geom: &StraightGeometry,
    params: &SystemParams,
    spec: &QuadSpec,
) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::InvalidParam(format!(
            "speed must be positive, got {v}"
        )));
    }
    let ctx = RateContext::at_altitude(p1, params);
    let [ax, ay] = geom.start;
    let [dx, dy] = geom.direction;
    let rate = |t: f64| {
        let (x, y) = (ax + t * v * dx, ay + t * v * dy);
        spectral_rate(&ctx, x * x + y * y)
    };
    integrate(rate, t0, t1, spec)
}

/// Bits delivered over the whole pass, by quadrature.
pub fn quad_straight_throughput(
    p1: f64,
    v: f64,
    geom: &StraightGeometry,
    params: &SystemParams,
    spec: &QuadSpec,
) -> Result<f64> {
    quad_straight_throughput_over(p1, v, (0.0, geom.distance / v), geom, params, spec)
}

/// GT energy of the circular design spending `e2` over `duration`, built
/// by bisection on the propulsion power and on the rate. `None` when the
/// caps cannot be met.
fn circular_brute_e1(e2: f64, duration: f64, params: &SystemParams) -> Option<f64> {
    let power = e2 / duration;
    if !within_cap(power, params.uav_max_power) {
        return None;
    }
    // radius whose minimum circular power equals `power`; decreasing in r
    let radius_spec =
        SearchSpec::new(1e-6f64.ln(), (2.0 * MAX_RADIUS).ln()).tolerances(1e-14, 1e-300);
    let u = bisect_monotone(
        |u: f64| -min_circular_power(u.exp(), params),
        -power,
        &radius_spec,
    )
    .ok()?;
    let r = u.exp();

    let bits = |p1: f64| duration * spectral_rate(&RateContext::at_altitude(p1, params), r * r);
    let cap = params.gt_max_power * (1.0 + 1e-9);
    if bits(cap) < params.data_bits {
        return None;
    }
    let power_spec = SearchSpec::new(0.0, cap).tolerances(1e-14, 1e-300);
    let p1 = bisect_monotone(bits, params.data_bits, &power_spec).ok()?;
    Some(duration * (p1 + params.circuit_power))
}

/// Brute-force circular boundary point: the least GT energy over a uniform
/// grid of `grid_n` subintervals of the mission-time window for `e2`.
///
/// Doubling `grid_n` yields a superset of grid points, so the result can
/// only go down.
pub fn brute_pareto_circular(e2: f64, params: &SystemParams, grid_n: usize) -> Result<f64> {
    if grid_n < 256 {
        return Err(Error::InvalidSpec(format!("grid_n = {grid_n} < 256")));
    }
    let t_lo = e2 / params.uav_max_power;
    let t_hi = e2 / min_circular_power(MAX_RADIUS, params);
    (0..=grid_n)
        .filter_map(|i| {
            let t = t_lo + (t_hi - t_lo) * (i as f64 / grid_n as f64);
            circular_brute_e1(e2, t, params)
        })
        .min_by(f64::total_cmp)
        .ok_or(Error::InfeasibleEnergy { e2 })
}

/// GT energy at straight speed `v`, or `None` if a cap is violated.
fn straight_brute_e1(v: f64, geom: &StraightGeometry, params: &SystemParams) -> Option<f64> {
    if !within_cap(straight_power(v, params), params.uav_max_power) {
        return None;
    }
    let target = params.data_bits * v * LN_2 / params.bandwidth;
    let p1 = straight_integral_inverse(target, geom, params).ok()?;
    within_cap(p1, params.gt_max_power).then(|| geom.distance / v * (p1 + params.circuit_power))
}

/// Brute-force straight boundary point.
///
/// Scans a log-spaced grid of `grid_n` subintervals over the speeds allowed
/// by the propulsion cap. Every grid cell where the leg energy crosses `e2`
/// is refined to the crossing by bisection; if no cell crosses, the grid
/// minimizer of the leg energy is refined instead and kept when it lies in
/// the `ENERGY_BAND`. The result is the least GT energy among the refined
/// speeds inside the band.
pub fn brute_pareto_straight(
    e2: f64,
    geom: &StraightGeometry,
    params: &SystemParams,
    grid_n: usize,
) -> Result<f64> {
    if grid_n < 256 {
        return Err(Error::InvalidSpec(format!("grid_n = {grid_n} < 256")));
    }
    let (v_lo, v_hi) = straight_speed_limits(params)?;
    let span = (v_hi / v_lo).ln();
    let speed = |i: usize| v_lo * (span * i as f64 / grid_n as f64).exp();
    let gap = |v: f64| straight_leg_energy(v, geom.distance, params) - e2;
    let gaps: Vec<(f64, f64)> = (0..=grid_n).map(|i| (speed(i), gap(speed(i)))).collect();

    let mut refined = Vec::new();
    for w in gaps.windows(2) {
        let ((va, ga), (vb, gb)) = (w[0], w[1]);
        if ga == 0.0 {
            refined.push(va);
        } else if ga.signum() != gb.signum() && gb != 0.0 {
            let spec = SearchSpec::new(va, vb).tolerances(1e-15, 1e-300);
            let v = if ga < gb {
                bisect_monotone(gap, 0.0, &spec)
            } else {
                bisect_monotone(|v| -gap(v), 0.0, &spec)
            };
            refined.extend(v.ok());
        }
    }
    if let Some(&(v_last, g_last)) = gaps.last() {
        if g_last == 0.0 {
            refined.push(v_last);
        }
    }
    if refined.is_empty() {
        let (idx, _) = gaps
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
            .expect("non-empty grid");
        let spec = SearchSpec::new(speed(idx.saturating_sub(1)), speed((idx + 1).min(grid_n)))
            .tolerances(1e-14, 1e-300);
        let best = minimize_1d(|v| straight_leg_energy(v, geom.distance, params), &spec)?;
        refined.push(best.x);
    }

    refined
        .into_iter()
        .filter(|&v| gap(v).abs() <= ENERGY_BAND * e2)
        .filter_map(|v| straight_brute_e1(v, geom, params))
        .min_by(f64::total_cmp)
        .ok_or(Error::InfeasibleEnergy { e2 })
}

/// Largest relative deviation between a central difference of the
/// closed-form antiderivative and its integrand, over `samples` random
/// `(z, p1)` with `z` on the flight segment and `p1` log-uniform in
/// `[1e-6, P1max]`. The step is `step_frac * max(1, |z|)`.
pub fn fd_check_antiderivative_with_step(
    params: &SystemParams,
    geom: &StraightGeometry,
    samples: usize,
    step_frac: f64,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let gamma0 = params.gamma0();
    let (z_lo, z_hi) = (geom.c3, geom.c3 + geom.distance);
    let (lp_lo, lp_hi) = (1e-6f64.ln(), params.gt_max_power.ln());
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let z = rng.gen_range(z_lo..=z_hi);
        let p1 = rng.gen_range(lp_lo..=lp_hi).exp();
        worst = worst.max(fd_deviation(z, p1, gamma0, geom.hbar_sq, step_frac));
    }
    worst
}

/// [`fd_check_antiderivative_with_step`] at the standard step `1e-3`.
pub fn fd_check_antiderivative(
    params: &SystemParams,
    geom: &StraightGeometry,
    samples: usize,
) -> f64 {
    fd_check_antiderivative_with_step(params, geom, samples, 1e-3)
}

/// Relative deviation of the central difference at a single point.
pub fn fd_deviation(z: f64, p1: f64, gamma0: f64, hbar_sq: f64, step_frac: f64) -> f64 {
    let h = step_frac * z.abs().max(1.0);
    let f = |x| log_gain_antiderivative(x, p1, gamma0, hbar_sq);
    let fd = (f(z + h) - f(z - h)) / (2.0 * h);
    let exact = (p1 * gamma0 / (hbar_sq + z * z)).ln_1p();
    if exact == 0.0 {
        fd.abs()
    } else {
        (fd - exact).abs() / exact
    }
}
