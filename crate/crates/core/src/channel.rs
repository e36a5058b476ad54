//! Line-of-sight channel, instantaneous rate, and aggregated throughput
//! for circular and straight UAV trajectories.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::scalar_opt::{bisect_monotone, SearchSpec};
use crate::straight::StraightGeometry;

/// Relative tolerance of [`straight_integral_inverse`].
pub const INVERSE_RTOL: f64 = 1e-10;

/// Largest GT power tried while bracketing [`straight_integral_inverse`].
pub const INVERSE_P1_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateContext {
    /// GT transmit power, W.
    pub p1: f64,
    /// Reference SNR density, m^2/W.
    pub gamma0: f64,
    /// Bandwidth, Hz.
    pub bandwidth: f64,
    /// `H^2` for circular flight, `Hbar^2` for straight flight, m^2.
    pub effective_height_sq: f64,
}

impl RateContext {
    pub fn new(p1: f64, gamma0: f64, bandwidth: f64, effective_height_sq: f64) -> Result<Self> {
        if !(p1 >= 0.0 && effective_height_sq > 0.0) {
            return Err(Error::InvalidParam(format!(
                "rate context needs p1 >= 0 and height^2 > 0 (p1 = {p1}, h2 = {effective_height_sq})"
            )));
        }
        Ok(RateContext {
            p1,
            gamma0,
            bandwidth,
            effective_height_sq,
        })
    }

    /// Context for a UAV at altitude `H` above the GT plane.
    pub fn at_altitude(p1: f64, params: &SystemParams) -> Self {
        RateContext {
            p1,
            gamma0: params.gamma0(),
            bandwidth: params.bandwidth,
            effective_height_sq: params.altitude * params.altitude,
        }
    }

    /// Context for a straight pass whose closest approach is `Hbar`.
    pub fn along_line(p1: f64, geom: &StraightGeometry, params: &SystemParams) -> Self {
        RateContext {
            p1,
            gamma0: params.gamma0(),
            bandwidth: params.bandwidth,
            effective_height_sq: geom.hbar_sq,
        }
    }
}

/// `beta0 / (H^2 + d^2)` for horizontal distance `d`.
pub fn channel_gain(horizontal_dist_sq: f64, altitude: f64, beta0: f64) -> f64 {
    beta0 / (altitude * altitude + horizontal_dist_sq)
}

/// Achievable rate in bits/s at horizontal distance squared `horizontal_dist_sq`.
pub fn spectral_rate(ctx: &RateContext, horizontal_dist_sq: f64) -> f64 {
    let snr = ctx.p1 * ctx.gamma0 / (ctx.effective_height_sq + horizontal_dist_sq);
    ctx.bandwidth * snr.ln_1p() / LN_2
}

/// Bits delivered over `duration` seconds while circling the GT at radius `r`.
pub fn circular_throughput(params: &SystemParams, duration: f64, p1: f64, r: f64) -> f64 {
    let ctx = RateContext::at_altitude(p1, params);
    duration * spectral_rate(&ctx, r * r)
}

/// Closed-form antiderivative of `ln(1 + p1 gamma0 / (Hbar^2 + z^2))` in `z`,
/// normalized so that it vanishes at `z = 0`:
///
/// `z ln(1 + a/(Hbar^2+z^2)) - 2 Hbar atan(z/Hbar) + 2 s atan(z/s)` with
/// `a = p1 gamma0` and `s = sqrt(Hbar^2 + a)`.
///
/// The two arctangent terms nearly cancel for small `a`; they are combined
/// as `2 (s - Hbar) atan(z/s) - 2 Hbar atan(z a / ((s + Hbar)(s Hbar + z^2)))`
/// with `s - Hbar = a / (s + Hbar)`, which is algebraically identical.
pub fn log_gain_antiderivative(z: f64, p1: f64, gamma0: f64, hbar_sq: f64) -> f64 {
    let a = p1 * gamma0;
    if a == 0.0 {
        return 0.0;
    }
    let hbar = hbar_sq.sqrt();
    let s = (hbar_sq + a).sqrt();
    let s_minus_h = a / (s + hbar);
    let log_term = z * (a / (hbar_sq + z * z)).ln_1p();
    let atan_diff = (z * a / ((s + hbar) * (s * hbar + z * z))).atan();
    log_term + 2.0 * s_minus_h * (z / s).atan() - 2.0 * hbar * atan_diff
}

/// Integral of the log-gain along the flight segment, `F(D + c3) - F(c3)`.
/// Strictly increasing in `p1`, zero at `p1 = 0`.
pub fn straight_integral(p1: f64, geom: &StraightGeometry, params: &SystemParams) -> f64 {
    let gamma0 = params.gamma0();
    let f = |z| log_gain_antiderivative(z, p1, gamma0, geom.hbar_sq);
    f(geom.distance + geom.c3) - f(geom.c3)
}

/// Inverts [`straight_integral`] by bisection on `p1`.
///
/// The bracket `[0, hi]` starts at `hi = 1 W` and doubles until it covers
/// `target`, up to [`INVERSE_P1_LIMIT`].
pub fn straight_integral_inverse(
    target: f64,
    geom: &StraightGeometry,
    params: &SystemParams,
) -> Result<f64> {
    if !(target >= 0.0) {
        return Err(Error::InvalidParam(format!("integral target {target} < 0")));
    }
    if target == 0.0 {
        return Ok(0.0);
    }
    let g = |p1| straight_integral(p1, geom, params);
    let mut hi = 1.0;
    while g(hi) < target {
        if hi >= INVERSE_P1_LIMIT {
            return Err(Error::UnreachableTarget {
                target,
                p1_limit: INVERSE_P1_LIMIT,
            });
        }
        hi = (hi * 2.0).min(INVERSE_P1_LIMIT);
    }
    let spec = SearchSpec::new(0.0, hi).tolerances(INVERSE_RTOL * 0.5, 1e-300);
    bisect_monotone(g, target, &spec)
}

/// Bits delivered flying the whole segment at speed `v`: `B G(p1) / (V ln 2)`.
pub fn straight_throughput(p1: f64, v: f64, geom: &StraightGeometry, params: &SystemParams) -> f64 {
    params.bandwidth * straight_integral(p1, geom, params) / (v * LN_2)
}
