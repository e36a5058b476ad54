//! Fixed-wing propulsion power for steady circular and straight flight.

use crate::error::{Error, Result};
use crate::params::{level_flight_coeff, min_level_power, SystemParams};
use crate::scalar_opt::{bisect_monotone, SearchSpec};

/// Circle radius and speed of a steady circular flight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularKinematics {
    pub radius: f64,
    pub speed: f64,
}

impl CircularKinematics {
    pub fn new(radius: f64, speed: f64) -> Result<Self> {
        if !(radius > 0.0 && speed > 0.0) {
            return Err(Error::InvalidParam(format!(
                "circular kinematics need r > 0 and V > 0 (r = {radius}, V = {speed})"
            )));
        }
        Ok(CircularKinematics { radius, speed })
    }

    pub fn power(&self, params: &SystemParams) -> f64 {
        circular_power(self.radius, self.speed, params)
    }
}

/// Effective drag coefficient of a turn of radius `r`: `c1 + c2/(g^2 r^2)`.
fn turn_coeff(r: f64, params: &SystemParams) -> f64 {
    let gr = params.gravity * r;
    params.c1 + params.c2 / (gr * gr)
}

/// `(c1 + c2/(g^2 r^2)) V^3 + c2 / V`
pub fn circular_power(r: f64, v: f64, params: &SystemParams) -> f64 {
    turn_coeff(r, params) * v * v * v + params.c2 / v
}

/// Speed minimizing [`circular_power`] for a given radius.
pub fn optimal_circular_speed(r: f64, params: &SystemParams) -> f64 {
    (params.c2 / (3.0 * turn_coeff(r, params))).powf(0.25)
}

/// Minimum propulsion power over all speeds for a circle of radius `r`.
pub fn min_circular_power(r: f64, params: &SystemParams) -> f64 {
    level_flight_coeff() * params.c2.powf(0.75) * turn_coeff(r, params).powf(0.25)
}

/// Radius whose minimum circular power equals `power`; the inverse of
/// [`min_circular_power`] on `(min_level_power, ∞)`.
pub(crate) fn radius_for_power(power: f64, params: &SystemParams) -> Result<f64> {
    let min_level = min_level_power(params);
    if !(power > min_level) {
        return Err(Error::InfeasiblePower {
            p2_max: power,
            min_level,
        });
    }
    // (P / (k c2^{3/4}))^4 = P^4 / (k^4 c2^3); form the quotient before
    // subtracting c1 so the difference is taken once.
    let ratio = power / (level_flight_coeff() * params.c2.powf(0.75));
    let excess = ratio.powi(4) - params.c1;
    if !(excess > 0.0) {
        return Err(Error::InfeasiblePower {
            p2_max: power,
            min_level,
        });
    }
    Ok((params.c2 / excess).sqrt() / params.gravity)
}

/// Smallest circle radius whose minimum propulsion power fits under the
/// UAV power cap.
pub fn min_radius(params: &SystemParams) -> Result<f64> {
    radius_for_power(params.uav_max_power, params)
}

/// `c1 V^3 + c2 / V`
pub fn straight_power(v: f64, params: &SystemParams) -> f64 {
    params.c1 * v * v * v + params.c2 / v
}

/// Propulsion energy of a straight leg of length `distance` flown at `v`:
/// `D (c1 V^2 + c2 / V^2)`.
pub fn straight_leg_energy(v: f64, distance: f64, params: &SystemParams) -> f64 {
    distance * (params.c1 * v * v + params.c2 / (v * v))
}

/// Speed minimizing [`straight_leg_energy`], `(c2/c1)^{1/4}`.
pub fn min_energy_speed(params: &SystemParams) -> f64 {
    (params.c2 / params.c1).powf(0.25)
}

/// Lowest possible straight-leg energy, `2 D sqrt(c1 c2)`.
pub fn min_leg_energy(distance: f64, params: &SystemParams) -> f64 {
    2.0 * distance * (params.c1 * params.c2).sqrt()
}

/// Speed range `[V_lo, V_hi]` over which steady straight flight stays within
/// the propulsion cap.
pub fn straight_speed_limits(params: &SystemParams) -> Result<(f64, f64)> {
    let cap = params.uav_max_power;
    let v_pivot = (params.c2 / (3.0 * params.c1)).powf(0.25);
    if !(straight_power(v_pivot, params) < cap) {
        return Err(Error::InfeasiblePower {
            p2_max: cap,
            min_level: straight_power(v_pivot, params),
        });
    }
    // c2/V alone exceeds the cap below c2/cap; c1 V^3 alone above (cap/c1)^{1/3}
    let v_floor = 0.5 * params.c2 / cap;
    let v_ceil = 2.0 * (cap / params.c1).cbrt();
    let spec = |lo, hi| SearchSpec::new(lo, hi).tolerances(1e-15, 1e-300);
    let v_lo = bisect_monotone(
        |v| -straight_power(v, params),
        -cap,
        &spec(v_floor, v_pivot),
    )?;
    let v_hi = bisect_monotone(|v| straight_power(v, params), cap, &spec(v_pivot, v_ceil))?;
    Ok((v_lo, v_hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params() -> SystemParams {
        SystemParams::reference().with_circuit_power(0.05).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn circular_power_values() {
        let p = params();
        // direct evaluation: (c1 + c2/(9.8^2 1e4)) 27000 + 75
        assert!(rel(circular_power(100.0, 30.0, &p), 163.256_893_794_25) < 1e-12);
        assert!(rel(circular_power(1e12, 30.0, &p), straight_power(30.0, &p)) < 1e-12);
        assert!(circular_power(100.0, 1e-9, &p) > 1e12);
    }

    #[test]
    fn optimal_speed_values() {
        let p = params();
        assert!((optimal_circular_speed(1e9, &p) - 30.0).abs() < 0.05);
        let v100 = optimal_circular_speed(100.0, &p);
        assert!(rel(v100, 21.886_136_186_7) < 1e-10);

        // dense scan over V confirms the stationary point
        let best = (1..20_000)
            .map(|i| i as f64 * 0.005)
            .map(|v| (v, circular_power(100.0, v, &p)))
            .fold(
                (0.0, f64::INFINITY),
                |acc, cur| if cur.1 < acc.1 { cur } else { acc },
            );
        assert!((best.0 - v100).abs() < 0.01);
        assert!(optimal_circular_speed(200.0, &p) > v100);
    }

    #[test]
    fn min_circular_power_values() {
        let p = params();
        assert!(rel(min_circular_power(100.0, &p), 137.073_075_594_79) < 1e-10);
        assert!((min_circular_power(41.07, &p) - 200.0).abs() < 0.01);
        assert!(rel(min_circular_power(1e9, &p), min_level_power(&p)) < 1e-12);
    }

    #[test]
    fn min_radius_values() {
        let p = params();
        let r = min_radius(&p).unwrap();
        assert!(rel(r, 0.706_966_496_27) < 1e-9);
        assert!(rel(min_circular_power(r, &p), 1500.0) < 1e-9);

        let p200 = p.with_uav_max_power(200.0).unwrap();
        let r200 = min_radius(&p200).unwrap();
        assert!(rel(r200, 41.070_745_843_56) < 1e-9);
        assert!(rel(min_circular_power(r200, &p200), 200.0) < 1e-9);

        let below = SystemParams {
            uav_max_power: 100.0,
            ..p
        };
        assert!(matches!(
            min_radius(&below),
            Err(Error::InfeasiblePower { .. })
        ));
    }

    #[test]
    fn straight_values() {
        let p = params();
        assert!(rel(straight_power(30.0, &p), 100.002) < 1e-12);
        let vstar = min_energy_speed(&p);
        assert!((vstar - 39.48).abs() < 0.01);
        // the two terms of the power coincide at the energy-optimal speed
        assert!(rel(p.c1 * vstar.powi(3), p.c2 / vstar) < 1e-12);
        assert!((straight_power(vstar, &p) - 114.0).abs() < 0.1);

        let d = 2000.0 * 2f64.sqrt();
        let e = straight_leg_energy(vstar, d, &p);
        assert!(rel(e, min_leg_energy(d, &p)) < 1e-12);
        assert!((e - 8165.3).abs() < 0.1);
        assert!(rel(straight_leg_energy(63.01, d, &p), 1.2e4) < 2e-4);
        assert!(
            rel(
                straight_leg_energy(47.0, d, &p),
                d / 47.0 * straight_power(47.0, &p)
            ) < 1e-14
        );

        let grid_min = (1..100_000)
            .map(|i| straight_leg_energy(i as f64 * 0.001, d, &p))
            .fold(f64::INFINITY, f64::min);
        assert!(grid_min >= e);
        assert!(rel(grid_min, e) < 1e-8);
    }

    #[test]
    fn speed_limits_hit_the_cap() {
        let p = params();
        let (lo, hi) = straight_speed_limits(&p).unwrap();
        assert!(lo < 30.0 && hi > 30.0);
        assert!(rel(straight_power(lo, &p), 1500.0) < 1e-12);
        assert!(rel(straight_power(hi, &p), 1500.0) < 1e-12);
        assert!((hi - 116.9386).abs() < 1e-3);
    }

    #[test]
    fn kinematics_guard() {
        assert!(CircularKinematics::new(0.0, 10.0).is_err());
        let k = CircularKinematics::new(100.0, 30.0).unwrap();
        assert_eq!(k.power(&params()), circular_power(100.0, 30.0, &params()));
    }

    #[test]
    fn min_circular_power_strictly_decreasing() {
        let p = params();
        let mut prev = f64::INFINITY;
        for i in 0..=120 {
            let r = 10f64.powf(i as f64 * 0.05);
            let now = min_circular_power(r, &p);
            assert!(now < prev, "r = {r}");
            assert!(now > min_level_power(&p));
            prev = now;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn optimal_speed_is_optimal(lr in 0.0f64..6.0, v in 1.0f64..200.0) {
            let p = params();
            let r = 10f64.powf(lr);
            let best = circular_power(r, optimal_circular_speed(r, &p), &p);
            prop_assert!(best <= circular_power(r, v, &p) * (1.0 + 1e-14));
            prop_assert!(rel(best, min_circular_power(r, &p)) < 1e-12);
        }

        #[test]
        fn leg_energy_lower_bound(v in 1.0f64..200.0, d in 1.0f64..1e5) {
            let p = params();
            prop_assert!(straight_leg_energy(v, d, &p) >= min_leg_energy(d, &p) * (1.0 - 1e-14));
        }

        #[test]
        fn radius_for_power_inverts(power in 100.01f64..5000.0) {
            let p = params();
            let r = radius_for_power(power, &p).unwrap();
            prop_assert!(rel(min_circular_power(r, &p), power) < 1e-9);
        }
    }
}
