//! Oracle checks behind the `validate` subcommand.

use g2u_core::channel::straight_throughput;
use g2u_core::oracle::{self, QuadSpec};
use g2u_core::{circular, geometric_grid, straight, Result, StraightGeometry, SystemParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QUAD_SAMPLES: usize = 200;
const QUAD_RTOL: f64 = 1e-7;
const FD_SAMPLES: usize = 1000;
const FD_MAX: f64 = 1e-6;
const ORACLE_SAMPLES: usize = 4;
const ORACLE_GRID: usize = 4096;
const ORACLE_RTOL: f64 = 1e-4;

pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

fn check(name: &'static str, value: f64, limit: f64) -> Check {
    Check {
        name,
        value,
        limit,
        pass: value <= limit,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn interior(lo: f64, hi: f64) -> Vec<f64> {
    let g = geometric_grid(lo, hi, ORACLE_SAMPLES + 2);
    g[1..=ORACLE_SAMPLES].to_vec()
}

fn quadrature(params: &SystemParams, geom: &StraightGeometry) -> Result<f64> {
    let spec = QuadSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(oracle::SEED);
    let mut worst = 0.0f64;
    for _ in 0..QUAD_SAMPLES {
        let p1 = rng.gen_range(1e-6f64.ln()..=params.gt_max_power.ln()).exp();
        let v = rng.gen_range(5.0..=100.0);
        let quad = oracle::quad_straight_throughput(p1, v, geom, params, &spec)?;
        worst = worst.max(rel(straight_throughput(p1, v, geom, params), quad));
    }
    Ok(worst)
}

fn circular_gap(params: &SystemParams) -> Result<f64> {
    let lo = circular::uav_min_energy(params)?.e2;
    let hi = circular::gt_min_energy(params)?.e2;
    let mut worst = 0.0f64;
    for e2 in interior(lo, hi) {
        let solved = circular::pareto_point(e2, params)?;
        let brute = oracle::brute_pareto_circular(e2, params, ORACLE_GRID)?;
        worst = worst.max(rel(solved.e1, brute));
    }
    Ok(worst)
}

fn straight_gap(params: &SystemParams, geom: &StraightGeometry) -> Result<f64> {
    let lo = straight::uav_min_energy(geom, params)?.e2;
    let hi = straight::gt_min_energy(geom, params)?.e2;
    let mut worst = 0.0f64;
    for e2 in interior(lo, hi) {
        let solved = straight::pareto_point(e2, geom, params)?;
        let brute = oracle::brute_pareto_straight(e2, geom, params, ORACLE_GRID)?;
        worst = worst.max(rel(solved.e1, brute));
    }
    Ok(worst)
}

/// Runs every check. Solver errors abort; threshold misses are reported.
pub fn run_all(params: &SystemParams, geom: &StraightGeometry) -> Result<Vec<Check>> {
    Ok(vec![
        check(
            "straight throughput vs quadrature",
            quadrature(params, geom)?,
            QUAD_RTOL,
        ),
        check(
            "antiderivative finite differences",
            oracle::fd_check_antiderivative(params, geom, FD_SAMPLES),
            FD_MAX,
        ),
        check(
            "circular boundary vs brute force",
            circular_gap(params)?,
            ORACLE_RTOL,
        ),
        check(
            "straight boundary vs brute force",
            straight_gap(params, geom)?,
            ORACLE_RTOL,
        ),
    ])
}

pub fn render(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| {
            format!(
                "{} {}: max rel err {:.3e} (limit {:e})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.value,
                c.limit
            )
        })
        .collect()
}
