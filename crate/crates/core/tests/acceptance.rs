//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Oracle-backed criteria run first so that the closed forms are checked
//! before the sweeps that depend on them.

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use g2u_core::channel::{straight_integral, straight_throughput};
use g2u_core::oracle::{self, QuadSpec};
use g2u_core::propulsion::{
    circular_power, min_circular_power, min_leg_energy, min_radius, optimal_circular_speed,
    straight_leg_energy,
};
use g2u_core::{
    circular, straight, Branch, EnergyPoint, ParetoCurve, StraightGeometry, SystemParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned thresholds.
const QUAD_RTOL: f64 = 1e-7;
const FD_MAX: f64 = 1e-6;
const IDENTITY_RTOL: f64 = 1e-12;
const RADIUS_RTOL: f64 = 1e-9;
const ROOT_RTOL: f64 = 1e-9;
const ORACLE_RTOL: f64 = 1e-4;
const THROUGHPUT_RTOL: f64 = 1e-6;
const RATIO_RANGE: (f64, f64) = (2.5, 5.0);
const BRANCH_SHARE: f64 = 0.9;
/// "Same order" band for `p1 / Pc`.
const SAME_ORDER: (f64, f64) = (0.1, 10.0);
const LARGE_P1_FACTOR: f64 = 10.0;

const QUAD_SAMPLES: usize = 200;
const FD_SAMPLES: usize = 1000;
const ROOT_SAMPLES: usize = 100;
const ORACLE_SAMPLES: usize = 16;
const BRUTE_GRID: usize = 4096;
const SWEEP_POINTS: usize = 64;

const PC_LOW: f64 = 0.01;
const PC_HIGH: f64 = 0.05;
const Q_SMALL: f64 = 30e6;
const Q_LARGE: f64 = 100e6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn check(id: u32, name: &str, limit: Option<Duration>, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let Outcome { pass, detail } = body();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let ok = pass && in_time;
    let budget = limit.map_or(String::new(), |l| {
        format!(" / limit {:.0} s", l.as_secs_f64())
    });
    println!(
        "{} [{id:>2}] {name}: {detail} ({:.2} s{budget})",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn straight_setup(q_bits: f64) -> (StraightGeometry, SystemParams) {
    let params = SystemParams::reference()
        .with_circuit_power(PC_HIGH)
        .and_then(|p| p.with_data_bits(q_bits))
        .expect("reference parameters are valid");
    (StraightGeometry::reference(&params), params)
}

/// `n` geometric values strictly inside `(lo, hi)`.
fn interior(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let g = g2u_core::geometric_grid(lo, hi, n + 2);
    g[1..=n].to_vec()
}

fn closed_form_vs_quadrature() -> Outcome {
    let params = SystemParams::reference();
    let geom = StraightGeometry::reference(&params);
    let spec = QuadSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(oracle::SEED);
    let mut worst = 0.0f64;
    for _ in 0..QUAD_SAMPLES {
        let p1 = rng.gen_range(1e-6f64.ln()..=0.5f64.ln()).exp();
        let v = rng.gen_range(5.0..=100.0);
        let Ok(quad) = oracle::quad_straight_throughput(p1, v, &geom, &params, &spec) else {
            return outcome(false, format!("quadrature failed at p1 = {p1:e}, V = {v}"));
        };
        worst = worst.max(rel(straight_throughput(p1, v, &geom, &params), quad));
    }
    outcome(
        worst <= QUAD_RTOL,
        format!("max rel err {worst:.3e} <= {QUAD_RTOL:e}"),
    )
}

fn antiderivative() -> Outcome {
    let params = SystemParams::reference();
    let geom = StraightGeometry::reference(&params);
    let worst = oracle::fd_check_antiderivative(&params, &geom, FD_SAMPLES);
    outcome(
        worst <= FD_MAX,
        format!("max rel err {worst:.3e} <= {FD_MAX:e}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();

    let params = SystemParams::reference();
    let (lo, hi) = match (
        circular::uav_min_energy(&params),
        circular::gt_min_energy(&params),
    ) {
        (Ok(a), Ok(b)) => (a.e2, b.e2),
        _ => return outcome(false, "circular extremes failed".into()),
    };
    for e2 in interior(lo, hi, ORACLE_SAMPLES) {
        match (
            circular::pareto_point(e2, &params),
            oracle::brute_pareto_circular(e2, &params, BRUTE_GRID),
        ) {
            (Ok(p), Ok(b)) => worst = worst.max(rel(p.e1, b)),
            _ => failures.push(format!("circular E2 = {e2:.1}")),
        }
    }

    for q in [Q_SMALL, Q_LARGE] {
        let (geom, params) = straight_setup(q);
        let (lo, hi) = match (
            straight::uav_min_energy(&geom, &params),
            straight::gt_min_energy(&geom, &params),
        ) {
            (Ok(a), Ok(b)) => (a.e2, b.e2),
            _ => return outcome(false, "straight extremes failed".into()),
        };
        for e2 in interior(lo, hi, ORACLE_SAMPLES) {
            match (
                straight::pareto_point(e2, &geom, &params),
                oracle::brute_pareto_straight(e2, &geom, &params, BRUTE_GRID),
            ) {
                (Ok(p), Ok(b)) => worst = worst.max(rel(p.e1, b)),
                _ => failures.push(format!("straight Q = {q:e} E2 = {e2:.1}")),
            }
        }
    }
    let pass = failures.is_empty() && worst <= ORACLE_RTOL;
    let mut detail = format!(
        "{ORACLE_SAMPLES} circular + 2x{ORACLE_SAMPLES} straight E2 values, max rel E1 gap {worst:.3e} <= {ORACLE_RTOL:e}"
    );
    if !failures.is_empty() {
        detail.push_str(&format!(", failed at {}", failures.join("; ")));
    }
    outcome(pass, detail)
}

fn circular_identities() -> Outcome {
    let params = SystemParams::reference();
    let mut worst = 0.0f64;
    for i in 0..=120 {
        let r = 10f64.powf(i as f64 * 0.05);
        let direct = circular_power(r, optimal_circular_speed(r, &params), &params);
        worst = worst.max(rel(min_circular_power(r, &params), direct));
    }
    let mut worst_cap = 0.0f64;
    for cap in [200.0, 500.0, 1500.0] {
        let p = params
            .with_uav_max_power(cap)
            .expect("cap above level-flight minimum");
        match min_radius(&p) {
            Ok(r) => worst_cap = worst_cap.max(rel(min_circular_power(r, &p), cap)),
            Err(e) => return outcome(false, format!("min_radius failed at P2max = {cap}: {e}")),
        }
    }
    outcome(
        worst <= IDENTITY_RTOL && worst_cap <= RADIUS_RTOL,
        format!(
            "speed identity max rel {worst:.3e} <= {IDENTITY_RTOL:e}, r_min cap max rel {worst_cap:.3e} <= {RADIUS_RTOL:e}"
        ),
    )
}

fn speed_roots() -> Outcome {
    let (geom, params) = straight_setup(Q_SMALL);
    let d = geom.distance;
    let floor = min_leg_energy(d, &params);
    let mut rng = ChaCha8Rng::seed_from_u64(oracle::SEED);
    let (mut worst_e, mut worst_prod) = (0.0f64, 0.0f64);
    for i in 0..ROOT_SAMPLES {
        let e2 = if i == 0 {
            floor
        } else {
            floor * rng.gen_range(0.0..=20f64.ln()).exp()
        };
        let Ok((v1, v2)) = straight::speeds_from_energy(e2, &geom, &params) else {
            return outcome(false, format!("no roots at E2 = {e2}"));
        };
        for v in [v1, v2] {
            worst_e = worst_e.max(rel(straight_leg_energy(v, d, &params), e2));
        }
        worst_prod = worst_prod.max(rel(v1 * v1 * v2 * v2, params.c2 / params.c1));
    }
    outcome(
        worst_e <= ROOT_RTOL && worst_prod <= ROOT_RTOL,
        format!(
            "energy max rel {worst_e:.3e}, V1^2 V2^2 max rel {worst_prod:.3e} (<= {ROOT_RTOL:e})"
        ),
    )
}

fn tradeoff_ratio(curves: &mut Vec<ParetoCurve>) -> Outcome {
    let low = SystemParams::reference()
        .with_circuit_power(PC_LOW)
        .expect("valid circuit power");
    let high = low
        .with_circuit_power(PC_HIGH)
        .expect("valid circuit power");
    let (e_lo, e_hi) = match (
        circular::pareto_point(18e3, &low),
        circular::pareto_point(40e3, &low),
    ) {
        (Ok(a), Ok(b)) => (a.e1, b.e1),
        (a, b) => return outcome(false, format!("anchor points infeasible: {a:?} / {b:?}")),
    };
    let ratio = e_lo / e_hi;

    let (Ok(curve_low), Ok(curve_high)) = (
        circular::pareto_curve(&low, SWEEP_POINTS),
        circular::pareto_curve(&high, SWEEP_POINTS),
    ) else {
        return outcome(false, "sweep failed".into());
    };
    // shared E2 grid: every point of the Pc = 50 mW curve
    let mut above = 0;
    let mut compared = 0;
    for hp in &curve_high.points {
        if let Ok(lp) = circular::pareto_point(hp.e2, &low) {
            compared += 1;
            if lp.e1 > hp.e1 {
                above += 1;
            }
        }
    }
    curves.push(curve_low);
    curves.push(curve_high);
    let in_range = (RATIO_RANGE.0..=RATIO_RANGE.1).contains(&ratio);
    outcome(
        in_range && above == 0 && compared > 0,
        format!(
            "E1(18 kJ)/E1(40 kJ) = {ratio:.3} in [{}, {}], Pc=10 mW above Pc=50 mW at {above}/{compared} shared E2",
            RATIO_RANGE.0, RATIO_RANGE.1
        ),
    )
}

fn branch_share(curve: &ParetoCurve, branch: Branch) -> f64 {
    let hits = curve
        .points
        .iter()
        .filter(|p| p.straight().is_some_and(|d| d.branch == branch))
        .count();
    hits as f64 / curve.points.len().max(1) as f64
}

fn branch_reproduction(curves: &mut Vec<ParetoCurve>) -> Outcome {
    let mut shares = Vec::new();
    for (q, branch) in [(Q_SMALL, Branch::Fast), (Q_LARGE, Branch::Slow)] {
        let (geom, params) = straight_setup(q);
        let Ok(curve) = straight::pareto_curve(&geom, &params, SWEEP_POINTS) else {
            return outcome(false, format!("sweep failed at Q = {q:e}"));
        };
        shares.push(branch_share(&curve, branch));
        curves.push(curve);
    }
    outcome(
        shares.iter().all(|&s| s >= BRANCH_SHARE),
        format!(
            "fast share at 30 Mb {:.1}%, slow share at 100 Mb {:.1}% (>= {:.0}%)",
            100.0 * shares[0],
            100.0 * shares[1],
            100.0 * BRANCH_SHARE
        ),
    )
}

fn power_consistency(curves: &[ParetoCurve]) -> Outcome {
    let mut worst = 0.0f64;
    let mut ratios: Vec<(f64, Vec<f64>)> = Vec::new();
    for curve in curves
        .iter()
        .filter(|c| c.points.iter().any(|p| p.straight().is_some()))
    {
        let params = &curve.params;
        let geom = StraightGeometry::reference(params);
        let q = params.data_bits;
        for p in &curve.points {
            let d = p.straight().expect("straight curve");
            worst = worst.max(rel(straight_throughput(d.p1, d.speed, &geom, params), q));
            let target = q * d.speed * LN_2 / params.bandwidth;
            worst = worst.max(rel(straight_integral(d.p1, &geom, params), target));
        }
        ratios.push((
            q,
            curve
                .points
                .iter()
                .map(|p| p.design.p1() / params.circuit_power)
                .collect(),
        ));
    }
    let small = ratios
        .iter()
        .find(|(q, _)| *q == Q_SMALL)
        .map(|(_, r)| r.clone())
        .unwrap_or_default();
    let large = ratios
        .iter()
        .find(|(q, _)| *q == Q_LARGE)
        .map(|(_, r)| r.clone())
        .unwrap_or_default();
    let same_order = !small.is_empty()
        && small
            .iter()
            .all(|r| (SAME_ORDER.0..=SAME_ORDER.1).contains(r));
    let big = large.iter().filter(|&&r| r >= LARGE_P1_FACTOR).count();
    let majority = 2 * big > large.len();
    let span = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(0.0, f64::max);
        format!("[{lo:.2}, {hi:.2}]")
    };
    outcome(
        worst <= THROUGHPUT_RTOL && same_order && majority,
        format!(
            "round trip max rel {worst:.3e}; p1/Pc at 30 Mb in {} (same order: {same_order}); \
             p1 >= {LARGE_P1_FACTOR}Pc at 100 Mb on {big}/{} points, p1/Pc in {}",
            span(&small),
            large.len(),
            span(&large)
        ),
    )
}

fn lemma_enforcement(curves: &[ParetoCurve]) -> Outcome {
    let mut extra: Vec<(EnergyPoint, f64)> = Vec::new();
    let low = SystemParams::reference();
    for e in [
        circular::gt_min_energy(&low),
        circular::uav_min_energy(&low),
    ]
    .into_iter()
    .flatten()
    {
        extra.push((e, low.data_bits));
    }
    for q in [Q_SMALL, Q_LARGE] {
        let (geom, params) = straight_setup(q);
        for e in [
            straight::gt_min_energy(&geom, &params),
            straight::uav_min_energy(&geom, &params),
        ]
        .into_iter()
        .flatten()
        {
            extra.push((e, q));
        }
    }
    let all = curves
        .iter()
        .flat_map(|c| c.points.iter().map(move |p| (*p, c.params.data_bits)))
        .chain(extra);
    let (mut count, mut worst) = (0usize, 0.0f64);
    for (p, q) in all {
        count += 1;
        worst = worst.max(rel(p.throughput, q));
    }
    outcome(
        count > 0 && worst <= THROUGHPUT_RTOL,
        format!("{count} points, max rel throughput gap {worst:.3e} <= {THROUGHPUT_RTOL:e}"),
    )
}

fn monotone(curves: &[ParetoCurve]) -> Outcome {
    let summary: Vec<String> = curves
        .iter()
        .map(|c| {
            format!(
                "{:?} Pc={} Q={:e}: {} pts {} viol",
                c.kind,
                c.params.circuit_power,
                c.params.data_bits,
                c.points.len(),
                c.monotonicity_violations()
            )
        })
        .collect();
    let pass = curves
        .iter()
        .all(|c| c.points.len() == SWEEP_POINTS && c.monotonicity_violations() == 0);
    outcome(pass, summary.join("; "))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut curves = Vec::new();
    let results = [
        check(
            1,
            "closed form vs quadrature",
            Some(secs(5)),
            closed_form_vs_quadrature,
        ),
        check(
            2,
            "antiderivative finite differences",
            Some(secs(1)),
            antiderivative,
        ),
        check(
            5,
            "solvers vs brute-force grids",
            Some(secs(30)),
            oracle_equivalence,
        ),
        check(3, "circular power identities", None, circular_identities),
        check(4, "straight speed roots", None, speed_roots),
        check(6, "circular trade-off ratio and Pc ordering", None, || {
            tradeoff_ratio(&mut curves)
        }),
        check(7, "straight branch selection", None, || {
            branch_reproduction(&mut curves)
        }),
        check(8, "transmit power consistency", None, || {
            power_consistency(&curves)
        }),
        check(9, "every point delivers Q bits", None, || {
            lemma_enforcement(&curves)
        }),
        check(10, "monotone boundaries", None, || monotone(&curves)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
