//! Types shared by both trajectory families: operating points, the energy
//! pair they realize, and swept Pareto curves.

use crate::error::Error;
use crate::params::SystemParams;

/// Relative slack applied to the power caps when testing feasibility, so
/// that points computed exactly on a constraint boundary are not discarded
/// for round-off.
pub const FEASIBILITY_RTOL: f64 = 1e-9;

pub(crate) fn within_cap(value: f64, cap: f64) -> bool {
    value <= cap * (1.0 + FEASIBILITY_RTOL)
}

/// Operating point of a circular flight centred on the GT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularDesign {
    /// Mission time, s.
    pub duration: f64,
    /// Circle radius, m.
    pub radius: f64,
    /// UAV speed, m/s.
    pub speed: f64,
    /// GT transmit power, W.
    pub p1: f64,
}

/// Which of the two equal-energy speeds realized a straight design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// The larger root `V1`.
    Fast,
    /// The smaller root `V2`.
    Slow,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Fast => "fast",
            Branch::Slow => "slow",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Operating point of a constant-speed straight pass from `qA` to `qB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StraightDesign {
    /// UAV speed, m/s.
    pub speed: f64,
    /// GT transmit power, W.
    pub p1: f64,
    pub branch: Branch,
    /// Flight time `D / V`, s.
    pub duration: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Design {
    Circular(CircularDesign),
    Straight(StraightDesign),
}

impl Design {
    pub fn p1(&self) -> f64 {
        match self {
            Design::Circular(d) => d.p1,
            Design::Straight(d) => d.p1,
        }
    }

    pub fn duration(&self) -> f64 {
        match self {
            Design::Circular(d) => d.duration,
            Design::Straight(d) => d.duration,
        }
    }
}

/// A feasible `(E1, E2)` pair with the design that realizes it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    /// GT energy, J.
    pub e1: f64,
    /// UAV propulsion energy, J.
    pub e2: f64,
    /// Bits delivered by `design`.
    pub throughput: f64,
    pub design: Design,
}

impl EnergyPoint {
    pub fn circular(&self) -> Option<&CircularDesign> {
        match &self.design {
            Design::Circular(d) => Some(d),
            Design::Straight(_) => None,
        }
    }

    pub fn straight(&self) -> Option<&StraightDesign> {
        match &self.design {
            Design::Straight(d) => Some(d),
            Design::Circular(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryKind {
    Circular,
    Straight,
}

/// A sweep point that produced no feasible design.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedPoint {
    pub e2: f64,
    pub reason: Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParetoCurve {
    /// Feasible points in ascending `E2`.
    pub points: Vec<EnergyPoint>,
    pub kind: TrajectoryKind,
    pub params: SystemParams,
    pub skipped: Vec<SkippedPoint>,
}

impl ParetoCurve {
    /// Number of adjacent pairs where `E1` goes up as `E2` goes up.
    pub fn monotonicity_violations(&self) -> usize {
        self.points.windows(2).filter(|w| w[1].e1 > w[0].e1).count()
    }
}

/// `n >= 2` geometrically spaced values from `lo` to `hi`, both ends exact.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi >= lo);
    let ratio = (hi / lo).ln();
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => lo * (ratio * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}
