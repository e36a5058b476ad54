//! Energy trade-off between a ground terminal (GT) and a fixed-wing UAV that
//! collects a fixed amount of data from it.
//!
//! Two trajectory families are modelled: a circle centred above the GT and
//! a constant-speed straight pass between two waypoints. For each family the
//! crate computes the two extreme designs and the boundary of achievable
//! `(E1, E2)` pairs, where `E1` is GT energy (transmit plus circuit) and
//! `E2` is UAV propulsion energy. The [`oracle`] module holds independent
//! numerical checks of the closed-form solvers.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod circular;
pub mod error;
pub mod oracle;
pub mod params;
pub mod pareto;
pub mod propulsion;
pub mod scalar_opt;
pub mod straight;

pub use error::{Error, ErrorKind, Result};
pub use oracle::QuadSpec;
pub use params::{Config, Point2, SystemParams};
pub use pareto::{
    geometric_grid, Branch, CircularDesign, Design, EnergyPoint, ParetoCurve, SkippedPoint,
    StraightDesign, TrajectoryKind, FEASIBILITY_RTOL,
};
pub use scalar_opt::{Minimum, SearchSpec};
pub use straight::StraightGeometry;
