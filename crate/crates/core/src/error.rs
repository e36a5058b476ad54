use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("missing config key `{0}`")]
    MissingKey(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("invalid value for `{key}`: {value:?}")]
    InvalidValue { key: String, value: String },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("straight-flight endpoints coincide")]
    CoincidentEndpoints,

    #[error("propulsion cap {p2_max} W does not exceed the level-flight minimum {min_level} W")]
    InfeasiblePower { p2_max: f64, min_level: f64 },

    #[error("circuit power is zero: the GT-optimal transmit power tends to 0 and the mission time is unbounded")]
    UnboundedTime,

    #[error("average propulsion power {power} W outside ({min_level}, {p2_max}] W")]
    PowerOutOfRange {
        power: f64,
        min_level: f64,
        p2_max: f64,
    },

    #[error("required GT power {p1} W exceeds the cap {p1_max} W")]
    InfeasiblePoint { p1: f64, p1_max: f64 },

    #[error("no feasible design delivers the data with UAV energy {e2} J")]
    InfeasibleEnergy { e2: f64 },

    #[error("UAV energy {e2} J is below the straight-leg minimum {min} J")]
    BelowMinimumEnergy { e2: f64, min: f64 },

    #[error(
        "throughput integral target {target} not reachable with transmit power up to {p1_limit} W"
    )]
    UnreachableTarget { target: f64, p1_limit: f64 },

    #[error("objective infeasible at every search point")]
    EmptyFeasibleSet,

    #[error("target {target} not bracketed by [{f_lo}, {f_hi}]")]
    BracketViolation { target: f64, f_lo: f64, f_hi: f64 },

    #[error("quadrature tolerance not met within {max_depth} bisections")]
    ToleranceNotMet { max_depth: usize },

    #[error("invalid search spec: {0}")]
    InvalidSpec(String),
}

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Infeasible,
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::MissingKey(_)
            | Error::Syntax { .. }
            | Error::InvalidValue { .. }
            | Error::InvalidParam(_)
            | Error::CoincidentEndpoints => ErrorKind::Config,
            Error::InfeasiblePower { .. }
            | Error::UnboundedTime
            | Error::PowerOutOfRange { .. }
            | Error::InfeasiblePoint { .. }
            | Error::InfeasibleEnergy { .. }
            | Error::BelowMinimumEnergy { .. }
            | Error::UnreachableTarget { .. }
            | Error::EmptyFeasibleSet => ErrorKind::Infeasible,
            Error::BracketViolation { .. }
            | Error::ToleranceNotMet { .. }
            | Error::InvalidSpec(_) => ErrorKind::Numerical,
        }
    }
}
