//! System constants and the flat `key = value` configuration format.
//!
//! Everything inside the crate works in linear SI units (W, m, Hz, bits, s,
//! J). Decibel quantities only exist at the config boundary: `beta0_dB` is a
//! linear gain in dB and `sigma2_dBm` a noise power in dBm.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Default gravitational acceleration when `g_mps2` is absent.
pub const DEFAULT_GRAVITY: f64 = 9.8;

/// `3^{-3/4} + 3^{1/4}`, the constant in the minimum circular-flight power.
pub fn level_flight_coeff() -> f64 {
    3f64.powf(-0.75) + 3f64.powf(0.25)
}

/// A point on the ground plane, meters. The GT sits at the origin.
pub type Point2 = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// UAV altitude, m.
    pub altitude: f64,
    /// Bandwidth, Hz.
    pub bandwidth: f64,
    /// Receiver noise power, W.
    pub noise_power: f64,
    /// Channel power gain at 1 m, linear.
    pub beta0: f64,
    /// GT circuit power, W.
    pub circuit_power: f64,
    /// GT transmit power cap, W.
    pub gt_max_power: f64,
    /// UAV propulsion power cap, W.
    pub uav_max_power: f64,
    /// Parasitic drag coefficient; `c1 V^3` is in W.
    pub c1: f64,
    /// Induced drag coefficient; `c2 / V` is in W.
    pub c2: f64,
    /// Gravitational acceleration, m/s^2.
    pub gravity: f64,
    /// Data volume to collect, bits.
    pub data_bits: f64,
}

impl SystemParams {
    /// Builds and validates a parameter set.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        altitude: f64,
        bandwidth: f64,
        noise_power: f64,
        beta0: f64,
        circuit_power: f64,
        gt_max_power: f64,
        uav_max_power: f64,
        c1: f64,
        c2: f64,
        gravity: f64,
        data_bits: f64,
    ) -> Result<Self> {
        let params = SystemParams {
            altitude,
            bandwidth,
            noise_power,
            beta0,
            circuit_power,
            gt_max_power,
            uav_max_power,
            c1,
            c2,
            gravity,
            data_bits,
        };
        params.validate()?;
        Ok(params)
    }

    /// The reference scenario: H = 100 m,
    /// B = 1 MHz, beta0 = -50 dB, gamma0 = 1e6 m^2/W, P1max = 0.5 W,
    /// P2max = 1500 W, c1 = 9.26e-4, c2 = 2250, Pc = 10 mW, Q = 600 Mb.
    pub fn reference() -> Self {
        SystemParams::new(
            100.0,
            1e6,
            db_to_linear(-80.0) * 1e-3,
            db_to_linear(-50.0),
            0.01,
            0.5,
            1500.0,
            9.26e-4,
            2250.0,
            DEFAULT_GRAVITY,
            600e6,
        )
        .expect("reference parameters are valid")
    }

    /// Reference SNR density `beta0 / sigma2`, m^2/W.
    pub fn gamma0(&self) -> f64 {
        self.beta0 / self.noise_power
    }

    pub fn with_circuit_power(self, circuit_power: f64) -> Result<Self> {
        let params = SystemParams {
            circuit_power,
            ..self
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_data_bits(self, data_bits: f64) -> Result<Self> {
        let params = SystemParams { data_bits, ..self };
        params.validate()?;
        Ok(params)
    }

    pub fn with_uav_max_power(self, uav_max_power: f64) -> Result<Self> {
        let params = SystemParams {
            uav_max_power,
            ..self
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("H_m", self.altitude),
            ("B_Hz", self.bandwidth),
            ("sigma2", self.noise_power),
            ("beta0", self.beta0),
            ("P1max_W", self.gt_max_power),
            ("P2max_W", self.uav_max_power),
            ("c1", self.c1),
            ("c2", self.c2),
            ("g_mps2", self.gravity),
            ("Q_bits", self.data_bits),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParam(format!(
                    "{name} > 0 violated ({name} = {value})"
                )));
            }
        }
        if !(self.circuit_power.is_finite() && self.circuit_power >= 0.0) {
            return Err(Error::InvalidParam(format!(
                "Pc_W >= 0 violated (Pc_W = {})",
                self.circuit_power
            )));
        }
        let min_level = min_level_power(self);
        if self.uav_max_power <= min_level {
            return Err(Error::InvalidParam(format!(
                "P2max_W > (3^-3/4 + 3^1/4) c1^1/4 c2^3/4 violated ({} <= {min_level})",
                self.uav_max_power
            )));
        }
        Ok(())
    }
}

/// Infimum over all radii of the minimum circular-flight power, i.e. the
/// power of optimal-speed level flight: `(3^{-3/4}+3^{1/4}) c1^{1/4} c2^{3/4}`.
pub fn min_level_power(params: &SystemParams) -> f64 {
    level_flight_coeff() * params.c1.powf(0.25) * params.c2.powf(0.75)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// A parsed config document: system constants plus optional
/// straight-flight endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub params: SystemParams,
    pub endpoints: Option<(Point2, Point2)>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let entries = parse_entries(text)?;
        let number = |key: &str| -> Result<f64> {
            let raw = entries
                .get(key)
                .ok_or_else(|| Error::MissingKey(key.to_string()))?;
            parse_number(key, raw)
        };

        let gravity = match entries.get("g_mps2") {
            Some(raw) => parse_number("g_mps2", raw)?,
            None => DEFAULT_GRAVITY,
        };
        let params = SystemParams::new(
            number("H_m")?,
            number("B_Hz")?,
            db_to_linear(number("sigma2_dBm")?) * 1e-3,
            db_to_linear(number("beta0_dB")?),
            number("Pc_W")?,
            number("P1max_W")?,
            number("P2max_W")?,
            number("c1")?,
            number("c2")?,
            gravity,
            number("Q_bits")?,
        )?;

        let endpoints = match (entries.get("qA_m"), entries.get("qB_m")) {
            (None, None) => None,
            (Some(a), Some(b)) => Some((parse_point("qA_m", a)?, parse_point("qB_m", b)?)),
            (Some(_), None) => return Err(Error::MissingKey("qB_m".into())),
            (None, Some(_)) => return Err(Error::MissingKey("qA_m".into())),
        };

        Ok(Config { params, endpoints })
    }

    /// Endpoints or a missing-key error, for straight-flight runs.
    pub fn require_endpoints(&self) -> Result<(Point2, Point2)> {
        self.endpoints
            .ok_or_else(|| Error::MissingKey("qA_m".into()))
    }

    /// Serializes back to the config format. Values use the shortest
    /// representation that parses back to the same `f64`.
    pub fn to_config_string(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        let rows: [(&str, f64); 11] = [
            ("H_m", p.altitude),
            ("B_Hz", p.bandwidth),
            ("sigma2_dBm", linear_to_db(p.noise_power * 1e3)),
            ("beta0_dB", linear_to_db(p.beta0)),
            ("Pc_W", p.circuit_power),
            ("P1max_W", p.gt_max_power),
            ("P2max_W", p.uav_max_power),
            ("c1", p.c1),
            ("c2", p.c2),
            ("g_mps2", p.gravity),
            ("Q_bits", p.data_bits),
        ];
        for (key, value) in rows {
            let _ = writeln!(out, "{key} = {value:?}");
        }
        if let Some((a, b)) = self.endpoints {
            let _ = writeln!(out, "qA_m = {:?}, {:?}", a[0], a[1]);
            let _ = writeln!(out, "qB_m = {:?}, {:?}", b[0], b[1]);
        }
        out
    }
}

/// Parses a config document into validated system constants. Endpoint keys
/// are accepted and ignored here; see [`Config::parse`].
pub fn parse_config(text: &str) -> Result<SystemParams> {
    Config::parse(text).map(|c| c.params)
}

fn parse_entries(text: &str) -> Result<HashMap<String, String>> {
    let mut entries = HashMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Syntax {
            line: idx + 1,
            message: format!("expected `key = value`, got {line:?}"),
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::Syntax {
                line: idx + 1,
                message: "empty key".into(),
            });
        }
        if entries
            .insert(key.to_string(), value.trim().to_string())
            .is_some()
        {
            return Err(Error::Syntax {
                line: idx + 1,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    Ok(entries)
}

fn parse_number(key: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::InvalidValue {
            key: key.to_string(),
            value: raw.to_string(),
        })
}

fn parse_point(key: &str, raw: &str) -> Result<Point2> {
    let invalid = || Error::InvalidValue {
        key: key.to_string(),
        value: raw.to_string(),
    };
    let (x, y) = raw.split_once(',').ok_or_else(invalid)?;
    let x = parse_number(key, x.trim()).map_err(|_| invalid())?;
    let y = parse_number(key, y.trim()).map_err(|_| invalid())?;
    Ok([x, y])
}
