//! JSON configuration: defaults, loading, validation, and resolution
//! into model types.
//!
//! The file is a JSON object with `motor`, `channel`, `system`, `solver`,
//! optional `sweep`, and `seed_base` sections. Every key is optional and
//! unknown keys are rejected; an empty document `{}` resolves to the
//! built-in defaults (AM2224 motor, 0.06 m wavelength, 0.12 m array,
//! 30 m link at path-loss exponent 2.8, 46 dBm power budget, 30 dBm
//! static power, -80 dBm noise, 50 ms block).
//!
//! Powers and gains are written in dBm/dB in the file and converted to
//! watts and linear ratios exactly once, here. Precedence is CLI flags
//! over file keys over defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bench::{Scenario, SweepParam, SweepSpec};
use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::motor::MotorParams;
use crate::objective::SystemConfig;
use crate::solver::Scheme;
use crate::units::{db_to_linear, dbm_to_watts};

/// Serialized form of the configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub motor: MotorSection,
    pub channel: ChannelSection,
    pub system: SystemSection,
    pub solver: SolverSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    pub seed_base: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MotorSection {
    pub rotor_teeth: u32,
    pub flux: f64,
    pub voltage: f64,
    pub resistance: f64,
    pub inductance: f64,
    pub screw_radius: f64,
    pub step_angle: f64,
    pub omega_max: f64,
    /// Replaces the native step size `step_angle * screw_radius` when
    /// building the position grid, e.g. to mimic a coarser quantization.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_size_override: Option<f64>,
}

impl Default for MotorSection {
    fn default() -> Self {
        let m = MotorParams::am2224();
        MotorSection {
            rotor_teeth: m.rotor_teeth,
            flux: m.flux,
            voltage: m.voltage,
            resistance: m.resistance,
            inductance: m.inductance,
            screw_radius: m.screw_radius,
            step_angle: m.step_angle,
            omega_max: m.omega_max,
            step_size_override: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelSection {
    pub wavelength: f64,
    pub num_paths: usize,
    pub distance: f64,
    pub pathloss_exp: f64,
    #[serde(rename = "ref_pathloss_dB")]
    pub ref_pathloss_db: f64,
    #[serde(rename = "sigma2_dBm")]
    pub sigma2_dbm: f64,
}

impl Default for ChannelSection {
    fn default() -> Self {
        ChannelSection {
            wavelength: 0.06,
            num_paths: 4,
            distance: 30.0,
            pathloss_exp: 2.8,
            ref_pathloss_db: -40.0,
            sigma2_dbm: -80.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SystemSection {
    pub array_len: f64,
    /// Initial antenna position; `null` means the array midpoint.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_pos: Option<f64>,
    #[serde(rename = "block_T")]
    pub block_t: f64,
    #[serde(rename = "P_max_dBm")]
    pub p_max_dbm: f64,
    #[serde(rename = "P_s_dBm")]
    pub p_s_dbm: f64,
}

impl Default for SystemSection {
    fn default() -> Self {
        SystemSection {
            array_len: 0.12,
            init_pos: None,
            block_t: 0.05,
            p_max_dbm: 46.0,
            p_s_dbm: 30.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub eps: f64,
    pub power_grid_size: usize,
}

impl Default for SolverSection {
    fn default() -> Self {
        SolverSection {
            eps: 1e-9,
            power_grid_size: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub param: String,
    pub values: Vec<f64>,
    pub realizations: usize,
    /// Scheme names; empty means all four.
    pub schemes: Vec<String>,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            param: String::new(),
            values: Vec::new(),
            realizations: 1000,
            schemes: Vec::new(),
        }
    }
}

/// Validated, SI-unit model bundle ready to run.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub scenario: Scenario,
    pub power_grid_size: usize,
    pub seed_base: u64,
    pub sweep: Option<SweepSpec>,
}

impl RunConfig {
    /// Parses a JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Serializes back to JSON. Loading the output reproduces `self`
    /// exactly (round-trip fixed point).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }

    /// Validates everything and converts dB/dBm fields to SI.
    pub fn resolve(&self) -> Result<Resolved> {
        let motor = MotorParams {
            rotor_teeth: self.motor.rotor_teeth,
            flux: self.motor.flux,
            voltage: self.motor.voltage,
            resistance: self.motor.resistance,
            inductance: self.motor.inductance,
            screw_radius: self.motor.screw_radius,
            step_angle: self.motor.step_angle,
            omega_max: self.motor.omega_max,
        };
        motor
            .validate()
            .map_err(|e| Error::config("motor", e.to_string()))?;

        let channel = ChannelParams {
            wavelength: self.channel.wavelength,
            num_paths: self.channel.num_paths,
            distance: self.channel.distance,
            pathloss_exp: self.channel.pathloss_exp,
            ref_gain: db_to_linear(self.channel.ref_pathloss_db),
            noise_power: dbm_to_watts(self.channel.sigma2_dbm),
        };
        channel
            .validate()
            .map_err(|e| Error::config("channel", e.to_string()))?;

        let system = SystemConfig {
            array_len: self.system.array_len,
            init_pos: self
                .system
                .init_pos
                .unwrap_or(0.5 * self.system.array_len),
            block: self.system.block_t,
            p_max: dbm_to_watts(self.system.p_max_dbm),
            p_s: dbm_to_watts(self.system.p_s_dbm),
        };
        system
            .validate()
            .map_err(|e| Error::config("system", e.to_string()))?;

        if !(self.solver.eps > 0.0) || !self.solver.eps.is_finite() {
            return Err(Error::config(
                "solver.eps",
                format!("must be positive and finite, got {}", self.solver.eps),
            ));
        }
        if self.solver.power_grid_size < 2 {
            return Err(Error::config(
                "solver.power_grid_size",
                "needs at least two grid points",
            ));
        }

        let scenario = Scenario {
            motor,
            channel,
            system,
            step_override: self.motor.step_size_override,
            eps: self.solver.eps,
        };
        scenario.validate()?;

        let sweep = match &self.sweep {
            None => None,
            Some(section) => {
                let param = SweepParam::parse(&section.param)?;
                let schemes = if section.schemes.is_empty() {
                    Scheme::ALL.to_vec()
                } else {
                    section
                        .schemes
                        .iter()
                        .map(|s| Scheme::parse(s))
                        .collect::<Result<Vec<_>>>()?
                };
                let spec = SweepSpec {
                    param,
                    values: section.values.clone(),
                    realizations: section.realizations,
                    seed_base: self.seed_base,
                    schemes,
                };
                spec.validate()?;
                Some(spec)
            }
        };

        Ok(Resolved {
            scenario,
            power_grid_size: self.solver.power_grid_size,
            seed_base: self.seed_base,
            sweep,
        })
    }
}

/// Reads and parses a configuration file.
pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| {
        Error::config(
            path.as_ref().display().to_string(),
            format!("cannot read config file: {e}"),
        )
    })?;
    RunConfig::from_json(&text)
}
