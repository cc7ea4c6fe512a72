//! Electromechanical model of the stepper-motor drive.
//!
//! The antenna carriage rides a lead screw of radius `l0` turned by a
//! two-phase hybrid stepper, so the carriage speed is `v = omega * l0`.
//! At angular speed `omega` the motor sustains at most the pull-out torque
//!
//! ```text
//! M(omega) = p*psi*V / sqrt(R^2 + omega^2 L^2)
//!          - p*omega*psi^2*R / (R^2 + omega^2 L^2)
//! ```
//!
//! which falls monotonically from its stall value `p*psi*V/R` to zero at
//! the no-load speed `omega_M`. Worst-case mechanical drive power is
//! `P_M(omega) = omega * M(omega)`: zero at rest, zero again at `omega_M`,
//! with a single interior peak. The usable speed range is capped at
//! `omega_max < omega_M`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::bisect;

/// Electromechanical constants of the stepper motor and lead screw.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotorParams {
    /// Number of rotor teeth.
    pub rotor_teeth: u32,
    /// Peak flux linkage per phase winding (Wb).
    pub flux: f64,
    /// Drive voltage amplitude (V).
    pub voltage: f64,
    /// Phase resistance (ohm).
    pub resistance: f64,
    /// Phase inductance (H).
    pub inductance: f64,
    /// Lead screw outer radius (m).
    pub screw_radius: f64,
    /// Step angle of one motor step (rad).
    pub step_angle: f64,
    /// Maximum allowed angular speed (rad/s); must stay below the no-load
    /// speed.
    pub omega_max: f64,
}

impl MotorParams {
    /// Constants of the MOONS' AM2224 stepper with a 5 mm lead screw.
    pub fn am2224() -> Self {
        MotorParams {
            rotor_teeth: 6,
            flux: 0.023,
            voltage: 11.94,
            resistance: 75.0,
            inductance: 0.0656,
            screw_radius: 0.005,
            step_angle: std::f64::consts::PI / 12.0,
            omega_max: 552.0,
        }
    }

    /// Checks the type invariants: strictly positive fields, a finite
    /// no-load speed, and `omega_max` below it.
    pub fn validate(&self) -> Result<()> {
        if self.rotor_teeth == 0 {
            return Err(Error::model("rotor_teeth must be positive"));
        }
        for (name, value) in [
            ("flux", self.flux),
            ("voltage", self.voltage),
            ("resistance", self.resistance),
            ("inductance", self.inductance),
            ("screw_radius", self.screw_radius),
            ("step_angle", self.step_angle),
            ("omega_max", self.omega_max),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::model(format!(
                    "motor {name} must be positive and finite, got {value}"
                )));
            }
        }
        let omega_m = self.no_load_speed()?;
        if self.omega_max >= omega_m {
            return Err(Error::model(format!(
                "omega_max = {} must lie below the no-load speed {omega_m:.1}",
                self.omega_max
            )));
        }
        Ok(())
    }

    /// Pull-out torque `M(omega)` in N*m.
    ///
    /// Strictly decreasing in `omega` for any parameter set that passes
    /// [`MotorParams::validate`]; positive below the no-load speed and
    /// negative above it.
    pub fn pull_out_torque(&self, omega: f64) -> Result<f64> {
        if !(omega >= 0.0) || !omega.is_finite() {
            return Err(Error::domain(format!(
                "angular speed must be non-negative, got {omega}"
            )));
        }
        let p = self.rotor_teeth as f64;
        let denom_sq = self.resistance * self.resistance
            + omega * omega * self.inductance * self.inductance;
        let sync = p * self.flux * self.voltage / denom_sq.sqrt();
        let brake = p * omega * self.flux * self.flux * self.resistance / denom_sq;
        Ok(sync - brake)
    }

    /// Mechanical drive power `P_M(omega) = omega * M(omega)` in W.
    ///
    /// Accepts any non-negative `omega`, including speeds beyond
    /// `omega_max`; use [`MotorParams::motor_power`] for the speed-checked
    /// carriage form.
    pub fn mechanical_power(&self, omega: f64) -> Result<f64> {
        Ok(omega * self.pull_out_torque(omega)?)
    }

    /// Motor power drawn while the carriage moves at `v` m/s.
    ///
    /// `v` must lie in `[0, v_max]`; speeds above the cap are rejected
    /// rather than clamped.
    pub fn motor_power(&self, v: f64) -> Result<f64> {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::domain(format!(
                "carriage speed must be non-negative, got {v}"
            )));
        }
        if v > self.v_max() {
            return Err(Error::domain(format!(
                "carriage speed {v} exceeds v_max = {}",
                self.v_max()
            )));
        }
        self.mechanical_power(v / self.screw_radius)
    }

    /// No-load speed `omega_M`, the positive root of `M(omega) = 0`:
    /// `omega_M = V*R / sqrt(psi^2 R^2 - V^2 L^2)`.
    pub fn no_load_speed(&self) -> Result<f64> {
        let disc = self.flux * self.flux * self.resistance * self.resistance
            - self.voltage * self.voltage * self.inductance * self.inductance;
        if disc <= 0.0 {
            return Err(Error::model(
                "no finite no-load speed: flux^2 R^2 must exceed V^2 L^2",
            ));
        }
        Ok(self.voltage * self.resistance / disc.sqrt())
    }

    /// No-load speed recomputed by bracketing the torque zero, as a
    /// cross-check on the closed form.
    pub fn no_load_speed_numeric(&self) -> Result<f64> {
        let torque = |omega: f64| self.pull_out_torque(omega).unwrap_or(f64::NAN);
        if torque(0.0) <= 0.0 {
            return Err(Error::model(
                "no finite no-load speed: stall torque is not positive",
            ));
        }
        // Beyond omega_M the torque stays negative, so doubling finds a
        // bracket; bail out if the parameters admit no sign change.
        let mut hi = 1.0;
        for _ in 0..200 {
            if torque(hi) < 0.0 {
                return bisect(torque, 0.0, hi, 1e-12);
            }
            hi *= 2.0;
        }
        Err(Error::model("torque never crosses zero"))
    }

    /// Linear step size of the carriage, `d_s = step_angle * screw_radius`.
    pub fn step_size(&self) -> f64 {
        self.step_angle * self.screw_radius
    }

    /// Maximum carriage speed, `v_max = omega_max * screw_radius`.
    pub fn v_max(&self) -> f64 {
        self.omega_max * self.screw_radius
    }
}
