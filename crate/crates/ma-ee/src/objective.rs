//! Block-level rate, energy, and energy-efficiency objective.
//!
//! A coherence block of `T` seconds is spent in two stages: the carriage
//! first moves from `x0` to the chosen position `x_t` (delay
//! `tau = |x_t - x0| / v`, motor drawing `P_M(v)`), then transmits for the
//! remaining `T - tau` seconds at power `P` plus static circuit power
//! `P_s`. Energy efficiency is information delivered per joule:
//!
//! ```text
//! EE = (T - tau) * rate / ( tau * P_M(v) + (T - tau) * (P + P_s) )
//! ```
//!
//! in bits/Hz/J. With `x_t = x0` the delay vanishes and EE reduces to the
//! asymptotic form `rate / (P + P_s)`, which is also the `T -> inf` limit.
//!
//! For analysis the same quantity can be recast as
//! `rate / (P + P_s + f(v) * |x_t - x0|)` with the speed penalty
//! `f(v) = P_M(v) / (v*T - |x_t - x0|)`. `f` is strictly decreasing in `v`
//! on the feasible range, so moving as fast as the motor allows is always
//! optimal; [`speed_penalty`] exposes `f` for tests and exploration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motor::MotorParams;

/// Link and protocol constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    /// Length of the linear positioning range (m).
    pub array_len: f64,
    /// Initial antenna position (m), within `[0, array_len]`.
    pub init_pos: f64,
    /// Coherence block duration (s).
    pub block: f64,
    /// Transmit power budget (W).
    pub p_max: f64,
    /// Static circuit power (W).
    pub p_s: f64,
}

impl SystemConfig {
    /// Checks the type invariants.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("array_len", self.array_len),
            ("block", self.block),
            ("p_max", self.p_max),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::model(format!(
                    "system {name} must be positive and finite, got {value}"
                )));
            }
        }
        if !self.init_pos.is_finite() || self.init_pos < 0.0 || self.init_pos > self.array_len {
            return Err(Error::model(format!(
                "init_pos = {} must lie in [0, {}]",
                self.init_pos, self.array_len
            )));
        }
        if !(self.p_s >= 0.0) || !self.p_s.is_finite() {
            return Err(Error::model(format!(
                "system p_s must be non-negative and finite, got {}",
                self.p_s
            )));
        }
        Ok(())
    }
}

/// A candidate decision: where to move, how fast, and at what power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Target antenna position (m).
    pub position: f64,
    /// Transmit power (W).
    pub power: f64,
    /// Carriage speed during the move (m/s).
    pub speed: f64,
}

/// Spectral efficiency `log2(1 + P * gain / noise)` in bits/s/Hz.
pub fn rate(gain: f64, power: f64, noise: f64) -> Result<f64> {
    if !(noise > 0.0) {
        return Err(Error::domain(format!(
            "noise power must be positive, got {noise}"
        )));
    }
    if !(gain >= 0.0) || !(power >= 0.0) {
        return Err(Error::domain(format!(
            "rate needs non-negative gain and power, got gain={gain}, power={power}"
        )));
    }
    Ok((1.0 + power * gain / noise).log2())
}

/// Movement delay `|x_t - x0| / v` in seconds.
pub fn movement_delay(x_t: f64, x0: f64, v: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::domain(format!("speed must be positive, got {v}")));
    }
    Ok((x_t - x0).abs() / v)
}

/// Validates an operating point against the block constraints and returns
/// the movement delay. Zero speed is admitted only when no move happens.
fn feasible_delay(op: &OperatingPoint, sc: &SystemConfig, m: &MotorParams) -> Result<f64> {
    if !(op.power >= 0.0) || op.power > sc.p_max {
        return Err(Error::domain(format!(
            "transmit power {} outside [0, {}]",
            op.power, sc.p_max
        )));
    }
    if !(op.speed >= 0.0) || op.speed > m.v_max() {
        return Err(Error::domain(format!(
            "speed {} outside [0, {}]",
            op.speed,
            m.v_max()
        )));
    }
    let dist = (op.position - sc.init_pos).abs();
    if dist == 0.0 {
        return Ok(0.0);
    }
    let tau = movement_delay(op.position, sc.init_pos, op.speed)?;
    if tau > sc.block {
        return Err(Error::infeasible(format!(
            "moving {dist} m at {} m/s takes {tau} s, longer than the {} s block",
            op.speed, sc.block
        )));
    }
    Ok(tau)
}

/// Energy spent over one block: `tau * P_M(v) + (T - tau) * (P + P_s)`.
pub fn total_energy(op: &OperatingPoint, sc: &SystemConfig, m: &MotorParams) -> Result<f64> {
    let tau = feasible_delay(op, sc, m)?;
    if tau == 0.0 {
        return Ok(sc.block * (op.power + sc.p_s));
    }
    let motor = m.motor_power(op.speed)?;
    Ok(tau * motor + (sc.block - tau) * (op.power + sc.p_s))
}

/// Energy efficiency of one block in bits/Hz/J.
///
/// Returns 0 when the whole block is spent moving, and reduces exactly to
/// [`ee_asymptotic`] when `x_t = x0`.
pub fn energy_efficiency(
    op: &OperatingPoint,
    sc: &SystemConfig,
    m: &MotorParams,
    gain: f64,
    noise: f64,
) -> Result<f64> {
    let tau = feasible_delay(op, sc, m)?;
    if tau == 0.0 {
        return ee_asymptotic(op.power, gain, noise, sc.p_s);
    }
    let r = rate(gain, op.power, noise)?;
    let energy = tau * m.motor_power(op.speed)? + (sc.block - tau) * (op.power + sc.p_s);
    if energy <= 0.0 {
        return Err(Error::domain("total energy is zero, EE undefined"));
    }
    Ok((sc.block - tau) * r / energy)
}

/// Long-block limit `rate / (P + P_s)`, exact whenever no move happens.
pub fn ee_asymptotic(power: f64, gain: f64, noise: f64, p_s: f64) -> Result<f64> {
    let denom = power + p_s;
    if denom <= 0.0 {
        return Err(Error::domain("total power is zero, EE undefined"));
    }
    Ok(rate(gain, power, noise)? / denom)
}

/// Speed penalty `f(v) = P_M(v) / (v*T - dist)` from the recast objective
/// `EE = rate / (P + P_s + f(v) * dist)`.
///
/// Defined for moves that finish strictly inside the block; strictly
/// decreasing in `v`, which is what makes full speed optimal.
pub fn speed_penalty(m: &MotorParams, v: f64, dist: f64, block: f64) -> Result<f64> {
    if !(dist >= 0.0) {
        return Err(Error::domain(format!("distance must be non-negative, got {dist}")));
    }
    let slack = v * block - dist;
    if !(slack > 0.0) {
        return Err(Error::infeasible(format!(
            "move of {dist} m cannot finish within the block at {v} m/s"
        )));
    }
    Ok(m.motor_power(v)? / slack)
}
