//! Benchmark schemes and the Monte-Carlo sweep harness.
//!
//! Three reference decision rules bracket the joint optimizer:
//!
//! * Benchmark 1 moves to the gain-maximizing reachable candidate and
//!   transmits at full power; good for rate, wasteful for efficiency.
//! * Benchmark 2 runs the joint optimizer but prices movement with a
//!   constant motor power, the mid-speed value `P_M(omega_max/2)`,
//!   instead of the true curve.
//! * The FPA baseline never moves and only optimizes transmit power.
//!
//! Every scheme's reported EE is evaluated under the true speed-dependent
//! motor model, so cross-scheme comparisons share one physical ground
//! truth. The sweep harness replays all schemes over seeded channel
//! realizations (`seed_base + i`) while one parameter steps through a
//! value list, and aggregates means and standard deviations per value.

use rayon::prelude::*;

use crate::channel::{channel_gain, sample_realization, ChannelParams, ChannelRealization};
use crate::error::{Error, Result};
use crate::motor::MotorParams;
use crate::numeric::sig12;
use crate::objective::{rate, SystemConfig};
use crate::solver::{
    block_ee, dinkelbach_power, enumerate_with_motor_power, solve_on, solve_with_speed,
    PositionGrid, Scheme, Solution,
};
use crate::units::dbm_to_watts;

/// Relative tolerance treating two channel gains as tied, so that pure
/// floating-point noise (a single path evaluated at different positions)
/// does not trigger a pointless move.
const GAIN_TIE_REL: f64 = 1e-12;

/// A fully resolved model bundle: everything needed to run one scheme.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub motor: MotorParams,
    pub channel: ChannelParams,
    pub system: SystemConfig,
    /// Explicit grid step replacing the motor's native `d_s`, if set.
    pub step_override: Option<f64>,
    /// Dinkelbach convergence threshold.
    pub eps: f64,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.motor.validate()?;
        self.channel.validate()?;
        self.system.validate()?;
        if let Some(step) = self.step_override {
            if !(step > 0.0) || !step.is_finite() {
                return Err(Error::config(
                    "motor.step_size_override",
                    format!("step override must be positive and finite, got {step}"),
                ));
            }
        }
        if !(self.eps > 0.0) {
            return Err(Error::config(
                "solver.eps",
                format!("eps must be positive, got {}", self.eps),
            ));
        }
        Ok(())
    }

    /// Builds the candidate grid, honoring the step override.
    pub fn grid(&self) -> Result<PositionGrid> {
        match self.step_override {
            Some(step) => PositionGrid::with_step(&self.system, step),
            None => PositionGrid::build(&self.system, &self.motor),
        }
    }
}

/// Benchmark 1: move to the reachable candidate with the highest channel
/// gain (ties broken toward the smaller move) and transmit at `P_max`.
pub fn benchmark1_rate_max(
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
) -> Result<Solution> {
    let grid = PositionGrid::build(sc, m)?;
    benchmark1_on(&grid, sc, m, cr, cp)
}

pub fn benchmark1_on(
    grid: &PositionGrid,
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
) -> Result<Solution> {
    let v = m.v_max();
    let pm = m.motor_power(v)?;
    let horizon = v * sc.block;
    let x0 = grid.x0();
    let mut best: Option<(usize, f64, f64)> = None; // (index, dist, gain)
    for (j, &x) in grid.candidates.iter().enumerate() {
        let dist = (x - x0).abs();
        if dist >= horizon {
            continue;
        }
        let gain = channel_gain(cr, cp, x);
        let improves = match best {
            None => true,
            Some((_, bd, bg)) => {
                if gain > bg * (1.0 + GAIN_TIE_REL) {
                    true
                } else {
                    gain >= bg * (1.0 - GAIN_TIE_REL) && dist < bd
                }
            }
        };
        if improves {
            best = Some((j, dist, gain));
        }
    }
    let (j, dist, gain) = best.expect("grid contains the initial position");
    let tau = if dist == 0.0 { 0.0 } else { dist / v };
    let r = rate(gain, sc.p_max, cp.noise_power)?;
    Ok(Solution {
        position: grid.candidates[j],
        power: sc.p_max,
        speed: v,
        ee: block_ee(r, sc.p_max, sc.p_s, sc.block, tau, pm),
        tau,
        dinkelbach_iters: 0,
        scheme: Scheme::Benchmark1,
    })
}

/// The constant motor power Benchmark 2 plans with: the pull-out power at
/// half the maximum angular speed.
pub fn benchmark2_motor_power(m: &MotorParams) -> Result<f64> {
    m.mechanical_power(0.5 * m.omega_max)
}

/// Benchmark 2: joint optimization, but movement energy is priced with
/// the constant [`benchmark2_motor_power`]. The reported EE is
/// re-evaluated under the true motor curve.
pub fn benchmark2_fixed_motor_power(
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
) -> Result<Solution> {
    let grid = PositionGrid::build(sc, m)?;
    benchmark2_on(&grid, sc, m, cr, cp, eps)
}

pub fn benchmark2_on(
    grid: &PositionGrid,
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
) -> Result<Solution> {
    let pm_fixed = benchmark2_motor_power(m)?;
    enumerate_with_motor_power(grid, sc, m, cr, cp, eps, pm_fixed, Scheme::Benchmark2)
}

/// Benchmark 3, the FPA baseline: stay at the (snapped) initial position
/// and optimize transmit power alone. The motor parameters only locate
/// the grid; no movement energy is ever spent, so the achieved EE equals
/// the asymptotic form exactly and is independent of the block length.
pub fn benchmark3_fpa(
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
) -> Result<Solution> {
    let grid = PositionGrid::build(sc, m)?;
    benchmark3_on(&grid, sc, m, cr, cp, eps)
}

pub fn benchmark3_on(
    grid: &PositionGrid,
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
) -> Result<Solution> {
    let x0 = grid.x0();
    let (power, _, trace) = dinkelbach_power(x0, grid, sc, m, cr, cp, eps)?;
    let gain = channel_gain(cr, cp, x0);
    let r = rate(gain, power, cp.noise_power)?;
    Ok(Solution {
        position: x0,
        power,
        speed: 0.0,
        ee: block_ee(r, power, sc.p_s, sc.block, 0.0, 0.0),
        tau: 0.0,
        dinkelbach_iters: trace.powers.len().saturating_sub(1),
        scheme: Scheme::Fpa,
    })
}

/// Runs one scheme on one realization. `forced_speed` applies only to the
/// Proposed scheme (the speed sweep pins its movement speed; benchmarks
/// keep their own speed rules).
pub fn run_scheme(
    scheme: Scheme,
    sn: &Scenario,
    grid: &PositionGrid,
    cr: &ChannelRealization,
    forced_speed: Option<f64>,
) -> Result<Solution> {
    match scheme {
        Scheme::Proposed => match forced_speed {
            None => solve_on(grid, &sn.system, &sn.motor, cr, &sn.channel, sn.eps),
            Some(v) => solve_with_speed(grid, &sn.system, &sn.motor, cr, &sn.channel, sn.eps, v),
        },
        Scheme::Benchmark1 => benchmark1_on(grid, &sn.system, &sn.motor, cr, &sn.channel),
        Scheme::Benchmark2 => benchmark2_on(grid, &sn.system, &sn.motor, cr, &sn.channel, sn.eps),
        Scheme::Fpa => benchmark3_on(grid, &sn.system, &sn.motor, cr, &sn.channel, sn.eps),
    }
}

/// Which scenario parameter a sweep steps through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    /// Movement speed forced on the Proposed scheme (m/s).
    Speed,
    /// Positioning range length (m); the start position stays centered.
    ArrayLen,
    /// Transmit power budget (dBm).
    PMax,
    /// Block duration (s).
    BlockT,
    /// Number of channel paths.
    NumPaths,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Speed => "speed",
            SweepParam::ArrayLen => "array_len",
            SweepParam::PMax => "P_max",
            SweepParam::BlockT => "block_T",
            SweepParam::NumPaths => "num_paths",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "speed" => Ok(SweepParam::Speed),
            "array_len" => Ok(SweepParam::ArrayLen),
            "P_max" | "p_max" => Ok(SweepParam::PMax),
            "block_T" | "block_t" => Ok(SweepParam::BlockT),
            "num_paths" => Ok(SweepParam::NumPaths),
            other => Err(Error::config(
                "sweep.param",
                format!(
                    "unknown parameter `{other}` (expected speed, array_len, P_max, block_T, or num_paths)"
                ),
            )),
        }
    }
}

impl std::fmt::Display for SweepParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Declarative description of one Monte-Carlo sweep.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub param: SweepParam,
    /// Swept values, ascending. `P_max` values are in dBm; everything
    /// else is in the parameter's SI unit.
    pub values: Vec<f64>,
    /// Channel realizations per value.
    pub realizations: usize,
    /// Realization `i` uses seed `seed_base + i`, so all swept values see
    /// the same channel draws.
    pub seed_base: u64,
    /// Schemes to run, in reporting order.
    pub schemes: Vec<Scheme>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::config("sweep.values", "no swept values given"));
        }
        if self.values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::config(
                "sweep.values",
                "values must be strictly ascending",
            ));
        }
        if !self.values.iter().all(|v| v.is_finite()) {
            return Err(Error::config("sweep.values", "values must be finite"));
        }
        if self.realizations == 0 {
            return Err(Error::config(
                "sweep.realizations",
                "at least one realization required",
            ));
        }
        if self.schemes.is_empty() {
            return Err(Error::config("sweep.schemes", "no schemes selected"));
        }
        Ok(())
    }
}

/// Aggregated statistics for one (value, scheme) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub scheme: Scheme,
    pub mean_ee: f64,
    pub std_ee: f64,
    pub mean_move: f64,
    pub mean_power: f64,
}

/// Result table of a sweep, one row per (value, scheme).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub param: SweepParam,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Renders the table as CSV with a mandatory header. Floats carry 12
    /// significant digits so repeated runs can be compared byte for byte.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,scheme,mean_ee,std_ee,mean_move_m,mean_power_w\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                sig12(row.value),
                row.scheme,
                sig12(row.mean_ee),
                sig12(row.std_ee),
                sig12(row.mean_move),
                sig12(row.mean_power),
            ));
        }
        out
    }
}

/// Applies one swept value to the base scenario; returns the adjusted
/// scenario and, for speed sweeps, the speed to force on Proposed.
fn apply_value(base: &Scenario, param: SweepParam, value: f64) -> Result<(Scenario, Option<f64>)> {
    if !value.is_finite() {
        return Err(Error::config(
            "sweep.values",
            format!("swept value must be finite, got {value}"),
        ));
    }
    let mut sn = base.clone();
    let mut forced_speed = None;
    match param {
        SweepParam::Speed => {
            let v_max = base.motor.v_max();
            if !(value > 0.0) || value > v_max {
                return Err(Error::config(
                    "sweep.values",
                    format!("speed {value} outside (0, {v_max}]"),
                ));
            }
            forced_speed = Some(value);
        }
        SweepParam::ArrayLen => {
            if !(value > 0.0) {
                return Err(Error::config(
                    "sweep.values",
                    format!("array length must be positive, got {value}"),
                ));
            }
            sn.system.array_len = value;
            sn.system.init_pos = 0.5 * value;
        }
        SweepParam::PMax => {
            sn.system.p_max = dbm_to_watts(value);
        }
        SweepParam::BlockT => {
            if !(value > 0.0) {
                return Err(Error::config(
                    "sweep.values",
                    format!("block duration must be positive, got {value}"),
                ));
            }
            sn.system.block = value;
        }
        SweepParam::NumPaths => {
            if value < 1.0 || value.fract() != 0.0 {
                return Err(Error::config(
                    "sweep.values",
                    format!("num_paths must be a positive integer, got {value}"),
                ));
            }
            sn.channel.num_paths = value as usize;
        }
    }
    sn.validate()?;
    Ok((sn, forced_speed))
}

/// Runs the sweep: for every value and scheme, averages `realizations`
/// seeded channel draws. Realizations run in parallel but reduce in index
/// order, so output is identical regardless of thread count.
pub fn monte_carlo_sweep(spec: &SweepSpec, base: &Scenario) -> Result<SweepResult> {
    spec.validate()?;
    base.validate()?;
    let mut rows = Vec::with_capacity(spec.values.len() * spec.schemes.len());
    for &value in &spec.values {
        let (sn, forced_speed) = apply_value(base, spec.param, value)?;
        let grid = sn.grid()?;
        for &scheme in &spec.schemes {
            let sols: Vec<Solution> = (0..spec.realizations)
                .into_par_iter()
                .map(|i| {
                    let cr = sample_realization(&sn.channel, spec.seed_base + i as u64);
                    run_scheme(scheme, &sn, &grid, &cr, forced_speed)
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(aggregate(value, scheme, &grid, &sols));
        }
    }
    Ok(SweepResult {
        param: spec.param,
        rows,
    })
}

fn aggregate(value: f64, scheme: Scheme, grid: &PositionGrid, sols: &[Solution]) -> SweepRow {
    let n = sols.len() as f64;
    let x0 = grid.x0();
    let mean_ee = sols.iter().map(|s| s.ee).sum::<f64>() / n;
    let std_ee = if sols.len() > 1 {
        (sols
            .iter()
            .map(|s| (s.ee - mean_ee) * (s.ee - mean_ee))
            .sum::<f64>()
            / (n - 1.0))
            .sqrt()
    } else {
        0.0
    };
    let mean_move = sols.iter().map(|s| (s.position - x0).abs()).sum::<f64>() / n;
    let mean_power = sols.iter().map(|s| s.power).sum::<f64>() / n;
    SweepRow {
        value,
        scheme,
        mean_ee,
        std_ee,
        mean_move,
        mean_power,
    }
}
