//! Joint position, speed, and power optimization over one block.
//!
//! The decision space factors cleanly:
//!
//! * Speed: the speed penalty `f(v)` is strictly decreasing, so moving at
//!   `v_max` is always optimal and speed never needs searching.
//! * Power: for a fixed target position the EE is a concave-over-affine
//!   fractional program in `P`, solved by Dinkelbach iteration with the
//!   closed-form inner maximizer
//!   `P = clamp( 1/(eta*ln2) - sigma2/gain, 0, P_max )`.
//! * Position: the reachable candidates on the step grid are enumerated
//!   and the best (position, power) pair wins.
//!
//! A brute-force oracle searching candidates against a dense power grid
//! backs the solver in tests; it shares only the objective definition,
//! not the Dinkelbach machinery.

use serde::Serialize;

use crate::channel::{channel_gain, ChannelParams, ChannelRealization};
use crate::error::{Error, Result};
use crate::motor::MotorParams;
use crate::numeric::linspace;
use crate::objective::{rate, SystemConfig};

/// Hard cap on Dinkelbach iterations; convergence is superlinear and
/// real instances stop in well under twenty.
pub const MAX_DINKELBACH_ITERS: usize = 100;

/// Default convergence threshold on successive eta values (bits/Hz/J).
pub const DEFAULT_EPS: f64 = 1e-9;

/// Discrete candidate positions reachable by whole motor steps.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionGrid {
    /// Step size between adjacent candidates (m).
    pub step: f64,
    /// Candidate positions `{0, step, ..., (len-1)*step}` (m).
    pub candidates: Vec<f64>,
    /// Index of the candidate nearest the configured initial position.
    pub x0_index: usize,
}

impl PositionGrid {
    /// Builds the grid from the motor's native step size.
    pub fn build(sc: &SystemConfig, m: &MotorParams) -> Result<Self> {
        Self::with_step(sc, m.step_size())
    }

    /// Builds the grid with an explicit step, used when the configuration
    /// overrides the motor's native `d_s`.
    pub fn with_step(sc: &SystemConfig, step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::config(
                "step_size",
                format!("step must be positive and finite, got {step}"),
            ));
        }
        let count = (sc.array_len / step).floor() as usize;
        if count == 0 {
            return Err(Error::config(
                "array_len",
                format!(
                    "array length {} is shorter than one step {step}",
                    sc.array_len
                ),
            ));
        }
        let candidates: Vec<f64> = (0..count).map(|j| j as f64 * step).collect();
        // Snap the initial position to the nearest candidate, preferring
        // the lower index on exact ties.
        let mut x0_index = 0;
        let mut best = f64::INFINITY;
        for (j, &x) in candidates.iter().enumerate() {
            let d = (x - sc.init_pos).abs();
            if d < best {
                best = d;
                x0_index = j;
            }
        }
        Ok(PositionGrid {
            step,
            candidates,
            x0_index,
        })
    }

    /// Number of candidate positions.
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// The snapped initial position (m).
    pub fn x0(&self) -> f64 {
        self.candidates[self.x0_index]
    }
}

/// Which decision rule produced a [`Solution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scheme {
    /// Joint position/speed/power optimization.
    Proposed,
    /// Move to the gain-maximizing position, transmit at full power.
    Benchmark1,
    /// Optimize with the motor power pinned to a fixed constant.
    Benchmark2,
    /// Fixed-position antenna: never move, optimize power only.
    #[serde(rename = "FPA")]
    Fpa,
}

impl Scheme {
    /// All schemes in canonical reporting order.
    pub const ALL: [Scheme; 4] = [
        Scheme::Proposed,
        Scheme::Benchmark1,
        Scheme::Benchmark2,
        Scheme::Fpa,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Proposed => "Proposed",
            Scheme::Benchmark1 => "Benchmark1",
            Scheme::Benchmark2 => "Benchmark2",
            Scheme::Fpa => "FPA",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Proposed" | "proposed" => Ok(Scheme::Proposed),
            "Benchmark1" | "benchmark1" => Ok(Scheme::Benchmark1),
            "Benchmark2" | "benchmark2" => Ok(Scheme::Benchmark2),
            "FPA" | "fpa" => Ok(Scheme::Fpa),
            other => Err(Error::config(
                "schemes",
                format!("unknown scheme `{other}`"),
            )),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// An optimized operating point and its achieved efficiency.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    /// Chosen antenna position (m).
    #[serde(rename = "x_t_m")]
    pub position: f64,
    /// Chosen transmit power (W).
    #[serde(rename = "power_w")]
    pub power: f64,
    /// Movement speed (m/s).
    #[serde(rename = "speed_m_s")]
    pub speed: f64,
    /// Achieved energy efficiency (bits/Hz/J).
    #[serde(rename = "ee_bits_per_hz_j")]
    pub ee: f64,
    /// Movement delay (s).
    #[serde(rename = "tau_s")]
    pub tau: f64,
    /// Dinkelbach iterations spent on the winning candidate.
    pub dinkelbach_iters: usize,
    /// Decision rule that produced this solution.
    pub scheme: Scheme,
}

/// Iteration history of one Dinkelbach solve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DinkelbachTrace {
    /// Efficiency value after each iteration, starting at `P = P_max`.
    pub etas: Vec<f64>,
    /// Power chosen at each iteration.
    pub powers: Vec<f64>,
    /// Whether the eta gap fell below eps within the iteration cap.
    pub converged: bool,
}

/// Per-candidate trace record for diagnostic dumps.
#[derive(Debug, Clone)]
pub struct CandidateTrace {
    pub index: usize,
    pub position: f64,
    pub reachable: bool,
    pub trace: DinkelbachTrace,
}

/// Closed-form maximizer of the Dinkelbach subproblem,
/// `min( max( 1/(eta*ln2) - sigma2/gain, 0 ), P_max )`.
pub fn dinkelbach_power_update(eta_prev: f64, gain: f64, sigma2: f64, p_max: f64) -> Result<f64> {
    if !(gain > 0.0) {
        return Err(Error::domain(
            "zero channel gain: the power subproblem is degenerate (rate is identically zero)",
        ));
    }
    if !(eta_prev > 0.0) {
        return Err(Error::domain(format!(
            "eta must be positive, got {eta_prev}"
        )));
    }
    Ok((1.0 / (eta_prev * std::f64::consts::LN_2) - sigma2 / gain).clamp(0.0, p_max))
}

/// Fractional EE of the power subproblem at one candidate:
/// `usable * rate / ( usable * (P + P_s) + move_energy )`, where `usable`
/// is `v*T - |x_t - x0|` and `move_energy` is `P_M * |x_t - x0|`.
fn subproblem_eta(
    gain: f64,
    sigma2: f64,
    p_s: f64,
    usable: f64,
    move_energy: f64,
    p: f64,
) -> f64 {
    let r = rate(gain, p, sigma2).expect("subproblem inputs are pre-validated");
    if r == 0.0 {
        return 0.0;
    }
    if move_energy == 0.0 {
        // No move: the usable time cancels exactly, and skipping it keeps
        // the stay-home subproblem bit-identical across block lengths.
        return r / (p + p_s);
    }
    usable * r / (usable * (p + p_s) + move_energy)
}

struct PowerSolve {
    power: f64,
    eta: f64,
    iters: usize,
    trace: DinkelbachTrace,
}

/// Dinkelbach iteration on the power subproblem. `gain == 0` short-circuits
/// to `(P, eta) = (0, 0)` without iterating.
fn dinkelbach_iterate(
    gain: f64,
    sigma2: f64,
    p_max: f64,
    p_s: f64,
    usable: f64,
    move_energy: f64,
    eps: f64,
) -> PowerSolve {
    if gain <= 0.0 {
        return PowerSolve {
            power: 0.0,
            eta: 0.0,
            iters: 0,
            trace: DinkelbachTrace {
                etas: vec![0.0],
                powers: vec![0.0],
                converged: true,
            },
        };
    }
    let mut power = p_max;
    let mut eta = subproblem_eta(gain, sigma2, p_s, usable, move_energy, power);
    let mut etas = vec![eta];
    let mut powers = vec![power];
    let mut converged = false;
    let mut iters = 0;
    for _ in 0..MAX_DINKELBACH_ITERS {
        let next_power = dinkelbach_power_update(eta, gain, sigma2, p_max)
            .expect("gain and eta are positive here");
        let next_eta = subproblem_eta(gain, sigma2, p_s, usable, move_energy, next_power);
        iters += 1;
        powers.push(next_power);
        etas.push(next_eta);
        let gap = (next_eta - eta).abs();
        power = next_power;
        eta = next_eta;
        if gap < eps {
            converged = true;
            break;
        }
    }
    PowerSolve {
        power,
        eta,
        iters,
        trace: DinkelbachTrace {
            etas,
            powers,
            converged,
        },
    }
}

/// Optimal transmit power for a fixed target position, by Dinkelbach
/// iteration starting from `P = P_max`. Returns the converged
/// `(P, eta, trace)`; a zero-gain channel yields `(0, 0)` immediately.
pub fn dinkelbach_power(
    x_t: f64,
    grid: &PositionGrid,
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
) -> Result<(f64, f64, DinkelbachTrace)> {
    if !(eps > 0.0) {
        return Err(Error::domain(format!("eps must be positive, got {eps}")));
    }
    let v = m.v_max();
    let dist = (x_t - grid.x0()).abs();
    let horizon = v * sc.block;
    if dist >= horizon {
        return Err(Error::infeasible(format!(
            "candidate {x_t} m is {dist} m away; at most {horizon} m is reachable in the block"
        )));
    }
    let move_energy = m.motor_power(v)? * dist;
    let gain = channel_gain(cr, cp, x_t);
    let sol = dinkelbach_iterate(
        gain,
        cp.noise_power,
        sc.p_max,
        sc.p_s,
        horizon - dist,
        move_energy,
        eps,
    );
    Ok((sol.power, sol.eta, sol.trace))
}

/// Block EE of a candidate decision, with the motor power an explicit
/// argument so benchmark variants can decide under a pinned motor model.
pub(crate) fn block_ee(r: f64, power: f64, p_s: f64, block: f64, tau: f64, motor_w: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    if tau == 0.0 {
        r / (power + p_s)
    } else {
        (block - tau) * r / (tau * motor_w + (block - tau) * (power + p_s))
    }
}

struct Best {
    index: usize,
    dist: f64,
    power: f64,
    ee_decision: f64,
    rate: f64,
    tau: f64,
    iters: usize,
}

/// Enumerates reachable candidates at speed `v`, optimizing power per
/// candidate under a decision-time motor power `pm_decision`, and reports
/// the winner's EE under the true motor model. Ties on EE prefer the
/// smaller move, then the lower index.
#[allow(clippy::too_many_arguments)]
fn enumerate_best(
    grid: &PositionGrid,
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
    v: f64,
    pm_decision: f64,
    scheme: Scheme,
    mut traces: Option<&mut Vec<CandidateTrace>>,
) -> Result<Solution> {
    if !(eps > 0.0) {
        return Err(Error::domain(format!("eps must be positive, got {eps}")));
    }
    let pm_true = m.motor_power(v)?;
    let horizon = v * sc.block;
    let x0 = grid.x0();
    let mut best: Option<Best> = None;
    for (j, &x) in grid.candidates.iter().enumerate() {
        let dist = (x - x0).abs();
        if dist >= horizon {
            if let Some(sink) = traces.as_deref_mut() {
                sink.push(CandidateTrace {
                    index: j,
                    position: x,
                    reachable: false,
                    trace: DinkelbachTrace {
                        etas: vec![],
                        powers: vec![],
                        converged: false,
                    },
                });
            }
            continue;
        }
        let gain = channel_gain(cr, cp, x);
        let sol = dinkelbach_iterate(
            gain,
            cp.noise_power,
            sc.p_max,
            sc.p_s,
            horizon - dist,
            pm_decision * dist,
            eps,
        );
        let tau = if dist == 0.0 { 0.0 } else { dist / v };
        let r = rate(gain, sol.power, cp.noise_power)?;
        let ee_decision = block_ee(r, sol.power, sc.p_s, sc.block, tau, pm_decision);
        if let Some(sink) = traces.as_deref_mut() {
            sink.push(CandidateTrace {
                index: j,
                position: x,
                reachable: true,
                trace: sol.trace.clone(),
            });
        }
        let improves = match &best {
            None => true,
            Some(b) => {
                ee_decision > b.ee_decision || (ee_decision == b.ee_decision && dist < b.dist)
            }
        };
        if improves {
            best = Some(Best {
                index: j,
                dist,
                power: sol.power,
                ee_decision,
                rate: r,
                tau,
                iters: sol.iters,
            });
        }
    }
    // x0 itself is always strictly reachable, so a winner exists.
    let b = best.expect("candidate set contains the initial position");
    let ee_true = block_ee(b.rate, b.power, sc.p_s, sc.block, b.tau, pm_true);
    Ok(Solution {
        position: grid.candidates[b.index],
        power: b.power,
        speed: v,
        ee: ee_true,
        tau: b.tau,
        dinkelbach_iters: b.iters,
        scheme,
    })
}

/// Full joint optimization at `v = v_max` on the motor's native grid.
pub fn solve(
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
) -> Result<Solution> {
    let grid = PositionGrid::build(sc, m)?;
    solve_on(&grid, sc, m, cr, cp, eps)
}

/// Full joint optimization at `v = v_max` on an explicit grid.
pub fn solve_on(
    grid: &PositionGrid,
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
) -> Result<Solution> {
    let v = m.v_max();
    let pm = m.motor_power(v)?;
    enumerate_best(grid, sc, m, cr, cp, eps, v, pm, Scheme::Proposed, None)
}

/// Joint optimization with the movement speed forced to `v`, used by the
/// speed sweep. `v` must lie in `(0, v_max]`.
pub fn solve_with_speed(
    grid: &PositionGrid,
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
    v: f64,
) -> Result<Solution> {
    if !(v > 0.0) || v > m.v_max() {
        return Err(Error::domain(format!(
            "forced speed {v} outside (0, {}]",
            m.v_max()
        )));
    }
    let pm = m.motor_power(v)?;
    enumerate_best(grid, sc, m, cr, cp, eps, v, pm, Scheme::Proposed, None)
}

/// [`solve_on`] variant that also returns the per-candidate Dinkelbach
/// traces for diagnostic output.
pub fn solve_traced(
    grid: &PositionGrid,
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
) -> Result<(Solution, Vec<CandidateTrace>)> {
    let v = m.v_max();
    let pm = m.motor_power(v)?;
    let mut traces = Vec::with_capacity(grid.len());
    let sol = enumerate_best(
        grid,
        sc,
        m,
        cr,
        cp,
        eps,
        v,
        pm,
        Scheme::Proposed,
        Some(&mut traces),
    )?;
    Ok((sol, traces))
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn enumerate_with_motor_power(
    grid: &PositionGrid,
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    eps: f64,
    pm_decision: f64,
    scheme: Scheme,
) -> Result<Solution> {
    enumerate_best(
        grid,
        sc,
        m,
        cr,
        cp,
        eps,
        m.v_max(),
        pm_decision,
        scheme,
        None,
    )
}

/// Exhaustive search over all reachable candidates and a uniform power
/// grid of `power_points` levels on `[0, P_max]`. Testing oracle for
/// [`solve`]; same tie-break rule, no Dinkelbach anywhere.
pub fn brute_force_oracle(
    sc: &SystemConfig,
    m: &MotorParams,
    cr: &ChannelRealization,
    cp: &ChannelParams,
    power_points: usize,
) -> Result<Solution> {
    let grid = PositionGrid::build(sc, m)?;
    if power_points < 2 {
        return Err(Error::domain("power grid needs at least two points"));
    }
    let v = m.v_max();
    let pm = m.motor_power(v)?;
    let horizon = v * sc.block;
    let x0 = grid.x0();
    let powers = linspace(0.0, sc.p_max, power_points);
    let mut best: Option<(usize, f64, f64, f64, f64)> = None; // (j, dist, power, ee, tau)
    for (j, &x) in grid.candidates.iter().enumerate() {
        let dist = (x - x0).abs();
        if dist >= horizon {
            continue;
        }
        let gain = channel_gain(cr, cp, x);
        let tau = if dist == 0.0 { 0.0 } else { dist / v };
        for &p in &powers {
            let r = rate(gain, p, cp.noise_power)?;
            let ee = block_ee(r, p, sc.p_s, sc.block, tau, pm);
            let improves = match best {
                None => true,
                Some((_, bd, _, be, _)) => ee > be || (ee == be && dist < bd),
            };
            if improves {
                best = Some((j, dist, p, ee, tau));
            }
        }
    }
    let (j, _, power, ee, tau) = best.expect("grid contains the initial position");
    Ok(Solution {
        position: grid.candidates[j],
        power,
        speed: v,
        ee,
        tau,
        dinkelbach_iters: 0,
        scheme: Scheme::Proposed,
    })
}
