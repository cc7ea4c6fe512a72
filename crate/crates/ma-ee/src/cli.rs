//! Command-line interface: `motor-curve`, `solve`, and `sweep`.
//!
//! Configuration precedence is flags over file keys over built-in
//! defaults. The config file path comes from `--config`, else the
//! `MA_EE_CONFIG` environment variable, else the defaults apply. All
//! emitted CSV uses `.` decimals and 12 significant digits.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bench::monte_carlo_sweep;
use crate::channel::sample_realization;
use crate::config::{load_config, RunConfig};
use crate::error::{Error, Result};
use crate::numeric::{linspace, sig12};
use crate::solver::{solve_on, solve_traced, CandidateTrace, Solution};

#[derive(Debug, Parser)]
#[command(
    name = "ma-ee",
    version,
    about = "Energy-efficiency optimizer for a stepper-motor-driven movable antenna link"
)]
pub struct Cli {
    /// Path to a JSON config file (default: $MA_EE_CONFIG, else built-ins).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the motor torque and power curve over [0, omega_M] as CSV.
    MotorCurve {
        /// Write to a file instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Optimize one seeded channel realization and print the solution.
    Solve {
        /// Realization seed (default: seed_base from the config).
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        /// Write to a file instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Also dump the per-candidate Dinkelbach traces as CSV.
        #[arg(long)]
        trace: bool,
        /// Emit the solution as JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Monte-Carlo sweep over one parameter; emits a CSV table.
    Sweep {
        /// Swept parameter: speed, array_len, P_max, block_T, num_paths.
        #[arg(long, value_name = "NAME")]
        param: Option<String>,
        /// Comma-separated swept values (ascending). P_max values are dBm.
        #[arg(long, value_name = "CSVLIST")]
        values: Option<String>,
        /// Channel realizations per value.
        #[arg(long, value_name = "N")]
        realizations: Option<usize>,
        /// Base seed; realization i uses seed_base + i.
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        /// Write to a file instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

/// Loads the config named by the flag, the environment, or the defaults.
fn effective_config(flag: &Option<PathBuf>) -> Result<RunConfig> {
    if let Some(path) = flag {
        return load_config(path);
    }
    if let Ok(path) = std::env::var("MA_EE_CONFIG") {
        if !path.is_empty() {
            return load_config(path);
        }
    }
    Ok(RunConfig::default())
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => Ok(std::fs::write(path, content)?),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_value_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>().map_err(|_| {
                Error::config("sweep.values", format!("cannot parse `{tok}` as a number"))
            })
        })
        .collect()
}

/// CSV curve of (omega, torque, power) on 1001 points up to the no-load
/// speed; the final row's power is numerically zero.
fn motor_curve_csv(cfg: &RunConfig) -> Result<String> {
    let resolved = cfg.resolve()?;
    let m = &resolved.scenario.motor;
    let omega_m = m.no_load_speed()?;
    let mut out = String::from("omega_rad_s,torque_nm,power_w\n");
    for omega in linspace(0.0, omega_m, 1001) {
        let torque = m.pull_out_torque(omega)?;
        let power = m.mechanical_power(omega)?;
        out.push_str(&format!(
            "{},{},{}\n",
            sig12(omega),
            sig12(torque),
            sig12(power)
        ));
    }
    Ok(out)
}

fn solution_csv(sol: &Solution) -> String {
    format!(
        "scheme,x_t_m,power_w,speed_m_s,tau_s,ee_bits_per_hz_j,dinkelbach_iters\n{},{},{},{},{},{},{}\n",
        sol.scheme,
        sig12(sol.position),
        sig12(sol.power),
        sig12(sol.speed),
        sig12(sol.tau),
        sig12(sol.ee),
        sol.dinkelbach_iters,
    )
}

fn trace_csv(traces: &[CandidateTrace]) -> String {
    let mut out = String::from("candidate,position_m,reachable,iteration,eta,power_w\n");
    for t in traces {
        if !t.reachable {
            out.push_str(&format!("{},{},false,,,\n", t.index, sig12(t.position)));
            continue;
        }
        for (l, (eta, power)) in t.trace.etas.iter().zip(&t.trace.powers).enumerate() {
            out.push_str(&format!(
                "{},{},true,{},{},{}\n",
                t.index,
                sig12(t.position),
                l,
                sig12(*eta),
                sig12(*power)
            ));
        }
    }
    out
}

/// Runs one parsed invocation. Errors bubble to `main`, which prints them
/// to stderr and exits nonzero.
pub fn run(cli: Cli) -> Result<()> {
    let mut cfg = effective_config(&cli.config)?;
    match cli.command {
        Command::MotorCurve { out } => {
            let csv = motor_curve_csv(&cfg)?;
            write_output(&out, &csv)
        }
        Command::Solve {
            seed,
            out,
            trace,
            json,
        } => {
            if let Some(s) = seed {
                cfg.seed_base = s;
            }
            let resolved = cfg.resolve()?;
            let sn = &resolved.scenario;
            let grid = sn.grid()?;
            let cr = sample_realization(&sn.channel, resolved.seed_base);
            if trace {
                let (sol, traces) =
                    solve_traced(&grid, &sn.system, &sn.motor, &cr, &sn.channel, sn.eps)?;
                let record = render_solution(&sol, json);
                match &out {
                    Some(path) => {
                        std::fs::write(path, &record)?;
                        let trace_path = PathBuf::from(format!("{}.trace.csv", path.display()));
                        std::fs::write(trace_path, trace_csv(&traces))?;
                        Ok(())
                    }
                    None => {
                        print!("{record}\n{}", trace_csv(&traces));
                        Ok(())
                    }
                }
            } else {
                let sol = solve_on(&grid, &sn.system, &sn.motor, &cr, &sn.channel, sn.eps)?;
                write_output(&out, &render_solution(&sol, json))
            }
        }
        Command::Sweep {
            param,
            values,
            realizations,
            seed,
            out,
        } => {
            if param.is_some() || values.is_some() || realizations.is_some() {
                let mut section = cfg.sweep.take().unwrap_or_default();
                if let Some(p) = param {
                    section.param = p;
                }
                if let Some(v) = &values {
                    section.values = parse_value_list(v)?;
                }
                if let Some(n) = realizations {
                    section.realizations = n;
                }
                cfg.sweep = Some(section);
            }
            if let Some(s) = seed {
                cfg.seed_base = s;
            }
            if cfg.sweep.is_none() {
                return Err(Error::config(
                    "sweep",
                    "no sweep configured: pass --param and --values or add a sweep section",
                ));
            }
            let resolved = cfg.resolve()?;
            let spec = resolved
                .sweep
                .as_ref()
                .expect("sweep section checked above");
            let result = monte_carlo_sweep(spec, &resolved.scenario)?;
            write_output(&out, &result.to_csv())
        }
    }
}

fn render_solution(sol: &Solution, json: bool) -> String {
    if json {
        let mut text =
            serde_json::to_string_pretty(sol).expect("solution serialization cannot fail");
        text.push('\n');
        text
    } else {
        solution_csv(sol)
    }
}
