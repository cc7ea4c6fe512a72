//! Energy-efficiency modeling and optimization for a movable antenna
//! driven by a stepper motor along a linear rail.
//!
//! Moving the antenna reshapes the multipath channel, but the move costs
//! both time (lost transmission) and motor energy. This crate models the
//! three coupled pieces and optimizes their trade-off over one coherence
//! block:
//!
//! * [`motor`]: pull-out torque curve, mechanical power, speed limits,
//!   and the discrete step size of the drive.
//! * [`channel`]: field-response multipath channel with seeded random
//!   realizations.
//! * [`objective`]: block rate, energy, and the energy-efficiency (EE)
//!   objective in bits/Hz/J.
//! * [`solver`]: closed-form speed rule, Dinkelbach power iteration, and
//!   candidate-position enumeration, plus a brute-force testing oracle.
//! * [`bench`]: three benchmark decision rules and a deterministic
//!   Monte-Carlo sweep harness.
//! * [`config`] and [`cli`]: JSON configuration and the `ma-ee` binary
//!   with `motor-curve`, `solve`, and `sweep` subcommands.
//!
//! The `book/` directory holds a guide whose code snippets compile and
//! run as doc-tests of this crate.
//!
//! # Example
//!
//! ```
//! use ma_ee::channel::sample_realization;
//! use ma_ee::config::RunConfig;
//! use ma_ee::solver::solve;
//!
//! let resolved = RunConfig::default().resolve()?;
//! let sn = &resolved.scenario;
//! let cr = sample_realization(&sn.channel, 1);
//! let sol = solve(&sn.system, &sn.motor, &cr, &sn.channel, sn.eps)?;
//! assert!(sol.ee > 0.0);
//! assert!(sol.power <= sn.system.p_max);
//! # Ok::<(), ma_ee::Error>(())
//! ```

// `!(x > 0.0)` is used instead of `x <= 0.0` throughout validation so that
// NaN falls on the rejecting side; expected-value literals keep every digit
// their extended-precision computation produced.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bench;
pub mod channel;
pub mod cli;
pub mod config;
pub mod error;
pub mod motor;
pub mod numeric;
pub mod objective;
pub mod solver;
pub mod units;

pub use error::{Error, Result};

#[cfg(doctest)]
mod guide;
