//! Compiles and runs every code snippet in the book as a doc-test, so
//! the guide can never drift from the library. One module per chapter
//! keeps failures attributable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/motor-model.md")]
pub mod motor_model {}

#[doc = include_str!("../../../book/src/channel-model.md")]
pub mod channel_model {}

#[doc = include_str!("../../../book/src/energy-efficiency.md")]
pub mod energy_efficiency {}

#[doc = include_str!("../../../book/src/solver.md")]
pub mod solver_chapter {}

#[doc = include_str!("../../../book/src/benchmarks.md")]
pub mod benchmarks {}

#[doc = include_str!("../../../book/src/sweeps.md")]
pub mod sweeps {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli_chapter {}
