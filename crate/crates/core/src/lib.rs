//! Spintronic cellular neural network simulator.
//!
//! Neurons are stochastic macrospin nanomagnets switched by spin-transfer
//! torque; synapses are spin currents injected into non-magnetic channels;
//! outputs are read through an MTJ divider and an inverter. A Chua-Yang CMOS
//! baseline and an energy/delay/area explorer sit alongside.
//!
//! Everything that loops over cells takes a [`Schedule`]; with the `parallel`
//! feature (default) `Schedule::Parallel` uses rayon, otherwise both variants
//! run sequentially. Results never depend on the schedule: each cell draws
//! from its own seeded stream.

// `!(x > 0.0)` is used on purpose throughout to reject NaN along with
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cmos;
pub mod config;
pub mod constants;
pub mod error;
pub mod exec;
pub mod glyphs;
pub mod magnet;
pub mod network;
pub mod pattern;
pub mod readout;
pub mod streams;
pub mod synapse;
pub mod templates;
pub mod transport;
pub mod vec3;

pub use config::{parse_config, Config};
pub use error::{Error, Result};
pub use exec::Schedule;
pub use glyphs::glyph;
pub use magnet::{MagnetParams, Magnetization};
pub use network::{run, Boundary, CnnGrid, RunContext, Trajectory};
pub use pattern::Pattern;
pub use templates::{Template, TemplateSet};
