//! Design and characterization toolkit for multilayer piezoelectric unimorph
//! bending actuators.
//!
//! The crate is split along the lines of the workflow:
//!
//! * [`laminate`] - transformed-section composite beam model: neutral axis,
//!   flexural stiffness, actuation moment, blocked force, free deflection,
//!   first bending resonance and electrical/mechanical feasibility limits.
//! * [`characterize`] - bench trace processing: numerical differentiation,
//!   cycle segmentation, per-cycle work and power, chirp frequency response
//!   and half-power Q estimation.
//! * [`explorer`] - grid sweeps over stack designs, force/deflection Pareto
//!   front and matched-load power density ranking.
//! * [`io`] - project configuration, trace files and report emission used by
//!   the `unimorph` command-line tool.

pub mod characterize;
pub mod error;
pub mod explorer;
pub mod io;
pub mod laminate;

pub use error::{Error, Result};

/// Standard gravity (m/s²).
pub const STANDARD_GRAVITY: f64 = 9.806_65;
