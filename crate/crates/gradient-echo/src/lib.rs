//! Simulation and verification toolkit for gradient-echo optical memories.
//!
//! A pulse of light enters an ensemble of two-level atoms whose resonance
//! frequencies vary linearly along the propagation axis. Absorption winds the
//! collective polarization to ever higher spatial frequencies; reversing the
//! detuning gradient unwinds it and the sample re-emits a time-reversed copy
//! of the pulse. This crate provides three mutually cross-validating views of
//! that process:
//!
//! * [`solver`] — direct time-domain integration of the coupled
//!   field/polarization equations, with sign-switchable detuning, auxiliary
//!   input injection and an energy ledger;
//! * [`analytic`] — the closed-form spectral solutions for both evolution
//!   regions, the stored state in spatial-frequency space, the ideal
//!   retrieved pulse and the auxiliary-input condition;
//! * [`network`] — the beamsplitter-network picture, with closed-form echo
//!   efficiencies for single memories, stacked thin memories (transverse
//!   broadening) and repeated switching, plus a brute-force path-sum oracle.
//!
//! [`experiments`] wires these into runnable scenarios with a plain-text
//! configuration format, CSV emission and a small SVG plotter; the `examples/`
//! directory exercises one capability per example.
//!
//! Everything is deterministic: a given input produces bitwise identical
//! output.

pub mod analytic;
pub mod error;
pub mod experiments;
pub mod gamma;
pub mod model;
pub mod network;
pub mod solver;

pub use error::{Error, Result};
pub use model::{
    beta, pulse_energy, validate_spectral_coverage, CoverageReport, FlipSchedule, Grid,
    PhysicalParams, Pulse,
};
pub use solver::{simulate, SimOptions, SimResult};

pub use num_complex::Complex64;
