//! Spectral-efficiency optimization that minimizes the probability of
//! disrupting hidden nodes in a wireless network.
//!
//! A transmitter with a fixed message size (or a low enough average rate)
//! can trade transmit duration and bandwidth against power. Transmitting
//! slower and wider lowers the power spectral density but occupies more of
//! the time-frequency plane; the optimum depends only on the path-loss
//! exponent of the channel to the hidden node. This crate computes that
//! optimum for SISO links (closed form via the Lambert W function) and for
//! square MIMO links with an uninformed transmitter (numerically via the
//! asymptotic per-antenna capacity), evaluates the resulting collision
//! probability in a Poisson field of hidden nodes, and validates the
//! analytic field model against a direct Monte-Carlo simulator.
//!
//! The crate is `no_std`-compatible (`alloc` required) when built without
//! the default `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod linalg;
mod math;
pub mod mimo;
pub mod ppp_field;
pub mod siso;
pub mod specfun;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use mimo::{MimoLinkParams, NormalizedSpectralEfficiency};
pub use ppp_field::{CylinderSpec, PoissonFieldParams, SimulationReport};
pub use siso::{ChannelModel, OptMethod, OptimizationResult, OverlapExtents, OverlapMode, TransmissionPlan};
pub use specfun::{BracketedInterval, ToleranceSpec};
