//! Tunneling times for a symmetric rectangular barrier.
//!
//! The crate evaluates phase, dwell and self-interference times for one-way
//! tunneling and for two identical packets colliding on the barrier from
//! opposite sides, and checks them against wave packets built from the
//! stationary states and against a split-operator propagator.
//!
//! Everything is generic over the scalar type ([`Real`], implemented for
//! `f32` and `f64`); the aliases at the crate root fix it to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

mod error;
pub mod kinematics;
pub mod numerics;
mod scalar;
pub mod scattering;
pub mod verify;
pub mod wavepacket;

pub use error::{Error, Result};
pub use kinematics::{normalize_time, BarrierSpec, Kinematics, NormalizationMode, Regime};
pub use scalar::Real;

pub type Barrier = BarrierSpec<f64>;
pub type Kin = Kinematics<f64>;
pub type Amplitudes = scattering::ChannelAmplitudes<f64>;
pub type Times = scattering::TimeBundle<f64>;
