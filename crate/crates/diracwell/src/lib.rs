//! Transmission, phase shift, and group delay for Dirac particles
//! crossing a one-dimensional rectangular potential well, together with a
//! first-principles Gaussian wave-packet simulation that validates the
//! stationary-phase delay.
//!
//! Everything works in natural units mu = c = hbar = 1: energies in units
//! of the rest energy, lengths in reduced Compton wavelengths, times in
//! tau0 = hbar/(mu c^2).

pub mod delay;
pub mod error;
pub mod packet;
pub mod plot;
pub mod quadrature;
pub mod scattering;
pub mod sweep;
pub mod validate;

pub use delay::{DelayReport, ThresholdBranch};
pub use error::{Error, Result};
pub use packet::{PacketResult, PacketSpec};
pub use scattering::{ScatteringState, WellScenario};
