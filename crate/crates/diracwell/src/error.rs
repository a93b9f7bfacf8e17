use thiserror::Error;

/// Errors raised by the physics kernels.
///
/// Configuration and I/O problems of the command-line harness are handled
/// separately in the binary; everything here is a violation of a physical
/// precondition or a numerical failure.
#[derive(Debug, Error)]
pub enum Error {
    /// The incident wave is evanescent: the model requires E > mu c^2.
    #[error("total energy must exceed the rest energy (E = {0} <= 1 in units of mu c^2)")]
    EvanescentEnergy(f64),

    /// Well depth outside the model's validity region.
    #[error("well depth must be nonnegative (V0 = {0})")]
    InvalidDepth(f64),

    /// Negative widths have no meaning for the rectangular well.
    #[error("well width must be nonnegative (a = {0})")]
    InvalidWidth(f64),

    /// A resonance-only formula was evaluated away from k'a = m pi.
    #[error("scenario is not at a transmission resonance (|sin k'a| = {0:.3e})")]
    OffResonance(f64),

    /// The spectral quadrature failed the node-doubling test at the ceiling.
    #[error("quadrature did not converge: delay still moved by {shift:.3e} tau0 at {nodes} nodes")]
    QuadratureNotConverged { nodes: usize, shift: f64 },

    /// The intensity maximum sits on a time-grid endpoint.
    #[error("intensity peak clipped at the time-grid boundary (t = {0})")]
    PeakClipped(f64),

    /// A packet specification violates its own invariants.
    #[error("invalid packet spec: {0}")]
    InvalidPacketSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
