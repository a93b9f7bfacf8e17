//! Stationary scattering of a Dirac particle off a 1-D rectangular well.
//!
//! Natural units throughout: mu = c = hbar = 1. Energies are multiples of
//! the rest energy mu c^2, lengths multiples of the reduced Compton
//! wavelength hbar/(mu c), times multiples of tau0 = hbar/(mu c^2). The
//! well is -V0 over 0 < z < a and the incident channel is helicity +1.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// |sin k'a| below this classifies a scenario as resonant (k'a = m pi).
pub const RESONANCE_TOL: f64 = 1e-9;

/// Incident energy, well depth, and well width in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellScenario {
    /// Total incident energy E (alpha), must exceed 1.
    pub energy_total: f64,
    /// Well depth V0 (beta), nonnegative; zero means free propagation.
    pub well_depth: f64,
    /// Well width a in Compton lengths, nonnegative.
    pub well_width: f64,
}

impl WellScenario {
    pub fn new(energy_total: f64, well_depth: f64, well_width: f64) -> Result<Self> {
        if !(energy_total > 1.0) {
            return Err(Error::EvanescentEnergy(energy_total));
        }
        if !(well_depth >= 0.0) {
            return Err(Error::InvalidDepth(well_depth));
        }
        if !(well_width >= 0.0) {
            return Err(Error::InvalidWidth(well_width));
        }
        Ok(Self {
            energy_total,
            well_depth,
            well_width,
        })
    }

    /// Builds the scenario whose inside phase k'a equals `phase`.
    pub fn from_phase(energy_total: f64, well_depth: f64, phase: f64) -> Result<Self> {
        if !(energy_total > 1.0) {
            return Err(Error::EvanescentEnergy(energy_total));
        }
        if !(well_depth >= 0.0) {
            return Err(Error::InvalidDepth(well_depth));
        }
        let k_prime = ((energy_total + well_depth).powi(2) - 1.0).sqrt();
        Self::new(energy_total, well_depth, phase / k_prime)
    }

    /// Kinetic energy E' = E - 1.
    pub fn kinetic_energy(&self) -> f64 {
        self.energy_total - 1.0
    }

    /// Inside phase k'a.
    pub fn inside_phase(&self) -> f64 {
        let (_, k_prime) = wavenumbers(self);
        k_prime * self.well_width
    }

    /// True when k'a sits on a transmission resonance k'a = m pi, m >= 1.
    pub fn is_resonant(&self) -> bool {
        let x = self.inside_phase();
        x.sin().abs() < RESONANCE_TOL && x > std::f64::consts::FRAC_PI_2
    }
}

/// Wavenumbers outside and inside the well:
/// k = sqrt(E^2 - 1), k' = sqrt((E + V0)^2 - 1).
pub fn wavenumbers(scenario: &WellScenario) -> (f64, f64) {
    let e = scenario.energy_total;
    let v = scenario.well_depth;
    let k = (e * e - 1.0).sqrt();
    let k_prime = ((e + v) * (e + v) - 1.0).sqrt();
    (k, k_prime)
}

/// The matching parameter chi = (k/k') (E + V0 + 1)/(E + 1), 0 < chi <= 1.
pub fn chi(scenario: &WellScenario) -> f64 {
    let (k, k_prime) = wavenumbers(scenario);
    let e = scenario.energy_total;
    let v = scenario.well_depth;
    (k / k_prime) * (e + v + 1.0) / (e + 1.0)
}

/// Derived single-energy scattering quantities.
#[derive(Debug, Clone, Copy)]
pub struct ScatteringState {
    pub k: f64,
    pub k_prime: f64,
    pub chi: f64,
    /// Complex transmission coefficient F = e^{i phi}/f.
    pub amplitude: Complex64,
    /// The real f in F = e^{i phi}/f (f >= 1).
    pub magnitude_f: f64,
    /// Continuous unwrapped phase shift phi in radians.
    pub phase: f64,
    /// Transmission probability T = 1/f^2.
    pub transmission: f64,
}

/// Continuous phase shift of the transmitted wave:
/// phi = int(k'a/pi + 1/2) pi + arctan[(1/2)(chi + 1/chi) tan k'a].
///
/// The integer-part step joins the arctan branches so phi is continuous
/// across k'a = (m + 1/2) pi, where it passes through (m + 1/2) pi.
pub fn phase_shift(scenario: &WellScenario) -> f64 {
    let x = scenario.inside_phase();
    let g = half_chi_sum(chi(scenario));
    let step = (x / std::f64::consts::PI + 0.5).floor() * std::f64::consts::PI;
    step + (g * x.tan()).atan()
}

fn half_chi_sum(chi: f64) -> f64 {
    0.5 * (chi + 1.0 / chi)
}

/// Full scattering state at a single energy.
///
/// The complex amplitude is F = D / |D|^2 with
/// D = f e^{i phi} = cos k'a + (i/2)(chi + 1/chi) sin k'a,
/// so that arg F agrees (mod 2 pi) with the branch-formula phase.
pub fn transmission_amplitude(scenario: &WellScenario) -> ScatteringState {
    let (k, k_prime) = wavenumbers(scenario);
    let c = chi(scenario);
    let x = k_prime * scenario.well_width;
    let d = Complex64::new(x.cos(), half_chi_sum(c) * x.sin());
    let f_sq = d.norm_sqr();
    ScatteringState {
        k,
        k_prime,
        chi: c,
        amplitude: d / f_sq,
        magnitude_f: f_sq.sqrt(),
        phase: phase_shift(scenario),
        transmission: 1.0 / f_sq,
    }
}

/// Transmission probability T = 4 chi^2 / [4 chi^2 + (chi^2 - 1)^2 sin^2 k'a].
pub fn transmission_probability(scenario: &WellScenario) -> f64 {
    let c = chi(scenario);
    let s = scenario.inside_phase().sin();
    let c2 = c * c;
    4.0 * c2 / (4.0 * c2 + (c2 - 1.0) * (c2 - 1.0) * s * s)
}
