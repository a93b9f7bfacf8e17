//! Group delays and the negative-delay analysis.
//!
//! The relativistic delay is tau = hbar d(phi)/dE evaluated in closed form;
//! the Schroedinger-limit delay, the necessary condition for negativity,
//! the threshold energy (a Cardano root of E^3 - E = V0), and the
//! resonance diagnostics all live here. Everything is in natural units
//! (see [`crate::scattering`]).

use crate::error::{Error, Result};
use crate::scattering::{chi, phase_shift, transmission_probability, wavenumbers, WellScenario};

use std::f64::consts::PI;

/// Depth above which the threshold cubic has a single real root and the
/// real-radical Cardano form applies: 2/(3 sqrt 3).
pub fn threshold_branch_depth() -> f64 {
    2.0 / (3.0 * 3.0_f64.sqrt())
}

/// Which closed form produced a threshold energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdBranch {
    /// V0 >= 2/(3 sqrt 3): real radicals.
    RealRadical,
    /// V0 < 2/(3 sqrt 3): trigonometric solution of the depressed cubic.
    Trig,
}

impl ThresholdBranch {
    pub fn name(self) -> &'static str {
        match self {
            ThresholdBranch::RealRadical => "real-radical",
            ThresholdBranch::Trig => "trig",
        }
    }
}

/// sin(x)/x with the removable singularity filled in.
fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Relativistic group delay tau = hbar d(phi)/dE in units of tau0.
///
/// Closed form equivalent to the dimensionless expression in
/// [`group_delay_rel_scaled`]; the two routes are kept separate so they
/// can cross-check each other.
pub fn group_delay_rel(scenario: &WellScenario) -> f64 {
    let (k, k_prime) = wavenumbers(scenario);
    let c = chi(scenario);
    let e = scenario.energy_total;
    let v = scenario.well_depth;
    let a = scenario.well_width;
    let x = k_prime * a;
    let t = transmission_probability(scenario);
    let c2 = c * c;
    t / (2.0 * c * k_prime)
        * ((1.0 + c2) * (e + v) * a
            - (1.0 - c2) * v * (2.0 * e + v) * (2.0 * x).sin() / (2.0 * k * k * k_prime))
}

/// The same delay from the dimensionless form
/// tau/tau0 = (T/2chi) k'a/((alpha+beta)^2-1)
///           [(1+chi^2)(alpha+beta) - (1-chi^2) beta(2alpha+beta)/(alpha^2-1) sinc 2k'a].
pub fn group_delay_rel_scaled(alpha: f64, beta: f64, k_prime_a: f64) -> Result<f64> {
    let scenario = WellScenario::from_phase(alpha, beta, k_prime_a)?;
    let c = chi(&scenario);
    let t = transmission_probability(&scenario);
    let c2 = c * c;
    let bracket = (1.0 + c2) * (alpha + beta)
        - (1.0 - c2) * beta * (2.0 * alpha + beta) / (alpha * alpha - 1.0) * sinc(2.0 * k_prime_a);
    Ok(t / (2.0 * c) * k_prime_a / ((alpha + beta) * (alpha + beta) - 1.0) * bracket)
}

/// Non-relativistic (Schroedinger) group delay in units of tau0, in the
/// dimensionless form
/// tau'/tau0 = k'a/sqrt((alpha-1)(alpha+beta-1))
///            [(alpha-1)(2alpha+beta-2) - beta^2 sinc 2k'a]
///            / [4(alpha-1)(alpha+beta-1) + beta^2 sin^2 k'a],
/// where k'a uses the non-relativistic wavenumber of the same scenario.
pub fn group_delay_nonrel(scenario: &WellScenario) -> f64 {
    let alpha = scenario.energy_total;
    let beta = scenario.well_depth;
    let x = nonrel_k_prime(alpha, beta) * scenario.well_width;
    let ep = alpha - 1.0;
    let num = ep * (2.0 * alpha + beta - 2.0) - beta * beta * sinc(2.0 * x);
    let den = 4.0 * ep * (alpha + beta - 1.0) + beta * beta * x.sin() * x.sin();
    x / (ep * (alpha + beta - 1.0)).sqrt() * num / den
}

/// Non-relativistic wavenumber inside the well, k' = sqrt(2(E' + V0)).
pub fn nonrel_k_prime(alpha: f64, beta: f64) -> f64 {
    (2.0 * (alpha - 1.0 + beta)).sqrt()
}

/// Non-relativistic wavenumber outside the well, k = sqrt(2 E').
pub fn nonrel_k(alpha: f64) -> f64 {
    (2.0 * (alpha - 1.0)).sqrt()
}

/// The Schroedinger delay written with explicit wavenumbers,
/// tau' = (2 a / k) [k^2(k^2+k'^2)/k0^4 - sinc 2k'a] / [4 k^2 k'^2/k0^4 + sin^2 k'a],
/// with k0 = sqrt(2 V0). Requires V0 > 0; used as the cross-check route.
pub fn group_delay_nonrel_alt(scenario: &WellScenario) -> Result<f64> {
    let alpha = scenario.energy_total;
    let beta = scenario.well_depth;
    if !(beta > 0.0) {
        return Err(Error::InvalidDepth(beta));
    }
    let k = nonrel_k(alpha);
    let kp = nonrel_k_prime(alpha, beta);
    let k0_4 = (2.0 * beta) * (2.0 * beta);
    let a = scenario.well_width;
    let x = kp * a;
    let num = k * k * (k * k + kp * kp) / k0_4 - sinc(2.0 * x);
    let den = 4.0 * k * k * kp * kp / k0_4 + x.sin() * x.sin();
    Ok(2.0 * a / k * num / den)
}

/// Necessary condition for the group delay to be negative:
/// (1 + chi^2)(E + V0) < (1 - chi^2) V0 (2E + V0) / k^2.
pub fn negativity_condition(energy_total: f64, well_depth: f64) -> Result<bool> {
    if !(well_depth > 0.0) {
        return Err(Error::InvalidDepth(well_depth));
    }
    let scenario = WellScenario::new(energy_total, well_depth, 0.0)?;
    let (k, _) = wavenumbers(&scenario);
    let c2 = chi(&scenario).powi(2);
    let lhs = (1.0 + c2) * (energy_total + well_depth);
    let rhs = (1.0 - c2) * well_depth * (2.0 * energy_total + well_depth) / (k * k);
    Ok(lhs < rhs)
}

/// Threshold energy E_t below which the negativity condition holds:
/// the real root above 1 of E^3 - E = V0, by the Cardano closed form.
pub fn threshold_energy(well_depth: f64) -> Result<f64> {
    Ok(threshold_energy_with_branch(well_depth)?.0)
}

/// Threshold energy together with the closed-form branch used.
pub fn threshold_energy_with_branch(well_depth: f64) -> Result<(f64, ThresholdBranch)> {
    if !(well_depth > 0.0) {
        return Err(Error::InvalidDepth(well_depth));
    }
    let half = well_depth / 2.0;
    let disc = half * half - 1.0 / 27.0;
    if disc >= 0.0 {
        let s = disc.sqrt();
        Ok(((half + s).cbrt() + (half - s).cbrt(), ThresholdBranch::RealRadical))
    } else {
        // Three real roots; the physical one is the largest,
        // 2/sqrt(3) cos(theta/3) with cos theta = (3 sqrt 3 / 2) V0.
        let theta = (half * 27.0_f64.sqrt()).acos();
        Ok((2.0 / 3.0_f64.sqrt() * (theta / 3.0).cos(), ThresholdBranch::Trig))
    }
}

/// Independent oracle for the threshold: bisection root in E of the
/// negativity-condition equality over (1, 10].
pub fn threshold_energy_bisection(well_depth: f64) -> Result<f64> {
    if !(well_depth > 0.0) {
        return Err(Error::InvalidDepth(well_depth));
    }
    let margin = |e: f64| -> f64 {
        let scenario = WellScenario::new(e, well_depth, 0.0).unwrap();
        let (k, _) = wavenumbers(&scenario);
        let c2 = chi(&scenario).powi(2);
        (1.0 + c2) * (e + well_depth)
            - (1.0 - c2) * well_depth * (2.0 * e + well_depth) / (k * k)
    };
    let mut lo = 1.0 + 1e-13;
    let mut hi = 10.0;
    debug_assert!(margin(lo) < 0.0 && margin(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if margin(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn require_resonant(scenario: &WellScenario) -> Result<(f64, f64, f64)> {
    let (k, k_prime) = wavenumbers(scenario);
    let x = k_prime * scenario.well_width;
    let s = x.sin().abs();
    if s >= crate::scattering::RESONANCE_TOL || x < PI / 2.0 {
        return Err(Error::OffResonance(s));
    }
    Ok((k, k_prime, x))
}

/// Group delay at a transmission resonance k'a = m pi:
/// tau = (1/2)(chi + 1/chi)(E + V0) a / k', always exceeding a/c.
pub fn resonance_delay(scenario: &WellScenario) -> Result<f64> {
    let (_, k_prime, _) = require_resonant(scenario)?;
    let c = chi(scenario);
    let e = scenario.energy_total;
    let v = scenario.well_depth;
    Ok(0.5 * (c + 1.0 / c) * (e + v) * scenario.well_width / k_prime)
}

/// Width-derivative of the group delay at a resonance:
/// (1/(2 chi k')) [(1 + chi^2)(E + V0) - (1 - chi^2) V0 (2E + V0)/k^2].
/// Negative exactly when the negativity condition holds.
pub fn resonance_slope(scenario: &WellScenario) -> Result<f64> {
    let (k, k_prime, _) = require_resonant(scenario)?;
    let c = chi(scenario);
    let c2 = c * c;
    let e = scenario.energy_total;
    let v = scenario.well_depth;
    Ok(1.0 / (2.0 * c * k_prime)
        * ((1.0 + c2) * (e + v) - (1.0 - c2) * v * (2.0 * e + v) / (k * k)))
}

/// Central finite difference of the group delay with respect to the width.
/// The closed-form slope exists only at resonances; off resonance this is
/// the recommended substitute.
pub fn width_slope_fd(scenario: &WellScenario, step: f64) -> Result<f64> {
    let plus = WellScenario::new(
        scenario.energy_total,
        scenario.well_depth,
        scenario.well_width + step,
    )?;
    let minus = WellScenario::new(
        scenario.energy_total,
        scenario.well_depth,
        scenario.well_width - step,
    )?;
    Ok((group_delay_rel(&plus) - group_delay_rel(&minus)) / (2.0 * step))
}

/// Central finite difference of the continuous phase with respect to the
/// energy; the independent oracle for the closed-form delay.
pub fn group_delay_fd(scenario: &WellScenario, step: f64) -> Result<f64> {
    let plus = WellScenario::new(
        scenario.energy_total + step,
        scenario.well_depth,
        scenario.well_width,
    )?;
    let minus = WellScenario::new(
        scenario.energy_total - step,
        scenario.well_depth,
        scenario.well_width,
    )?;
    Ok((phase_shift(&plus) - phase_shift(&minus)) / (2.0 * step))
}

/// Asymptotic delay as alpha -> 1+ at fixed depth:
/// tau/tau0 -> -sqrt((beta + 2)/((alpha^2 - 1) beta)) cot k'a.
pub fn low_energy_limit_delay(alpha: f64, beta: f64, k_prime_a: f64) -> f64 {
    let cot = k_prime_a.cos() / k_prime_a.sin();
    -((beta + 2.0) / ((alpha * alpha - 1.0) * beta)).sqrt() * cot
}

/// Transmission probability in the alpha -> 1 limit,
/// T -> 4 chi^2 / (4 chi^2 + sin^2 k'a).
pub fn low_energy_limit_transmission(scenario: &WellScenario) -> f64 {
    let c2 = chi(scenario).powi(2);
    let s = scenario.inside_phase().sin();
    4.0 * c2 / (4.0 * c2 + s * s)
}

/// Delay diagnostics for one scenario.
#[derive(Debug, Clone, Copy)]
pub struct DelayReport {
    /// Relativistic group delay tau (tau0).
    pub delay_rel: f64,
    /// Schroedinger-limit group delay tau' (tau0).
    pub delay_nonrel: f64,
    /// Light transit time a/c, numerically equal to a.
    pub light_transit: f64,
    /// Strict necessary condition for negative delay.
    pub negativity_condition: bool,
    /// Threshold energy E_t for the given depth.
    pub threshold_energy: f64,
    /// d tau/d a at the nearest resonance m = max(1, round(k'a/pi)).
    pub resonance_slope: f64,
}

impl DelayReport {
    pub fn for_scenario(scenario: &WellScenario) -> Result<Self> {
        let x = scenario.inside_phase();
        let m = ((x / PI).round() as i64).max(1);
        let nearest = WellScenario::from_phase(
            scenario.energy_total,
            scenario.well_depth,
            m as f64 * PI,
        )?;
        Ok(Self {
            delay_rel: group_delay_rel(scenario),
            delay_nonrel: group_delay_nonrel(scenario),
            light_transit: scenario.well_width,
            negativity_condition: negativity_condition(
                scenario.energy_total,
                scenario.well_depth,
            )?,
            threshold_energy: threshold_energy(scenario.well_depth)?,
            resonance_slope: resonance_slope(&nearest)?,
        })
    }
}
