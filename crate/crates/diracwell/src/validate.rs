//! Cross-module invariant suite backing the CLI `validate` mode.
//!
//! Every check is deterministic (seeded sampling) and prints one line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::delay::{
    group_delay_fd, group_delay_nonrel, group_delay_nonrel_alt, group_delay_rel,
    group_delay_rel_scaled, negativity_condition, resonance_delay, resonance_slope,
    threshold_energy, threshold_energy_bisection, width_slope_fd,
};
use crate::packet::{propagate_transmitted, PacketSpec, ENERGY_FLOOR};
use crate::scattering::{phase_shift, transmission_amplitude, transmission_probability, WellScenario};

use std::f64::consts::PI;

/// One invariant-check outcome.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            passed,
            detail,
        }
    }
}

fn sample_scenario(rng: &mut ChaCha8Rng) -> WellScenario {
    let alpha = 1.0 + rng.gen::<f64>() * 4.0 + 1e-9;
    let beta = rng.gen::<f64>() * 2.0 + 1e-9;
    let phase = rng.gen::<f64>() * 4.0 * PI + 1e-6;
    WellScenario::from_phase(alpha, beta, phase).unwrap()
}

/// Closed-form delay against the central finite difference of the phase.
pub fn check_derivative_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let s = sample_scenario(&mut rng);
        let tau = group_delay_rel(&s);
        let fd = group_delay_fd(&s, 1e-7).unwrap();
        worst = worst.max((tau - fd).abs() / tau.abs().max(1.0));
    }
    Check::new(
        "derivative-oracle",
        worst <= 1e-6,
        format!("max scaled error {worst:.3e} over 1000 scenarios (limit 1e-6)"),
    )
}

/// Natural-unit and dimensionless delay expressions agree; same for the
/// two non-relativistic forms.
pub fn check_form_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let s = sample_scenario(&mut rng);
        let a = group_delay_rel(&s);
        let b = group_delay_rel_scaled(s.energy_total, s.well_depth, s.inside_phase()).unwrap();
        worst = worst.max((a - b).abs() / a.abs().max(1e-300));
        let c = group_delay_nonrel(&s);
        let d = group_delay_nonrel_alt(&s).unwrap();
        worst = worst.max((c - d).abs() / c.abs().max(1e-300));
    }
    Check::new(
        "form-equivalence",
        worst <= 1e-10,
        format!("max relative gap {worst:.3e} over 1000 scenarios (limit 1e-10)"),
    )
}

/// T f^2 = 1, |F|^2 = T, 0 < chi < 1 on random scenarios.
pub fn check_scattering_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    let mut chi_ok = true;
    for _ in 0..1000 {
        let s = sample_scenario(&mut rng);
        let st = transmission_amplitude(&s);
        worst = worst.max((st.transmission * st.magnitude_f * st.magnitude_f - 1.0).abs());
        worst = worst.max((st.amplitude.norm_sqr() - st.transmission).abs() / st.transmission);
        chi_ok &= st.chi > 0.0 && st.chi < 1.0;
        chi_ok &= st.transmission > 0.0 && st.transmission <= 1.0 + 1e-12;
    }
    Check::new(
        "scattering-identities",
        worst <= 1e-12 && chi_ok,
        format!("max identity residual {worst:.3e} (limit 1e-12), ranges ok: {chi_ok}"),
    )
}

/// phi(m pi / k') = m pi and T = 1 at resonances; resonance delay exceeds
/// the light transit; the resonance slope matches a finite difference.
pub fn check_resonance_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for _ in 0..100 {
        let alpha = 1.0 + rng.gen::<f64>() * 4.0 + 1e-6;
        let beta = rng.gen::<f64>() * 2.0 + 1e-6;
        let m = rng.gen_range(1..=4);
        let s = WellScenario::from_phase(alpha, beta, m as f64 * PI).unwrap();
        worst = worst.max((phase_shift(&s) - m as f64 * PI).abs());
        worst = worst.max((transmission_probability(&s) - 1.0).abs());
        let tau = resonance_delay(&s).unwrap();
        ok &= tau > s.well_width;
        ok &= (group_delay_rel(&s) - tau).abs() <= 1e-10 * tau.abs();
        let slope = resonance_slope(&s).unwrap();
        let fd = width_slope_fd(&s, 1e-6).unwrap();
        ok &= (slope - fd).abs() <= 1e-5 * slope.abs().max(1e-12);
    }
    Check::new(
        "resonance-identities",
        worst <= 1e-10 && ok,
        format!("max residual {worst:.3e} (limit 1e-10), inequalities ok: {ok}"),
    )
}

/// The strict inequality agrees with E < E_t on a 100 x 100 grid, and the
/// closed-form threshold matches the bisection oracle.
pub fn check_threshold_consistency() -> Check {
    let mut ok = true;
    let mut worst_root: f64 = 0.0;
    for i in 0..100 {
        let beta = 1e-4 + (2.0 - 1e-4) * i as f64 / 99.0;
        let et = threshold_energy(beta).unwrap();
        worst_root = worst_root.max((et - threshold_energy_bisection(beta).unwrap()).abs());
        for j in 0..100 {
            let e = 1.0 + (j as f64 + 0.5) / 100.0 * 2.0;
            if (e - et).abs() < 1e-6 {
                continue;
            }
            ok &= negativity_condition(e, beta).unwrap() == (e < et);
        }
    }
    Check::new(
        "threshold-consistency",
        ok && worst_root <= 1e-9,
        format!("grid equivalence ok: {ok}; max closed-vs-bisection gap {worst_root:.3e} (limit 1e-9)"),
    )
}

/// When the necessary condition holds, a width with negative delay exists
/// in the first period (0, pi/k'].
pub fn check_negativity_realizability() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut ok = true;
    let mut tried = 0;
    while tried < 20 {
        let beta = rng.gen::<f64>() * 2.0 + 1e-6;
        let et = threshold_energy(beta).unwrap();
        let alpha = 1.0 + (0.01 + 0.98 * rng.gen::<f64>()) * (et - 1.0);
        if !negativity_condition(alpha, beta).unwrap() {
            continue;
        }
        tried += 1;
        let mut found = false;
        for i in 1..=10_000 {
            let phase = PI * i as f64 / 10_000.0;
            let s = WellScenario::from_phase(alpha, beta, phase).unwrap();
            if group_delay_rel(&s) < 0.0 {
                found = true;
                break;
            }
        }
        ok &= found;
    }
    Check::new(
        "negativity-realizability",
        ok,
        format!("negative-delay width found for all 20 sampled sub-threshold scenarios: {ok}"),
    )
}

/// Packet quadrature: doubling the nodes and widening the window both
/// leave the numerical delay essentially unchanged for the reference
/// packet, and the delay agrees with the stationary-phase value.
pub fn check_quadrature_convergence() -> Check {
    let scenario = WellScenario::from_phase(1.01, 0.4, 2.5).unwrap();
    let spec = PacketSpec::new(1.01, 300.0, 0.4, scenario.well_width).unwrap();
    let result = match propagate_transmitted(&spec) {
        Ok(r) => r,
        Err(e) => return Check::new("quadrature-convergence", false, format!("{e}")),
    };
    let converged = result.nodes_used == spec.quadrature_nodes;

    let mut wide = spec.clone();
    wide.energy_window = (ENERGY_FLOOR, 2.0);
    let window_shift = match propagate_transmitted(&wide) {
        Ok(r) => (r.numerical_delay - result.numerical_delay).abs(),
        Err(e) => return Check::new("quadrature-convergence", false, format!("{e}")),
    };

    let tau = group_delay_rel(&scenario);
    let gap = (result.numerical_delay - tau).abs();
    let agreement = gap <= (0.05 * tau.abs()).max(2.0);
    Check::new(
        "quadrature-convergence",
        converged && window_shift < 0.01 && agreement,
        format!(
            "converged at {} nodes; window widening moved the delay by {window_shift:.3e} (limit 0.01); |tau_N - tau| = {gap:.3e}",
            result.nodes_used
        ),
    )
}

/// Runs every check in a fixed order.
pub fn run_all() -> Vec<Check> {
    vec![
        check_scattering_identities(),
        check_derivative_oracle(),
        check_form_equivalence(),
        check_resonance_identities(),
        check_threshold_consistency(),
        check_negativity_realizability(),
        check_quadrature_convergence(),
    ]
}
