//! Property-based invariants over randomized well scenarios.

use proptest::prelude::*;

use diracwell::delay::{
    group_delay_fd, group_delay_nonrel, group_delay_nonrel_alt, group_delay_rel,
    group_delay_rel_scaled, threshold_energy, threshold_energy_bisection,
};
use diracwell::scattering::{phase_shift, transmission_amplitude};
use diracwell::WellScenario;

use std::f64::consts::PI;

fn scenarios() -> impl Strategy<Value = WellScenario> {
    (1.000001f64..5.0, 0.000001f64..2.0, 0.000001f64..4.0 * PI)
        .prop_map(|(alpha, beta, phase)| WellScenario::from_phase(alpha, beta, phase).unwrap())
}

proptest! {
    #[test]
    fn chi_and_transmission_stay_in_range(s in scenarios()) {
        let st = transmission_amplitude(&s);
        prop_assert!(st.chi > 0.0 && st.chi < 1.0);
        prop_assert!(st.transmission > 0.0);
        prop_assert!(st.transmission <= 1.0 + 1e-12);
    }

    #[test]
    fn amplitude_identities_hold(s in scenarios()) {
        let st = transmission_amplitude(&s);
        prop_assert!((st.transmission * st.magnitude_f * st.magnitude_f - 1.0).abs() <= 1e-12);
        prop_assert!(
            (st.amplitude.norm_sqr() - st.transmission).abs() <= 1e-12 * st.transmission
        );
        // The stored phase agrees with the amplitude argument modulo 2 pi.
        let wrapped = (st.phase - st.amplitude.arg()).rem_euclid(2.0 * PI);
        prop_assert!(wrapped.min(2.0 * PI - wrapped) <= 1e-9);
    }

    #[test]
    fn phase_grows_continuously_with_width(
        alpha in 1.000001f64..5.0,
        beta in 0.000001f64..2.0,
        phase in 0.01f64..4.0 * PI,
    ) {
        // Two-sided increment bound on a fine local grid, which also covers
        // the tangent singularities at half-integer multiples of pi.
        let step = 1e-4;
        let mut prev = phase_shift(&WellScenario::from_phase(alpha, beta, phase).unwrap());
        for i in 1..=20 {
            let s = WellScenario::from_phase(alpha, beta, phase + step * i as f64).unwrap();
            let next = phase_shift(&s);
            let jump = next - prev;
            prop_assert!(jump >= -1e-9, "phase decreased by {jump}");
            prop_assert!(jump <= 100.0 * step, "phase jumped by {jump}");
            prev = next;
        }
    }

    #[test]
    fn delay_forms_agree(s in scenarios()) {
        let a = group_delay_rel(&s);
        let b = group_delay_rel_scaled(s.energy_total, s.well_depth, s.inside_phase()).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        let c = group_delay_nonrel(&s);
        let d = group_delay_nonrel_alt(&s).unwrap();
        prop_assert!((c - d).abs() <= 1e-9 * c.abs().max(1.0));
    }

    #[test]
    fn delay_matches_phase_derivative(s in scenarios()) {
        let tau = group_delay_rel(&s);
        let fd = group_delay_fd(&s, 1e-7).unwrap();
        prop_assert!((tau - fd).abs() <= 1e-6 * tau.abs().max(1.0));
    }

    #[test]
    fn threshold_closed_form_matches_bisection(beta in 0.0001f64..2.0) {
        let closed = threshold_energy(beta).unwrap();
        let root = threshold_energy_bisection(beta).unwrap();
        prop_assert!((closed - root).abs() <= 1e-9);
        prop_assert!(closed > 1.0);
    }
}
