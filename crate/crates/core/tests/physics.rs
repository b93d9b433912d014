use std::f64::consts::PI;

use cavimode::coupling::{
    coupling_cap, coupling_numeric, peak_coupling, single_membrane_coupling, MechanicalSpec,
};
use cavimode::membrane::membrane_coefficients;
use cavimode::modes::{empty_mode, exact_shift, first_order_shift, mode_residual, zeroth_order_shift};
use cavimode::transfer::{solve_fields, transmission, transmission_closed_form};
use cavimode::{CavityConfig, Coordinate, MembraneSpec};
use proptest::prelude::*;

const LAMBDA: f64 = 1064e-9;

fn cavity(r: f64, membrane: MembraneSpec, q_over_l: f64, com_over_l: f64) -> CavityConfig {
    let length = 0.01;
    CavityConfig {
        length,
        mirror_reflectivity: r,
        membrane,
        com: com_over_l * length,
        separation: q_over_l * length,
        wavelength: LAMBDA,
    }
}

fn synthetic() -> impl Strategy<Value = MembraneSpec> {
    (0.0..0.999f64, -PI..PI).prop_map(|(rm, phi)| MembraneSpec::synthetic(rm, phi))
}

fn any_membrane() -> impl Strategy<Value = MembraneSpec> {
    prop_oneof![
        synthetic(),
        (1.2..3.5f64, 1e-9..1e-6f64).prop_map(|(n, d)| MembraneSpec::physical(n, d)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn energy_is_conserved(
        r in 0.0..0.99999f64,
        mem in any_membrane(),
        q in 1e-4..0.9f64,
        com_frac in -1.0..1.0f64,
        dk in -1.0..1.0f64,
    ) {
        let com = com_frac * (0.5 - q / 2.0) * 0.99;
        let c = cavity(r, mem, q, com);
        let k = 2.0 * PI / LAMBDA + dk * 1e3;
        let f = solve_fields(&c, k).unwrap();
        prop_assert!((f.reflectance() + f.transmittance() - 1.0).abs() < 1e-10);
        prop_assert!(f.transmittance() <= 1.0 + 1e-12);
        let closed = transmission_closed_form(&c, k).unwrap();
        prop_assert!((closed - f.transmittance()).abs() < 1e-9 * closed.max(1e-6));
    }

    #[test]
    fn single_membrane_is_lossless(n in 1.01..4.0f64, d in 1e-9..2e-6f64, k in 1e6..2e7f64) {
        let c = membrane_coefficients(&MembraneSpec::physical(n, d), k).unwrap();
        prop_assert!((c.reflectivity + c.transmissivity - 1.0).abs() < 1e-12);
        // r/t is real: the arguments agree up to a sign flip
        if !c.reflection_vanishes() {
            let diff = (c.r.arg() - c.t.arg()).rem_euclid(PI);
            prop_assert!(diff.min(PI - diff) < 1e-9, "{diff}");
            prop_assert!((c.amplitude.abs() - c.reflectivity.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn synthetic_membrane_round_trips(rm in 0.0..1.0f64, phi in -3.14..3.14f64) {
        let c = membrane_coefficients(&MembraneSpec::synthetic(rm, phi), 5.9e6).unwrap();
        prop_assert!((c.reflectivity - rm).abs() < 1e-14);
        prop_assert!((c.phase - phi).abs() < 1e-14);
        prop_assert!((c.amplitude * c.amplitude - rm).abs() < 1e-14);
    }

    #[test]
    fn transmission_is_periodic_in_com(
        mem in synthetic(),
        q in 1e-3..0.2f64,
        com in -0.1..0.1f64,
        dk in -300.0..300.0f64,
    ) {
        let c = cavity(0.999, mem, q, com);
        let k = 2.0 * PI / LAMBDA + dk;
        let shifted = c.with_com(c.com + PI / k);
        let a = transmission(&c, k).unwrap();
        let b = transmission(&shifted, k).unwrap();
        prop_assert!((a - b).abs() < 1e-6 * a.max(1e-9), "{a} vs {b}");
    }

    #[test]
    fn exact_root_satisfies_mode_equation(
        r in 0.99..0.9999f64,
        mem in synthetic(),
        q in 1e-4..1e-2f64,
        com in -1e-2..1e-2f64,
    ) {
        let c = cavity(r, mem, q, com);
        let m = c.nearest_mode();
        let s = exact_shift(&c, m).unwrap();
        prop_assert!(s.converged);
        prop_assert!(mode_residual(&c, m, s.delta_k).unwrap().abs() < 1e-10);
        let phi = c.membrane_at(s.k).unwrap().phase;
        prop_assert!((s.delta_k + 2.0 * phi / c.length).abs() <= 1.01 * PI / c.length);
    }
}

#[test]
fn exact_shift_agrees_with_dense_transmission_grid() {
    let length = 0.01;
    for (rm, phi, q) in [(0.3, 0.0, 10.3), (0.8, 0.4, 10.71), (0.95, -1.1, 20.12), (0.5, PI / 6.0, 200.0)] {
        let c = cavity(0.999, MembraneSpec::synthetic(rm, phi), 0.0, 0.0).with_separation(q * LAMBDA);
        let m = c.nearest_mode();
        let k0 = empty_mode(m, length);
        let s = exact_shift(&c, m).unwrap();
        let n = 40_001;
        let span = 2.0 * PI / length;
        let (best_k, _) = (0..n)
            .map(|i| k0 - span + 2.0 * span * i as f64 / (n - 1) as f64)
            .map(|k| (k, transmission(&c, k).unwrap()))
            .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        let grid_step = 2.0 * span / (n - 1) as f64;
        // the nearest transmission maximum on the grid lies within one step
        // of the root (other orders may also peak in the window)
        let t_root = transmission(&c, s.k).unwrap();
        let t_best = transmission(&c, best_k).unwrap();
        assert!(t_root >= t_best * (1.0 - 1e-6) || (best_k - s.k).abs() > 0.5 * span, "rm {rm}: {t_root} vs {t_best}");
        for d in [-grid_step, grid_step] {
            assert!(transmission(&c, s.k + d).unwrap() <= t_root * (1.0 + 1e-12));
        }
    }
}

#[test]
fn first_order_usually_improves_on_zeroth() {
    // centre-of-cavity membranes, moderate reflectivity
    let mut better = 0;
    let mut total = 0;
    for i in 0..200 {
        let rm = 0.05 + 0.75 * (i as f64 * 0.618_033_988_75).fract();
        let q = 10.0 * LAMBDA + (i as f64 * 0.414_213_562_37).fract() * LAMBDA;
        let c = cavity(0.999, MembraneSpec::synthetic(rm, 0.3), 0.0, 0.0).with_separation(q);
        let m = c.nearest_mode();
        let e = exact_shift(&c, m).unwrap().delta_k;
        let (Ok(z), Ok(f)) = (zeroth_order_shift(&c, m), first_order_shift(&c, m)) else {
            continue;
        };
        total += 1;
        if (f.delta_k - e).abs() <= (z.delta_k - e).abs() + 1e-9 {
            better += 1;
        }
    }
    let fraction = better as f64 / total as f64;
    assert!(fraction >= 0.95, "{better}/{total}");
}

#[test]
fn com_motion_is_not_enhanced() {
    let mech = MechanicalSpec::default();
    for (rm, q) in [(0.3, 10.2), (0.9, 10.45), (0.99, 10.5), (0.999, 10.5)] {
        for com in [0.0, 0.1, 0.23] {
            let c = cavity(0.9999, MembraneSpec::synthetic(rm, 0.0), 0.0, 0.0)
                .with_separation(q * LAMBDA)
                .with_com(com * LAMBDA);
            let m = c.nearest_mode();
            let g_com = coupling_numeric(&c, m, &mech, Coordinate::Com).unwrap();
            let g_sing = single_membrane_coupling(&c, m, &mech).unwrap();
            assert!(g_com.abs() <= 2.2 * g_sing, "rm {rm} Q {com}: {g_com} vs {g_sing}");
        }
    }
}

#[test]
fn relative_coupling_stays_below_cap() {
    let mech = MechanicalSpec::default();
    for tm in [1e-1, 1e-2, 1e-3, 1e-4, 1e-5] {
        let c = cavity(0.9999, MembraneSpec::synthetic(1.0 - tm, 0.0), 0.0, 0.0).with_separation(10.5 * LAMBDA);
        let m = c.nearest_mode();
        let peak = peak_coupling(&c, m, &mech).unwrap();
        assert!(peak.g_q.abs() <= peak.g_q_max * 1.001);
        assert!((peak.g_q_max / coupling_cap(&c, m, &mech) - 1.0).abs() < 0.01);
    }
}
