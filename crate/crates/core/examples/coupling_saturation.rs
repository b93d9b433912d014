//! Peak relative coupling against membrane transmission: the coupling
//! approaches the inner-cavity value (w0/q) x_zpm as Tm -> 0.
//!
//! `cargo run --example coupling_saturation`

use cavimode::coupling::{coupling_analytic, inner_resonance, peak_coupling, MechanicalSpec};
use cavimode::{CavityConfig, MembraneSpec};

fn main() -> cavimode::Result<()> {
    let lambda = 1064e-9;
    let mech = MechanicalSpec::default();
    println!("{:>8} {:>14} {:>14} {:>10} {:>14}", "Tm", "peak g_q", "g_q_max", "g/g_max", "analytic");
    for tm in [2e-1, 2e-2, 2e-3, 1e-3, 1e-4, 1e-5, 1e-6] {
        let config = CavityConfig {
            length: 0.01,
            mirror_reflectivity: 0.9999,
            membrane: MembraneSpec::synthetic(1.0 - tm, 0.0),
            com: 0.0,
            separation: 10.5 * lambda,
            wavelength: lambda,
        };
        let m = config.nearest_mode();
        let peak = peak_coupling(&config, m, &mech)?;
        let at_resonance = config.with_separation(inner_resonance(&config, m)?);
        let analytic = match coupling_analytic(&at_resonance, m, &mech) {
            Ok(g) => format!("{:.4e}", g.abs()),
            Err(e) => e.code().to_string(),
        };
        println!(
            "{tm:>8.0e} {:>14.4e} {:>14.4e} {:>10.4} {analytic:>14}",
            peak.g_q.abs(),
            peak.g_q_max,
            peak.saturation()
        );
    }
    Ok(())
}
