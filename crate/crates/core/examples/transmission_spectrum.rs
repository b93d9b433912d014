//! Transmission around one cavity mode, computed three independent ways.
//!
//! `cargo run --example transmission_spectrum`

use cavimode::modes::{empty_mode, exact_shift};
use cavimode::transfer::{denominator_parts, solve_fields, transmission_closed_form};
use cavimode::{CavityConfig, MembraneSpec};

fn main() -> cavimode::Result<()> {
    let lambda = 1064e-9;
    let config = CavityConfig {
        length: 0.01,
        mirror_reflectivity: 0.999,
        membrane: MembraneSpec::synthetic(0.6, 0.3),
        com: 0.2 * lambda,
        separation: 10.3 * lambda,
        wavelength: lambda,
    };
    let m = config.nearest_mode();
    let k0 = empty_mode(m, config.length);
    let peak = exact_shift(&config, m)?;
    println!("mode {m}: k0 = {k0:.6} 1/m, resonance shifted by {:.6} 1/m", peak.delta_k);
    println!("{:>14} {:>14} {:>14} {:>14} {:>10}", "k - k_peak", "fields", "closed", "quadratic", "R + T");
    let width = std::f64::consts::PI / config.length;
    for i in -10..=10 {
        let k = peak.k + 0.002 * width * i as f64;
        let fields = solve_fields(&config, k)?;
        let closed = transmission_closed_form(&config, k)?;
        let parts = denominator_parts(&config, k)?;
        let mem = config.membrane_at(k)?;
        let quad = ((1.0 - config.mirror_reflectivity) * mem.transmissivity).powi(2) / parts.quadratic();
        println!(
            "{:>14.6} {:>14.10} {:>14.10} {:>14.10} {:>10.2e}",
            k - peak.k,
            fields.transmittance(),
            closed,
            quad,
            fields.reflectance() + fields.transmittance() - 1.0
        );
    }
    Ok(())
}
