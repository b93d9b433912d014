//! Width of the steep region of the mode shift versus membrane
//! transmission, in units of lambda*Tm/(2 pi).
//!
//! `cargo run --example width_scaling`

use std::f64::consts::PI;

use cavimode::coupling::{high_slope_width, inner_resonance};
use cavimode::{CavityConfig, MembraneSpec};

fn main() -> cavimode::Result<()> {
    let lambda = 1064e-9;
    for (label, length, separation) in [("L = 1 m, q ~ lambda/2", 1.0, 0.5 * lambda), ("L = 1 cm, q ~ 10.5 lambda", 0.01, 10.5 * lambda)] {
        println!("{label}");
        for tm in [1e-2, 1e-3, 1e-4, 1e-5] {
            let config = CavityConfig {
                length,
                mirror_reflectivity: 0.9999,
                membrane: MembraneSpec::synthetic(1.0 - tm, 0.0),
                com: 0.0,
                separation,
                wavelength: lambda,
            };
            let m = config.nearest_mode();
            let config = config.with_separation(inner_resonance(&config, m)?);
            let unit = lambda * tm / (2.0 * PI);
            let mut half = 6.0 * unit;
            let width = loop {
                match high_slope_width(&config, m, half, 601) {
                    Ok(w) => break w,
                    Err(_) if half < 0.2 * lambda => half *= 4.0,
                    Err(e) => return Err(e),
                }
            };
            println!("  Tm = {tm:.0e}: width = {:.4} lambda*Tm/(2pi)", width / unit);
        }
    }
    Ok(())
}
